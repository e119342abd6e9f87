"""Shared fixtures: canonical small maps, the three-node chain, packet builders."""

from __future__ import annotations

import pytest

from rcfd.channel import from_positions
from rcfd.mapping import build_map
from rcfd.sim.traffic import Packet


@pytest.fixture
def map6():
    """Three nodes on six subcarriers: f1(i)=i, f2(i)=i+3."""
    return build_map(3, 6, 1)


@pytest.fixture
def chain3():
    """n2 hears both ends; n1 and n3 cannot hear each other."""
    return from_positions([(0.1, 0.5), (0.5, 0.5), (0.9, 0.5)], radius=0.5)


@pytest.fixture
def pair2():
    """Two mutually audible nodes."""
    return from_positions([(0.3, 0.5), (0.6, 0.5)], radius=0.5)


def make_packets(spec: list[tuple[float, int, int]], size_bits: int = 1000) -> list[Packet]:
    """Packets from (t_gen, src, dest) triples, ids in order."""
    out = [
        Packet(id=i + 1, src=src, dest=dest, size_bits=size_bits, t_gen=t)
        for i, (t, src, dest) in enumerate(sorted(spec))
    ]
    return out
