"""Poisson packet generation shared by every protocol under test.

The packet set for a given (seed, topology) is generated once, before the
MAC is chosen, so seed-paired protocol comparisons operate on identical
arrivals, destinations and sizes.
"""

from __future__ import annotations

import enum
import random
import zlib
from dataclasses import dataclass
from typing import Optional

from ..channel import Topology
from ..mapping import NodeId
from .config import SimConfig


class Fate(enum.Enum):
    PENDING = "pending"
    DELIVERED = "delivered"
    DISCARDED = "discarded"


@dataclass
class Packet:
    id: int
    src: NodeId
    dest: Optional[NodeId]
    size_bits: int
    t_gen: float
    attempts: int = 0
    fate: Fate = Fate.PENDING
    t_done: Optional[float] = None

    def finish(self, fate: Fate, t: float) -> None:
        if self.fate is not Fate.PENDING:
            raise RuntimeError(f"packet {self.id} finished twice")
        if t < self.t_gen:
            raise ValueError("completion before generation")
        self.fate = fate
        self.t_done = t

    @property
    def delay(self) -> float:
        if self.t_done is None:
            raise ValueError("packet has no terminal fate yet")
        return self.t_done - self.t_gen


def poisson_arrivals(R_S: float, L: float, T: float, rng: random.Random) -> list[float]:
    """Arrival instants of a homogeneous Poisson process of rate R_S/L on [0, T)."""
    if R_S <= 0 or L <= 0:
        raise ValueError("rates and sizes must be positive")
    lam = R_S / L
    times = []
    t = rng.expovariate(lam)
    while t < T:
        times.append(t)
        t += rng.expovariate(lam)
    return times


def generate_traffic(config: SimConfig, topology: Topology, rng: random.Random) -> list[Packet]:
    """Per-node Poisson arrivals with neighbor-uniform destinations.

    A node without neighbors still generates packets; they carry
    ``dest=None`` and are discarded the instant they arrive (counted as
    generated load). Sizes are fixed at L bits unless the config selects
    the exponential option, whose rounded mean stays L.
    """
    packets: list[Packet] = []
    for src in range(1, config.N + 1):
        neighbors = sorted(topology.adjacency[src])
        for t in poisson_arrivals(config.R_S, config.L, config.T, rng):
            dest = rng.choice(neighbors) if neighbors else None
            if config.payload_dist == "exponential":
                size = max(1, round(rng.expovariate(1.0 / config.L)))
            else:
                size = config.L
            packets.append(Packet(id=0, src=src, dest=dest, size_bits=size, t_gen=t))
    packets.sort(key=lambda p: (p.t_gen, p.src))
    for i, p in enumerate(packets):
        p.id = i + 1
    return packets


def traffic_checksum(packets: list[Packet]) -> int:
    """Order-sensitive checksum of the generated packet set.

    Sweeps assert it matches across protocols sharing a seed.
    """
    blob = ";".join(
        f"{p.id},{p.src},{p.dest},{p.size_bits},{p.t_gen:.12e}" for p in packets
    ).encode()
    return zlib.crc32(blob)
