"""Exhaustive collision-freedom oracle for small instances.

Enumerates every labeled topology on up to N_max nodes, every assignment
of traffic intents (each node idle or addressing one neighbor) and every
joint round-1 subcarrier choice, runs the synchronized handshake and
checks that no granted transmission is overlapped by a third audible
transmitter at its receiver. The full-duplex counterpart of each
exchange is exempt by design.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .channel import Topology
from .contention import Decision
from .errors import StateSpaceTooLarge
from .mapping import build_map
from .sim.handshake import run_contention

MAX_NODES = 4


@dataclass(frozen=True)
class Violation:
    N: int
    edges: tuple[tuple[int, int], ...]
    intents: tuple[tuple[int, int], ...]
    chosen: tuple[tuple[int, int], ...]
    transmitter: int
    dest: int
    interferer: int
    victim: str  # "primary" or "secondary": which kind of transmission was hit


@dataclass(frozen=True)
class Case:
    N: int
    edges: tuple[tuple[int, int], ...]
    intents: dict[int, int | None]
    chosen: dict[int, int]


def _frames(N_max: int) -> Iterator[tuple[int, tuple, Topology, dict, list[int]]]:
    """(n, edges, topology, intents, active nodes) for every graph and intent mix."""
    for n in range(2, N_max + 1):
        pairs = list(itertools.combinations(range(1, n + 1), 2))
        all_nodes = list(range(1, n + 1))
        for edge_bits in range(2 ** len(pairs)):
            edges = tuple(p for i, p in enumerate(pairs) if edge_bits >> i & 1)
            topo = Topology.from_adjacency(n, edges)
            options = [[None] + sorted(topo.adjacency[node]) for node in all_nodes]
            for intent_combo in itertools.product(*options):
                active = [i + 1 for i, dest in enumerate(intent_combo) if dest is not None]
                if not active:
                    continue
                yield n, edges, topo, dict(zip(all_nodes, intent_combo)), active


def enumerate_cases(N_max: int, S: int) -> Iterator[tuple[Topology, Case]]:
    """All (topology, intents, picks) instances, smallest networks first."""
    for n, edges, topo, intents, active in _frames(N_max):
        for picks in itertools.product(range(1, S + 1), repeat=len(active)):
            yield topo, Case(N=n, edges=edges, intents=intents, chosen=dict(zip(active, picks)))


def validate_exhaustive(N_max: int, S: int, m: int = 1) -> list[Violation]:
    """Empty list iff no reachable contention outcome ever collides."""
    if m != 1:
        raise ValueError("the exhaustive oracle runs the presence-based scheme (m=1)")
    if N_max > MAX_NODES:
        raise StateSpaceTooLarge(f"N_max={N_max} exceeds the enumerable bound {MAX_NODES}")
    smap = build_map(m * S // 2, S, m)
    violations: list[Violation] = []
    silent = Decision.SILENT
    pick_space = range(1, S + 1)
    for n, edges, topo, intents, active in _frames(N_max):
        adjacency = topo.adjacency
        for picks in itertools.product(pick_space, repeat=len(active)):
            chosen = dict(zip(active, picks))
            decisions = run_contention(smap, topo, intents, chosen=chosen).decisions
            transmitters = [a for a in active if decisions[a].kind is not silent]
            if len(transmitters) < 2:
                continue
            for node in transmitters:
                decision = decisions[node]
                dest = decision.dest
                nbrs = adjacency[dest]
                for other in transmitters:
                    if other != node and other != dest and other in nbrs:
                        violations.append(
                            Violation(
                                N=n,
                                edges=edges,
                                intents=tuple((k, v) for k, v in intents.items() if v),
                                chosen=tuple(sorted(chosen.items())),
                                transmitter=node,
                                dest=dest,
                                interferer=other,
                                victim=(
                                    "primary"
                                    if decision.kind is Decision.TRANSMIT_PRIMARY
                                    else "secondary"
                                ),
                            )
                        )
    return violations
