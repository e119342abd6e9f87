"""Random geometric topologies and ideal-broadcast spectrum perception.

Nodes live on the unit square and hear exactly the nodes within the
coverage radius r(N) = sqrt((2/N)*ln N) (natural log), the classic
connectivity radius for uniformly deployed networks. The channel is
ideal: no loss, fading or capture — perception is the plain union of
what the node itself and its neighbors emit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .contention import PerceivedEntry
from .errors import DegenerateNetwork
from .mapping import NodeId, ScSymbol, SubcarrierMap


def coverage_radius(N: int) -> float:
    """sqrt((2/N) * ln N); requires at least two nodes."""
    if N < 2:
        raise DegenerateNetwork("coverage radius needs N >= 2")
    return math.sqrt(2.0 / N * math.log(N))


@dataclass(frozen=True)
class Topology:
    """Node positions plus the adjacency they induce.

    Nodes are 1-based. ``adjacency[i]`` is the frozen neighbor set of
    node i (symmetric, no self-loops).
    """

    N: int
    positions: tuple[tuple[float, float], ...]
    radius: float
    adjacency: dict[NodeId, frozenset[NodeId]]

    def neighbors(self, node: NodeId) -> frozenset[NodeId]:
        return self.adjacency[node]

    def are_adjacent(self, a: NodeId, b: NodeId) -> bool:
        return b in self.adjacency[a]

    def hearing(self, node: NodeId) -> frozenset[NodeId]:
        """The node plus its neighbors (cached; perception hot path)."""
        cached = self.__dict__.get("_hearing")
        if cached is None:
            cached = {i: nbrs | {i} for i, nbrs in self.adjacency.items()}
            object.__setattr__(self, "_hearing", cached)
        return cached[node]

    def to_table(self) -> str:
        """Plain-text dump, one ``id x y`` line per node."""
        lines = [f"{i} {x:.10f} {y:.10f}" for i, (x, y) in enumerate(self.positions, start=1)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_table(cls, text: str, radius: float) -> "Topology":
        positions = []
        for line in text.strip().splitlines():
            _i, x, y = line.split()
            positions.append((float(x), float(y)))
        return from_positions(positions, radius)

    @classmethod
    def from_adjacency(cls, N: int, edges: Iterable[tuple[NodeId, NodeId]]) -> "Topology":
        """Abstract topology given directly by its edge set (positions synthetic).

        Useful for scripted scenarios and exhaustive enumeration, where
        only who-hears-whom matters.
        """
        adj: dict[NodeId, set[NodeId]] = {i: set() for i in range(1, N + 1)}
        for a, b in edges:
            if a == b:
                raise ValueError("self-loop in edge list")
            adj[a].add(b)
            adj[b].add(a)
        positions = tuple((float(i), 0.0) for i in range(1, N + 1))
        return cls(
            N=N,
            positions=positions,
            radius=0.0,
            adjacency={i: frozenset(s) for i, s in adj.items()},
        )


def from_positions(positions: Sequence[tuple[float, float]], radius: float) -> Topology:
    """Topology induced by explicit positions and an explicit radius."""
    N = len(positions)
    pts = np.asarray(positions, dtype=float)
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    adjacency: dict[NodeId, frozenset[NodeId]] = {}
    for i in range(N):
        near = np.nonzero(dist[i] <= radius)[0] + 1
        adjacency[i + 1] = frozenset(int(j) for j in near if j != i + 1)
    return Topology(N=N, positions=tuple(map(tuple, pts.tolist())), radius=radius, adjacency=adjacency)


def generate_topology(N: int, seed: int) -> Topology:
    """Uniform i.i.d. positions on the unit square with radius r(N).

    The same seed always yields the same topology. Disconnected outcomes
    are legal; r(N) only makes connectivity very likely.
    """
    radius = coverage_radius(N)
    rng = np.random.default_rng(seed)
    positions = rng.random((N, 2))
    return from_positions([tuple(p) for p in positions.tolist()], radius)


def is_connected(topology: Topology) -> bool:
    if topology.N == 0:
        return True
    seen = {1}
    stack = [1]
    while stack:
        for nb in topology.adjacency[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == topology.N


@dataclass(frozen=True)
class AirSnapshot:
    """What every node emits during one contention round.

    ``transmissions`` maps node -> set of (subcarrier, symbol) pairs.
    ``wideband`` lists nodes currently occupying the whole band (a frame
    transmission overlapping the round); their neighbors perceive the
    round as flooded rather than as decodable subcarriers.
    """

    transmissions: Mapping[NodeId, frozenset[ScSymbol]]
    wideband: frozenset[NodeId] = frozenset()

    def __post_init__(self) -> None:
        for pairs in self.transmissions.values():
            for sc, _sym in pairs:
                if sc < 1:
                    raise ValueError(f"subcarrier index {sc} out of range")


@dataclass(frozen=True)
class Perception:
    """One node's view of one round, split by subcarrier half.

    ``flooded`` marks that a whole-band transmission drowned the round:
    no entry test can pass and the node cannot win anything this round.
    """

    all_scs: frozenset[int]
    s1: frozenset[PerceivedEntry]
    s2: frozenset[PerceivedEntry]
    flooded: bool = False

    @property
    def empty(self) -> bool:
        return not self.all_scs and not self.flooded


_EMPTY_PERCEPTION = Perception(frozenset(), frozenset(), frozenset())


_FLOODED_PERCEPTION = Perception(frozenset(), frozenset(), frozenset(), flooded=True)


def perceive(
    snapshot: AirSnapshot,
    topology: Topology,
    node: NodeId,
    smap: SubcarrierMap,
) -> Perception:
    """Union of the node's own emissions and those of its neighbors.

    Identical (subcarrier, symbol) pairs superpose into one clean entry;
    distinct symbols on one subcarrier yield an ambiguous entry. A
    wideband emitter in range floods the whole round.
    """
    audible = topology.hearing(node)
    if snapshot.wideband and snapshot.wideband & audible:
        return _FLOODED_PERCEPTION
    per_sc: dict[int, set[int]] | None = None
    for src, pairs in snapshot.transmissions.items():
        if src in audible:
            if per_sc is None:
                per_sc = {}
            for sc, sym in pairs:
                syms = per_sc.get(sc)
                if syms is None:
                    per_sc[sc] = {sym}
                else:
                    syms.add(sym)
    if per_sc is None:
        return _EMPTY_PERCEPTION
    s1_set = smap.s1_set
    lower = []
    upper = []
    for sc, syms in per_sc.items():
        entry = PerceivedEntry(sc, frozenset(syms))
        (lower if sc in s1_set else upper).append(entry)
    return Perception(
        all_scs=frozenset(per_sc),
        s1=frozenset(lower),
        s2=frozenset(upper),
    )
