"""Node-to-subcarrier mappings used by the frequency-domain handshake.

The band of S OFDM subcarriers (indexed 1..S) is split into a lower half
for sender identification and an upper half for receiver identification.
Every node owns one (subcarrier, symbol) pair in each half; with an m-ary
symbol alphabet a single subcarrier can distinguish m nodes, so the map
hosts up to m*S/2 nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityExceeded, UnmappedNode

NodeId = int
# (subcarrier index, symbol value); subcarriers are 1-based, symbols 0-based.
ScSymbol = tuple[int, int]


@dataclass(frozen=True)
class SubcarrierMap:
    """Immutable node/subcarrier association.

    ``f1`` maps nodes into the lower half ``s1`` (sender identity),
    ``f2`` into the upper half ``s2`` (receiver identity). Both maps are
    injective over (subcarrier, symbol) pairs.
    """

    S: int
    m: int
    s1: tuple[int, ...]
    s2: tuple[int, ...]
    f1: dict[NodeId, ScSymbol]
    f2: dict[NodeId, ScSymbol]

    def __post_init__(self) -> None:
        if set(self.s1) & set(self.s2):
            raise ValueError("subcarrier halves overlap")
        if set(self.s1) | set(self.s2) != set(range(1, self.S + 1)):
            raise ValueError("subcarrier halves must partition 1..S")
        for fmap, half, name in ((self.f1, set(self.s1), "f1"), (self.f2, set(self.s2), "f2")):
            pairs = list(fmap.values())
            if len(set(pairs)) != len(pairs):
                raise ValueError(f"{name} assigns one (subcarrier, symbol) pair twice")
            for sc, sym in pairs:
                if sc not in half:
                    raise ValueError(f"{name} maps outside its subcarrier half")
                if not 0 <= sym < self.m:
                    raise ValueError(f"{name} symbol value outside 0..m-1")
        if len(self.f1) > self.capacity:
            raise CapacityExceeded(f"{len(self.f1)} nodes > capacity {self.capacity}")

    @property
    def capacity(self) -> int:
        return self.m * self.S // 2

    @property
    def s1_set(self) -> frozenset[int]:
        cached = self.__dict__.get("_s1_set")
        if cached is None:
            cached = frozenset(self.s1)
            object.__setattr__(self, "_s1_set", cached)
        return cached

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        return tuple(self.f1)

    def f1_of(self, node: NodeId) -> ScSymbol:
        try:
            return self.f1[node]
        except KeyError:
            raise UnmappedNode(f"node {node} has no f1 entry") from None

    def f2_of(self, node: NodeId) -> ScSymbol:
        try:
            return self.f2[node]
        except KeyError:
            raise UnmappedNode(f"node {node} has no f2 entry") from None

    def owner_of_f1(self, pair: ScSymbol) -> NodeId | None:
        """Node whose sender pair equals ``pair``, or None if unassigned."""
        return self._f1_owners().get(pair)

    def owner_of_f2(self, pair: ScSymbol) -> NodeId | None:
        return self._f2_owners().get(pair)

    def _f1_owners(self) -> dict[ScSymbol, NodeId]:
        cached = self.__dict__.get("_f1_rev")
        if cached is None:
            cached = {pair: node for node, pair in self.f1.items()}
            object.__setattr__(self, "_f1_rev", cached)
        return cached

    def _f2_owners(self) -> dict[ScSymbol, NodeId]:
        cached = self.__dict__.get("_f2_rev")
        if cached is None:
            cached = {pair: node for node, pair in self.f2.items()}
            object.__setattr__(self, "_f2_rev", cached)
        return cached


def build_map(N: int, S: int, m: int = 1) -> SubcarrierMap:
    """Canonical mapping for nodes 1..N over subcarriers 1..S.

    The lower half is {1..S/2}, the upper half {S/2+1..S}. Node i gets the
    lower-half subcarrier ((i-1) mod S/2)+1 with symbol (i-1)//(S/2), and
    the same position shifted by S/2 in the upper half.

    Raises CapacityExceeded when N > m*S/2.
    """
    if N < 1:
        raise ValueError("need at least one node")
    if S < 2 or S % 2:
        raise ValueError("subcarrier count must be even and >= 2")
    if m < 1:
        raise ValueError("modulation order must be >= 1")
    half = S // 2
    if N > m * half:
        raise CapacityExceeded(f"{N} nodes exceed capacity m*S/2 = {m * half}")
    f1: dict[NodeId, ScSymbol] = {}
    f2: dict[NodeId, ScSymbol] = {}
    for i in range(1, N + 1):
        sc = (i - 1) % half + 1
        sym = (i - 1) // half
        f1[i] = (sc, sym)
        f2[i] = (sc + half, sym)
    return SubcarrierMap(
        S=S,
        m=m,
        s1=tuple(range(1, half + 1)),
        s2=tuple(range(half + 1, S + 1)),
        f1=f1,
        f2=f2,
    )
