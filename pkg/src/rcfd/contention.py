"""Three-round frequency-domain handshake: pure decision logic.

One channel access is decided in three one-symbol rounds:

1. every contender pings a random subcarrier; whoever hears its own pick
   as the lowest occupied subcarrier becomes a primary transmitter (PT);
2. each PT advertises (sender pair, receiver pair); a node that hears its
   own receiver pair becomes an RTS receiver (RR);
3. each RR answers the advertiser with the lowest sender pair; everyone
   then decides from what it heard whether it may transmit.

All functions here are pure; randomness enters only through the caller's
random source in :func:`round1_choose`.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import NoCandidate
from .mapping import NodeId, ScSymbol, SubcarrierMap


@dataclass(frozen=True, slots=True)
class PerceivedEntry:
    """One occupied subcarrier as heard by a node during one round.

    ``symbols`` holds every distinct symbol value superposed on the
    subcarrier. Two transmitters sending the same symbol merge into one
    clean observation; distinct symbols make the entry ambiguous (the
    listener knows the subcarrier is busy but not by whom).
    """

    sc: int
    symbols: frozenset[int]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("perceived entry with no symbols")

    @property
    def ambiguous(self) -> bool:
        return len(self.symbols) > 1

    def matches(self, pair: ScSymbol) -> bool:
        """True when this entry is exactly the unambiguous pair ``pair``."""
        return self.sc == pair[0] and self.symbols == frozenset((pair[1],))


class Role(enum.Enum):
    PRIMARY_TRANSMITTER = "pt"
    RTS_RECEIVER = "rr"
    BYSTANDER = "bystander"


class Decision(enum.Enum):
    TRANSMIT_PRIMARY = "primary"
    TRANSMIT_SECONDARY = "secondary"
    SILENT = "silent"


@dataclass(frozen=True)
class TransmitDecision:
    kind: Decision
    dest: Optional[NodeId] = None

    def __post_init__(self) -> None:
        if self.kind is Decision.SILENT and self.dest is not None:
            raise ValueError("silent decision carries no destination")
        if self.kind is not Decision.SILENT and self.dest is None:
            raise ValueError("transmit decision needs a destination")


SILENT = TransmitDecision(Decision.SILENT)


def transmit_primary(dest: NodeId) -> TransmitDecision:
    return TransmitDecision(Decision.TRANSMIT_PRIMARY, dest)


def transmit_secondary(dest: NodeId) -> TransmitDecision:
    return TransmitDecision(Decision.TRANSMIT_SECONDARY, dest)


@dataclass
class ContentionState:
    """Everything one node observed across the three rounds.

    ``chosen_sc`` is 0 when the node entered without data. The six
    perceived sets mirror what the node heard: the full-band set for
    round 1 and the half-band splits for rounds 2 and 3.
    """

    node: NodeId
    has_data: bool
    dest: Optional[NodeId] = None
    chosen_sc: int = 0
    role: Role = Role.BYSTANDER
    r1_perceived: frozenset[int] = frozenset()
    r2_perceived_s1: frozenset[PerceivedEntry] = frozenset()
    r2_perceived_s2: frozenset[PerceivedEntry] = frozenset()
    r3_perceived_s1: frozenset[PerceivedEntry] = frozenset()
    r3_perceived_s2: frozenset[PerceivedEntry] = frozenset()


def round1_choose(has_data: bool, rng: random.Random, S: int) -> int:
    """Round-1 pick: 0 without data, otherwise uniform over all S subcarriers."""
    if not has_data:
        return 0
    return rng.randint(1, S)


def decide_pt(chosen_sc: int, perceived: Iterable[int]) -> bool:
    """Primary-transmitter test: own pick is the lowest occupied subcarrier.

    Callers guarantee that a transmitting node perceives its own pick.
    """
    if chosen_sc == 0:
        return False
    return chosen_sc == min(perceived, default=0)


def rts_signal(smap: SubcarrierMap, sender: NodeId, dest: NodeId) -> frozenset[ScSymbol]:
    """Round-2 advertisement: the sender's f1 pair plus the destination's f2 pair."""
    if sender == dest:
        raise ValueError("a node cannot address itself")
    return frozenset((smap.f1_of(sender), smap.f2_of(dest)))


def decide_rr(smap: SubcarrierMap, node: NodeId, perceived_s2: Iterable[PerceivedEntry]) -> bool:
    """RTS-receiver test: the node's own f2 pair was heard, unambiguously."""
    pair = smap.f2_of(node)
    return any(e.matches(pair) for e in perceived_s2)


def cts_target(smap: SubcarrierMap, perceived_s1: Iterable[PerceivedEntry]) -> NodeId:
    """Pick the advertiser to clear: lowest (subcarrier, symbol) sender pair.

    Ambiguous entries and pairs assigned to no node are skipped.
    Raises NoCandidate when nothing usable remains.
    """
    best: tuple[ScSymbol, NodeId] | None = None
    for entry in perceived_s1:
        if entry.ambiguous:
            continue
        pair = (entry.sc, next(iter(entry.symbols)))
        owner = smap.owner_of_f1(pair)
        if owner is None:
            continue
        if best is None or pair < best[0]:
            best = (pair, owner)
    if best is None:
        raise NoCandidate("no unambiguous mapped sender pair perceived")
    return best[1]


def cts_signal(smap: SubcarrierMap, sender: NodeId, target: NodeId) -> frozenset[ScSymbol]:
    """Round-3 grant: the granting node's f1 pair plus the cleared node's f2 pair."""
    if sender == target:
        raise ValueError("a node cannot address itself")
    return frozenset((smap.f1_of(sender), smap.f2_of(target)))


def _contains_clean(entries: frozenset[PerceivedEntry], pair: ScSymbol) -> bool:
    return any(e.matches(pair) for e in entries)


def _exactly(entries: frozenset[PerceivedEntry], pair: ScSymbol) -> bool:
    """True when the set holds exactly one entry and it is the clean ``pair``.

    Any ambiguous entry, extra entry or mismatch fails the test; this is
    what keeps the final decision conservative.
    """
    if len(entries) != 1:
        return False
    return next(iter(entries)).matches(pair)


def final_decision(smap: SubcarrierMap, state: ContentionState) -> TransmitDecision:
    """End-of-round-3 verdict for one node.

    A PT transmits iff its destination's grant was heard and that grant is
    the only upper-half activity in its domain. An RR holding a packet for
    its advertiser transmits alongside the primary iff the advertiser was
    the only round-2 sender and its own grant the only round-3 one.
    Everyone else stays silent.
    """
    if not state.has_data or state.dest is None:
        return SILENT
    if state.role is Role.PRIMARY_TRANSMITTER:
        dest_granted = _contains_clean(state.r3_perceived_s1, smap.f1_of(state.dest))
        sole_grant = _exactly(state.r3_perceived_s2, smap.f2_of(state.node))
        if dest_granted and sole_grant:
            return transmit_primary(state.dest)
        return SILENT
    if state.role is Role.RTS_RECEIVER:
        sole_advertiser = _exactly(state.r2_perceived_s1, smap.f1_of(state.dest))
        own_grant_only = _exactly(state.r3_perceived_s1, smap.f1_of(state.node))
        if sole_advertiser and own_grant_only:
            return transmit_secondary(state.dest)
        return SILENT
    return SILENT
