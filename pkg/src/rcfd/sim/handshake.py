"""Synchronized three-round handshake over a topology.

This module runs one full contention for nodes that enter it at the same
instant — the setting of the worked scenarios and of the exhaustive
validation oracle. The event engine reuses the same per-round decision
functions but drives them slot by slot.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Optional

from ..channel import AirSnapshot, Perception, Topology, perceive
from ..contention import (
    ContentionState,
    Decision,
    NoCandidate,
    Role,
    TransmitDecision,
    cts_signal,
    cts_target,
    decide_pt,
    decide_rr,
    final_decision,
    round1_choose,
    rts_signal,
)
from ..mapping import NodeId, ScSymbol, SubcarrierMap

Intents = Mapping[NodeId, Optional[NodeId]]


@dataclass
class ContentionResult:
    """Outcome of one synchronized contention.

    ``emissions`` records, per round, which (subcarrier, symbol) pairs each
    node transmitted; nodes that stayed quiet have no entry.
    """

    decisions: dict[NodeId, TransmitDecision]
    states: dict[NodeId, ContentionState]
    emissions: tuple[dict[NodeId, frozenset[ScSymbol]], ...]

    def emitted_scs(self, round_index: int, node: NodeId) -> frozenset[int]:
        """Subcarrier indices a node occupied in round 1, 2 or 3."""
        pairs = self.emissions[round_index - 1].get(node, frozenset())
        return frozenset(sc for sc, _sym in pairs)


def run_contention(
    smap: SubcarrierMap,
    topology: Topology,
    intents: Intents,
    chosen: Mapping[NodeId, int] | None = None,
    rng: random.Random | None = None,
) -> ContentionResult:
    """Run rounds 1-3 for all nodes simultaneously and decide who transmits.

    ``intents`` gives each node's destination (None = nothing to send).
    Round-1 picks come from ``chosen`` where provided, otherwise from
    ``rng``. Every node listens in every round and may end up granting a
    transmission even if it entered with nothing to send.
    """
    nodes = sorted(topology.adjacency)
    states: dict[NodeId, ContentionState] = {}
    for n in nodes:
        dest = intents.get(n)
        states[n] = ContentionState(node=n, has_data=dest is not None, dest=dest)

    # Round 1: every contender pings one subcarrier.
    r1_emit: dict[NodeId, frozenset[ScSymbol]] = {}
    for n in nodes:
        st = states[n]
        if not st.has_data:
            continue
        if chosen is not None and n in chosen:
            st.chosen_sc = chosen[n]
        else:
            if rng is None:
                raise ValueError("need forced picks or an rng for round 1")
            st.chosen_sc = round1_choose(True, rng, smap.S)
        if not 1 <= st.chosen_sc <= smap.S:
            raise ValueError(f"round-1 pick {st.chosen_sc} outside 1..{smap.S}")
        r1_emit[n] = frozenset(((st.chosen_sc, 0),))
    snap1 = AirSnapshot(r1_emit)
    for n in nodes:
        p = perceive(snap1, topology, n, smap)
        states[n].r1_perceived = p.all_scs
        if decide_pt(states[n].chosen_sc, p.all_scs):
            states[n].role = Role.PRIMARY_TRANSMITTER

    # Round 2: primary transmitters advertise (own f1, destination f2).
    r2_emit: dict[NodeId, frozenset[ScSymbol]] = {}
    for n in nodes:
        st = states[n]
        if st.role is Role.PRIMARY_TRANSMITTER and st.dest is not None:
            r2_emit[n] = rts_signal(smap, n, st.dest)
    snap2 = AirSnapshot(r2_emit)
    perceptions2: dict[NodeId, Perception] = {}
    for n in nodes:
        p = perceive(snap2, topology, n, smap)
        perceptions2[n] = p
        states[n].r2_perceived_s1 = p.s1
        states[n].r2_perceived_s2 = p.s2
        if states[n].role is Role.BYSTANDER and decide_rr(smap, n, p.s2):
            states[n].role = Role.RTS_RECEIVER

    # Round 3: RTS receivers grant the lowest advertiser.
    r3_emit: dict[NodeId, frozenset[ScSymbol]] = {}
    for n in nodes:
        if states[n].role is not Role.RTS_RECEIVER:
            continue
        try:
            target = cts_target(smap, perceptions2[n].s1)
        except NoCandidate:
            continue
        r3_emit[n] = cts_signal(smap, n, target)
    snap3 = AirSnapshot(r3_emit)
    for n in nodes:
        p = perceive(snap3, topology, n, smap)
        states[n].r3_perceived_s1 = p.s1
        states[n].r3_perceived_s2 = p.s2

    decisions = {n: final_decision(smap, states[n]) for n in nodes}
    return ContentionResult(decisions=decisions, states=states, emissions=(r1_emit, r2_emit, r3_emit))


@dataclass(frozen=True)
class DeliveryOutcome:
    transmitter: NodeId
    dest: NodeId
    delivered: bool


def deliver(
    decisions: Mapping[NodeId, TransmitDecision],
    topology: Topology,
) -> tuple[list[DeliveryOutcome], int]:
    """Resolve simultaneous equal-length data transmissions.

    A transmission to ``dest`` succeeds iff no third node audible at
    ``dest`` transmits at the same time; the destination's own concurrent
    transmission never hurts (full-duplex reception). Returns the
    per-transmission outcomes and the number of distinct receivers that
    saw a collision.
    """
    transmitters = {n for n, d in decisions.items() if d.kind is not Decision.SILENT}
    outcomes = []
    collided_receivers = set()
    for n in sorted(transmitters):
        dest = decisions[n].dest
        assert dest is not None
        interferers = (transmitters - {n, dest}) & topology.adjacency[dest]
        ok = not interferers
        if not ok:
            collided_receivers.add(dest)
        outcomes.append(DeliveryOutcome(transmitter=n, dest=dest, delivered=ok))
    return outcomes, len(collided_receivers)
