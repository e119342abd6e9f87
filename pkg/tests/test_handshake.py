"""Synchronized contention: golden scenarios, winner uniqueness, exact-set laws."""

import itertools
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from rcfd.channel import Topology
from rcfd.contention import ContentionState, Decision, PerceivedEntry, Role, final_decision
from rcfd.mapping import build_map
from rcfd.scenarios import replay, scenario, trace_lines
from rcfd.sim.handshake import deliver, run_contention


def complete_graph(n: int) -> Topology:
    return Topology.from_adjacency(n, itertools.combinations(range(1, n + 1), 2))


# -- golden scenario 1: hidden terminals ------------------------------------


def test_scenario1_round_by_round():
    r = replay(1)
    assert r.emitted_scs(1, 1) == {4}
    assert r.emitted_scs(1, 3) == {5}
    assert r.emitted_scs(2, 1) == {1, 5}
    assert r.emitted_scs(2, 3) == {3, 5}
    assert r.emitted_scs(3, 2) == {2, 4}
    assert r.emitted_scs(2, 2) == set()
    assert r.decisions[1].kind is Decision.TRANSMIT_PRIMARY and r.decisions[1].dest == 2
    assert r.decisions[3].kind is Decision.SILENT
    assert r.decisions[2].kind is Decision.SILENT


def test_scenario1_roles_and_perceptions():
    r = replay(1)
    assert r.states[1].role is Role.PRIMARY_TRANSMITTER
    assert r.states[3].role is Role.PRIMARY_TRANSMITTER
    assert r.states[2].role is Role.RTS_RECEIVER
    assert {e.sc for e in r.states[2].r2_perceived_s1} == {1, 3}
    assert {e.sc for e in r.states[3].r3_perceived_s2} == {4}  # grant names n1, not n3


def test_scenario1_delivery_is_collision_free(chain3):
    r = replay(1)
    outcomes, collisions = deliver(r.decisions, chain3)
    assert [o.delivered for o in outcomes] == [True]
    assert collisions == 0


# -- golden scenario 2: full-duplex pair -------------------------------------


def test_scenario2_decisions():
    r = replay(2)
    assert r.decisions[1].kind is Decision.TRANSMIT_PRIMARY and r.decisions[1].dest == 2
    assert r.decisions[2].kind is Decision.TRANSMIT_SECONDARY and r.decisions[2].dest == 1
    assert r.decisions[3].kind is Decision.SILENT


def test_scenario2_emissions():
    r = replay(2)
    assert r.emitted_scs(2, 1) == {1, 5}
    assert r.emitted_scs(3, 2) == {2, 4}
    assert r.emitted_scs(2, 2) == set()  # lost the first round, so no advertisement


def test_scenario2_delivery_both_ways(chain3):
    r = replay(2)
    outcomes, collisions = deliver(r.decisions, chain3)
    assert {(o.transmitter, o.dest, o.delivered) for o in outcomes} == {
        (1, 2, True),
        (2, 1, True),
    }
    assert collisions == 0


def test_scenario_trace_lines_mention_decisions():
    lines = trace_lines(1)
    assert any("decision n1: primary -> n2" in ln for ln in lines)
    assert any("decision n3: silent" in ln for ln in lines)


def test_scenario_mutual_pair_symmetry():
    # If the middle node had won the first round instead, the outcome flips
    # roles but still clears both directions.
    sc = scenario(2)
    smap = build_map(3, 6, 1)
    r = run_contention(smap, sc.topology, sc.intents, chosen={1: 5, 2: 3})
    assert r.decisions[2].kind is Decision.TRANSMIT_PRIMARY and r.decisions[2].dest == 1
    assert r.decisions[1].kind is Decision.TRANSMIT_SECONDARY and r.decisions[1].dest == 2


# -- single-domain properties -------------------------------------------------


def test_single_winner_on_complete_graphs_exhaustive():
    # All contenders picking distinct subcarriers: exactly the minimum wins.
    for n in (2, 3, 4, 5):
        smap = build_map(n, 8, 2)
        topo = complete_graph(n)
        contenders = list(range(1, n + 1))
        for picks in itertools.permutations(range(1, 9), len(contenders)):
            intents = {i: (i % n) + 1 for i in contenders}
            chosen = dict(zip(contenders, picks))
            r = run_contention(smap, topo, intents, chosen=chosen)
            pts = [i for i in contenders if r.states[i].role is Role.PRIMARY_TRANSMITTER]
            assert pts == [min(chosen, key=chosen.get)]


def test_pt_never_rr_same_contention():
    smap = build_map(4, 8, 1)
    rng = random.Random(0)
    for trial in range(300):
        n = rng.randint(2, 4)
        edges = [
            (a, b)
            for a, b in itertools.combinations(range(1, n + 1), 2)
            if rng.random() < 0.6
        ]
        topo = Topology.from_adjacency(n, edges)
        intents = {}
        for i in range(1, n + 1):
            nbrs = sorted(topo.adjacency[i])
            intents[i] = rng.choice(nbrs) if nbrs and rng.random() < 0.8 else None
        r = run_contention(smap, topo, intents, rng=rng)
        for st_ in r.states.values():
            assert not (
                st_.role is Role.PRIMARY_TRANSMITTER and st_.role is Role.RTS_RECEIVER
            )
        # decision kinds always match roles
        for i, d in r.decisions.items():
            if d.kind is Decision.TRANSMIT_PRIMARY:
                assert r.states[i].role is Role.PRIMARY_TRANSMITTER
            if d.kind is Decision.TRANSMIT_SECONDARY:
                assert r.states[i].role is Role.RTS_RECEIVER


def test_run_contention_deterministic(map6, chain3):
    a = run_contention(map6, chain3, {1: 2, 2: None, 3: 2}, rng=random.Random(3))
    b = run_contention(map6, chain3, {1: 2, 2: None, 3: 2}, rng=random.Random(3))
    assert a.decisions == b.decisions
    assert a.emissions == b.emissions


def test_single_contender_with_receiver(map6, pair2):
    r = run_contention(map6, pair2, {1: 2, 2: None}, chosen={1: 6})
    assert r.decisions[1].kind is Decision.TRANSMIT_PRIMARY
    assert r.states[2].role is Role.RTS_RECEIVER


# -- exact-set law under supersets -------------------------------------------


@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_any_superset_on_exact_sets_forces_silence(data):
    smap = build_map(3, 6, 1)
    extra_s2 = data.draw(
        st.sets(st.tuples(st.integers(4, 6), st.just(0)), min_size=1, max_size=3),
        label="extra_s2",
    )
    extras = frozenset(PerceivedEntry(sc, frozenset((sym,))) for sc, sym in extra_s2)
    required = PerceivedEntry(4, frozenset((0,)))  # n1's own upper-half pair
    state = ContentionState(
        node=1,
        has_data=True,
        dest=2,
        chosen_sc=3,
        role=Role.PRIMARY_TRANSMITTER,
        r3_perceived_s1=frozenset({PerceivedEntry(2, frozenset((0,)))}),
        r3_perceived_s2=frozenset({required}) | extras,
    )
    decision = final_decision(smap, state)
    if extras <= {required}:
        assert decision.kind is Decision.TRANSMIT_PRIMARY
    else:
        assert decision.kind is Decision.SILENT


# -- deliver ------------------------------------------------------------------


def test_deliver_forced_conflict(chain3, map6):
    # Synthetic: both ends cleared toward the middle — both fail, one collision.
    from rcfd.contention import transmit_primary

    decisions = {1: transmit_primary(2), 3: transmit_primary(2)}
    outcomes, collisions = deliver(decisions, chain3)
    assert all(not o.delivered for o in outcomes)
    assert collisions == 1
