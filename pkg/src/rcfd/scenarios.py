"""The two worked hidden-terminal scenarios, replayable round by round.

Both use three nodes where the middle one hears both ends but the ends
cannot hear each other, six subcarriers and the canonical mapping
(f1(i) = i, f2(i) = i + 3).

Scenario 1: both ends address the middle node — the classic hidden
terminal. One end wins cleanly; the other is denied by the grant it
cannot match.

Scenario 2: one end and the middle node hold packets for each other —
the handshake clears both, yielding a full-duplex exchange.
"""

from __future__ import annotations

from dataclasses import dataclass

from .channel import Topology, from_positions
from .contention import Decision, TransmitDecision
from .mapping import SubcarrierMap, build_map
from .sim.handshake import ContentionResult, run_contention


@dataclass(frozen=True)
class Scenario:
    number: int
    description: str
    topology: Topology
    intents: dict[int, int | None]
    chosen: dict[int, int]


def _three_node_chain() -> Topology:
    # 1 and 3 at the ends, 2 in the middle; radius covers only adjacent pairs.
    return from_positions([(0.1, 0.5), (0.5, 0.5), (0.9, 0.5)], radius=0.5)


def scenario(number: int) -> Scenario:
    if number == 1:
        return Scenario(
            number=1,
            description="hidden terminals: n1 and n3 both address n2",
            topology=_three_node_chain(),
            intents={1: 2, 2: None, 3: 2},
            chosen={1: 4, 3: 5},
        )
    if number == 2:
        return Scenario(
            number=2,
            description="mutual traffic: n1 and n2 address each other",
            topology=_three_node_chain(),
            intents={1: 2, 2: 1, 3: None},
            chosen={1: 3, 2: 5},
        )
    raise ValueError("scenario number must be 1 or 2")


def scenario_map() -> SubcarrierMap:
    return build_map(3, 6, 1)


def replay(number: int) -> ContentionResult:
    sc = scenario(number)
    return run_contention(scenario_map(), sc.topology, sc.intents, chosen=sc.chosen)


def _fmt_decision(d: TransmitDecision) -> str:
    if d.kind is Decision.SILENT:
        return "silent"
    return f"{d.kind.value} -> n{d.dest}"


def trace_lines(number: int) -> list[str]:
    """Human-readable round-by-round trace of a scenario replay."""
    sc = scenario(number)
    result = replay(number)
    lines = [f"scenario {number}: {sc.description}"]
    for node in sorted(sc.topology.adjacency):
        nbrs = ",".join(f"n{x}" for x in sorted(sc.topology.adjacency[node]))
        lines.append(f"  n{node} hears {{{nbrs}}}")
    for r in (1, 2, 3):
        label = ("contention ping", "advertisement", "grant")[r - 1]
        for node in sorted(sc.topology.adjacency):
            scs = sorted(result.emitted_scs(r, node))
            if scs:
                lines.append(f"round {r} ({label}): n{node} tx " + " ".join(f"s{i}" for i in scs))
    for node in sorted(result.decisions):
        lines.append(f"decision n{node}: {_fmt_decision(result.decisions[node])}")
    return lines
