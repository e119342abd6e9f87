"""Frequency-domain RTS/CTS channel access for full-duplex OFDM networks.

A pure protocol core (subcarrier mappings and the three-round handshake
decision rules), a random-geometric channel model, a deterministic
discrete-event simulator with four comparison MACs, metric aggregation
and an exhaustive small-instance validation oracle.
"""

from .channel import (
    AirSnapshot,
    Perception,
    Topology,
    coverage_radius,
    from_positions,
    generate_topology,
    is_connected,
    perceive,
)
from .contention import (
    ContentionState,
    Decision,
    PerceivedEntry,
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
from .mapping import SubcarrierMap, build_map
from .metrics import MetricsReport, aggregate, average_delay, normalized_throughput
from .scenarios import replay, scenario, trace_lines
from .sim.config import PROTOCOLS, SimConfig
from .sim.engine import Simulation, run_simulation
from .sim.handshake import run_contention, deliver
from .sim.traffic import Fate, Packet, poisson_arrivals
from .sweep import SweepSpec, run_sweep, write_results
from .timing import TimingParams, access_timing
from .validate import validate_exhaustive

__all__ = [
    "AirSnapshot",
    "ContentionState",
    "Decision",
    "Fate",
    "MetricsReport",
    "Packet",
    "PerceivedEntry",
    "Perception",
    "PROTOCOLS",
    "Role",
    "SimConfig",
    "Simulation",
    "SubcarrierMap",
    "SweepSpec",
    "TimingParams",
    "Topology",
    "TransmitDecision",
    "access_timing",
    "aggregate",
    "average_delay",
    "build_map",
    "coverage_radius",
    "cts_signal",
    "cts_target",
    "decide_pt",
    "decide_rr",
    "deliver",
    "final_decision",
    "from_positions",
    "generate_topology",
    "is_connected",
    "normalized_throughput",
    "perceive",
    "poisson_arrivals",
    "replay",
    "round1_choose",
    "rts_signal",
    "run_contention",
    "run_simulation",
    "run_sweep",
    "scenario",
    "trace_lines",
    "validate_exhaustive",
    "write_results",
]

__version__ = "0.1.0"
