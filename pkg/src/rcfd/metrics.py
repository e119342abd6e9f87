"""Per-run metrics and their aggregation across runs."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .errors import NoTerminalPackets, ZeroDuration
from .sim.traffic import Fate, Packet

# Aggregation order for report rows; fixed so output is reproducible.
METRIC_FIELDS = ("G", "G0", "avg_delay", "delivered", "discarded", "collisions", "fd_transmissions")


@dataclass(frozen=True)
class MetricsReport:
    """Outcome of one simulation run."""

    protocol: str
    N: int
    seed: int
    G: float
    G0: float
    avg_delay: float
    delivered: int
    discarded: int
    collisions: int
    fd_transmissions: int

    def to_dict(self) -> dict:
        return asdict(self)


def normalized_throughput(
    delivered_payload_bits: float, elapsed: float, N: int, R_S: float
) -> tuple[float, float]:
    """(system throughput G, normalized throughput G0).

    G is delivered payload per second; G0 divides it by the nominal
    offered rate N*R_S, i.e. the fraction of generated traffic actually
    carried.
    """
    if elapsed <= 0:
        raise ZeroDuration("throughput needs a positive observation window")
    G = delivered_payload_bits / elapsed
    return G, G / (N * R_S)


def average_delay(packets: Iterable[Packet]) -> float:
    """Mean generation-to-completion time over delivered and discarded packets.

    Pending packets are excluded; a discarded packet counts up to the
    instant it was dropped.
    """
    delays = [p.delay for p in packets if p.fate is not Fate.PENDING]
    if not delays:
        raise NoTerminalPackets("no delivered or discarded packets")
    return sum(delays) / len(delays)


def _mean_std(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    mean = sum(values) / n
    if n < 2:
        return mean, 0.0
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return mean, math.sqrt(var)


def aggregate(reports: Iterable[MetricsReport]) -> list[dict]:
    """Group reports by (protocol, N) and compute mean/sample-stddev rows.

    Returns one row per (protocol, N, metric), ordered by protocol name,
    then N ascending, then the fixed metric order.
    """
    groups: dict[tuple[str, int], list[MetricsReport]] = {}
    for r in reports:
        groups.setdefault((r.protocol, r.N), []).append(r)
    rows = []
    for (protocol, n) in sorted(groups):
        members = groups[(protocol, n)]
        for metric in METRIC_FIELDS:
            mean, std = _mean_std([float(getattr(r, metric)) for r in members])
            rows.append(
                {
                    "protocol": protocol,
                    "N": n,
                    "metric": metric,
                    "mean": mean,
                    "stddev": std,
                    "runs": len(members),
                }
            )
    return rows
