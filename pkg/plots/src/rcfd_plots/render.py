"""Turn a sweep-results CSV into the two comparison figures.

Input schema (exactly): ``protocol,N,metric,mean,stddev,runs`` — the
aggregated long-format table the simulator's sweep command writes. The
renderer is a pure function of the CSV contents: same bytes in, same
plotted points out.
"""

from __future__ import annotations

import csv
import io
import zlib
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

EXPECTED_HEADER = ["protocol", "N", "metric", "mean", "stddev", "runs"]

# Fixed styling per known protocol; anything else gets a stable fallback.
_STYLES = {
    "rcfd": ("tab:blue", "o"),
    "dcf": ("tab:orange", "s"),
    "dcf-rtscts": ("tab:green", "^"),
    "fdmac-approx": ("tab:red", "D"),
    "back2f": ("tab:purple", "v"),
}
_FALLBACK_COLORS = ("tab:brown", "tab:pink", "tab:gray", "tab:olive", "tab:cyan")
_FALLBACK_MARKERS = ("x", "+", "*", "p", "h")


class SchemaMismatch(Exception):
    """The CSV header does not match the sweep-results schema."""


@dataclass(frozen=True)
class Row:
    protocol: str
    N: int
    metric: str
    mean: float
    stddev: float
    runs: int


class SeriesTable:
    """Parsed sweep results, indexed by (protocol, N, metric)."""

    def __init__(self, rows: list[Row]):
        seen = set()
        for r in rows:
            key = (r.protocol, r.N, r.metric)
            if key in seen:
                raise SchemaMismatch(f"duplicate row for {key}")
            seen.add(key)
        self.rows = rows

    @classmethod
    def from_csv(cls, text: str) -> "SeriesTable":
        reader = csv.reader(io.StringIO(text))
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaMismatch("empty file") from None
        if header != EXPECTED_HEADER:
            raise SchemaMismatch(f"expected header {EXPECTED_HEADER}, got {header}")
        rows = []
        for lineno, rec in enumerate(reader, start=2):
            if not rec:
                continue
            if len(rec) != 6:
                raise SchemaMismatch(f"line {lineno}: expected 6 fields, got {len(rec)}")
            try:
                rows.append(
                    Row(
                        protocol=rec[0],
                        N=int(rec[1]),
                        metric=rec[2],
                        mean=float(rec[3]),
                        stddev=float(rec[4]),
                        runs=int(rec[5]),
                    )
                )
            except ValueError as exc:
                raise SchemaMismatch(f"line {lineno}: {exc}") from None
        return cls(rows)

    def protocols(self) -> list[str]:
        return sorted({r.protocol for r in self.rows})

    def series(self, protocol: str, metric: str) -> tuple[list[int], list[float], list[float], int]:
        """(N values ascending, means, stddevs, max runs) for one line."""
        rows = sorted(
            (r for r in self.rows if r.protocol == protocol and r.metric == metric),
            key=lambda r: r.N,
        )
        return (
            [r.N for r in rows],
            [r.mean for r in rows],
            [r.stddev for r in rows],
            max((r.runs for r in rows), default=0),
        )


def _style(protocol: str) -> tuple[str, str]:
    if protocol in _STYLES:
        return _STYLES[protocol]
    idx = zlib.crc32(protocol.encode()) % len(_FALLBACK_COLORS)
    return _FALLBACK_COLORS[idx], _FALLBACK_MARKERS[idx]


def _figure(table: SeriesTable, metric: str, ylabel: str, errorbars: bool, scale: float = 1.0):
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for protocol in table.protocols():
        xs, means, stds, runs = table.series(protocol, metric)
        if not xs:
            continue
        color, marker = _style(protocol)
        ys = [m * scale for m in means]
        if errorbars and runs > 1:
            ax.errorbar(
                xs, ys, yerr=[s * scale for s in stds],
                color=color, marker=marker, capsize=3, label=protocol,
            )
        else:
            ax.plot(xs, ys, color=color, marker=marker, label=protocol)
    ax.set_xlabel("number of nodes")
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    return fig


def throughput_figure(table: SeriesTable, errorbars: bool = True):
    fig = _figure(table, "G0", "normalized throughput", errorbars)
    fig.axes[0].set_ylim(0.0, 1.05)
    return fig


def delay_figure(table: SeriesTable, errorbars: bool = True):
    return _figure(table, "avg_delay", "average delay (s)", errorbars)


def render(csv_path: str | Path, out_dir: str | Path, errorbars: bool = True) -> list[Path]:
    """Write throughput and delay figures (png and svg each) to ``out_dir``."""
    plt.rcParams["svg.hashsalt"] = "rcfd-plots"
    table = SeriesTable.from_csv(Path(csv_path).read_text())
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, make in (("throughput", throughput_figure), ("delay", delay_figure)):
        fig = make(table, errorbars=errorbars)
        for ext in ("png", "svg"):
            path = out_dir / f"{name}.{ext}"
            fig.savefig(path, metadata={"Date": None} if ext == "svg" else None)
            written.append(path)
        plt.close(fig)
    return written
