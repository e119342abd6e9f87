"""Access-phase timing: scan interval plus three one-symbol rounds."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class TimingParams:
    """Durations in microseconds.

    ``t_scan`` is the idle-sensing interval before contention (a DIFS in
    802.11g terms), ``t_sym`` one OFDM symbol, ``t_p`` the propagation
    allowance padded around each symbol.
    """

    t_scan: float = 28.0
    t_sym: float = 4.0
    t_p: float = 1.0

    def __post_init__(self) -> None:
        if self.t_sym <= 0:
            raise ValueError("symbol duration must be positive")
        if self.t_scan < 0 or self.t_p < 0:
            raise ValueError("scan and propagation times cannot be negative")

    @property
    def t_round(self) -> float:
        return access_timing(self)[0]

    @property
    def t_acc(self) -> float:
        return access_timing(self)[1]


def access_timing(t: TimingParams) -> tuple[float, float]:
    """(round duration, full access duration) in microseconds.

    One round is a symbol padded by propagation on both sides; a full
    access is the scan followed by three rounds.
    """
    t_round = t.t_sym + 2.0 * t.t_p
    t_acc = t.t_scan + 3.0 * t_round
    return t_round, t_acc
