"""Simulation configuration and the key=value config-file format."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from ..errors import ConfigInvalid
from ..timing import TimingParams

PROTOCOLS = ("rcfd", "dcf", "dcf-rtscts", "fdmac-approx", "back2f")

# 802.11g-flavoured constants used by the time-domain baselines.
SLOT_TIME_US = 9.0
SIFS_US = 10.0
DIFS_US = 28.0
CW_MIN = 15
CW_MAX = 1023
ACK_BITS = 304
RTS_BITS = 352
CTS_BITS = 304
# PHY preamble + MAC header + FCS, charged only when overhead is enabled.
HEADER_BITS = 416


@dataclass(frozen=True)
class SimConfig:
    """One simulation run's parameters.

    Rates are bit/s, sizes bits, times seconds; the frequency-domain
    timing block is in microseconds. ``control_rate`` is the fixed basic
    rate used for ACK/RTS/CTS frames by every protocol alike.
    """

    N: int
    mac: str = "rcfd"
    R_S: float = 10_000.0
    L: int = 1000
    R_T: float = 1_000_000.0
    S: int = 64
    m: int = 2
    M: int = 1
    T: float = 10.0
    seed: int = 1
    retry_limit: int = 7
    queue_cap: Optional[int] = None
    timing: TimingParams = field(default_factory=TimingParams)
    control_rate: float = 1_000_000.0
    payload_dist: str = "fixed"
    include_headers: bool = False

    def validate(self) -> None:
        if self.N < 1:
            raise ConfigInvalid("N must be >= 1")
        if self.mac not in PROTOCOLS:
            raise ConfigInvalid(f"unknown protocol {self.mac!r}; choose from {PROTOCOLS}")
        for name in ("R_S", "R_T", "T", "control_rate"):
            if getattr(self, name) <= 0:
                raise ConfigInvalid(f"{name} must be positive")
        if self.L < 1:
            raise ConfigInvalid("L must be >= 1 bit")
        if self.S < 2 or self.S % 2:
            raise ConfigInvalid("S must be even and >= 2")
        if self.m < 1:
            raise ConfigInvalid("m must be >= 1")
        if self.M < 1:
            raise ConfigInvalid("M must be >= 1")
        if self.retry_limit < 1:
            raise ConfigInvalid("retry_limit must be >= 1")
        if self.queue_cap is not None and self.queue_cap < 1:
            raise ConfigInvalid("queue_cap must be >= 1 when set")
        if self.payload_dist not in ("fixed", "exponential"):
            raise ConfigInvalid("payload_dist must be 'fixed' or 'exponential'")
        if self.mac in ("rcfd", "back2f") and self.N > self.m * self.S // 2:
            raise ConfigInvalid(
                f"N={self.N} exceeds subcarrier-map capacity m*S/2={self.m * self.S // 2}"
            )

    @property
    def arrival_rate(self) -> float:
        """Packets per second per node."""
        return self.R_S / self.L


# Config files are flat `key = value` lines mirroring these names.
_INT_KEYS = {"N", "L", "S", "m", "M", "seed", "retry_limit", "queue_cap"}
_FLOAT_KEYS = {"R_S", "R_T", "T", "control_rate", "t_scan", "t_sym", "t_p"}
_STR_KEYS = {"mac", "payload_dist"}
_BOOL_KEYS = {"include_headers"}
CONFIG_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS | _BOOL_KEYS


def _parse_value(key: str, raw: str):
    try:
        if key in _INT_KEYS:
            return None if raw.lower() == "none" else int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key in _BOOL_KEYS:
            if raw.lower() in ("true", "1", "yes"):
                return True
            if raw.lower() in ("false", "0", "no"):
                return False
            raise ValueError(raw)
        return raw
    except ValueError:
        raise ConfigInvalid(f"bad value for {key}: {raw!r}") from None


def parse_config_text(text: str) -> dict:
    """Parse `key = value` lines; unknown keys are errors, not warnings."""
    values: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigInvalid(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        if key not in CONFIG_KEYS:
            raise ConfigInvalid(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigInvalid(f"line {lineno}: duplicate key {key!r}")
        values[key] = _parse_value(key, raw)
    return values


def config_from_mapping(values: dict) -> SimConfig:
    timing_kwargs = {k: values.pop(k) for k in ("t_scan", "t_sym", "t_p") if k in values}
    if "N" not in values:
        raise ConfigInvalid("config must set N")
    cfg = SimConfig(**values)
    if timing_kwargs:
        cfg = replace(cfg, timing=TimingParams(**{**vars(cfg.timing) | timing_kwargs}))
    cfg.validate()
    return cfg


def load_config(path: str | Path) -> SimConfig:
    return config_from_mapping(parse_config_text(Path(path).read_text()))


def derive_seed(*parts) -> int:
    """Stable 63-bit stream seed from heterogeneous parts.

    Uses SHA-256 over the '|'-joined reprs, so derived seeds are identical
    across machines and Python processes (unlike built-in hash()).
    """
    digest = hashlib.sha256("|".join(repr(p) for p in parts).encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1
