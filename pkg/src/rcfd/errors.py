"""Exception types shared across the package."""


class RcfdError(Exception):
    """Base class for all errors raised by this package."""


class CapacityExceeded(RcfdError):
    """More nodes than the subcarrier mapping can host (N > m*S/2)."""


class UnmappedNode(RcfdError):
    """A node id has no entry in the subcarrier mapping."""


class NoCandidate(RcfdError):
    """No unambiguous, mapped sender found among perceived subcarriers."""


class DegenerateNetwork(RcfdError):
    """Topology operations need at least two nodes."""


class ZeroDuration(RcfdError):
    """Throughput over a zero-length interval is undefined."""


class NoTerminalPackets(RcfdError):
    """Average delay needs at least one delivered or discarded packet."""


class ConfigInvalid(RcfdError):
    """Simulation configuration failed validation."""


class StateSpaceTooLarge(RcfdError):
    """Exhaustive validation refused: instance beyond the enumerable bound."""
