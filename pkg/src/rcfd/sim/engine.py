"""Deterministic discrete-event engine and the shared medium model.

Time is in seconds. One run is strictly single-threaded: a single event
heap ordered by (time, kind rank, subject node, insertion sequence), one
seeded generator per purpose (topology, traffic, per-node MAC), and
sorted iteration everywhere sets are walked, so identical inputs replay
bit-identically.

Medium model
------------
Two kinds of emission share the air:

* frames (RTS/CTS/DATA/ACK) occupy the whole band for their duration;
* contention-round subcarrier symbols occupy one global slot of the
  contention grid (slot length = one padded OFDM symbol).

Every emission makes the channel busy for the emitter's neighbors. A
frame reception is corrupted when any third node audible at the receiver
transmits a frame at the same time; contention-round symbols corrupt no
frames but a frame overlapping a contention slot floods that slot for
the emitter's neighbors, suppressing every per-subcarrier test there.
The receiving node's own concurrent transmission never corrupts anything
(ideal self-interference cancellation all around).
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from ..channel import AirSnapshot, Topology, generate_topology, perceive
from ..mapping import NodeId, ScSymbol, SubcarrierMap, build_map
from ..metrics import MetricsReport
from .config import ACK_BITS, HEADER_BITS, SIFS_US, SLOT_TIME_US, SimConfig, derive_seed
from .traffic import Fate, Packet, generate_traffic, traffic_checksum

US = 1e-6

# Tie-break ranks for simultaneous events.
_RANK_FRAME_END = 0
_RANK_SLOT_END = 1
_RANK_GRID = 2
_RANK_TIMER = 3
_RANK_ARRIVAL = 4
_RANK_FRAME_START = 5


@dataclass
class Frame:
    """One whole-band transmission."""

    kind: str  # "data" | "ack" | "rts" | "cts"
    src: NodeId
    dest: NodeId
    t0: float
    t1: float
    packet: Optional[Packet] = None
    # Channel-reservation horizon advertised by RTS/CTS frames.
    reserve_until: float = 0.0
    overlappers: list["Frame"] = field(default_factory=list)

    @property
    def duration(self) -> float:
        return self.t1 - self.t0


class Simulation:
    """One protocol, one topology, one packet set, one seed."""

    def __init__(
        self,
        config: SimConfig,
        topology: Topology | None = None,
        packets: list[Packet] | None = None,
        trace: Callable[[str], None] | None = None,
        record_frames: bool = False,
    ) -> None:
        from .macs import MAC_REGISTRY  # late import: macs depends on this module

        config.validate()
        self.config = config
        self.topology = topology if topology is not None else make_topology(config)
        if packets is None:
            rng = random.Random(derive_seed(config.seed, "traffic"))
            packets = generate_traffic(config, self.topology, rng)
        self.packets = packets
        self.checksum = traffic_checksum(packets)
        self.now = 0.0
        self._heap: list = []
        self._seq = 0
        self._trace = trace
        self.record_frames = record_frames
        self.frame_log: list[Frame] = []

        self.slot_dur = config.timing.t_round * US
        self.smap: SubcarrierMap | None = None
        if config.mac in ("rcfd", "back2f"):
            self.smap = build_map(config.N, config.S, config.m)

        self._busy: dict[NodeId, int] = {n: 0 for n in range(1, config.N + 1)}
        self._active_frames: list[Frame] = []
        self._outgoing: dict[NodeId, Frame | None] = {n: None for n in self._busy}
        self._incoming: dict[NodeId, int] = {n: 0 for n in self._busy}

        self._timers: dict[int, tuple[NodeId, str, object]] = {}
        self._timer_seq = 0

        self._grid_waiters: dict[int, list[NodeId]] = {}
        self._grid_scheduled: set[int] = set()
        self._registered_for: dict[NodeId, int] = {}

        self._slots: dict[int, dict] = {}
        self._open_slot: int | None = None

        # counters
        self.delivered_bits = 0
        self.delivered = 0
        self.discarded = 0
        self.collisions = 0
        self.fd_transmissions = 0
        self._collision_windows: dict[NodeId, list[tuple[float, float]]] = {}

        # Injectable ACK fault for tests (ideal channel otherwise).
        self.ack_fault: Callable[[Packet], bool] | None = None

        # Per-node streams are protocol-independent so seed-paired protocol
        # comparisons draw the same numbers at the same decision points.
        mac_cls = MAC_REGISTRY[config.mac]
        self.macs = {
            n: mac_cls(self, n, random.Random(derive_seed(config.seed, "mac", n)))
            for n in range(1, config.N + 1)
        }

        for p in packets:
            self._push(p.t_gen, _RANK_ARRIVAL, p.src, "arrival", p)

    # ------------------------------------------------------------------ events

    def _push(self, time: float, rank: int, subject: NodeId, kind: str, payload) -> None:
        self._seq += 1
        heapq.heappush(self._heap, (time, rank, subject, self._seq, kind, payload))

    def trace(self, text: str) -> None:
        if self._trace is not None:
            self._trace(f"{self.now:.9f} {text}")

    def set_timer(self, delay: float, node: NodeId, kind: str, payload=None) -> int:
        self._timer_seq += 1
        token = self._timer_seq
        self._timers[token] = (node, kind, payload)
        self._push(self.now + delay, _RANK_TIMER, node, "timer", token)
        return token

    def cancel_timer(self, token: int | None) -> None:
        if token is not None:
            self._timers.pop(token, None)

    def run(self) -> MetricsReport:
        T = self.config.T
        while self._heap:
            time, _rank, _subj, _seq, kind, payload = heapq.heappop(self._heap)
            if time > T:
                break
            self.now = time
            if kind == "arrival":
                self._handle_arrival(payload)
            elif kind == "frame_end":
                self._handle_frame_end(payload)
            elif kind == "slot_end":
                self._handle_slot_end(payload)
            elif kind == "grid":
                self._handle_grid(payload)
            elif kind == "timer":
                entry = self._timers.pop(payload, None)
                if entry is not None:
                    node, tkind, tpayload = entry
                    self.macs[node].on_timer(tkind, tpayload)
        return self._report()

    # ---------------------------------------------------------------- arrivals

    def _handle_arrival(self, packet: Packet) -> None:
        self.trace(f"arrival n{packet.src} pkt={packet.id} dest={packet.dest}")
        if packet.dest is None:
            self.discard_packet(packet)
            return
        cap = self.config.queue_cap
        mac = self.macs[packet.src]
        if cap is not None and len(mac.queue) >= cap:
            self.discard_packet(packet)
            return
        mac.queue.append(packet)
        mac.on_arrival(packet)

    # ---------------------------------------------------------------- sensing

    def is_busy(self, node: NodeId) -> bool:
        """Physical carrier sense: any neighbor currently emitting."""
        return self._busy[node] > 0

    def node_free(self, node: NodeId) -> bool:
        """Radio uncommitted: neither transmitting nor receiving a frame."""
        return self._outgoing[node] is None and self._incoming[node] == 0

    def node_transmitting(self, node: NodeId) -> bool:
        return self._outgoing[node] is not None

    def _busy_delta(self, listeners: Iterable[NodeId], delta: int) -> None:
        for x in sorted(listeners):
            before = self._busy[x]
            self._busy[x] = before + delta
            if before == 0 and delta > 0:
                self.macs[x].on_channel_busy()
            elif self._busy[x] == 0 and delta < 0:
                self.macs[x].on_channel_idle()

    # ----------------------------------------------------------------- frames

    def frame_duration(self, bits: float, rate: float) -> float:
        return bits / rate

    def data_duration(self, size_bits: int) -> float:
        bits = size_bits + (HEADER_BITS if self.config.include_headers else 0)
        return bits / self.config.R_T

    def start_frame(
        self,
        kind: str,
        src: NodeId,
        dest: NodeId,
        duration: float,
        packet: Packet | None = None,
        reserve_until: float = 0.0,
    ) -> Frame:
        assert self._outgoing[src] is None, f"node {src} already transmitting"
        frame = Frame(kind=kind, src=src, dest=dest, t0=self.now, t1=self.now + duration,
                      packet=packet, reserve_until=reserve_until)
        for other in self._active_frames:
            other.overlappers.append(frame)
            frame.overlappers.append(other)
        self._active_frames.append(frame)
        self._outgoing[src] = frame
        if self.record_frames:
            self.frame_log.append(frame)
        if self._open_slot is not None:
            self._slots[self._open_slot]["wideband"].add(src)
        self.trace(f"{kind}_start n{src}->n{dest}" + (f" pkt={packet.id}" if packet else ""))
        self._busy_delta(self.topology.adjacency[src], +1)
        if self.topology.are_adjacent(src, dest):
            self._incoming[dest] += 1
            self.macs[dest].on_rx_start(frame)
        self._push(frame.t1, _RANK_FRAME_END, src, "frame_end", frame)
        return frame

    def start_data(self, src: NodeId, packet: Packet, secondary: bool = False) -> Frame:
        if secondary:
            self.fd_transmissions += 1
        assert packet.dest is not None
        return self.start_frame("data", src, packet.dest, self.data_duration(packet.size_bits),
                                packet=packet)

    def _decoded_at(self, frame: Frame, listener: NodeId) -> bool:
        """Any overlapping frame from a third node audible at the listener
        corrupts the reception; the listener's own transmission never does."""
        if not self.topology.are_adjacent(frame.src, listener) and frame.src != listener:
            return False
        adj = self.topology.adjacency[listener]
        for g in frame.overlappers:
            if g.src == frame.src or g.src == listener:
                continue
            if g.src in adj:
                return False
        return True

    def _handle_frame_end(self, frame: Frame) -> None:
        self._active_frames.remove(frame)
        self._outgoing[frame.src] = None
        dest_heard = self.topology.are_adjacent(frame.src, frame.dest)
        ok = False
        if dest_heard:
            self._incoming[frame.dest] -= 1
            ok = self._decoded_at(frame, frame.dest)
        self.trace(f"{frame.kind}_end n{frame.src}->n{frame.dest} ok={ok}")
        if frame.kind == "data" and frame.packet is not None:
            if ok:
                if frame.packet.fate is Fate.PENDING:
                    frame.packet.finish(Fate.DELIVERED, self.now)
                    self.delivered += 1
                    self.delivered_bits += frame.packet.size_bits
                    self.trace(f"delivered pkt={frame.packet.id} delay={frame.packet.delay:.6f}")
            elif dest_heard:
                self._count_collision(frame)
        # The receiver registers its response duty before the idle edges
        # propagate, or its own pending traffic could jump the SIFS gap.
        if dest_heard:
            self.macs[frame.dest].on_rx_frame(frame, ok)
        self._busy_delta(self.topology.adjacency[frame.src], -1)
        for x in sorted(self.topology.adjacency[frame.src] - {frame.dest}):
            if self._decoded_at(frame, x):
                self.macs[x].on_overhear(frame)
        self.macs[frame.src].on_tx_end(frame)

    def _count_collision(self, frame: Frame) -> None:
        """Count one collision per burst of mutually overlapping losses at a receiver."""
        windows = self._collision_windows.setdefault(frame.dest, [])
        windows[:] = [(a, b) for a, b in windows if b > frame.t0]
        if any(a < frame.t1 and b > frame.t0 for a, b in windows):
            return
        windows.append((frame.t0, frame.t1))
        self.collisions += 1
        self.trace(f"collision at n{frame.dest}")

    # ------------------------------------------------------------- packet fates

    def discard_packet(self, packet: Packet) -> None:
        if packet.fate is Fate.PENDING:
            packet.finish(Fate.DISCARDED, self.now)
            self.discarded += 1
            self.trace(f"discarded pkt={packet.id}")

    # ------------------------------------------------------------ contention grid

    def next_boundary(self, phase0: bool) -> int:
        """First grid slot index strictly after now (phase-0 aligned if asked)."""
        k = int((self.now + 1e-12) // self.slot_dur) + 1
        if phase0 and k % 3:
            k += 3 - k % 3
        return k

    def grid_register(self, node: NodeId, phase0: bool) -> None:
        idx = self.next_boundary(phase0)
        self._grid_waiters.setdefault(idx, []).append(node)
        self._registered_for[node] = idx
        if idx not in self._grid_scheduled:
            self._grid_scheduled.add(idx)
            self._push(idx * self.slot_dur, _RANK_GRID, 0, "grid", idx)

    def grid_unregister(self, node: NodeId) -> None:
        idx = self._registered_for.pop(node, None)
        if idx is not None and idx in self._grid_waiters:
            try:
                self._grid_waiters[idx].remove(node)
            except ValueError:
                pass

    def _handle_grid(self, idx: int) -> None:
        self._grid_scheduled.discard(idx)
        waiters = self._grid_waiters.pop(idx, [])
        # Snapshot who is still validly registered before any callback runs:
        # the first joiner's emission makes the slot audible to co-contenders,
        # which must not knock them out of this same boundary.
        valid = [n for n in sorted(set(waiters)) if self._registered_for.get(n) == idx]
        for node in valid:
            del self._registered_for[node]
        for node in valid:
            self.macs[node].on_grid_boundary(idx)

    def _slot_record(self, idx: int) -> dict:
        rec = self._slots.get(idx)
        if rec is None:
            rec = {
                "emit": {},
                "wideband": {f.src for f in self._active_frames},
                "listeners": set(),
            }
            self._slots[idx] = rec
            self._open_slot = idx
            self._push((idx + 1) * self.slot_dur, _RANK_SLOT_END, 0, "slot_end", idx)
        return rec

    def slot_emit(self, node: NodeId, pairs: frozenset[ScSymbol], idx: int) -> None:
        rec = self._slot_record(idx)
        assert node not in rec["emit"], f"node {node} emits twice in slot {idx}"
        rec["emit"][node] = pairs
        rec["listeners"].add(node)
        self.trace(f"slot{idx} emit n{node} scs={sorted(sc for sc, _ in pairs)}")
        self._busy_delta(self.topology.adjacency[node], +1)

    def listen_slot(self, node: NodeId, idx: int) -> None:
        self._slot_record(idx)["listeners"].add(node)

    def _handle_slot_end(self, idx: int) -> None:
        rec = self._slots.pop(idx)
        if self._open_slot == idx:
            self._open_slot = None
        for node in sorted(rec["emit"]):
            self._busy_delta(self.topology.adjacency[node], -1)
        snapshot = AirSnapshot(
            transmissions=rec["emit"],
            wideband=frozenset(rec["wideband"]),
        )
        affected = set(rec["listeners"])
        for emitter in rec["emit"]:
            affected |= self.topology.adjacency[emitter]
        assert self.smap is not None
        for node in sorted(affected):
            perc = perceive(snapshot, self.topology, node, self.smap)
            self.macs[node].on_round_boundary(idx, perc)

    # ------------------------------------------------------------------ report

    def _report(self) -> MetricsReport:
        cfg = self.config
        pending = sum(1 for p in self.packets if p.fate is Fate.PENDING)
        assert self.delivered + self.discarded + pending == len(self.packets)
        terminal = [p for p in self.packets if p.fate is not Fate.PENDING]
        avg_delay = sum(p.delay for p in terminal) / len(terminal) if terminal else 0.0
        G = self.delivered_bits / cfg.T
        return MetricsReport(
            protocol=cfg.mac,
            N=cfg.N,
            seed=cfg.seed,
            G=G,
            G0=G / (cfg.N * cfg.R_S),
            avg_delay=avg_delay,
            delivered=self.delivered,
            discarded=self.discarded,
            collisions=self.collisions,
            fd_transmissions=self.fd_transmissions,
        )

    # --------------------------------------------------------------- constants

    @property
    def sifs(self) -> float:
        return SIFS_US * US

    @property
    def slot_time(self) -> float:
        return SLOT_TIME_US * US

    @property
    def ack_duration(self) -> float:
        return ACK_BITS / self.config.control_rate


def make_topology(config: SimConfig) -> Topology:
    """Seeded random topology; a single node gets the trivial empty one."""
    if config.N == 1:
        return Topology(N=1, positions=((0.5, 0.5),), radius=0.0, adjacency={1: frozenset()})
    return generate_topology(config.N, derive_seed(config.seed, "topology"))


def run_simulation(
    config: SimConfig,
    topology: Topology | None = None,
    packets: list[Packet] | None = None,
    trace: Callable[[str], None] | None = None,
) -> MetricsReport:
    """Build and run one simulation; deterministic in (config, seed)."""
    return Simulation(config, topology=topology, packets=packets, trace=trace).run()
