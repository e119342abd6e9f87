"""The five MAC protocols under comparison.

Each node runs one instance; the engine drives it through the entry
points (arrivals, carrier-sense edges, contention-round boundaries,
frame starts/ends, timers). Every instance owns a private random stream,
so behavior is deterministic given the run seed.

Families
--------
* frequency-domain: ``RcfdMac`` (three-round handshake, grant-triggered
  deferral, full-duplex secondary transmissions) and ``Back2fMac`` (one
  round, lowest subcarrier grabs the channel, nothing else);
* time-domain CSMA/CA: ``DcfMac`` (binary exponential backoff),
  ``DcfRtsCtsMac`` (adds the RTS/CTS reservation handshake) and
  ``FdMacApprox`` (RTS/CTS plus a bidirectional full-duplex exchange
  when the receiver holds a packet for the requester).

Carrier sensing is instantaneous within coverage (zero effective
propagation), so two same-domain stations whose timers expire at the
same instant serialize instead of colliding; collisions come from hidden
terminals and from transmissions started toward busy receivers.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Optional

from ..contention import (
    SILENT,
    ContentionState,
    Decision,
    Role,
    cts_signal,
    cts_target,
    decide_pt,
    decide_rr,
    final_decision,
    round1_choose,
    rts_signal,
)
from ..channel import Perception
from ..errors import NoCandidate
from ..mapping import NodeId, ScSymbol
from .config import CTS_BITS, CW_MAX, CW_MIN, DIFS_US, RTS_BITS
from .engine import Frame, Simulation, US
from .traffic import Fate, Packet


class MacProtocol:
    """Shared queueing, ACK response and retry bookkeeping."""

    name = "base"

    def __init__(self, engine: Simulation, node: NodeId, rng: random.Random) -> None:
        self.engine = engine
        self.node = node
        self.rng = rng
        self.queue: deque[Packet] = deque()
        self._responding = 0  # pending CTS/ACK duties that outrank own traffic
        self._pending_tx: Optional[dict] = None
        self._ack_token: Optional[int] = None

    # -- entry points (default no-ops) ------------------------------------
    def on_arrival(self, packet: Packet) -> None:
        self._kick()

    def on_channel_busy(self) -> None:
        pass

    def on_channel_idle(self) -> None:
        pass

    def on_grid_boundary(self, idx: int) -> None:
        pass

    def on_round_boundary(self, idx: int, perc: Perception) -> None:
        pass

    def on_rx_start(self, frame: Frame) -> None:
        pass

    def on_rx_frame(self, frame: Frame, ok: bool) -> None:
        if frame.kind == "data" and ok:
            self._responding += 1
            self.engine.set_timer(self.engine.sifs, self.node, "send_ack", frame)
        elif frame.kind == "ack" and ok:
            self._ack_received(frame)

    def on_overhear(self, frame: Frame) -> None:
        pass

    def on_tx_end(self, frame: Frame) -> None:
        if frame.kind == "data":
            self._arm_ack_wait()
        elif frame.kind == "ack":
            self._responding -= 1
            self._resume_after_duty()

    def on_timer(self, kind: str, payload) -> None:
        if kind == "send_ack":
            fault = self.engine.ack_fault
            drop = fault is not None and fault(payload.packet)
            # A radio already mid-transmission abandons the duty (the
            # sender will retry); only possible when a short foreign frame
            # slipped entirely inside our SIFS gap.
            if drop or self.engine.node_transmitting(self.node):
                self._responding -= 1
                self.engine.trace(f"ack_skipped n{self.node}")
                self._resume_after_duty()
                return
            self.engine.start_frame(
                "ack", self.node, payload.src, self.engine.ack_duration, packet=payload.packet
            )
        elif kind == "ack_timeout":
            self._ack_token = None
            self._tx_done(False)

    # -- own-transmission bookkeeping --------------------------------------
    def _arm_ack_wait(self) -> None:
        assert self._pending_tx is not None
        timeout = self.engine.sifs + self.engine.ack_duration + self.engine.slot_time
        self._ack_token = self.engine.set_timer(timeout, self.node, "ack_timeout")

    def _ack_received(self, frame: Frame) -> None:
        pending = self._pending_tx
        if pending is None or frame.packet is not pending["packet"]:
            return
        self.engine.cancel_timer(self._ack_token)
        self._ack_token = None
        self._tx_done(True)

    def _settle_packet(self, packet: Packet, pulled: bool, success: bool) -> None:
        """Drop, discard or requeue after an attempt; attempts were counted at tx start."""
        if success or packet.fate is Fate.DELIVERED:
            if not pulled:
                assert self.queue[0] is packet
                self.queue.popleft()
        elif packet.attempts >= self.engine.config.retry_limit:
            if not pulled:
                self.queue.popleft()
            self.engine.discard_packet(packet)
        else:
            if pulled:
                self.queue.appendleft(packet)

    def _tx_done(self, success: bool) -> None:
        raise NotImplementedError

    def _resume_after_duty(self) -> None:
        self._kick()

    def _kick(self) -> None:
        raise NotImplementedError


# --------------------------------------------------------------------------
# frequency-domain MACs
# --------------------------------------------------------------------------


class _FreqMac(MacProtocol):
    """Scan-then-contend skeleton shared by the frequency-domain MACs."""

    PHASE0_ALIGNED = True

    def __init__(self, engine: Simulation, node: NodeId, rng: random.Random) -> None:
        super().__init__(engine, node, rng)
        self.state = "idle"  # idle | scanning | wait_boundary | contending | tx | awaiting
        self._scan_token: Optional[int] = None
        self._t_scan = engine.config.timing.t_scan * US

    def _kick(self) -> None:
        if self.state != "idle" or self._pending_tx is not None or self._responding:
            return
        if not self.queue or not self.engine.node_free(self.node):
            return
        if self._blocked_by_defer():
            return
        if self.engine.is_busy(self.node):
            return  # the idle edge will kick again
        self.state = "scanning"
        self._scan_token = self.engine.set_timer(self._t_scan, self.node, "scan_done")

    def _blocked_by_defer(self) -> bool:
        return False

    def on_channel_busy(self) -> None:
        if self.state == "scanning":
            self.engine.cancel_timer(self._scan_token)
            self._scan_token = None
            self.state = "idle"
        elif self.state == "wait_boundary":
            self.engine.grid_unregister(self.node)
            self.state = "idle"

    def on_channel_idle(self) -> None:
        self._kick()

    def on_rx_frame(self, frame: Frame, ok: bool) -> None:
        super().on_rx_frame(frame, ok)
        self._kick()

    def on_timer(self, kind: str, payload) -> None:
        if kind == "scan_done":
            self._scan_token = None
            self.state = "wait_boundary"
            self.engine.grid_register(self.node, phase0=self.PHASE0_ALIGNED)
        else:
            super().on_timer(kind, payload)

    def _start_tx(self, packet: Packet, pulled: bool, secondary: bool = False) -> None:
        packet.attempts += 1
        self._pending_tx = {"packet": packet, "pulled": pulled}
        self.state = "tx"
        self.engine.start_data(self.node, packet, secondary=secondary)

    def on_tx_end(self, frame: Frame) -> None:
        if frame.kind == "data":
            self.state = "awaiting"
        super().on_tx_end(frame)

    def _tx_done(self, success: bool) -> None:
        pending = self._pending_tx
        assert pending is not None
        self._pending_tx = None
        self.state = "idle"
        self._settle_packet(pending["packet"], pending["pulled"], success)
        self._kick()


class RcfdMac(_FreqMac):
    """Three-round frequency-domain RTS/CTS with grant deferral.

    A node that overhears a grant addressed to someone else backs out of
    channel access until it hears an ACK (or a timeout expires): the
    granted exchange has a receiver nearby that plain carrier sensing
    cannot protect.
    """

    name = "rcfd"

    def __init__(self, engine: Simulation, node: NodeId, rng: random.Random) -> None:
        super().__init__(engine, node, rng)
        cfg = engine.config
        self._defer_timeout = 2.0 * (
            cfg.L / cfg.R_T + engine.ack_duration + 2.0 * engine.sifs
        )
        self._defer_until = 0.0
        self._defer_token: Optional[int] = None
        self._ep_reset()

    def _ep_reset(self) -> None:
        self._my_r1_idx: Optional[int] = None
        self._chosen = 0
        self._role: Optional[Role] = None
        self._r1: frozenset[int] = frozenset()
        self._r2s1 = frozenset()
        self._r2s2 = frozenset()
        self._sec_candidate: Optional[Packet] = None
        self._own_cts: frozenset[ScSymbol] = frozenset()

    # -- deferral ----------------------------------------------------------
    def _deferring(self) -> bool:
        return self.engine.now < self._defer_until - 1e-15

    def _blocked_by_defer(self) -> bool:
        if not self._deferring():
            return False
        if self._defer_token is None:
            delay = self._defer_until - self.engine.now
            self._defer_token = self.engine.set_timer(delay, self.node, "defer_over")
        return True

    def _lift_defer(self) -> None:
        if self._defer_until > self.engine.now:
            self._defer_until = self.engine.now
            self.engine.trace(f"defer_lift n{self.node}")
        self.engine.cancel_timer(self._defer_token)
        self._defer_token = None
        self._kick()

    def on_overhear(self, frame: Frame) -> None:
        if frame.kind == "ack":
            self._lift_defer()

    def _note_grants(self, perc: Perception, own_pairs: frozenset[ScSymbol]) -> None:
        """Grant-slot deferral: any clean foreign upper-half pair starts a defer."""
        if perc.flooded:
            return
        smap = self.engine.smap
        for entry in sorted(perc.s2, key=lambda e: e.sc):
            if entry.ambiguous:
                continue
            pair = (entry.sc, next(iter(entry.symbols)))
            if pair in own_pairs:
                continue
            owner = smap.owner_of_f2(pair)
            if owner is None or owner == self.node:
                continue
            until = self.engine.now + self._defer_timeout
            if until > self._defer_until:
                self._defer_until = until
                self.engine.trace(f"defer n{self.node} until={until:.9f}")

    # -- contention --------------------------------------------------------
    def on_grid_boundary(self, idx: int) -> None:
        self._ep_reset()
        self.state = "contending"
        self._my_r1_idx = idx
        self._chosen = round1_choose(True, self.rng, self.engine.config.S)
        self.engine.slot_emit(self.node, frozenset(((self._chosen, 0),)), idx)
        self.engine.listen_slot(self.node, idx)

    def on_round_boundary(self, idx: int, perc: Perception) -> None:
        phase = idx % 3
        if self.state == "contending":
            if phase == 0 and idx == self._my_r1_idx:
                self._round1_result(idx, perc)
            elif phase == 1:
                self._round2_result(idx, perc)
            elif phase == 2:
                self._round3_result(idx, perc)
            return
        # Free listeners: grant duty on advertisement slots, deferral on grant slots.
        if phase == 1:
            if (
                self.state == "idle"
                and self._pending_tx is None
                and not self._responding
                and not self._deferring()
                and self.engine.node_free(self.node)
            ):
                self._try_become_rr(idx, perc)
        elif phase == 2:
            self._note_grants(perc, frozenset())

    def _round1_result(self, idx: int, perc: Perception) -> None:
        self._r1 = perc.all_scs
        if not perc.flooded and decide_pt(self._chosen, perc.all_scs):
            self._role = Role.PRIMARY_TRANSMITTER
            head = self.queue[0]
            assert head.dest is not None
            self.engine.slot_emit(
                self.node, rts_signal(self.engine.smap, self.node, head.dest), idx + 1
            )
            self.engine.trace(f"pt n{self.node} dest=n{head.dest}")
        self.engine.listen_slot(self.node, idx + 1)

    def _round2_result(self, idx: int, perc: Perception) -> None:
        self._r2s1, self._r2s2 = perc.s1, perc.s2
        if (
            self._role is None
            and not perc.flooded
            and not self._deferring()
            and decide_rr(self.engine.smap, self.node, perc.s2)
        ):
            self._become_rr(idx, perc)
        self.engine.listen_slot(self.node, idx + 1)

    def _try_become_rr(self, idx: int, perc: Perception) -> None:
        """An idle node addressed by an advertisement joins to answer it."""
        if perc.flooded or not decide_rr(self.engine.smap, self.node, perc.s2):
            return
        self._ep_reset()
        self.state = "contending"
        self._r2s1, self._r2s2 = perc.s1, perc.s2
        self._become_rr(idx, perc)
        self.engine.listen_slot(self.node, idx + 1)

    def _become_rr(self, idx: int, perc: Perception) -> None:
        smap = self.engine.smap
        try:
            target = cts_target(smap, perc.s1)
        except NoCandidate:
            return
        self._role = Role.RTS_RECEIVER
        # Ride-along packets must predate the handshake they ride, so every
        # delivery still pays the full access time of one contention.
        episode_end = (idx + 2) * self.engine.slot_dur
        cutoff = episode_end - self.engine.config.timing.t_acc * US
        for p in self.queue:
            if p.dest == target and p.t_gen <= cutoff + 1e-15:
                self._sec_candidate = p
                break
        self._own_cts = cts_signal(smap, self.node, target)
        self.engine.slot_emit(self.node, self._own_cts, idx + 1)
        self.engine.trace(f"rr n{self.node} grants n{target}")

    def _round3_result(self, idx: int, perc: Perception) -> None:
        if self._role is Role.RTS_RECEIVER:
            has_data = self._sec_candidate is not None
            dest = self._sec_candidate.dest if self._sec_candidate else None
        else:
            head = self.queue[0] if self.queue else None
            has_data = head is not None
            dest = head.dest if head else None
        state = ContentionState(
            node=self.node,
            has_data=has_data,
            dest=dest,
            chosen_sc=self._chosen,
            role=self._role or Role.BYSTANDER,
            r1_perceived=self._r1,
            r2_perceived_s1=self._r2s1,
            r2_perceived_s2=self._r2s2,
            r3_perceived_s1=perc.s1,
            r3_perceived_s2=perc.s2,
        )
        decision = SILENT if perc.flooded else final_decision(self.engine.smap, state)
        self._note_grants(perc, self._own_cts)
        was_rr = self._role is Role.RTS_RECEIVER
        if decision.kind is Decision.TRANSMIT_PRIMARY:
            self.engine.trace(f"cleared n{self.node} primary->n{decision.dest}")
            self._start_tx(self.queue[0], pulled=False)
        elif decision.kind is Decision.TRANSMIT_SECONDARY:
            assert self._sec_candidate is not None
            self.engine.trace(f"cleared n{self.node} secondary->n{decision.dest}")
            self.queue.remove(self._sec_candidate)
            self._start_tx(self._sec_candidate, pulled=True, secondary=True)
        else:
            self.state = "idle"
            if was_rr:
                # Granted someone else: wait to see whether their data arrives.
                self.engine.set_timer(0.0, self.node, "rr_wait")
            else:
                self._kick()

    def on_timer(self, kind: str, payload) -> None:
        if kind == "defer_over":
            self._defer_token = None
            self._kick()
        elif kind == "rr_wait":
            if self.engine.node_free(self.node):
                self._kick()
        else:
            super().on_timer(kind, payload)


class Back2fMac(_FreqMac):
    """Single-round frequency backoff: lowest perceived subcarrier transmits.

    No advertisement, no grant, no deferral — the historical scheme the
    three-round handshake improves on. Losers rescan and retry.
    """

    name = "back2f"
    PHASE0_ALIGNED = False

    def __init__(self, engine: Simulation, node: NodeId, rng: random.Random) -> None:
        super().__init__(engine, node, rng)
        self._my_slot: Optional[int] = None
        self._chosen = 0

    def on_grid_boundary(self, idx: int) -> None:
        self.state = "contending"
        self._my_slot = idx
        self._chosen = round1_choose(True, self.rng, self.engine.config.S)
        self.engine.slot_emit(self.node, frozenset(((self._chosen, 0),)), idx)
        self.engine.listen_slot(self.node, idx)

    def on_round_boundary(self, idx: int, perc: Perception) -> None:
        if self.state != "contending" or idx != self._my_slot:
            return
        self._my_slot = None
        if not perc.flooded and decide_pt(self._chosen, perc.all_scs):
            self._start_tx(self.queue[0], pulled=False)
        else:
            self.state = "idle"
            self._kick()


# --------------------------------------------------------------------------
# time-domain CSMA/CA MACs
# --------------------------------------------------------------------------


class DcfMac(MacProtocol):
    """CSMA/CA with binary exponential backoff (no RTS/CTS)."""

    name = "dcf"
    uses_rts = False

    def __init__(self, engine: Simulation, node: NodeId, rng: random.Random) -> None:
        super().__init__(engine, node, rng)
        self.state = "idle"
        self.cw = CW_MIN
        self.backoff: Optional[int] = None
        self.nav_until = 0.0
        self._count_base = 0.0
        self._count_token: Optional[int] = None
        self._difs_token: Optional[int] = None
        self._nav_token: Optional[int] = None
        self._difs = DIFS_US * US

    # -- medium state -------------------------------------------------------
    def _medium_free(self) -> bool:
        return not self.engine.is_busy(self.node) and self.engine.now >= self.nav_until - 1e-15

    def _kick(self) -> None:
        if self.state != "idle" or self._pending_tx is not None or self._responding:
            return
        if not self.queue or not self.engine.node_free(self.node):
            return
        if self.backoff is None and self._medium_free():
            self.state = "difs"
            self._difs_token = self.engine.set_timer(self._difs, self.node, "difs_done")
        else:
            self._enter_backoff()

    def _enter_backoff(self) -> None:
        if self.backoff is None:
            self.backoff = self.rng.randint(0, self.cw)
        if self._medium_free():
            self._start_count()
        else:
            self.state = "frozen"
            self._ensure_nav_timer()

    def _start_count(self) -> None:
        self.state = "counting"
        self._count_base = self.engine.now + self._difs
        delay = self._difs + self.backoff * self.engine.slot_time
        self._count_token = self.engine.set_timer(delay, self.node, "backoff_done")

    def _freeze(self) -> None:
        elapsed = int((self.engine.now - self._count_base) / self.engine.slot_time + 1e-9)
        self.backoff = max(0, self.backoff - max(0, elapsed))
        self.engine.cancel_timer(self._count_token)
        self._count_token = None
        self.state = "frozen"

    def _ensure_nav_timer(self) -> None:
        if self.engine.now < self.nav_until and self._nav_token is None:
            delay = self.nav_until - self.engine.now
            self._nav_token = self.engine.set_timer(delay, self.node, "nav_done")

    def on_channel_busy(self) -> None:
        if self.state == "difs":
            self.engine.cancel_timer(self._difs_token)
            self._difs_token = None
            self.state = "idle"
            self._enter_backoff()
        elif self.state == "counting":
            self._freeze()

    def _try_resume(self) -> None:
        """Resume a frozen countdown, unless a duty or own tx is in the way."""
        if self.state != "frozen" or self._responding:
            return
        if self.engine.node_transmitting(self.node):
            return
        if self._medium_free():
            self._start_count()
        else:
            self._ensure_nav_timer()

    def on_channel_idle(self) -> None:
        if self.state == "frozen":
            self._try_resume()
        else:
            self._kick()

    def on_overhear(self, frame: Frame) -> None:
        if frame.kind in ("rts", "cts") and frame.reserve_until > self.nav_until:
            self.nav_until = frame.reserve_until
            if self.state == "counting":
                self._freeze()
            self._ensure_nav_timer()

    def _resume_after_duty(self) -> None:
        if self.state == "frozen":
            self._try_resume()
        else:
            self._kick()

    # -- transmission -------------------------------------------------------
    def _transmit(self) -> None:
        self.backoff = None
        packet = self.queue[0]
        packet.attempts += 1
        self._pending_tx = {"packet": packet, "pulled": False}
        self.state = "tx"
        self.engine.start_data(self.node, packet)

    def on_timer(self, kind: str, payload) -> None:
        if kind == "difs_done":
            self._difs_token = None
            if self.state != "difs":
                return
            self.state = "idle"
            if self._medium_free():
                self._transmit()
            else:
                self._enter_backoff()
        elif kind == "backoff_done":
            self._count_token = None
            if self.state != "counting":
                return
            self.backoff = 0
            if self._medium_free():
                self.state = "idle"
                self._transmit()
            else:
                self._freeze()
        elif kind == "nav_done":
            self._nav_token = None
            self._try_resume()
        else:
            super().on_timer(kind, payload)

    def on_tx_end(self, frame: Frame) -> None:
        if frame.kind == "data":
            self.state = "awaiting"
        super().on_tx_end(frame)

    def _tx_done(self, success: bool) -> None:
        pending = self._pending_tx
        assert pending is not None
        self._pending_tx = None
        packet = pending["packet"]
        self.state = "idle"
        if success or packet.fate is Fate.DELIVERED:
            self.cw = CW_MIN
        elif packet.attempts >= self.engine.config.retry_limit:
            self.cw = CW_MIN
        else:
            self.cw = min(2 * self.cw + 1, CW_MAX)
        self._settle_packet(packet, pending["pulled"], success)
        self.backoff = self.rng.randint(0, self.cw) if self.queue else None
        self._kick()


class DcfRtsCtsMac(DcfMac):
    """DCF with the RTS/CTS reservation handshake and virtual carrier sense."""

    name = "dcf-rtscts"
    uses_rts = True

    def __init__(self, engine: Simulation, node: NodeId, rng: random.Random) -> None:
        super().__init__(engine, node, rng)
        self._cts_token: Optional[int] = None
        self._rts_dur = RTS_BITS / engine.config.control_rate
        self._cts_dur = CTS_BITS / engine.config.control_rate

    def _exchange_tail(self, data_dur: float) -> float:
        """Time from CTS start to ACK end, as advertised in reservations."""
        return self._cts_dur + 2 * self.engine.sifs + data_dur + self.engine.ack_duration

    def _transmit(self) -> None:
        self.backoff = None
        packet = self.queue[0]
        packet.attempts += 1
        data_dur = self.engine.data_duration(packet.size_bits)
        reserve = (
            self.engine.now + self._rts_dur + self.engine.sifs + self._exchange_tail(data_dur)
        )
        self.state = "tx_rts"
        self.engine.start_frame(
            "rts", self.node, packet.dest, self._rts_dur, packet=packet, reserve_until=reserve
        )

    def on_tx_end(self, frame: Frame) -> None:
        if frame.kind == "rts":
            self.state = "wait_cts"
            timeout = self.engine.sifs + self._cts_dur + 2 * self.engine.slot_time
            self._cts_token = self.engine.set_timer(timeout, self.node, "cts_timeout")
            return
        if frame.kind == "cts":
            self._responding -= 1
            self._resume_after_duty()
            return
        super().on_tx_end(frame)

    def on_rx_frame(self, frame: Frame, ok: bool) -> None:
        if frame.kind == "rts":
            if (
                ok
                and not self._responding
                and self.engine.now >= self.nav_until - 1e-15
                and self.engine.node_free(self.node)
                and self.state in ("idle", "difs", "counting", "frozen")
            ):
                self._note_reverse(frame)
                self._responding += 1
                if self.state == "difs":
                    self.engine.cancel_timer(self._difs_token)
                    self._difs_token = None
                    self.state = "idle"
                elif self.state == "counting":
                    self._freeze()
                self.engine.set_timer(self.engine.sifs, self.node, "send_cts", frame)
            return
        if frame.kind == "cts":
            if ok and self.state == "wait_cts" and frame.packet is self.queue[0]:
                self.engine.cancel_timer(self._cts_token)
                self._cts_token = None
                self.state = "pre_data"
                self.engine.set_timer(self.engine.sifs, self.node, "send_data", frame.packet)
            return
        super().on_rx_frame(frame, ok)

    def _note_reverse(self, frame: Frame) -> None:
        pass  # full-duplex variant hooks in here

    def on_timer(self, kind: str, payload) -> None:
        if kind == "send_cts":
            if self.engine.node_transmitting(self.node):
                self._responding -= 1
                self._resume_after_duty()
                return
            rts: Frame = payload
            data_dur = self.engine.data_duration(rts.packet.size_bits)
            reserve = self.engine.now + self._exchange_tail(data_dur)
            self.engine.start_frame(
                "cts", self.node, rts.src, self._cts_dur, packet=rts.packet, reserve_until=reserve
            )
        elif kind == "cts_timeout":
            self._cts_token = None
            if self.state == "wait_cts":
                self._handshake_failed()
        elif kind == "send_data":
            if self.engine.node_transmitting(self.node):
                self._handshake_failed()
                return
            packet: Packet = payload
            self._pending_tx = {"packet": packet, "pulled": False}
            self.state = "tx"
            self.engine.start_data(self.node, packet)
        else:
            super().on_timer(kind, payload)

    def _handshake_failed(self) -> None:
        packet = self.queue[0]
        self.state = "idle"
        if packet.attempts >= self.engine.config.retry_limit:
            self.queue.popleft()
            self.engine.discard_packet(packet)
            self.cw = CW_MIN
        else:
            self.cw = min(2 * self.cw + 1, CW_MAX)
        self.backoff = self.rng.randint(0, self.cw) if self.queue else None
        self._kick()


class FdMacApprox(DcfRtsCtsMac):
    """RTS/CTS with a concurrent reverse transmission when traffic is mutual.

    On receiving an RTS, a node holding a packet for the requester sends
    it in parallel with the primary data (both radios are full-duplex),
    doubling the exchange's carried payload at no extra airtime.
    """

    name = "fdmac-approx"

    def __init__(self, engine: Simulation, node: NodeId, rng: random.Random) -> None:
        super().__init__(engine, node, rng)
        self._reverse: Optional[tuple[NodeId, Packet]] = None

    def _note_reverse(self, frame: Frame) -> None:
        for p in self.queue:
            if p.dest == frame.src:
                self._reverse = (frame.src, p)
                return
        self._reverse = None

    def on_rx_start(self, frame: Frame) -> None:
        if frame.kind != "data" or self._reverse is None:
            return
        src, packet = self._reverse
        self._reverse = None
        if frame.src != src or self._pending_tx is not None:
            return
        if self.engine.node_transmitting(self.node):
            return  # radio already sending; receiving is fine (full duplex)
        self.queue.remove(packet)
        packet.attempts += 1
        self._pending_tx = {"packet": packet, "pulled": True}
        self.state = "tx"
        self.engine.start_data(self.node, packet, secondary=True)


MAC_REGISTRY: dict[str, type[MacProtocol]] = {
    cls.name: cls for cls in (RcfdMac, Back2fMac, DcfMac, DcfRtsCtsMac, FdMacApprox)
}


def baseline_dcf(config) -> type[MacProtocol]:
    return DcfMac


def baseline_dcf_rtscts(config) -> type[MacProtocol]:
    return DcfRtsCtsMac


def baseline_back2f(config) -> type[MacProtocol]:
    return Back2fMac


def baseline_fdmac(config) -> type[MacProtocol]:
    return FdMacApprox
