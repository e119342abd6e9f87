"""Behavior of the CSMA/CA family and the one-round frequency baseline."""

from rcfd.sim.config import SimConfig
from rcfd.sim.engine import Simulation
from rcfd.sim.traffic import Fate

from conftest import make_packets


def overlapping_data_pairs(frames):
    data = sorted((f for f in frames if f.kind == "data"), key=lambda f: f.t0)
    pairs = []
    for i, a in enumerate(data):
        for b in data[i + 1 :]:
            if b.t0 >= a.t1:
                break
            if a.src != b.src:
                pairs.append((a, b))
    return pairs


# -- plain DCF ----------------------------------------------------------------


def test_saturated_pair_mutual_exclusion(pair2):
    # Zero-propagation carrier sense: one domain never carries two data
    # frames at once, no matter how hard both nodes push.
    cfg = SimConfig(N=2, mac="dcf", T=0.3, seed=1)
    spec = [(0.0, 1, 2)] * 40 + [(0.0, 2, 1)] * 40
    sim = Simulation(cfg, topology=pair2, packets=make_packets(spec), record_frames=True)
    report = sim.run()
    assert overlapping_data_pairs(sim.frame_log) == []
    assert report.collisions == 0
    assert report.delivered > 50  # both queues drain meaningfully


def test_hidden_terminals_collide_under_plain_dcf(chain3):
    # Simultaneous arrivals at both hidden ends produce data collisions at
    # the middle receiver.
    cfg = SimConfig(N=3, mac="dcf", T=0.5, seed=2)
    spec = [(0.01 * k, 1, 2) for k in range(10)] + [(0.01 * k, 3, 2) for k in range(10)]
    sim = Simulation(cfg, topology=chain3, packets=make_packets(spec), record_frames=True)
    report = sim.run()
    assert report.collisions > 0
    assert overlapping_data_pairs(sim.frame_log)


def test_rts_cts_reduces_hidden_collisions(chain3):
    # Paired seeds, Poisson traffic: the reservation handshake must lose
    # strictly fewer data frames than plain DCF over many seeds.
    totals = {"dcf": 0, "dcf-rtscts": 0}
    for mac in totals:
        for seed in range(100):
            cfg = SimConfig(N=3, mac=mac, T=0.4, seed=seed, R_S=30_000)
            sim = Simulation(cfg, topology=chain3)
            totals[mac] += sim.run().collisions
    assert totals["dcf-rtscts"] < totals["dcf"]


def test_retry_limit_discards(chain3):
    # Lock both hidden ends into deterministic lockstep with no randomness
    # escape: every retry pair collides again until the limit hits.
    cfg = SimConfig(N=3, mac="dcf", T=1.0, seed=3, retry_limit=2)
    spec = [(0.0, 1, 2), (0.0, 3, 2)]
    sim = Simulation(cfg, topology=chain3, packets=make_packets(spec))
    report = sim.run()
    for p in sim.packets:
        assert p.attempts <= cfg.retry_limit
        assert p.fate in (Fate.DELIVERED, Fate.DISCARDED)


# -- DCF + RTS/CTS --------------------------------------------------------------


def test_rtscts_exchange_sequence(pair2):
    cfg = SimConfig(N=2, mac="dcf-rtscts", T=0.1, seed=4)
    sim = Simulation(cfg, topology=pair2, packets=make_packets([(0.0, 1, 2)]), record_frames=True)
    report = sim.run()
    kinds = [f.kind for f in sorted(sim.frame_log, key=lambda f: f.t0)]
    assert kinds == ["rts", "cts", "data", "ack"]
    assert report.delivered == 1


def test_nav_blocks_third_party(chain3):
    # n3 overhears n2's CTS and must stay off the air for the whole exchange.
    cfg = SimConfig(N=3, mac="dcf-rtscts", T=0.1, seed=5)
    packets = make_packets([(0.0, 1, 2), (0.0005, 3, 2)])
    sim = Simulation(cfg, topology=chain3, packets=packets, record_frames=True)
    report = sim.run()
    assert report.collisions == 0
    assert report.delivered == 2
    n1_ack = [f for f in sim.frame_log if f.kind == "ack" and f.dest == 1]
    n3_frames = [f for f in sim.frame_log if f.src == 3]
    assert n3_frames[0].t0 > n1_ack[0].t1 - 1e-12


# -- full-duplex RTS/CTS approximation ------------------------------------------


def test_fdmac_bidirectional_exchange(pair2):
    cfg = SimConfig(N=2, mac="fdmac-approx", T=0.2, seed=6)
    spec = [(0.0, 1, 2), (0.0, 2, 1)] * 5
    sim = Simulation(cfg, topology=pair2, packets=make_packets(spec), record_frames=True)
    report = sim.run()
    assert report.fd_transmissions > 0
    assert report.delivered == 10
    overlaps = overlapping_data_pairs(sim.frame_log)
    assert overlaps  # reverse data rides the primary exchange
    for a, b in overlaps:
        assert {a.src, a.dest} == {b.src, b.dest}


def test_fdmac_matches_rtscts_without_reverse_traffic(pair2):
    # One-way traffic never triggers the reverse path: identical frame
    # schedule and identical metrics, frame for frame.
    spec = [(0.002 * k, 1, 2) for k in range(15)]
    logs = {}
    reports = {}
    for mac in ("dcf-rtscts", "fdmac-approx"):
        cfg = SimConfig(N=2, mac=mac, T=0.3, seed=7)
        sim = Simulation(cfg, topology=pair2, packets=make_packets(spec), record_frames=True)
        r = sim.run()
        logs[mac] = [(f.kind, f.src, f.dest, f.t0, f.t1) for f in sim.frame_log]
        reports[mac] = (r.G0, r.avg_delay, r.delivered, r.collisions)
    assert reports["fdmac-approx"] == reports["dcf-rtscts"]
    assert logs["fdmac-approx"] == logs["dcf-rtscts"]
    cfg = SimConfig(N=2, mac="fdmac-approx", T=0.3, seed=7)
    sim = Simulation(cfg, topology=pair2, packets=make_packets(spec))
    assert sim.run().fd_transmissions == 0


def test_fdmac_at_least_rtscts_on_mutual_traffic(pair2):
    # Paired seeds, saturated mutual traffic: piggybacked reverse packets
    # can only help.
    for seed in range(10):
        delivered = {}
        for mac in ("dcf-rtscts", "fdmac-approx"):
            cfg = SimConfig(N=2, mac=mac, T=0.2, seed=seed)
            spec = [(0.0, 1, 2), (0.0, 2, 1)] * 20
            sim = Simulation(cfg, topology=pair2, packets=make_packets(spec))
            delivered[mac] = sim.run().delivered
        assert delivered["fdmac-approx"] >= delivered["dcf-rtscts"]


# -- single-round frequency baseline --------------------------------------------


def test_back2f_single_contender_always_wins(pair2):
    cfg = SimConfig(N=2, mac="back2f", T=0.05, seed=8)
    sim = Simulation(cfg, topology=pair2, packets=make_packets([(0.0, 1, 2)]))
    report = sim.run()
    assert report.delivered == 1 and report.collisions == 0


def test_back2f_hidden_winners_collide(chain3):
    # Both hidden ends win their own domains in the same slot and collide
    # at the middle node; with no handshake they stay in lockstep and the
    # packets die at the retry limit.
    cfg = SimConfig(N=3, mac="back2f", T=0.5, seed=9)
    packets = make_packets([(0.0, 1, 2), (0.0, 3, 2)])
    sim = Simulation(cfg, topology=chain3, packets=packets, record_frames=True)
    report = sim.run()
    assert report.collisions >= 1
    assert report.discarded == 2
    assert all(p.attempts == cfg.retry_limit for p in sim.packets)


def test_back2f_min_subcarrier_wins_in_domain(pair2):
    # With both nodes contending in one domain, the lower pick wins; equal
    # picks make both transmit at once, which between two full-duplex
    # radios aimed at each other still goes through. Nothing else overlaps.
    cfg = SimConfig(N=2, mac="back2f", T=0.5, seed=10)
    spec = [(0.0, 1, 2)] * 5 + [(0.0, 2, 1)] * 5
    sim = Simulation(cfg, topology=pair2, packets=make_packets(spec), record_frames=True)
    report = sim.run()
    assert report.delivered == 10
    for a, b in overlapping_data_pairs(sim.frame_log):
        assert (a.src, a.dest) == (b.dest, b.src)


# -- cross-protocol pairing ------------------------------------------------------


def test_identical_packet_sets_across_protocols():
    checksums = set()
    for mac in ("rcfd", "dcf", "dcf-rtscts", "fdmac-approx", "back2f"):
        cfg = SimConfig(N=10, mac=mac, T=1.0, seed=11)
        checksums.add(Simulation(cfg).checksum)
    assert len(checksums) == 1
