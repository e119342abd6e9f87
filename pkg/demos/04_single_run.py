"""One simulation run per protocol, same traffic, side by side.

Ten nodes, Poisson packet arrivals at 10 kbit/s per node, one second of
simulated time. The packet set and topology depend only on the seed, so
all five protocols face exactly the same demand.
"""

from rcfd import SimConfig, Simulation

for mac in ("rcfd", "dcf", "dcf-rtscts", "fdmac-approx", "back2f"):
    cfg = SimConfig(N=10, mac=mac, T=1.0, seed=7)
    report = Simulation(cfg).run()
    print(
        f"{mac:14s} G0={report.G0:.3f} delay={report.avg_delay * 1e3:7.3f} ms "
        f"delivered={report.delivered:3d} discarded={report.discarded} "
        f"collisions={report.collisions:3d} fd={report.fd_transmissions}"
    )

# A trace stream shows every event; here, the first handshake of a run.
print("\nfirst events of an rcfd run:")
lines = []
Simulation(SimConfig(N=4, mac="rcfd", T=0.01, seed=3), trace=lines.append).run()
for line in lines[:14]:
    print(" ", line)
