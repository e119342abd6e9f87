"""Random geometric topologies on the unit square.

Nodes are dropped uniformly; the coverage radius sqrt((2/N) ln N) keeps
the network connected with high probability while shrinking as it grows,
so dense networks split into many overlapping contention domains.
"""

from rcfd import coverage_radius, generate_topology, is_connected

for n in (2, 10, 50):
    print(f"N={n:2d}: coverage radius {coverage_radius(n):.5f}")

topo = generate_topology(10, seed=42)
degrees = sorted(len(topo.adjacency[i]) for i in topo.adjacency)
print(f"\nseed 42, N=10: degrees {degrees}, connected: {is_connected(topo)}")
print("position table:")
print(topo.to_table())

connected = sum(is_connected(generate_topology(50, seed=s)) for s in range(200))
print(f"N=50 connectivity over 200 seeds: {connected / 200:.1%}")
