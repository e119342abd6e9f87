"""Subcarrier mappings, their capacity rule, and the access-phase timing.

Every node owns one (subcarrier, symbol) pair in the lower half-band
(its sender identity) and one in the upper half (its receiver identity).
With binary symbols a 64-subcarrier band hosts 64 nodes.
"""

from rcfd import TimingParams, access_timing, build_map
from rcfd.errors import CapacityExceeded

small = build_map(3, 6, 1)
print("three nodes on six subcarriers:")
for node in small.nodes:
    print(f"  n{node}: sender pair {small.f1_of(node)}, receiver pair {small.f2_of(node)}")

big = build_map(64, 64, 2)
print(f"\nbinary symbols: {len(big.nodes)} nodes on {big.S} subcarriers "
      f"(capacity {big.capacity})")
print(f"  node 33 reuses subcarrier 1 on the second symbol layer: {big.f1_of(33)}")

try:
    build_map(4, 6, 1)
except CapacityExceeded as exc:
    print(f"\nover capacity: {exc}")

# Access timing with 802.11g-style numbers: a 28 us scan, 4 us symbols,
# 1 us propagation padding -> 6 us rounds, 46 us per channel access.
t = TimingParams(t_scan=28, t_sym=4, t_p=1)
t_round, t_acc = access_timing(t)
print(f"\nround {t_round} us, full access {t_acc} us")
