"""A scaled-down protocol comparison sweep, written to CSV and plotted.

Mirrors the long-transmission experiment (1000-bit payloads at 1 Mbit/s)
over four network sizes with ten runs each. Takes about half a minute.
The companion plots package turns the CSV into the two figures:

    plot demo_results/results.csv --out demo_results
"""

import subprocess
from pathlib import Path

from rcfd import SimConfig, SweepSpec, run_sweep, write_results
from rcfd.metrics import aggregate

out_dir = Path("demo_results")
spec = SweepSpec(
    N_list=(2, 10, 30, 50),
    protocols=("rcfd", "dcf", "dcf-rtscts", "fdmac-approx", "back2f"),
    M=10,
    T=2.0,
    master_seed=1,
    base=SimConfig(N=2, L=1000, R_T=1_000_000.0, R_S=10_000.0),
)
reports = run_sweep(spec, progress=lambda p, n, r: print(f"  ran {p} N={n} run {r}"))
csv_path = write_results(reports, out_dir / "results.csv")
print(f"\nwrote {csv_path}")

for row in aggregate(reports):
    if row["metric"] == "G0":
        print(f"  {row['protocol']:14s} N={row['N']:2d} G0 = {row['mean']:.4f} ± {row['stddev']:.4f}")

# Render the figures if the plots package is installed.
try:
    subprocess.run(["plot", str(csv_path), "--out", str(out_dir)], check=True)
except FileNotFoundError:
    print("install the plots package (pip install -e plots/) to render figures")
