"""plot <results.csv> --out <dir> [--no-errorbars]"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import SchemaMismatch, render


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="plot",
        description="Render throughput and delay figures from a sweep results CSV",
    )
    parser.add_argument("results", type=Path, help="results CSV from the simulator's sweep")
    parser.add_argument("--out", type=Path, default=Path("figures"), help="output directory")
    parser.add_argument("--no-errorbars", action="store_true", help="plot means only")
    args = parser.parse_args(argv)
    try:
        written = render(args.results, args.out, errorbars=not args.no_errorbars)
    except SchemaMismatch as exc:
        print(f"error: schema mismatch: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
