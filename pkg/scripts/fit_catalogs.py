#!/usr/bin/env python3
"""Run the full distribution comparison over star-mass catalogs.

Point it at one or more CSV exports (or at a directory of them) and it prints
one comparison table per catalog and writes JSON reports next to them:

    python scripts/fit_catalogs.py data/catalogs/*.csv --out results/
    python scripts/fit_catalogs.py data/catalogs --column mass
"""

import argparse
import sys
from pathlib import Path

from lindleyfit import cli


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("paths", nargs="+", help="catalog CSVs or directories of them")
    parser.add_argument("--column", default="0", help="mass column (index or header name)")
    parser.add_argument("--bins", type=int, default=20)
    parser.add_argument("--out", default="results")
    args = parser.parse_args()

    files: list[str] = []
    for p in args.paths:
        path = Path(p)
        if path.is_dir():
            files.extend(str(f) for f in sorted(path.glob("*.csv")))
        else:
            files.append(str(path))
    if not files:
        print("no catalog files found", file=sys.stderr)
        return 2

    argv = ["fit", "--column", args.column, "--bins", str(args.bins), "--out", args.out]
    for f in files:
        argv += ["--input", f]
    return cli.main(argv)


if __name__ == "__main__":
    raise SystemExit(main())
