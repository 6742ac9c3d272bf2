#!/usr/bin/env python3
"""Write the synthetic 300/300 labeled benchmark set as a TSV file.

Usage: python scripts/make_synthetic_dataset.py out.tsv [--seed 7] [--noise 0.1]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from similemine.features import write_labeled  # noqa: E402
from similemine.synthetic import make_synthetic  # noqa: E402


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("out")
    parser.add_argument("--pos", type=int, default=300)
    parser.add_argument("--neg", type=int, default=300)
    parser.add_argument("--noise", type=float, default=0.10)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    rows = make_synthetic(args.pos, args.neg, args.noise, args.seed)
    write_labeled(args.out, rows)
    print(f"wrote {len(rows)} labeled rows to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
