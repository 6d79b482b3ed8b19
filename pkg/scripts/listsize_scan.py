#!/usr/bin/env python3
"""Scan worst-case list sizes against blocklength on both sides of the
packing rate.

For each rate offset the survey samples worst-shell centers and records
the mean and max list size; the log2 growth slope printed per offset is
the quantity the packing analysis pins (about zero below the threshold,
about the rate excess above it).
"""

import argparse
import math
import sys

import numpy as np

from avclab._rng import philox_stream
from avclab.codec import generate
from avclab.csvout import emit_csv
from avclab.experiments import list_size_survey

_SCAN_TAG = 0x115CA  # this script's own RNG stream tag

COLUMNS = ["offset", "n", "rate", "radius", "centers",
           "mean_size", "max_size"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--power", type=float, default=1.0)
    ap.add_argument("--jam", type=float, default=2.0 ** -0.5,
                    help="jam power; packing rate is half log2(P/N)")
    ap.add_argument("--offsets", type=float, nargs="+", default=[-0.5, 0.5])
    ap.add_argument("--ns", type=int, nargs="+",
                    default=[10, 12, 14, 16, 18])
    ap.add_argument("--centers", type=int, default=300)
    ap.add_argument("--seed", type=int, default=32)
    ap.add_argument("--output", default="listsize_scan.csv")
    args = ap.parse_args()

    packing = 0.5 * math.log2(args.power / args.jam)
    rows = []
    for offset in args.offsets:
        logs = []
        for n in args.ns:
            rate = max(packing + offset, 1.0 / n)
            cb = generate(args.seed, n=n, rate=rate, power=args.power)
            survey = list_size_survey(
                cb, "worst_shell", math.sqrt(n * args.jam), args.centers,
                philox_stream(args.seed, _SCAN_TAG, n),
            )
            rows.append({
                "offset": offset, "n": n, "rate": rate,
                "radius": math.sqrt(n * args.jam), "centers": args.centers,
                "mean_size": survey.mean_size, "max_size": survey.max_size,
            })
            logs.append(math.log2(max(survey.mean_size, 2.0 ** -20)))
        slope = float(np.polyfit(args.ns, logs, 1)[0])
        print(f"offset {offset:+.2f}: log2 mean-list slope {slope:.3f} per dim")
    emit_csv(args.output, COLUMNS, rows)
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
