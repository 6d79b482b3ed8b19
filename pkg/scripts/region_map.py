#!/usr/bin/env python3
"""Sweep the (obs-noise/P, jam/P) plane and write the verdict map as CSV.

Reuses the validated config path so rows carry the same stamp columns as
any other run; point a plotting tool at the output to draw the phase
diagram for one key regime.
"""

import argparse
import sys

import numpy as np

from avclab.cli import dispatch
from avclab.config import parse_config


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=41,
                    help="points per axis (default 41)")
    ap.add_argument("--max-ratio", type=float, default=4.0,
                    help="upper edge of both ratio axes (default 4.0)")
    ap.add_argument("--regime", default="none",
                    choices=("none", "log_n", "linear", "infinite"))
    ap.add_argument("--key-rate", type=float, default=None,
                    help="key bits per symbol (linear regime only)")
    ap.add_argument("--power", type=float, default=1.0)
    ap.add_argument("--output", default="region_map.csv")
    args = ap.parse_args()

    step = args.max_ratio / args.grid
    jam = [step * (i + 1) for i in range(args.grid)]  # jam ratio must be > 0
    obs = [0.0] + jam[:-1]
    doc = {
        "command": "region",
        "transmit_power": args.power,
        "obs_ratios": obs,
        "jam_ratios": jam,
        "regime": args.regime,
        "output": args.output,
    }
    if args.key_rate is not None:
        doc["key_rate"] = args.key_rate
    code = dispatch(parse_config(doc))
    print(f"wrote {args.grid * args.grid} rows to {args.output}")
    return code


if __name__ == "__main__":
    sys.exit(main())
