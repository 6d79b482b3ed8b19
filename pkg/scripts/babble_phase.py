#!/usr/bin/env python3
"""Trace decoding error across the scaled-noise attack's converse rate.

Runs the ensemble error estimator at a ladder of rate multiples of the
attack's optimized bound; the resulting curve shows the phase transition
the converse predicts (decodable below, hopeless above).
"""

import argparse
import sys

from avclab.capacity import ChannelParams, minimize_scale_babble
from avclab.csvout import emit_csv
from avclab.experiments import TrialConfig, run_pe

COLUMNS = ["multiple", "rate", "n", "trials", "seed", "mode",
           "errors", "pe_hat", "ci_lo", "ci_hi", "clip_count"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--power", type=float, default=1.0)
    ap.add_argument("--jam", type=float, default=0.25)
    ap.add_argument("--obs", type=float, default=1.0)
    ap.add_argument("--n", type=int, default=128)
    ap.add_argument("--trials", type=int, default=500)
    ap.add_argument("--seed", type=int, default=401)
    ap.add_argument("--epsilon", type=float, default=0.05,
                    help="attack back-off fraction")
    ap.add_argument("--multiples", type=float, nargs="+",
                    default=[0.25, 0.5, 0.75, 0.9, 1.1, 1.25, 1.5])
    ap.add_argument("--output", default="babble_phase.csv")
    args = ap.parse_args()

    params = ChannelParams(args.power, args.jam, args.obs)
    bound = minimize_scale_babble(params).achieved_rate
    print(f"converse rate bound {bound:.6f} bits/symbol")
    rows = []
    for mult in args.multiples:
        tally = run_pe(TrialConfig(
            params=params, n=args.n, rate=mult * bound,
            attack="scale_and_babble", attack_params={"epsilon": args.epsilon},
            trials=args.trials, seed=args.seed,
        ))
        rows.append({
            "multiple": mult, "rate": mult * bound, "n": args.n,
            "trials": tally.trials, "seed": args.seed, "mode": tally.mode,
            "errors": tally.errors, "pe_hat": tally.pe_hat,
            "ci_lo": tally.ci95[0], "ci_hi": tally.ci95[1],
            "clip_count": tally.clip_count,
        })
        print(f"  x{mult:<5} rate {mult * bound:.4f}  pe {tally.pe_hat:.4f} "
              f"[{tally.ci95[0]:.4f}, {tally.ci95[1]:.4f}]")
    emit_csv(args.output, COLUMNS, rows)
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
