"""Command-line surface: one TOML document in, one CSV out.

Exit codes: 0 success, 1 configuration or runtime validation error,
2 self-test assertion failure. Flags only override the seed and the
output path; everything else lives in the document so a run's
provenance is a single hashable artifact.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__
from ._rng import philox_stream
from .capacity import (
    ChannelParams,
    KeyRegime,
    awgn_rate,
    classify,
    maximize_myop_ld_radius,
    minimize_scale_babble,
    rate_gv,
    rate_lp,
    rate_myop,
    rate_rankin,
)
from .codec import CodebookSizeError, generate
from .config import ConfigError, ExperimentSpec, load_toml, parse_config
from .csvout import emit_csv
from .experiments import (
    TrialConfig,
    blob_and_reverse_sizes,
    build_ogs,
    list_size_survey,
    region_sweep,
    run_pe,
    strip_census,
)
from .geometry import uniform_sphere_sample
from .jammers import ATTACKS, InfeasibleAttackError, awgn_observe

BUILD_ID = f"avclab-{__version__}"

_SURVEY_TAG = 0x5C0FF5
_CENSUS_TAG = 0xCE9505
_BLOB_TAG = 0xB10B


def _stamp(spec: ExperimentSpec, row: dict) -> dict:
    return {"seed": spec.seed, "build": BUILD_ID, "config": spec.config_hash, **row}


def _blank_nonfinite(value: float) -> float | None:
    return value if math.isfinite(value) else None


# ----------------------------------------------------------------------------
# Command drivers, each returning (columns, rows)
# ----------------------------------------------------------------------------

def _drive_region(spec: ExperimentSpec):
    p = spec.parameters
    if p["regime"] == "linear":
        regime = KeyRegime.linear(p["key_rate"])
    else:
        regime = KeyRegime(p["regime"])
    rows = [
        _stamp(spec, r)
        for r in region_sweep(
            p["obs_ratios"], p["jam_ratios"], regime, p["transmit_power"]
        )
    ]
    columns = [
        "seed", "build", "config",
        "transmit_power", "jam_power", "obs_noise_var", "regime", "key_rate",
        "kind", "label", "boundary", "cap_lower", "cap_upper",
        "rate_ld", "rate_myop", "rate_gv",
    ]
    return columns, rows


def _attack_params(p: dict) -> dict:
    out = {}
    if "alpha" in p:
        out["alpha"] = p["alpha"]
    if "epsilon_babble" in p:
        out["epsilon"] = p["epsilon_babble"]
    if "estimate" in p:
        out["estimate"] = p["estimate"]
    return out


def _drive_simulate(spec: ExperimentSpec):
    p = spec.parameters
    cfg = TrialConfig(
        params=ChannelParams(p["transmit_power"], p["jam_power"],
                             p["obs_noise_var"]),
        n=p["n"], rate=p["rate"], key_rate=p["key_rate"],
        attack=p["attack"], attack_params=_attack_params(p),
        trials=p["trials"], seed=spec.seed, decoder=p["decoder"],
        list_radius=p.get("list_radius"), mode=p["mode"], budget=p["budget"],
    )
    tally = run_pe(cfg)
    row = _stamp(spec, {
        "n": p["n"], "rate": p["rate"], "key_rate": p["key_rate"],
        "attack": p["attack"], "decoder": p["decoder"], "mode": tally.mode,
        "trials": tally.trials, "errors": tally.errors, "pe_hat": tally.pe_hat,
        "ci_lo": tally.ci95[0], "ci_hi": tally.ci95[1],
        "clip_count": tally.clip_count, "list_radius": p.get("list_radius"),
    })
    columns = [
        "seed", "build", "config",
        "n", "rate", "key_rate", "attack", "decoder", "mode", "trials",
        "errors", "pe_hat", "ci_lo", "ci_hi", "clip_count", "list_radius",
    ]
    return columns, [row]


def _drive_listdec(spec: ExperimentSpec):
    p = spec.parameters
    cb = generate(spec.seed, p["n"], p["rate"], p["key_rate"],
                  p["transmit_power"])
    params = None
    if p["attack"] in ATTACKS:
        params = ChannelParams(p["transmit_power"], p["jam_power"],
                               p["obs_noise_var"])
    survey = list_size_survey(
        cb, p["attack"], p["radius"], p["centers"],
        philox_stream(spec.seed, _SURVEY_TAG, 0),
        attack_params=_attack_params(p), params=params, key=p["key"],
    )
    rows = [
        _stamp(spec, {
            "n": p["n"], "rate": cb.rate, "attack": p["attack"],
            "radius": p["radius"], "centers": survey.num_centers,
            "size": size, "count": survey.histogram[size],
            "max_size": survey.max_size, "mean_size": survey.mean_size,
        })
        for size in sorted(survey.histogram)
    ]
    columns = [
        "seed", "build", "config",
        "n", "rate", "attack", "radius", "centers",
        "size", "count", "max_size", "mean_size",
    ]
    return columns, rows


def _census_parts(spec: ExperimentSpec, tag: int):
    p = spec.parameters
    cb = generate(spec.seed, p["n"], p["rate"], p["key_rate"],
                  p["transmit_power"])
    m, k = p["message"], p["key"]
    if not (m < cb.num_messages and k < cb.num_keys):
        raise ValueError(
            f"message/key ({m}, {k}) out of range for a "
            f"{cb.num_messages}x{cb.num_keys} codebook"
        )
    rng = philox_stream(spec.seed, tag, 0)
    # blob always observes through the channel; strip-census defaults to a
    # codeword-independent draw on the shell where observations concentrate
    if p.get("z_mode", "observe") == "typical_shell":
        z = uniform_sphere_sample(
            rng, p["n"],
            math.sqrt(p["n"] * (p["transmit_power"] + p["obs_noise_var"])),
        )
    else:
        z = awgn_observe(rng, cb.codewords[m, k], p["obs_noise_var"])
    net_rng = None
    if p.get("delta_z", 0.0) > 0.0:
        net_rng = philox_stream(spec.seed, tag, 1)
    census = strip_census(
        cb, z, p["obs_noise_var"], p["epsilon"], p["delta"],
        p.get("delta_z", 0.0), net_rng,
    )
    ogs_eps = p.get("ogs_epsilon")
    if ogs_eps is None:
        ogs_eps = 3.0 / p["n"]  # blocks of 8 at any blocklength
    ogs = build_ogs(census, ogs_eps, transmitted=(m, k))
    return cb, census, ogs


def _drive_strip_census(spec: ExperimentSpec):
    _, census, ogs = _census_parts(spec, _CENSUS_TAG)
    common = {
        "n": census.n, "code_size": census.code_size,
        "z_norm": census.z_norm,
        "delta_factor": _blank_nonfinite(census.delta_factor),
        "thick_total": census.thick_total,
        "ogs_strip": ogs.strip_index, "ogs_block_size": ogs.block_size,
        "ogs_blocks": len(ogs.blocks), "ogs_focus_block": ogs.focus_block,
        "ogs_empty": ogs.empty,
    }
    rows = []
    for pos, idx in enumerate(census.strip_indices):
        expected = census.expected_log2_counts[pos]
        rows.append(_stamp(spec, {
            **common,
            "strip_index": idx,
            "count": int(census.counts[pos]),
            "expected_log2": _blank_nonfinite(expected),
        }))
    columns = [
        "seed", "build", "config",
        "n", "code_size", "z_norm", "delta_factor", "thick_total",
        "ogs_strip", "ogs_block_size", "ogs_blocks", "ogs_focus_block",
        "ogs_empty", "strip_index", "count", "expected_log2",
    ]
    return columns, rows


def _drive_blob(spec: ExperimentSpec):
    p = spec.parameters
    cb, census, ogs = _census_parts(spec, _BLOB_TAG)
    rows = []
    for draw in range(p["draws"]):
        s = uniform_sphere_sample(
            philox_stream(spec.seed, _BLOB_TAG, draw + 1),
            p["n"], math.sqrt(p["n"] * p["jam_power"]),
        )
        blob_count, reverse_max = blob_and_reverse_sizes(cb, ogs, s, p["radius"])
        rows.append(_stamp(spec, {
            "n": p["n"], "draw": draw, "radius": p["radius"],
            "strip_index": ogs.strip_index, "block_size": ogs.block_size,
            "ogs_empty": ogs.empty, "blob_count": blob_count,
            "reverse_size_max": reverse_max,
        }))
    columns = [
        "seed", "build", "config",
        "n", "draw", "radius", "strip_index", "block_size", "ogs_empty",
        "blob_count", "reverse_size_max",
    ]
    return columns, rows


# ----------------------------------------------------------------------------
# Capacity self-test
# ----------------------------------------------------------------------------

def _selftest_checks(grid: int):
    axis = np.logspace(-1.0, 1.0, grid)

    worst = 0.0
    for pw in axis:
        for nj in axis:
            for s2 in axis:
                params = ChannelParams(float(pw), float(nj), float(s2))
                gap = abs(
                    maximize_myop_ld_radius(params).achieved_rate
                    - minimize_scale_babble(params).achieved_rate
                )
                worst = max(worst, gap)
    yield "optimizer-agreement", worst <= 1e-8, f"max gap {worst:.3e}"

    worst = 0.0
    for nj in (0.25, 0.5, 1.0):
        params = ChannelParams(1.0, nj, 1e12)
        worst = max(worst, abs(rate_myop(params) - awgn_rate(1.0, nj)))
    yield "oblivious-limit", worst <= 1e-4, f"max gap {worst:.3e}"

    ordered = True
    for pw in axis:
        for nj in axis:
            if pw < 2.0 * nj:
                continue
            params = ChannelParams(float(pw), float(nj), 1.0)
            gv, lp, rk = rate_gv(params), rate_lp(params), rate_rankin(params)
            ordered &= gv <= lp + 1e-12 and lp <= rk + 1e-12
    yield "packing-rate-ordering", ordered, "rate_gv <= rate_lp <= rate_rankin"

    # monotonicity only holds where the power cap pins the scale-down attack
    # to its boundary: nj*(pw+s2) >= pw^2 and nj <= pw+s2; outside that set
    # the boundary formula overshoots the feasible minimum and can dip
    def binding(pw, nj, s2):
        return nj * (pw + s2) >= pw * pw and nj <= pw + s2

    monotone = True
    for pw in axis:
        for nj in axis:
            prev = -math.inf
            for s2 in axis:
                if not binding(pw, nj, s2):
                    prev = -math.inf
                    continue
                r = rate_myop(ChannelParams(float(pw), float(nj), float(s2)))
                monotone &= r >= prev - 1e-12
                prev = r
    for pw in axis:
        for s2 in axis:
            prev = math.inf
            for nj in axis:
                if not binding(pw, nj, s2):
                    prev = math.inf
                    continue
                r = rate_myop(ChannelParams(float(pw), float(nj), float(s2)))
                monotone &= r <= prev + 1e-12
                prev = r
    yield "myop-rate-monotone", monotone, "nondecreasing in noise, nonincreasing in jam (where the power cap binds)"

    regimes = [
        KeyRegime.none(), KeyRegime.log_n(), KeyRegime.linear(10.0),
        KeyRegime.infinite(),
    ]
    nested = True
    for g in axis:
        for t in axis:
            params = ChannelParams(1.0, float(t), float(g))
            lowers = [classify(params, r).lower for r in regimes]
            nested &= all(
                lowers[i] <= lowers[i + 1] + 1e-12 for i in range(len(lowers) - 1)
            )
    yield "key-monotone-lower-bounds", nested, "more key never lowers the floor"


def _drive_selftest(spec: ExperimentSpec):
    rows = []
    failed = False
    for name, passed, detail in _selftest_checks(spec.parameters["grid"]):
        print(f"{'PASS' if passed else 'FAIL'} {name}: {detail}")
        failed |= not passed
        rows.append(_stamp(spec, {"check": name, "passed": passed}))
    columns = ["seed", "build", "config", "check", "passed"]
    return columns, rows, failed


# ----------------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------------

def dispatch(spec: ExperimentSpec) -> int:
    if spec.command == "caps-selftest":
        columns, rows, failed = _drive_selftest(spec)
        emit_csv(spec.output_path, columns, rows)
        return 2 if failed else 0
    driver = {
        "region": _drive_region,
        "simulate": _drive_simulate,
        "listdec": _drive_listdec,
        "strip-census": _drive_strip_census,
        "blob": _drive_blob,
    }[spec.command]
    columns, rows = driver(spec)
    emit_csv(spec.output_path, columns, rows)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="avclab",
        description="Jamming-channel experiment runner: TOML config in, CSV out.",
    )
    parser.add_argument("config", help="path to a TOML experiment document")
    parser.add_argument("--seed", type=int, default=None,
                        help="override the document's seed")
    parser.add_argument("--output", default=None,
                        help="override the document's output path")
    args = parser.parse_args(argv)
    try:
        doc = load_toml(args.config)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # tomllib.TOMLDecodeError
        print(f"cannot parse config: {exc}", file=sys.stderr)
        return 1
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.output is not None:
        doc["output"] = args.output
    try:
        spec = parse_config(doc)
    except ConfigError as exc:
        for line in exc.errors:
            print(f"config error: {line}", file=sys.stderr)
        return 1
    try:
        return dispatch(spec)
    except (ValueError, IndexError, CodebookSizeError,
            InfeasibleAttackError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
