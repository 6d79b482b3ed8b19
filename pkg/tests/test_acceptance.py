"""Acceptance sweep: twelve pinned checks, one printed verdict line each.

Each test prints one PASS/FAIL line with its measured numbers before
asserting, so a verbose run reads as a checklist. Statistical checks run
on frozen seeds chosen in advance; tolerances are pinned constants.
"""

import math
import time
from pathlib import Path

import numpy as np

from avclab._rng import philox_stream
from avclab.capacity import (
    ChannelParams,
    KeyRegime,
    awgn_rate,
    maximize_myop_ld_radius,
    minimize_scale_babble,
    rate_ld,
    rate_myop,
    symmetrization_pe_floor,
)
from avclab.cli import main
from avclab.codec import generate
from avclab.csvout import rows_to_bytes
from avclab.experiments import (
    TrialConfig,
    blob_and_reverse_sizes,
    build_ogs,
    list_size_survey,
    quasi_uniformity,
    region_sweep,
    run_pe,
    strip_census,
)
from avclab.geometry import (
    ball_cap_fraction,
    gaussian_norm_tail_bound,
    inner_product_tail_bound,
    uniform_sphere_batch,
    uniform_sphere_sample,
)
from avclab.jammers import awgn_observe

GOLDEN = Path(__file__).parent / "golden" / "table1_points.csv"


def report(tag: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {tag}: {detail}")
    assert ok, f"{tag}: {detail}"


def test_c01_optimizer_closed_form_agreement():
    started = time.perf_counter()
    axis = np.logspace(-1.0, 1.0, 20)
    worst_cf = worst_xv = 0.0
    for pw in axis:
        for nj in axis:
            for s2 in axis:
                p = ChannelParams(float(pw), float(nj), float(s2))
                a = maximize_myop_ld_radius(p).achieved_rate
                b = minimize_scale_babble(p).achieved_rate
                if nj >= pw + s2:
                    cf = 0.0
                elif nj < pw and s2 <= pw * pw / nj - pw:
                    cf = rate_ld(p)
                else:
                    cf = rate_myop(p)
                worst_cf = max(worst_cf, abs(a - cf))
                worst_xv = max(worst_xv, abs(a - b))
    elapsed = time.perf_counter() - started
    ok = worst_cf <= 1e-8 and worst_xv <= 1e-8 and elapsed < 10.0
    report("c01 optimizer-agreement", ok,
           f"closed-form gap {worst_cf:.2e}, cross-check gap {worst_xv:.2e} "
           f"over 20^3 grid in {elapsed:.2f}s")


def test_c02_high_noise_limit_is_the_oblivious_rate():
    worst = max(
        abs(rate_myop(ChannelParams(1.0, nj, 1e12)) - awgn_rate(1.0, nj))
        for nj in (0.25, 0.5, 1.0)
    )
    report("c02 oblivious-limit", worst <= 1e-4, f"max gap {worst:.2e}")


# ten hand-placed (jam ratio, obs ratio, linear key rate) points covering
# every verdict label in every key regime; one repeated under a smaller key
GOLDEN_POINTS = [
    (0.3, 1.0, 0.2), (0.3, 5.0, 0.3), (2.0, 0.5, 0.2), (0.4, 0.1, 0.1),
    (0.8, 2.0, 0.5), (0.8, 1.0, 0.1), (2.0, 1.0, 1.0), (0.5, 4.0, 0.2),
    (0.75, 1.0, 0.3), (1.5, 1.0, 0.2),
]
GOLDEN_COLUMNS = [
    "transmit_power", "jam_power", "obs_noise_var", "regime", "key_rate",
    "kind", "label", "boundary", "cap_lower", "cap_upper",
    "rate_ld", "rate_myop", "rate_gv",
]


def test_c03_classifier_matches_golden_file():
    rows = []
    for t, g, key in GOLDEN_POINTS:
        for regime in (KeyRegime.none(), KeyRegime.log_n(),
                       KeyRegime.linear(key), KeyRegime.infinite()):
            rows.extend(region_sweep([g], [t], regime))
    rows.extend(region_sweep([2.0], [0.8], KeyRegime.linear(0.01)))
    ok = rows_to_bytes(GOLDEN_COLUMNS, rows) == GOLDEN.read_bytes()
    report("c03 classifier-golden", ok, f"{len(rows)} rows byte-compared")


def test_c04_mirroring_attack_forces_the_error_floor():
    started = time.perf_counter()
    p = ChannelParams(1.0, 1.0, 0.5)
    floor = symmetrization_pe_floor(p)
    pes = [
        run_pe(TrialConfig(params=p, n=64, rate=0.125,
                           attack="symmetrize_z_aware", trials=2000,
                           seed=seed)).pe_hat
        for seed in (301, 302, 303)
    ]
    hits = sum(pe >= floor - 0.05 for pe in pes)
    elapsed = time.perf_counter() - started
    ok = hits >= 2 and elapsed < 60.0
    report("c04 symmetrization-floor", ok,
           f"pe {pes} vs floor {floor} - 0.05; {hits}/3 seeds in {elapsed:.1f}s")


def test_c05_scaled_noise_attack_phase_transition():
    started = time.perf_counter()
    p = ChannelParams(1.0, 0.25, 1.0)
    bound = minimize_scale_babble(p).achieved_rate
    below = run_pe(TrialConfig(params=p, n=128, rate=0.5 * bound,
                               attack="scale_and_babble", trials=500,
                               seed=401)).pe_hat
    above = run_pe(TrialConfig(params=p, n=128, rate=1.25 * bound,
                               attack="scale_and_babble", trials=500,
                               seed=401)).pe_hat
    elapsed = time.perf_counter() - started
    ok = below <= 0.1 and above >= 0.3 and elapsed < 300.0
    report("c05 babble-transition", ok,
           f"bound {bound:.6f}: pe {below} at half rate, {above} at 1.25x "
           f"in {elapsed:.1f}s")


def test_c06_clipping_probability_decays_with_blocklength():
    p = ChannelParams(1.0, 0.25, 1.0)
    clips = []
    for n in (64, 128, 256):
        tally = run_pe(TrialConfig(
            params=p, n=n, rate=1.0, attack="scale_and_babble",
            attack_params={"epsilon": 0.3}, trials=10_000, seed=501,
            mode="ensemble"))
        clips.append(tally.clip_count)
    logs = [math.log2(c) if c else -math.inf for c in clips]
    ok = clips[0] > clips[1] > clips[2] > 0
    report("c06 clip-decay", ok,
           f"clip counts {clips} (log2 {[round(v, 2) for v in logs]}) "
           "over n=64,128,256 at 1e4 trials")


def test_c07_list_sizes_small_below_and_growing_above():
    started = time.perf_counter()
    # below the packing rate by half a bit: worst-shell lists stay tiny
    cb = generate(31, n=16, rate=0.5, power=1.0)
    rng = philox_stream(31, 0xC0FFEE, 0)
    sv = list_size_survey(cb, "worst_shell", math.sqrt(16 * 0.25), 10_000, rng)
    below_ok = sv.max_size <= 3 * 16 * 16
    # above by half a bit: log2 mean list grows at about half a bit per dim
    nj = 2.0 ** -0.5
    ns, logs = [10, 12, 14, 16, 18], []
    for n in ns:
        cb = generate(32, n=n, rate=0.75, power=1.0)
        rng = philox_stream(32, 0xC0FFEE, n)
        above = list_size_survey(cb, "worst_shell", math.sqrt(n * nj), 300, rng)
        logs.append(math.log2(above.mean_size))
    slope = float(np.polyfit(ns, logs, 1)[0])
    elapsed = time.perf_counter() - started
    ok = below_ok and abs(slope - 0.5) <= 0.3 and elapsed < 300.0
    report("c07 list-size-both-directions", ok,
           f"below: max {sv.max_size} <= 768; above: slope {slope:.3f} "
           f"vs 0.5 +- 0.3 in {elapsed:.1f}s")


def test_c08_strip_count_exponent():
    s2 = 1.0
    ns, logs = [12, 14, 16, 18, 20], []
    for n in ns:
        cb = generate(81, n=n, rate=1.0, power=1.0)
        rng = philox_stream(82, 0xC0FFEE, n)
        eps = 0.5 * math.log2(n) / n
        counts = [
            strip_census(
                cb, uniform_sphere_sample(rng, n, math.sqrt(n * (1.0 + s2))),
                s2, eps, eps,
            ).thick_total
            for _ in range(30)
        ]
        logs.append(math.log2(np.mean(counts)))
    slope = float(np.polyfit(ns, logs, 1)[0])
    ok = abs(slope - 0.5) <= 0.1
    report("c08 strip-occupancy-exponent", ok,
           f"slope {slope:.4f} vs 0.5 +- 0.1 over n=12..20")


def test_c09_posterior_flatness_is_polynomial():
    p = ChannelParams(1.0, 0.25, 1.0)
    r_str = 0.5  # harmonic mean of signal power and observation noise
    deltas, exps = [], []
    for n in (100, 1000, 10_000):
        tau = math.log2(n) / n
        d = quasi_uniformity(p, math.sqrt(2.0 * n), r_str, tau, n=n)
        deltas.append(d)
        exps.append(math.log(d) / math.log(n))
    ok = all(c <= 5.0 for c in exps) and deltas == sorted(deltas)
    report("c09 quasi-uniformity", ok,
           f"log-delta/log-n {[round(c, 4) for c in exps]} (<= 5), "
           "flatness factor nondecreasing in n")


def test_c10_geometry_against_monte_carlo_and_tails():
    started = time.perf_counter()
    notes, ok = [], True
    for n in (4, 8, 16):
        rr = math.sqrt(n)
        # plane through the center: exactly half the sphere
        ok &= ball_cap_fraction(n, rr, rr, math.sqrt(2.0) * rr) == 0.5
        rng = philox_stream(601, 0xC0FFEE, n)
        pts = uniform_sphere_batch(rng, 1_000_000, n, rr)
        center = np.zeros(n)
        center[0] = rr
        p_hat = float(np.mean(np.sum((pts - center) ** 2, axis=1) <= n * 1.0))
        p_true = ball_cap_fraction(n, rr, rr, rr)
        se = math.sqrt(p_true * (1.0 - p_true) / 1e6)
        ok &= abs(p_hat - p_true) <= 3.0 * se
        notes.append(f"n={n} |{p_hat:.5f}-{p_true:.5f}|<={3 * se:.5f}")
    for n in (32, 64):
        rng = philox_stream(602, 0xC0FFEE, n)
        g = rng.normal(0.0, 1.0, size=(100_000, n))
        sq = np.einsum("ij,ij->i", g, g)
        x = uniform_sphere_batch(rng, 100_000, n, math.sqrt(n))
        cosines = np.einsum("ij,ij->i", x, g) / (math.sqrt(n) * np.sqrt(sq))
        for eps in (0.2, 0.3, 0.5):
            freq = float(np.mean((sq < n * (1 - eps)) | (sq > n * (1 + eps))))
            ok &= freq <= gaussian_norm_tail_bound(n, 1.0, eps, "two_sided")
            freq = float(np.mean(np.abs(cosines) >= eps))
            ok &= freq <= inner_product_tail_bound(
                n, math.sqrt(n), 1.0, eps * math.sqrt(n) / n
            )
    elapsed = time.perf_counter() - started
    ok &= elapsed < 120.0
    report("c10 geometry-oracles", ok,
           "; ".join(notes) + f"; tail bounds dominate on n=32,64 grid "
           f"in {elapsed:.1f}s")


def test_c11_reverse_lists_stay_polynomial():
    n, bound = 14, 14 ** 4
    worst, populated = 0, 0
    for seed in (701, 702, 703):
        cb = generate(seed, n=n, rate=1.0, power=1.0)
        rng = philox_stream(seed, 0xC0FFEE, 0)
        z = awgn_observe(rng, cb.codewords[5, 0], 0.5)
        census = strip_census(cb, z, 0.5, 0.9, 0.3)
        ogs = build_ogs(census, 0.3, transmitted=(5, 0))
        populated += not ogs.empty
        for _ in range(100):
            s = uniform_sphere_sample(rng, n, math.sqrt(n * 0.125))
            _, rev = blob_and_reverse_sizes(cb, ogs, s, math.sqrt(n * 0.125))
            worst = max(worst, rev)
    ok = worst <= bound and populated >= 2
    report("c11 reverse-list-size", ok,
           f"worst reverse size {worst} <= {bound} over 3 seeds x 100 draws "
           f"({populated}/3 seeds with a populated block)")


SIM_COMMON = """
command = "simulate"
seed = {seed}
n = {n}
rate = {rate}
jam_power = {jam}
obs_noise_var = {obs}
attack = "{attack}"
trials = {trials}
output = "{out}"
"""

RERUN_DOCS = [
    ("mirror", SIM_COMMON, dict(seed=301, n=64, rate=0.125, jam=1.0, obs=0.5,
                                attack="symmetrize_z_aware", trials=200)),
    ("babble", SIM_COMMON + 'mode = "ensemble"\n',
     dict(seed=401, n=128, rate=0.5, jam=0.25, obs=1.0,
          attack="scale_and_babble", trials=200)),
    ("clip", SIM_COMMON + 'mode = "ensemble"\nepsilon_babble = 0.3\n',
     dict(seed=501, n=128, rate=1.0, jam=0.25, obs=1.0,
          attack="scale_and_babble", trials=500)),
    ("survey", """
command = "listdec"
seed = 31
n = 16
rate = 0.5
attack = "worst_shell"
radius = 2.0
centers = 1000
output = "{out}"
""", {}),
    ("census", """
command = "strip-census"
seed = 701
n = 14
rate = 1.0
obs_noise_var = 0.5
epsilon = 0.9
delta = 0.3
message = 5
output = "{out}"
""", {}),
    ("blob", """
command = "blob"
seed = 701
n = 14
rate = 1.0
obs_noise_var = 0.5
jam_power = 0.125
epsilon = 0.9
delta = 0.3
radius = 1.32
draws = 10
message = 5
output = "{out}"
""", {}),
]


def test_c12_stochastic_reruns_are_byte_identical(tmp_path):
    checked = []
    ok = True
    for name, template, fields in RERUN_DOCS:
        first = tmp_path / f"{name}_a.csv"
        second = tmp_path / f"{name}_b.csv"
        cfg = tmp_path / f"{name}.toml"
        cfg.write_text(template.format(out=first, **fields), encoding="utf-8")
        ok &= main([str(cfg)]) == 0
        ok &= main([str(cfg), "--output", str(second)]) == 0
        same = first.read_bytes() == second.read_bytes()
        ok &= same
        checked.append(f"{name}={'same' if same else 'DIFFERENT'}")
    report("c12 byte-identical-reruns", ok, ", ".join(checked))
