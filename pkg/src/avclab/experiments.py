"""Seeded Monte Carlo harnesses.

run_pe estimates decoding-error probability trial by trial, either on a
dense in-memory codebook or, when the implied codebook is too big to
materialize, by ensemble averaging over random codebooks with the
per-trial error probability computed exactly from cap fractions.

strip_census / build_ogs / blob_and_reverse_sizes walk the
observation-strip machinery: count codewords per distance strip around
the (optionally quantized) observation, partition a strip into
equal-size oracle-given blocks, and measure how many outside codewords
a jammed block can be confused with.

Per-trial randomness comes from counter-based streams keyed by
(seed, tag, trial index), so tallies are independent of trial order and
safe to parallelize.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ._rng import philox_stream
from .capacity import (
    ChannelParams,
    KeyRegime,
    classify,
    rate_gv,
    rate_ld,
    rate_myop,
)
from .codec import SphericalCodebook, generate, list_decode, min_distance_decode
from .geometry import (
    ball_band_log2_fraction,
    ball_cap_log2_fraction,
    build_toy_covering,
    LogMeasure,
    uniform_sphere_batch,
    uniform_sphere_sample,
)
from .jammers import ATTACKS, CODEBOOK_FREE_ATTACKS, JamContext, awgn_observe

_TRIAL_TAG = 0x7B1A7B1A

# two-sided 95% normal quantile, frozen so intervals never drift with scipy
WILSON_Z = 1.959963984540054

_CHUNK = 2048


def wilson_interval(
    errors: int, trials: int, z: float = WILSON_Z
) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion, clipped to [0, 1]."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0 <= errors <= trials:
        raise ValueError("need 0 <= errors <= trials")
    phat = errors / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2.0 * trials)) / denom
    half = (
        z
        * math.sqrt(phat * (1.0 - phat) / trials + z2 / (4.0 * trials * trials))
        / denom
    )
    # the algebra puts the endpoints exactly at 0/1 in the degenerate
    # tallies; roundoff must not leave dust there
    lo = 0.0 if errors == 0 else max(0.0, center - half)
    hi = 1.0 if errors == trials else min(1.0, center + half)
    return lo, hi


# ============================================================================
# Error-probability trials
# ============================================================================

@dataclass(frozen=True)
class TrialConfig:
    params: ChannelParams
    n: int
    rate: float
    key_rate: float = 0.0
    attack: str = "none"
    attack_params: dict = field(default_factory=dict)
    trials: int = 100
    seed: int = 0
    decoder: str = "min_distance"
    list_radius: float | None = None
    mode: str = "auto"
    budget: int = 1 << 22

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.attack not in ATTACKS:
            raise ValueError(f"unknown attack {self.attack!r}")
        if self.decoder not in ("min_distance", "list"):
            raise ValueError("decoder must be 'min_distance' or 'list'")
        if self.decoder == "list":
            if self.list_radius is None or self.list_radius < 0.0:
                raise ValueError("list decoder needs list_radius >= 0")
        if self.mode not in ("auto", "dense", "ensemble"):
            raise ValueError("mode must be 'auto', 'dense', or 'ensemble'")


@dataclass(frozen=True)
class TrialTally:
    errors: int
    trials: int
    pe_hat: float
    ci95: tuple[float, float]
    clip_count: int
    list_size_histogram: dict[int, int]
    mode: str
    seed: int

    def __post_init__(self) -> None:
        if not 0 <= self.errors <= self.trials:
            raise ValueError("need 0 <= errors <= trials")


def _codebook_bits(n: int, rate: float, key_rate: float) -> int:
    return int(math.floor(n * rate + 1e-9)) + int(math.floor(n * key_rate + 1e-9))


def resolve_mode(config: TrialConfig) -> str:
    """Dense when the full codebook fits the budget, ensemble otherwise."""
    if config.mode != "auto":
        return config.mode
    if (1 << _codebook_bits(config.n, config.rate, config.key_rate)) <= config.budget:
        return "dense"
    return "ensemble"


def _ensemble_error_prob(one_cap: LogMeasure, others: int) -> float:
    """P(any of `others` uniform sphere points falls in a cap of the given
    log2 fraction), computed without leaving the log domain until safe."""
    if others <= 0 or one_cap.is_zero:
        return 0.0
    lp = one_cap.log2_value
    if lp >= 0.0:
        return 1.0
    l_others = math.log2(others)
    if l_others + lp > 7.0:
        return 1.0  # expected hits > 128: no-hit probability < 1e-55
    if lp < -900.0:
        l_q = l_others + lp  # union bound exact to ~2^-900 relatively
        return 0.0 if l_q < -1074.0 else 2.0 ** l_q
    p_one = 2.0 ** lp
    if p_one >= 1.0:
        return 1.0
    return -math.expm1(float(others) * math.log1p(-p_one))


def _dense_pe(config: TrialConfig) -> TrialTally:
    cb = generate(
        config.seed, config.n, config.rate, config.key_rate,
        config.params.transmit_power, budget=config.budget,
    )
    attack = ATTACKS[config.attack]
    errors = 0
    clip_count = 0
    hist: dict[int, int] = {}
    for t in range(config.trials):
        rng = philox_stream(config.seed, _TRIAL_TAG, t)
        m = int(rng.integers(cb.num_messages))
        k = int(rng.integers(cb.num_keys))
        x = cb.codewords[m, k]
        z = awgn_observe(rng, x, config.params.obs_noise_var)
        ctx = JamContext(z=z, params=config.params, rng=rng, codebook=cb)
        res = attack(ctx, x, config.attack_params)
        clip_count += res.clipped
        y = x + res.s
        if config.decoder == "min_distance":
            errors += min_distance_decode(cb, y, k).m_hat != m
        else:
            found = list_decode(cb, y, k, config.list_radius)
            hist[len(found)] = hist.get(len(found), 0) + 1
            errors += m not in found
    return TrialTally(
        errors=errors, trials=config.trials, pe_hat=errors / config.trials,
        ci95=wilson_interval(errors, config.trials), clip_count=clip_count,
        list_size_histogram=hist, mode="dense", seed=config.seed,
    )


def _ensemble_pe(config: TrialConfig) -> TrialTally:
    if config.attack not in CODEBOOK_FREE_ATTACKS:
        raise ValueError(
            f"attack {config.attack!r} reads the codebook; ensemble mode "
            "only supports codebook-free attacks"
        )
    if config.decoder == "list":
        raise ValueError("list decoding is not supported in ensemble mode")
    n = config.n
    p = config.params
    sphere_r = math.sqrt(n * p.transmit_power)
    others = (1 << int(math.floor(n * config.rate + 1e-9))) - 1
    attack = ATTACKS[config.attack]
    errors = 0
    clip_count = 0
    for t in range(config.trials):
        rng = philox_stream(config.seed, _TRIAL_TAG, t)
        x = uniform_sphere_sample(rng, n, sphere_r)
        z = awgn_observe(rng, x, p.obs_noise_var)
        ctx = JamContext(z=z, params=p, rng=rng, codebook=None)
        res = attack(ctx, x, config.attack_params)
        clip_count += res.clipped
        y = x + res.s
        cap = ball_cap_log2_fraction(
            n, sphere_r, float(np.linalg.norm(y)), float(np.linalg.norm(res.s))
        )
        errors += rng.random() < _ensemble_error_prob(cap, others)
    return TrialTally(
        errors=errors, trials=config.trials, pe_hat=errors / config.trials,
        ci95=wilson_interval(errors, config.trials), clip_count=clip_count,
        list_size_histogram={}, mode="ensemble", seed=config.seed,
    )


def run_pe(config: TrialConfig) -> TrialTally:
    """Estimate average decoding-error probability for one configuration.

    Each trial draws a fresh message (dense mode) or a fresh codeword
    and random codebook (ensemble mode, where the per-trial error
    probability given the attack vector is a closed-form cap fraction).
    Deterministic in config.seed regardless of trial order.
    """
    mode = resolve_mode(config)
    return _dense_pe(config) if mode == "dense" else _ensemble_pe(config)


# ============================================================================
# Strip census
# ============================================================================

@dataclass(frozen=True)
class StripCensus:
    """Codeword counts per distance strip around the quantized observation.

    Strip i covers squared distance n*sigma2*(1+(i-1)*delta) exclusive
    to n*sigma2*(1+i*delta) inclusive (innermost edge closed), for
    i in strip_indices = {-eps/delta+1, ..., eps/delta}. assignments
    maps flat codeword index to position in strip_indices, -1 when the
    codeword lies outside the thick strip entirely.
    """

    z_hat: np.ndarray
    z_norm: float
    sigma2: float
    epsilon: float
    delta: float
    delta_z: float
    n: int
    code_size: int
    num_keys: int
    strip_indices: tuple[int, ...]
    counts: np.ndarray
    expected_log2_counts: tuple[float, ...]
    delta_factor: float
    thick_total: int
    assignments: np.ndarray

    def _position(self, strip_index: int) -> int:
        k = len(self.strip_indices) // 2
        pos = strip_index + k - 1
        if not 0 <= pos < len(self.strip_indices):
            raise IndexError(f"strip index {strip_index} out of range")
        return pos

    def members(self, strip_index: int) -> np.ndarray:
        """Flat codeword indices inside one strip, ascending (lexicographic
        in (message, key) since flat = m * num_keys + k)."""
        return np.flatnonzero(self.assignments == self._position(strip_index))

    def strip_of(self, flat_index: int) -> int | None:
        pos = int(self.assignments[flat_index])
        if pos < 0:
            return None
        return self.strip_indices[pos]


def _per_symbol_band_radius(power: float, n: int, ell: float, d_sq: float) -> float:
    # squared per-symbol radius of the sphere's revolution circle at chord
    # distance sqrt(d_sq) from a point at distance ell from the center
    cos_t = (ell * ell + n * power - d_sq) / (2.0 * ell * math.sqrt(n * power))
    cos_t = min(1.0, max(-1.0, cos_t))
    return power * (1.0 - cos_t * cos_t)


def _quasi_uniformity_raw(
    power: float, sigma2: float, z_norm: float, r_str: float, tau: float,
    delta_z: float, n: int,
) -> float:
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not sigma2 > 0.0:
        raise ValueError("sigma2 must be positive")
    if z_norm < 0.0 or r_str < 0.0 or delta_z < 0.0:
        raise ValueError("z_norm, r_str, delta_z must be nonnegative")
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    r_lo = r_str * (1.0 - tau)
    r_hi = r_str * (1.0 + tau)
    if r_hi >= power:
        raise ValueError("degenerate strip: outer radius reaches the equator")
    exponent = (
        (z_norm + math.sqrt(n * delta_z))
        * 2.0 * n * r_str * tau
        / (sigma2 * (math.sqrt(n * (power - r_lo)) + math.sqrt(n * (power - r_hi))))
    )
    return math.exp(exponent) if exponent <= 709.0 else math.inf


def quasi_uniformity(
    params: ChannelParams, z_norm: float, r_str: float, tau: float,
    delta_z: float = 0.0, n: int | None = None,
) -> float:
    """Worst-over-best density ratio of codeword locations within a strip
    of per-symbol squared radius r_str*(1 -+ tau), given the observation
    norm. Equals 1 at tau=0; polynomially bounded when tau ~ log(n)/n.
    """
    if n is None:
        raise ValueError("n (blocklength) is required")
    return _quasi_uniformity_raw(
        params.transmit_power, params.obs_noise_var, z_norm, r_str, tau, delta_z, n
    )


def strip_census(
    cb: SphericalCodebook,
    z: np.ndarray,
    sigma2: float,
    epsilon: float,
    delta: float,
    delta_z: float = 0.0,
    net_rng: np.random.Generator | None = None,
) -> StripCensus:
    """Count codewords per distance strip around z (or its net quantization).

    epsilon is the thick strip's half-width (squared distances within
    n*sigma2*(1 +- epsilon)) and must be an integer multiple of the
    per-strip width delta. delta_z > 0 switches on toy quantization:
    z is snapped to the nearest center of a greedy covering of its
    shell, which needs a small n and a net_rng.
    """
    if not sigma2 > 0.0:
        raise ValueError("sigma2 must be positive")
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    if not 0.0 < delta <= epsilon:
        raise ValueError("delta must lie in (0, epsilon]")
    k = round(epsilon / delta)
    if k < 1 or abs(k - epsilon / delta) > 1e-9:
        raise ValueError("epsilon must be an integer multiple of delta")
    z = np.asarray(z, dtype=np.float64)
    if z.shape != (cb.n,):
        raise ValueError(f"z must have shape ({cb.n},)")
    if delta_z > 0.0:
        if net_rng is None:
            raise ValueError("quantized mode needs net_rng")
        z_len = float(np.linalg.norm(z))
        net = build_toy_covering(net_rng, cb.n, z_len, delta_z, mode="shell")
        z_hat = net[int(np.argmin(np.linalg.norm(net - z, axis=1)))].copy()
    else:
        z_hat = z.copy()

    n = cb.n
    words = cb.flat()
    ell = float(np.linalg.norm(z_hat))
    d2 = n * cb.power + ell * ell - 2.0 * (words @ z_hat)
    np.maximum(d2, 0.0, out=d2)

    base = n * sigma2
    edges = base * (1.0 + delta * np.arange(-k, k + 1, dtype=np.float64))
    inside = (d2 >= edges[0]) & (d2 <= edges[-1])
    pos = np.clip(np.searchsorted(edges, d2, side="left") - 1, 0, 2 * k - 1)
    assignments = np.where(inside, pos, -1).astype(np.int64)
    counts = np.bincount(assignments[assignments >= 0], minlength=2 * k)

    log_size = math.log2(cb.num_messages * cb.num_keys)
    expected = []
    for j in range(2 * k):
        band = ball_band_log2_fraction(
            n, math.sqrt(n * cb.power), ell,
            math.sqrt(edges[j]), math.sqrt(edges[j + 1]),
        )
        expected.append(-math.inf if band.is_zero else log_size + band.log2_value)

    # quasi-uniformity factor of the strip just past the noise sphere (i=1)
    if ell < 1e-150:
        delta_factor = math.inf
    else:
        r_a = _per_symbol_band_radius(cb.power, n, ell, float(edges[k]))
        r_b = _per_symbol_band_radius(cb.power, n, ell, float(edges[k + 1]))
        r_lo, r_hi = sorted((r_a, r_b))
        r_str = 0.5 * (r_lo + r_hi)
        tau = (r_hi - r_lo) / (r_hi + r_lo) if r_hi + r_lo > 0.0 else 0.0
        try:
            delta_factor = _quasi_uniformity_raw(
                cb.power, sigma2, ell, r_str, tau, delta_z, n
            )
        except ValueError:
            delta_factor = math.inf

    return StripCensus(
        z_hat=z_hat,
        z_norm=ell,
        sigma2=sigma2,
        epsilon=epsilon,
        delta=delta,
        delta_z=delta_z,
        n=n,
        code_size=cb.num_messages * cb.num_keys,
        num_keys=cb.num_keys,
        strip_indices=tuple(range(-k + 1, k + 1)),
        counts=counts,
        expected_log2_counts=tuple(expected),
        delta_factor=delta_factor,
        thick_total=int(counts.sum()),
        assignments=assignments,
    )


# ============================================================================
# Oracle-given sets
# ============================================================================

@dataclass(frozen=True)
class OgsPartition:
    """Lexicographic partition of one strip into fixed-size blocks.

    Block ids count from 1: block b holds strip members at positions
    (b-1)*block_size .. b*block_size-1. empty flags a strip with no
    codewords at all (the census-failure event); focus_block is the
    block holding the transmitted codeword when one was supplied.
    """

    strip_index: int | None
    block_size: int
    blocks: tuple[tuple[int, ...], ...]
    empty: bool
    focus_block: int | None
    num_keys: int
    positions: dict[int, int]

    def block_of(self, m: int, k: int = 0) -> int:
        flat = m * self.num_keys + k
        pos = self.positions.get(flat)
        if pos is None:
            raise KeyError(f"codeword (m={m}, k={k}) is not in the strip")
        return pos // self.block_size + 1


def build_ogs(
    census: StripCensus,
    epsilon: float,
    strip_index: int | None = None,
    transmitted: tuple[int, int] | None = None,
) -> OgsPartition:
    """Partition one census strip into blocks of ceil(2^{n*epsilon}) indices.

    The strip is chosen explicitly, else as the one holding the
    transmitted (message, key), else as the fullest one. An empty strip
    yields an empty, flagged partition.
    """
    if epsilon < 0.0:
        raise ValueError("epsilon must be nonnegative")
    size = math.ceil(2.0 ** (census.n * epsilon))
    num_keys = census.num_keys
    flat_transmitted: int | None = None
    if transmitted is not None:
        flat_transmitted = transmitted[0] * num_keys + transmitted[1]
    chosen = strip_index
    if chosen is None and flat_transmitted is not None:
        chosen = census.strip_of(flat_transmitted)
        if chosen is None:
            return OgsPartition(
                strip_index=None, block_size=size, blocks=(), empty=True,
                focus_block=None, num_keys=num_keys, positions={},
            )
    if chosen is None:
        chosen = census.strip_indices[int(np.argmax(census.counts))]
    members = census.members(chosen)
    if members.size == 0:
        return OgsPartition(
            strip_index=chosen, block_size=size, blocks=(), empty=True,
            focus_block=None, num_keys=num_keys, positions={},
        )
    blocks = tuple(
        tuple(int(v) for v in members[start : start + size])
        for start in range(0, members.size, size)
    )
    positions = {int(v): i for i, v in enumerate(members)}
    focus = None
    if flat_transmitted is not None and flat_transmitted in positions:
        focus = positions[flat_transmitted] // size + 1
    return OgsPartition(
        strip_index=chosen, block_size=size, blocks=blocks, empty=False,
        focus_block=focus, num_keys=num_keys, positions=positions,
    )

# ============================================================================
# List-size surveys and blobs
# ============================================================================

@dataclass(frozen=True)
class ListSurvey:
    histogram: dict[int, int]
    max_size: int
    mean_size: float
    num_centers: int
    radius: float
    mode: str


def _annulus_batch(
    rng: np.random.Generator, count: int, n: int, r_lo: float, r_hi: float
) -> np.ndarray:
    """Uniform points in the annulus r_lo <= ||p|| <= r_hi (volume measure)."""
    dirs = uniform_sphere_batch(rng, count, n, 1.0)
    u = rng.random(count)
    if r_hi <= 0.0:
        return np.zeros((count, n))
    # radial inverse cdf: rho^n = u * r_hi^n + (1-u) * r_lo^n, in ratio form
    # to dodge overflow of r^n at large n
    t = math.exp(n * math.log(r_lo / r_hi)) if r_lo > 0.0 else 0.0
    rho = r_hi * (u + (1.0 - u) * t) ** (1.0 / n)
    return dirs * rho[:, None]


def list_size_survey(
    cb: SphericalCodebook,
    attack: str,
    radius: float,
    centers: int,
    rng: np.random.Generator,
    attack_params: dict | None = None,
    params: ChannelParams | None = None,
    key: int = 0,
) -> ListSurvey:
    """Distribution of list sizes over decoding-ball centers.

    attack picks how centers are placed: "worst_shell" puts them at the
    origin distance that maximizes cap area for the given radius,
    "shell" scatters them uniformly over the annulus the codeword
    sphere can reach within the radius, and any registry name runs the
    full encode / observe / jam pipeline (which needs params).
    """
    if centers < 1:
        raise ValueError("centers must be >= 1")
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    opts = attack_params or {}
    n = cb.n
    sphere_r = math.sqrt(n * cb.power)
    hist: dict[int, int] = {}
    total = 0
    max_size = 0

    if attack in ("worst_shell", "shell"):
        if attack == "worst_shell":
            c_norm = math.sqrt(max(0.0, n * cb.power - radius * radius))
            pts = (
                uniform_sphere_batch(rng, centers, n, c_norm)
                if c_norm > 0.0
                else np.zeros((centers, n))
            )
        else:
            r_lo = max(0.0, sphere_r - radius)
            pts = _annulus_batch(rng, centers, n, r_lo, sphere_r + radius)
        for i in range(centers):
            size = len(list_decode(cb, pts[i], key, radius))
            hist[size] = hist.get(size, 0) + 1
            total += size
            max_size = max(max_size, size)
    elif attack in ATTACKS:
        if params is None:
            raise ValueError(f"attack {attack!r} needs ChannelParams")
        fn = ATTACKS[attack]
        for _ in range(centers):
            m = int(rng.integers(cb.num_messages))
            k = int(rng.integers(cb.num_keys))
            x = cb.codewords[m, k]
            z = awgn_observe(rng, x, params.obs_noise_var)
            res = fn(JamContext(z=z, params=params, rng=rng, codebook=cb), x, opts)
            size = len(list_decode(cb, x + res.s, k, radius))
            hist[size] = hist.get(size, 0) + 1
            total += size
            max_size = max(max_size, size)
    else:
        raise ValueError(f"unknown survey mode {attack!r}")

    return ListSurvey(
        histogram=hist, max_size=max_size, mean_size=total / centers,
        num_centers=centers, radius=radius, mode=attack,
    )


def blob_and_reverse_sizes(
    cb: SphericalCodebook,
    ogs: OgsPartition,
    s: np.ndarray,
    radius: float,
    block: int | None = None,
) -> tuple[int, int]:
    """Confusion counts when one oracle-given block is jammed by s.

    Shift every codeword of the chosen block (default: the focus block,
    else block 1) by s and take the union of radius-balls around the
    shifted points: the blob. Returns (number of codewords outside the
    block that fall in the blob, the largest number of block members any
    single such outside codeword is confusable with).
    """
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    if ogs.empty or not ogs.blocks:
        return 0, 0
    bid = block if block is not None else (ogs.focus_block or 1)
    if not 1 <= bid <= len(ogs.blocks):
        raise IndexError(f"block {bid} out of range [1, {len(ogs.blocks)}]")
    members = np.asarray(ogs.blocks[bid - 1], dtype=np.int64)
    s = np.asarray(s, dtype=np.float64)
    if s.shape != (cb.n,):
        raise ValueError(f"s must have shape ({cb.n},)")
    words = cb.flat()
    shifted = words[members] + s
    c_sq = np.einsum("ij,ij->i", shifted, shifted)
    r2 = radius * radius
    slack = 1e-7 * (r2 + 1.0) + 1e-9
    hits = np.zeros(words.shape[0], dtype=np.int64)
    for start in range(0, words.shape[0], _CHUNK):
        blk = words[start : start + _CHUNK]
        d2 = (
            c_sq[:, None]
            + np.einsum("ij,ij->i", blk, blk)[None, :]
            - 2.0 * shifted @ blk.T
        )
        sure = d2 <= r2 - slack
        col_counts = sure.sum(axis=0)
        maybe = (d2 <= r2 + slack) & ~sure
        if maybe.any():
            ii, jj = np.nonzero(maybe)
            diff = shifted[ii] - blk[jj]
            exact = np.einsum("ij,ij->i", diff, diff)
            keep = np.sqrt(exact) <= radius
            np.add.at(col_counts, jj[keep], 1)
        hits[start : start + _CHUNK] += col_counts
    outside = np.ones(words.shape[0], dtype=bool)
    outside[members] = False
    blob_mask = (hits > 0) & outside
    blob_count = int(blob_mask.sum())
    reverse = int(hits[blob_mask].max()) if blob_count else 0
    return blob_count, reverse


# ============================================================================
# Region sweep
# ============================================================================

def region_sweep(
    sigma2_ratios,
    jam_ratios,
    regime: KeyRegime,
    transmit_power: float = 1.0,
) -> list[dict]:
    """Classify every lattice point; rows ordered obs-ratio-major.

    Each row carries the verdict plus the raw closed-form rates; the
    myopic rate is None at zero observation noise, where it does not
    exist (the CSV layer renders None as an empty cell).
    """
    rows: list[dict] = []
    for g in sigma2_ratios:
        for t in jam_ratios:
            p = ChannelParams(
                transmit_power, t * transmit_power, g * transmit_power
            )
            v = classify(p, regime)
            rows.append(
                {
                    "transmit_power": transmit_power,
                    "jam_power": p.jam_power,
                    "obs_noise_var": p.obs_noise_var,
                    "regime": regime.kind,
                    "key_rate": regime.key_rate,
                    "kind": v.kind,
                    "label": v.regime_label,
                    "boundary": v.boundary,
                    "cap_lower": v.lower,
                    "cap_upper": v.upper,
                    "rate_ld": rate_ld(p),
                    "rate_myop": rate_myop(p) if p.obs_noise_var > 0.0 else None,
                    "rate_gv": rate_gv(p),
                }
            )
    return rows
