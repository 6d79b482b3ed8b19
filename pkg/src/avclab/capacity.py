"""Closed-form rates, the two scalar optimizations, and the regime classifier.

The channel is parameterized by the transmitter's per-symbol power, the
jammer's per-symbol power budget, and the variance of the jammer's
observation noise. Everything here is a pure function of those three
numbers (plus the amount of common randomness for the classifier).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

# boundary ties in the classifier are detected at this precision
_TIE_REL = 1e-12
_TIE_ABS = 1e-15

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


# ============================================================================
# Types
# ============================================================================

@dataclass(frozen=True)
class ChannelParams:
    """Per-symbol channel constants.

    transmit_power: encoder power (every codeword has squared norm
        n * transmit_power).
    jam_power: jammer budget (attack vectors satisfy
        ||s||^2 <= n * jam_power).
    obs_noise_var: variance of the additive noise on the jammer's
        observation; 0 means the jammer sees the codeword exactly.
    """

    transmit_power: float
    jam_power: float
    obs_noise_var: float

    def __post_init__(self) -> None:
        if not self.transmit_power > 0.0:
            raise ValueError("transmit_power must be positive")
        if not self.jam_power > 0.0:
            raise ValueError("jam_power must be positive")
        if self.obs_noise_var < 0.0:
            raise ValueError("obs_noise_var must be nonnegative")

    @property
    def obs_ratio(self) -> float:
        """Observation-noise-to-signal ratio (the classifier's x axis)."""
        return self.obs_noise_var / self.transmit_power

    @property
    def jam_ratio(self) -> float:
        """Jam-to-signal ratio (the classifier's y axis)."""
        return self.jam_power / self.transmit_power


@dataclass(frozen=True)
class KeyRegime:
    """Amount of common randomness shared by encoder and decoder.

    kind is one of "none", "log_n", "linear", "infinite"; key_rate is
    the bits-per-symbol rate of the key and is only meaningful for the
    linear kind, where it must be positive.
    """

    kind: str
    key_rate: float = 0.0

    _KINDS = ("none", "log_n", "linear", "infinite")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"kind must be one of {self._KINDS}")
        if self.kind == "linear" and not self.key_rate > 0.0:
            raise ValueError("linear key regime requires key_rate > 0")
        if self.kind != "linear" and self.key_rate != 0.0:
            raise ValueError("key_rate is only meaningful for the linear kind")

    @classmethod
    def none(cls) -> "KeyRegime":
        return cls("none")

    @classmethod
    def log_n(cls) -> "KeyRegime":
        return cls("log_n")

    @classmethod
    def linear(cls, key_rate: float) -> "KeyRegime":
        return cls("linear", key_rate)

    @classmethod
    def infinite(cls) -> "KeyRegime":
        return cls("infinite")


@dataclass(frozen=True)
class CapacityVerdict:
    """Classifier output: an exact capacity, a bound pair, or zero."""

    kind: str  # "exact" | "bounds" | "zero"
    lower: float
    upper: float
    regime_label: str
    rates_used: dict
    boundary: bool

    def __post_init__(self) -> None:
        if self.kind not in ("exact", "bounds", "zero"):
            raise ValueError("kind must be 'exact', 'bounds', or 'zero'")
        if not 0.0 <= self.lower <= self.upper:
            raise ValueError("need 0 <= lower <= upper")

    @property
    def rate(self) -> float:
        if self.kind == "bounds":
            raise ValueError("rate is undefined for a bounds verdict")
        return self.upper


@dataclass(frozen=True)
class OptResult:
    """Scalar-optimization outcome.

    arg_opt is the optimizing argument inside the stated feasible
    interval; objective_value is the optimized objective itself;
    achieved_rate is the communication rate the optimum corresponds to;
    boundary_hit marks an optimum at an interval endpoint.
    """

    arg_opt: float
    objective_value: float
    achieved_rate: float
    boundary_hit: bool


# ============================================================================
# Closed-form rates
# ============================================================================

def rate_ld(p: ChannelParams) -> float:
    """Omniscient-adversary list-decoding rate; may be negative, callers clamp."""
    return 0.5 * math.log2(p.transmit_power / p.jam_power)


def rate_myop(p: ChannelParams) -> float:
    """Myopic-adversary rate; requires a strictly noisy observation."""
    pw, nj, s2 = p.transmit_power, p.jam_power, p.obs_noise_var
    if not s2 > 0.0:
        raise ValueError("rate_myop needs obs_noise_var > 0")
    arg = ((pw + s2) * (pw + nj) - 2.0 * pw * math.sqrt(nj * (pw + s2))) / (nj * s2)
    if not arg > 0.0:
        raise ValueError("rate_myop undefined: log argument not positive")
    return 0.5 * math.log2(arg)


def rate_gv(p: ChannelParams) -> float:
    """Quadratic sphere-packing achievability rate (zero below 2x power margin)."""
    pw, nj = p.transmit_power, p.jam_power
    if pw < 2.0 * nj:
        return 0.0
    return 0.5 * math.log2(pw * pw / (4.0 * nj * (pw - nj)))


def rate_rankin(p: ChannelParams) -> float:
    """Packing-number upper rate (zero below 2x power margin)."""
    pw, nj = p.transmit_power, p.jam_power
    if pw < 2.0 * nj:
        return 0.0
    return 0.5 * math.log2(pw / (2.0 * nj))


def rate_lp(p: ChannelParams) -> float:
    """Linear-programming upper rate (zero below 2x power margin)."""
    pw, nj = p.transmit_power, p.jam_power
    if pw < 2.0 * nj:
        return 0.0
    root = math.sqrt(nj * (pw - nj))
    hi = (pw + 2.0 * root) / (4.0 * root)
    lo = (pw - 2.0 * root) / (4.0 * root)
    return _xlog2x(hi) - _xlog2x(lo)


def _xlog2x(x: float) -> float:
    if x <= 0.0:
        return 0.0
    return x * math.log2(x)


def awgn_rate(power: float, noise_var: float) -> float:
    """Capacity of the additive white Gaussian channel at this ratio."""
    if not power > 0.0 or not noise_var > 0.0:
        raise ValueError("power and noise_var must be positive")
    return 0.5 * math.log2(1.0 + power / noise_var)


# ============================================================================
# Scalar optimization machinery
# ============================================================================

def _golden_min(fn, lo: float, hi: float, tol: float = 1e-10, max_iter: int = 400):
    """Golden-section minimum of a unimodal fn on [lo, hi].

    Returns (x, fx, at_lo, at_hi). Both endpoints are evaluated exactly
    and compared against the interior probe, so boundary minima come out
    at the boundary itself rather than a bracket-width away from it.
    """
    if not hi > lo:
        x = lo
        return x, fn(x), True, True
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    it = 0
    while (b - a) > tol and it < max_iter:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
        it += 1
    if fc <= fd:
        x, fx = c, fc
    else:
        x, fx = d, fd
    flo, fhi = fn(lo), fn(hi)
    at_lo = at_hi = False
    if flo < fx or (flo == fx and abs(x - lo) <= 2.0 * tol):
        x, fx, at_lo = lo, flo, True
    if fhi < fx or (fhi == fx and not at_lo and abs(hi - x) <= 2.0 * tol):
        x, fx, at_lo, at_hi = hi, fhi, False, True
    return x, fx, at_lo, at_hi


def _bisect_root(dfn, lo: float, hi: float, iters: int = 200) -> float | None:
    """Root of dfn on [lo, hi] by bisection; None without a sign change."""
    flo, fhi = dfn(lo), dfn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        return None
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = dfn(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
        if (hi - lo) <= 1e-15 * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


# ============================================================================
# The two optimizations
# ============================================================================

def minimize_scale_babble(p: ChannelParams) -> OptResult:
    """Best subtract-and-renoise coefficient for the rate-capping attack.

    Minimizes R(a) = 0.5*log2(1 + f(a)) with
    f(a) = (1-a)^2 * transmit_power / (jam_power - a^2 * transmit_power)
    over the feasible interval (0, sqrt(jam_power / (transmit_power +
    obs_noise_var))]; R is unimodal there. The left endpoint is never a
    minimum, so evaluating the closure is harmless.
    """
    pw, nj, s2 = p.transmit_power, p.jam_power, p.obs_noise_var
    amax = math.sqrt(nj / (pw + s2))

    def rate_of(a: float) -> float:
        den = nj - a * a * pw
        if den <= 0.0:
            return math.inf
        return 0.5 * math.log2(1.0 + (1.0 - a) ** 2 * pw / den)

    x, fx, at_lo, at_hi = _golden_min(rate_of, 0.0, amax)
    if not (at_lo or at_hi):
        # f'(a) carries the sign of (1 - a)(a * pw - nj)
        def dsign(a: float) -> float:
            return (1.0 - a) * (a * pw - nj)

        width = max(1e-8 * max(amax, 1.0), 1e-12)
        root = _bisect_root(dsign, max(0.0, x - width), min(amax, x + width))
        if root is not None and rate_of(root) <= fx:
            x, fx = root, rate_of(root)
    return OptResult(arg_opt=x, objective_value=fx, achieved_rate=fx,
                     boundary_hit=at_lo or at_hi)


def myop_ld_radius(p: ChannelParams, alpha_s: float) -> float:
    """Per-symbol squared list-decoding radius for a given parallel power split.

    alpha_s is the portion of jam power the attacker aligns with its
    codeword estimate; the rest is spent isotropically. The slack terms
    of the finite-n analysis are set to zero.
    """
    pw, nj, s2 = p.transmit_power, p.jam_power, p.obs_noise_var
    if not 0.0 <= alpha_s <= nj * (1.0 + 1e-12):
        raise ValueError("alpha_s must lie in [0, jam_power]")
    a = math.sqrt(alpha_s / (pw + s2))
    den = pw + nj - 2.0 * pw * a
    if den <= 0.0:
        raise ValueError("degenerate decomposition: denominator <= 0")
    return pw * (nj - pw * a * a) / den


def maximize_myop_ld_radius(p: ChannelParams) -> OptResult:
    """Power split maximizing the list-decoding radius; rate = 0.5*log2(P/r)."""
    pw, nj = p.transmit_power, p.jam_power
    s2 = p.obs_noise_var

    def neg_radius(alpha_s: float) -> float:
        try:
            return -myop_ld_radius(p, alpha_s)
        except ValueError:
            return math.inf  # degenerate corner treated as worthless

    x, fx, at_lo, at_hi = _golden_min(neg_radius, 0.0, nj)
    if not (at_lo or at_hi):
        # dr/d(alpha_s) carries the sign of (1 - a)(nj - pw * a)
        def dsign(alpha_s: float) -> float:
            a = math.sqrt(alpha_s / (pw + s2))
            return (1.0 - a) * (nj - pw * a)

        width = max(1e-8 * max(nj, 1.0), 1e-12)
        root = _bisect_root(dsign, max(0.0, x - width), min(nj, x + width))
        if root is not None and neg_radius(root) <= fx:
            x, fx = root, neg_radius(root)
    r_opt = -fx
    rate = 0.5 * math.log2(pw / r_opt)
    return OptResult(arg_opt=x, objective_value=r_opt, achieved_rate=rate,
                     boundary_hit=at_lo or at_hi)


# ============================================================================
# Regime classifier
# ============================================================================

def _le(x: float, y: float) -> tuple[bool, bool]:
    """x <= y, plus a flag for an equality tie at classifier precision."""
    tie = math.isclose(x, y, rel_tol=_TIE_REL, abs_tol=_TIE_ABS)
    return (x <= y) or tie, tie


def _ge(x: float, y: float) -> tuple[bool, bool]:
    ok, tie = _le(y, x)
    return ok, tie


def _verdict_zero(regime: KeyRegime, boundary: bool) -> CapacityVerdict:
    return CapacityVerdict("zero", 0.0, 0.0, f"{regime.kind}/zero", {}, boundary)


def _verdict_exact(regime: KeyRegime, name: str, value: float, boundary: bool,
                   label_suffix: str = "") -> CapacityVerdict:
    v = max(0.0, value)
    label = f"{regime.kind}/exact:{name}{label_suffix}"
    return CapacityVerdict("exact", v, v, label, {name: value}, boundary)


def _verdict_bounds(regime: KeyRegime, lo_name: str, lo: float, hi_name: str,
                    hi: float, boundary: bool) -> CapacityVerdict:
    lo_c = max(0.0, lo)
    hi_c = max(lo_c, hi)
    label = f"{regime.kind}/bounds:{lo_name}:{hi_name}"
    return CapacityVerdict("bounds", lo_c, hi_c, label,
                           {lo_name: lo, hi_name: hi}, boundary)


def classify(p: ChannelParams, regime: KeyRegime) -> CapacityVerdict:
    """Capacity verdict for the channel under the given key regime.

    Regions are checked in the order zero, exact, bounds; a point on a
    region boundary therefore resolves toward the strongest verdict and
    comes back with its boundary flag set.
    """
    g = p.obs_ratio
    t = p.jam_ratio

    if regime.kind == "infinite":
        in_zero, tie = _le(g, t - 1.0)
        if in_zero:
            return _verdict_zero(regime, tie)
        in_ld, tie = _le(g, 1.0 / t - 1.0)
        if in_ld:
            return _verdict_exact(regime, "rate_ld", rate_ld(p), tie)
        ok, tie = _ge(g, max(1.0 / t - 1.0, t - 1.0))
        return _verdict_exact(regime, "rate_myop", rate_myop(p), tie)

    if regime.kind == "none":
        big_jam, tie = _ge(t, 1.0)
        if big_jam:
            return _verdict_zero(regime, tie)
        in_zero, tie = _le(g, 4.0 * t - 2.0)
        if in_zero:
            return _verdict_zero(regime, tie)
        lo_ok, tie_lo = _ge(g, t / (1.0 - t))
        hi_ok, tie_hi = _le(g, 1.0 / t - 1.0)
        if lo_ok and hi_ok:
            return _verdict_exact(regime, "rate_ld", rate_ld(p), tie_lo or tie_hi)
        in_myop, tie = _ge(g, max(1.0 / t - 1.0, t / (1.0 - t)))
        if in_myop:
            return _verdict_exact(regime, "rate_myop", rate_myop(p), tie)
        lo_ok, tie_lo = _ge(g, 4.0 * t - 2.0)
        hi_ok, tie_hi = _le(g, min(1.0 / t - 1.0, t / (1.0 - t)))
        if lo_ok and hi_ok:
            return _verdict_bounds(regime, "rate_gv", rate_gv(p),
                                   "rate_ld", rate_ld(p), tie_lo or tie_hi)
        lo_ok, tie_lo = _ge(g, max(1.0 / t - 1.0, 4.0 * t - 2.0))
        hi_ok, tie_hi = _le(g, t / (1.0 - t))
        if lo_ok and hi_ok:
            return _verdict_bounds(regime, "rate_gv", rate_gv(p),
                                   "rate_myop", rate_myop(p), tie_lo or tie_hi)
        raise RuntimeError(f"unclassified point (obs_ratio={g}, jam_ratio={t})")

    if regime.kind == "log_n":
        in_zero, tie = _le(g, t - 1.0)
        if in_zero:
            return _verdict_zero(regime, tie)
        in_ld, tie = _le(g, 1.0 / t - 1.0)
        if in_ld:
            return _verdict_exact(regime, "rate_ld", rate_ld(p), tie)
        in_myop, tie = _ge(g, max(1.0 / t - 1.0, 4.0 * t - 1.0))
        if in_myop:
            return _verdict_exact(regime, "rate_myop", rate_myop(p), tie)
        lo_ok, tie_lo = _ge(g, max(1.0 / t - 1.0, t - 1.0))
        hi_ok, tie_hi = _le(g, 4.0 * t - 1.0)
        if lo_ok and hi_ok:
            return _verdict_bounds(regime, "rate_ld", rate_ld(p),
                                   "rate_myop", rate_myop(p), tie_lo or tie_hi)
        raise RuntimeError(f"unclassified point (obs_ratio={g}, jam_ratio={t})")

    # linear key rate
    in_zero, tie = _le(g, t - 1.0)
    if in_zero:
        return _verdict_zero(regime, tie)
    in_ld, tie = _le(g, 1.0 / t - 1.0)
    if in_ld:
        return _verdict_exact(regime, "rate_ld", rate_ld(p), tie)
    in_myop, tie = _ge(g, max(1.0 / t - 1.0, 4.0 * t - 1.0))
    if in_myop:
        return _verdict_exact(regime, "rate_myop", rate_myop(p), tie)
    in_band, tie = _ge(g, max(1.0 / t - 1.0, t - 1.0))
    if in_band:
        r_m = rate_myop(p)
        threshold = awgn_rate(p.transmit_power, p.obs_noise_var) - r_m
        key_ok, key_tie = _ge(regime.key_rate, threshold)
        if key_ok:
            return _verdict_exact(regime, "rate_myop", r_m, tie or key_tie,
                                  label_suffix=":key")
        return _verdict_bounds(regime, "rate_ld", rate_ld(p),
                               "rate_myop", r_m, tie)
    raise RuntimeError(f"unclassified point (obs_ratio={g}, jam_ratio={t})")


# ============================================================================
# Attack-side analytic quantities
# ============================================================================

def symmetrization_pe_floor(p: ChannelParams) -> float:
    """Error-probability floor forced by the observation-aware mirroring attack."""
    pw, nj, s2 = p.transmit_power, p.jam_power, p.obs_noise_var
    return max(0.0, 0.5 * (1.0 - (2.0 * pw + s2) / (4.0 * nj)))


def list_disambiguation_penalty(
    n: int, list_size: float, rate: float, key_bits: float
) -> tuple[float, float]:
    """Cost of resolving a decoded list with a short shared key.

    Returns (rate_loss, extra_error): the rate given up to the key and
    the added decoding-error probability. Infinite key bits drive the
    extra error to zero at infinite rate loss.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if list_size < 0.0 or rate < 0.0:
        raise ValueError("list_size and rate must be nonnegative")
    if not key_bits > 0.0:
        raise ValueError("key_bits must be positive")
    if math.isinf(key_bits):
        return math.inf, 0.0
    rate_loss = key_bits / (2.0 * n)
    if list_size == 0.0 or rate == 0.0:
        return rate_loss, 0.0
    log2_err = (
        1.0
        + math.log2(n)
        + math.log2(list_size)
        + math.log2(rate)
        - math.log2(key_bits)
        - key_bits / 2.0
    )
    if log2_err < -1074.0:
        return rate_loss, 0.0
    return rate_loss, min(1.0, 2.0 ** log2_err)
