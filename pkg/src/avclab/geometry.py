"""Log-domain geometry of spheres, balls, caps, and strips in R^n.

Measures that involve Gamma(n/2) factors are carried as base-2
logarithms so blocklengths up to 10^4 stay finite. Cap measures use the
regularized incomplete beta function with a series fallback for deep
tails that underflow float64. Also provides uniform sphere sampling,
toy covering-net construction, and the two analytic tail bounds used by
the experiment harnesses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import betainc, betaln, gammaln

LN2 = math.log(2.0)
_LOG2_PI = math.log2(math.pi)

# betainc results at or below this are recomputed by the log-domain
# series instead of trusting a near-subnormal float.
_BETAINC_FLOOR = 1e-300

_COVERING_CENTER_BUDGET = 10**6
_COVERING_PROBES = 10**4
_COVERING_MAX_DIM = 12


# ============================================================================
# Types
# ============================================================================

@dataclass(frozen=True)
class LogMeasure:
    """A nonnegative quantity stored as log2(value).

    is_zero marks an exact zero, in which case log2_value is -inf and
    should not be consumed. meta carries evaluator notes (for example
    the "asymptotic" tag on covering-size bounds).
    """

    log2_value: float
    is_zero: bool = False
    meta: dict = field(default_factory=dict)

    def value(self) -> float:
        """Plain value; underflows to 0.0 and overflows to inf."""
        if self.is_zero:
            return 0.0
        if self.log2_value < -1074.0:
            return 0.0
        try:
            return 2.0 ** self.log2_value
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class CapSpec:
    """A cap cut from the sphere of radius sphere_radius in R^ambient_dim.

    chord_radius is the Euclidean distance from the cap's center point
    (on the sphere) to its boundary points: 0 is a single point and
    2*sphere_radius is the whole sphere.
    """

    ambient_dim: int
    sphere_radius: float
    chord_radius: float

    def __post_init__(self) -> None:
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be a positive integer")
        if not self.sphere_radius > 0.0:
            raise ValueError("sphere_radius must be positive")
        limit = 2.0 * self.sphere_radius * (1.0 + 1e-12)
        if not 0.0 <= self.chord_radius <= limit:
            raise ValueError("chord_radius must lie in [0, 2*sphere_radius]")

    def cos_half_angle(self) -> float:
        c = self.chord_radius
        rp = self.sphere_radius
        return 1.0 - (c * c) / (2.0 * rp * rp)


@dataclass(frozen=True)
class StripSpec:
    """Difference of two caps sharing the same center point on the sphere."""

    ambient_dim: int
    sphere_radius: float
    inner_chord: float
    outer_chord: float

    def __post_init__(self) -> None:
        if self.ambient_dim < 1:
            raise ValueError("ambient_dim must be a positive integer")
        if not self.sphere_radius > 0.0:
            raise ValueError("sphere_radius must be positive")
        # equal chords are allowed and give an empty strip
        if not 0.0 <= self.inner_chord <= self.outer_chord:
            raise ValueError("need 0 <= inner_chord <= outer_chord")
        if self.outer_chord > 2.0 * self.sphere_radius * (1.0 + 1e-12):
            raise ValueError("outer_chord exceeds the sphere diameter")


# ============================================================================
# Areas and volumes
# ============================================================================

def sphere_log_area(n: int, r: float) -> LogMeasure:
    """log2 of the surface area of the sphere of radius r in R^n."""
    _check_dim_radius(n, r)
    const = 1.0 + 0.5 * n * _LOG2_PI - float(gammaln(0.5 * n)) / LN2
    return LogMeasure(const + (n - 1) * math.log2(r))


def ball_log_volume(n: int, r: float) -> LogMeasure:
    """log2 of the volume of the ball of radius r in R^n."""
    _check_dim_radius(n, r)
    const = 0.5 * n * _LOG2_PI - float(gammaln(0.5 * n + 1.0)) / LN2
    return LogMeasure(const + n * math.log2(r))


def _check_dim_radius(n: int, r: float) -> None:
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    if not r > 0.0:
        raise ValueError("radius must be positive")


# ============================================================================
# Cap and strip fractions
# ============================================================================

def _log2_reg_beta_tail(a: float, b: float, x: float) -> float:
    """log2 of the regularized incomplete beta I_x(a, b), underflow-safe."""
    v = float(betainc(a, b, x))
    if v >= 1.0:
        return 0.0
    if v > _BETAINC_FLOOR:
        return math.log2(v)
    # Deep tail. I_x(a,b) = x^a (1-x)^b / (a B(a,b)) * sum_k c_k x^k with
    # c_0 = 1 and c_{k+1}/c_k = x (a+b+k)/(a+1+k); the sum converges
    # geometrically for x < 1.
    term = 1.0
    total = 1.0
    k = 0
    while True:
        term *= x * (a + b + k) / (a + 1.0 + k)
        total += term
        k += 1
        if term < 1e-18 * total or k >= 10**6:
            break
    log_val = (
        a * math.log(x)
        + b * math.log1p(-x)
        - math.log(a)
        - float(betaln(a, b))
        + math.log(total)
    )
    return log_val / LN2


def _cap_log2_from_cos(n: int, cos_theta: float) -> LogMeasure:
    """log2 of the normalized cap measure with half-angle theta."""
    if cos_theta >= 1.0:
        return LogMeasure(-math.inf, is_zero=True)
    if cos_theta <= -1.0:
        return LogMeasure(0.0)
    if n == 1:
        # the 0-sphere is two points; a proper cap holds exactly one
        return LogMeasure(-1.0)
    sin_sq = 1.0 - cos_theta * cos_theta
    if sin_sq <= 0.0:
        return LogMeasure(-math.inf, is_zero=True) if cos_theta > 0.0 else LogMeasure(0.0)
    a = 0.5 * (n - 1)
    if cos_theta >= 0.0:
        return LogMeasure(_log2_reg_beta_tail(a, 0.5, sin_sq) - 1.0)
    co = 1.0 - 0.5 * float(betainc(a, 0.5, sin_sq))
    return LogMeasure(math.log2(co))


def cap_log2_fraction(cap: CapSpec) -> LogMeasure:
    """log2 of the fraction of the sphere's area covered by the cap."""
    return _cap_log2_from_cos(cap.ambient_dim, cap.cos_half_angle())


def cap_fraction(cap: CapSpec) -> float:
    """Fraction of the sphere's area covered by the cap, in [0, 1]."""
    return cap_log2_fraction(cap).value()


def ball_cap_log2_fraction(
    n: int, sphere_radius: float, center_dist: float, ball_radius: float
) -> LogMeasure:
    """log2 fraction of the sphere within ball_radius of an external point.

    The point sits at distance center_dist from the sphere's center; it
    may be inside, on, or outside the sphere. center_dist equal to
    sphere_radius reduces to the on-sphere chord parameterization.
    """
    _check_dim_radius(n, sphere_radius)
    if center_dist < 0.0 or ball_radius < 0.0:
        raise ValueError("distances must be nonnegative")
    if center_dist == 0.0:
        full = ball_radius >= sphere_radius
        return LogMeasure(0.0) if full else LogMeasure(-math.inf, is_zero=True)
    cos_theta = (
        center_dist * center_dist
        + sphere_radius * sphere_radius
        - ball_radius * ball_radius
    ) / (2.0 * center_dist * sphere_radius)
    return _cap_log2_from_cos(n, cos_theta)


def ball_cap_fraction(
    n: int, sphere_radius: float, center_dist: float, ball_radius: float
) -> float:
    return ball_cap_log2_fraction(n, sphere_radius, center_dist, ball_radius).value()


def _log2_sub(la: float, lb: float) -> LogMeasure:
    """LogMeasure of 2^la - 2^lb for la >= lb."""
    if math.isinf(lb) and lb < 0:
        return LogMeasure(la, is_zero=math.isinf(la) and la < 0)
    ratio = 2.0 ** (lb - la)
    if ratio >= 1.0:
        return LogMeasure(-math.inf, is_zero=True)
    return LogMeasure(la + math.log1p(-ratio) / LN2)


def ball_band_log2_fraction(
    n: int, sphere_radius: float, center_dist: float, dist_lo: float, dist_hi: float
) -> LogMeasure:
    """log2 fraction of the sphere at distance in (dist_lo, dist_hi] of a point."""
    if dist_lo > dist_hi:
        raise ValueError("need dist_lo <= dist_hi")
    hi = ball_cap_log2_fraction(n, sphere_radius, center_dist, dist_hi)
    if hi.is_zero:
        return LogMeasure(-math.inf, is_zero=True)
    lo = ball_cap_log2_fraction(n, sphere_radius, center_dist, dist_lo)
    if lo.is_zero:
        return hi
    return _log2_sub(hi.log2_value, lo.log2_value)


def strip_fraction(strip: StripSpec) -> float:
    """Fraction of the sphere between the strip's two bounding caps."""
    outer = cap_fraction(
        CapSpec(strip.ambient_dim, strip.sphere_radius, strip.outer_chord)
    )
    inner = cap_fraction(
        CapSpec(strip.ambient_dim, strip.sphere_radius, strip.inner_chord)
    )
    return max(0.0, outer - inner)


# ============================================================================
# Sphere sampling
# ============================================================================

def uniform_sphere_batch(
    rng: np.random.Generator, count: int, n: int, r: float
) -> np.ndarray:
    """(count, n) array of independent uniform draws from the radius-r sphere."""
    _check_dim_radius(n, r)
    if count < 0:
        raise ValueError("count must be nonnegative")
    out = rng.standard_normal((count, n))
    norms = np.linalg.norm(out, axis=1)
    while True:
        bad = norms < 1e-150
        if not bad.any():
            break
        k = int(bad.sum())
        out[bad] = rng.standard_normal((k, n))
        norms[bad] = np.linalg.norm(out[bad], axis=1)
    out *= (r / norms)[:, None]
    return out


def uniform_sphere_sample(rng: np.random.Generator, n: int, r: float) -> np.ndarray:
    """One uniform draw from the sphere of radius r in R^n."""
    return uniform_sphere_batch(rng, 1, n, r)[0]


# ============================================================================
# Covering nets
# ============================================================================

def covering_size_log_bound(ambient_radius: float, delta: float, n: int) -> LogMeasure:
    """Analytic bound on the number of radius-sqrt(n*delta) balls needed.

    The vanishing correction factor of the source bound is set to zero,
    so the result is tagged "asymptotic" in its metadata.
    """
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    if ambient_radius < 0.0:
        raise ValueError("ambient_radius must be nonnegative")
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    root = math.sqrt(delta)
    exponent = n * math.log2((ambient_radius + root) / root)
    return LogMeasure(exponent, meta={"asymptotic": True})


def _ambient_probe_batch(
    rng: np.random.Generator, count: int, n: int, ambient_radius: float, mode: str
) -> np.ndarray:
    if mode == "shell":
        return uniform_sphere_batch(rng, count, n, ambient_radius)
    if mode != "ball":
        raise ValueError("mode must be 'ball' or 'shell'")
    pts = uniform_sphere_batch(rng, count, n, 1.0)
    radii = ambient_radius * rng.random(count) ** (1.0 / n)
    return pts * radii[:, None]


def _min_dist_to_centers(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    best = np.full(points.shape[0], np.inf)
    pn = (points * points).sum(axis=1)
    for cs in range(0, centers.shape[0], 2048):
        blk = centers[cs : cs + 2048]
        cn = (blk * blk).sum(axis=1)
        for ps in range(0, points.shape[0], 2048):
            sl = slice(ps, ps + 2048)
            d2 = pn[sl, None] + cn[None, :] - 2.0 * points[sl] @ blk.T
            np.minimum(best[sl], d2.min(axis=1), out=best[sl])
    return np.sqrt(np.maximum(best, 0.0))


def build_toy_covering(
    rng: np.random.Generator,
    n: int,
    ambient_radius: float,
    delta: float,
    mode: str = "ball",
    margin: float = 0.9,
) -> np.ndarray:
    """Greedy covering of the ambient ball (or shell) by sqrt(n*delta) balls.

    Farthest-point insertion against waves of random probes; terminates
    when a fresh probe wave is fully covered. The construction targets
    margin * sqrt(n*delta) so that an independent certificate wave at
    the full radius passes with near-certainty. Toy dimensions only.
    """
    if n < 1 or n > _COVERING_MAX_DIM:
        raise ValueError(f"toy coverings are limited to 1 <= n <= {_COVERING_MAX_DIM}")
    if not ambient_radius > 0.0:
        raise ValueError("ambient_radius must be positive")
    if not delta > 0.0:
        raise ValueError("delta must be positive")
    if not 0.0 < margin <= 1.0:
        raise ValueError("margin must lie in (0, 1]")
    cover_r = margin * math.sqrt(n * delta)
    centers: list[np.ndarray] = []
    while True:
        probes = _ambient_probe_batch(rng, _COVERING_PROBES, n, ambient_radius, mode)
        if centers:
            dist = _min_dist_to_centers(probes, np.asarray(centers))
        else:
            dist = np.full(probes.shape[0], np.inf)
        added = False
        while True:
            worst = int(np.argmax(dist))
            if dist[worst] <= cover_r:
                break
            c = probes[worst].copy()
            centers.append(c)
            added = True
            if len(centers) > _COVERING_CENTER_BUDGET:
                raise RuntimeError(
                    f"covering construction exceeded {_COVERING_CENTER_BUDGET} "
                    f"centers (n={n}, ambient_radius={ambient_radius:g}, "
                    f"delta={delta:g})"
                )
            np.minimum(dist, np.linalg.norm(probes - c, axis=1), out=dist)
        if not added:
            return np.asarray(centers)


def covering_certificate(
    rng: np.random.Generator,
    centers: np.ndarray,
    n: int,
    ambient_radius: float,
    delta: float,
    probes: int = _COVERING_PROBES,
    mode: str = "ball",
) -> int:
    """Number of fresh probes left uncovered by the centers (0 = pass)."""
    centers = np.asarray(centers, dtype=np.float64)
    if centers.ndim != 2 or centers.shape[1] != n:
        raise ValueError("centers must be a (k, n) array")
    pts = _ambient_probe_batch(rng, probes, n, ambient_radius, mode)
    dist = _min_dist_to_centers(pts, centers)
    return int((dist > math.sqrt(n * delta)).sum())


# ============================================================================
# Tail bounds
# ============================================================================

def gaussian_norm_tail_bound(n: int, sigma2: float, epsilon: float, side: str) -> float:
    """Bound on the chance a Gaussian vector's squared norm leaves n*sigma2*(1 +/- eps).

    The bound is scale-free; sigma2 is accepted for call-site clarity
    only. side selects the upper tail, the lower tail, or their union.
    """
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    if sigma2 < 0.0:
        raise ValueError("sigma2 must be nonnegative")
    if epsilon < 0.0:
        raise ValueError("epsilon must be nonnegative")
    if side == "above":
        return math.exp(-epsilon * epsilon * n / 4.0)
    if side == "below":
        return math.exp(-epsilon * epsilon * n / 2.0)
    if side == "two_sided":
        return min(1.0, 2.0 * math.exp(-epsilon * epsilon * n / 4.0))
    raise ValueError("side must be 'above', 'below', or 'two_sided'")


def inner_product_tail_bound(n: int, norm_a: float, norm_b: float, zeta: float) -> float:
    """Bound on P(|<a, b>| >= n*zeta) for a uniform on its sphere, b fixed."""
    if n < 1:
        raise ValueError("dimension must be a positive integer")
    if not (norm_a > 0.0 and norm_b > 0.0):
        raise ValueError("norms must be positive")
    if zeta < 0.0:
        raise ValueError("zeta must be nonnegative")
    exponent = -(n - 1) * (n * n) * zeta * zeta / (2.0 * norm_a**2 * norm_b**2)
    if exponent < -1074.0:
        return 0.0
    return 2.0 ** exponent
