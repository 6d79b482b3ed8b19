"""Spherical codebooks: generation, keyed encode, exact nearest-codeword and
list decoding, and a small binary container format.

Decoding is exhaustive over the key's subcode. The scan uses the
inner-product expansion of squared distance for speed, then recomputes
candidate distances by direct subtraction; the expansion alone loses
digits to cancellation when the center sits very near a codeword.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from ._rng import philox_stream

_CODEBOOK_TAG = 0x5EEDC0DE

# header: n, rate, key_rate, power, seed (little endian)
_HEADER = struct.Struct("<QdddQ")

# squared-distance ties below this absolute gap are reported as ties
TIE_TOL = 1e-12


class CodebookSizeError(ValueError):
    """Requested codebook exceeds the configured size budget."""

    def __init__(self, count: int, budget: int) -> None:
        super().__init__(f"codebook needs {count} codewords, budget is {budget}")
        self.count = count
        self.budget = budget


@dataclass(frozen=True)
class SphericalCodebook:
    """Fixed random code on the power sphere.

    codewords has shape (num_messages, num_keys, n); every row lies on
    the sphere of squared norm n * power. rate and key_rate are the
    actual realized rates (integer bit counts over n), which may fall
    below the requested ones when n * rate is not integral.
    """

    n: int
    rate: float
    key_rate: float
    power: float
    seed: int
    codewords: np.ndarray

    def __post_init__(self) -> None:
        if self.codewords.ndim != 3 or self.codewords.shape[2] != self.n:
            raise ValueError("codewords must have shape (messages, keys, n)")
        self.codewords.setflags(write=False)

    @property
    def num_messages(self) -> int:
        return self.codewords.shape[0]

    @property
    def num_keys(self) -> int:
        return self.codewords.shape[1]

    def flat(self) -> np.ndarray:
        """All codewords as one (num_messages * num_keys, n) view."""
        return self.codewords.reshape(-1, self.n)

    def subcode(self, key: int) -> np.ndarray:
        """The (num_messages, n) slice shared by one key value."""
        self._check_key(key)
        return self.codewords[:, key, :]

    def _check_key(self, key: int) -> None:
        if not 0 <= key < self.num_keys:
            raise IndexError(f"key {key} out of range [0, {self.num_keys})")


@dataclass(frozen=True)
class DecodeOutcome:
    m_hat: int
    distance: float
    tie_flag: bool


def generate(
    seed: int,
    n: int,
    rate: float,
    key_rate: float = 0.0,
    power: float = 1.0,
    budget: int = 1 << 22,
) -> SphericalCodebook:
    """Sample a codebook of 2^{floor(n*rate)} * 2^{floor(n*key_rate)} points
    uniformly from the sphere of squared norm n*power.

    Deterministic in (seed, n, rate, key_rate, power): the draw comes
    from a counter-based stream keyed by the seed, so trial streams
    elsewhere never collide with it.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if rate < 0.0 or key_rate < 0.0:
        raise ValueError("rate and key_rate must be nonnegative")
    if not power > 0.0:
        raise ValueError("power must be positive")
    m_bits = int(math.floor(n * rate + 1e-9))
    k_bits = int(math.floor(n * key_rate + 1e-9))
    num_m = 1 << m_bits
    num_k = 1 << k_bits
    count = num_m * num_k
    if count > budget:
        raise CodebookSizeError(count, budget)
    rng = philox_stream(seed, _CODEBOOK_TAG)
    raw = rng.standard_normal((count, n))
    norms = np.linalg.norm(raw, axis=1)
    # resample the measure-zero degenerate draws rather than dividing by ~0
    while True:
        bad = norms < 1e-150
        if not bad.any():
            break
        raw[bad] = rng.standard_normal((int(bad.sum()), n))
        norms[bad] = np.linalg.norm(raw[bad], axis=1)
    scale = math.sqrt(n * power) / norms
    words = (raw * scale[:, None]).reshape(num_m, num_k, n)
    return SphericalCodebook(
        n=n,
        rate=m_bits / n,
        key_rate=k_bits / n,
        power=power,
        seed=seed,
        codewords=words,
    )


def encode(cb: SphericalCodebook, m: int, k: int) -> np.ndarray:
    """Codeword for (message, key); a read-only view into the codebook."""
    if not 0 <= m < cb.num_messages:
        raise IndexError(f"message {m} out of range [0, {cb.num_messages})")
    cb._check_key(k)
    return cb.codewords[m, k]


def _scan_sq_dists(sub: np.ndarray, center: np.ndarray, power_sq: float) -> np.ndarray:
    # ||x - y||^2 = n P + ||y||^2 - 2 <x, y>, clipped at 0 for roundoff
    yy = float(center @ center)
    d2 = power_sq + yy - 2.0 * (sub @ center)
    np.maximum(d2, 0.0, out=d2)
    return d2


def _exact_sq_dists(sub: np.ndarray, center: np.ndarray, idx: np.ndarray) -> np.ndarray:
    diff = sub[idx] - center
    return np.einsum("ij,ij->i", diff, diff)


def min_distance_decode(cb: SphericalCodebook, y: np.ndarray, k: int) -> DecodeOutcome:
    """Nearest codeword to y within the key-k subcode.

    Ties (squared distances within TIE_TOL) break toward the smallest
    message index and set tie_flag.
    """
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (cb.n,):
        raise ValueError(f"y must have shape ({cb.n},)")
    sub = cb.subcode(k)
    d2 = _scan_sq_dists(sub, y, cb.n * cb.power)
    best = float(d2.min())
    # the scan is accurate to ~1e-7 relative; recompute everything that
    # could plausibly tie with the winner
    window = best + 1e-7 * (best + 1.0) + 1e-9
    cand = np.flatnonzero(d2 <= window)
    exact = _exact_sq_dists(sub, y, cand)
    order = np.argsort(exact, kind="stable")
    cand, exact = cand[order], exact[order]
    best_exact = float(exact[0])
    in_tie = np.flatnonzero(exact <= best_exact + TIE_TOL)
    pos = in_tie[np.argmin(cand[in_tie])]
    return DecodeOutcome(
        m_hat=int(cand[pos]),
        distance=math.sqrt(float(exact[pos])),
        tie_flag=in_tie.size > 1,
    )


def list_decode(
    cb: SphericalCodebook, center: np.ndarray, k: int, radius: float
) -> list[int]:
    """All messages whose key-k codeword lies within radius of center."""
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    center = np.asarray(center, dtype=np.float64)
    if center.shape != (cb.n,):
        raise ValueError(f"center must have shape ({cb.n},)")
    sub = cb.subcode(k)
    d2 = _scan_sq_dists(sub, center, cb.n * cb.power)
    r2 = radius * radius
    window = r2 + 1e-7 * (r2 + 1.0) + 1e-9
    cand = np.flatnonzero(d2 <= window)
    if cand.size == 0:
        return []
    exact = _exact_sq_dists(sub, center, cand)
    keep = np.sqrt(exact) <= radius
    return sorted(int(m) for m in cand[keep])


def save_codebook(cb: SphericalCodebook, path: str) -> None:
    """Write header (n, rate, key_rate, power, seed) + row-major float64."""
    header = _HEADER.pack(cb.n, cb.rate, cb.key_rate, cb.power, cb.seed)
    body = np.ascontiguousarray(cb.codewords, dtype="<f8").tobytes()
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(body)


def load_codebook(path: str) -> SphericalCodebook:
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size:
        raise ValueError("file too short for a codebook header")
    n, rate, key_rate, power, seed = _HEADER.unpack_from(blob, 0)
    num_m = 1 << round(n * rate)
    num_k = 1 << round(n * key_rate)
    expected = num_m * num_k * n * 8
    payload = blob[_HEADER.size:]
    if len(payload) != expected:
        raise ValueError(
            f"payload is {len(payload)} bytes, header implies {expected}"
        )
    words = np.frombuffer(payload, dtype="<f8").reshape(num_m, num_k, n)
    return SphericalCodebook(
        n=int(n),
        rate=float(rate),
        key_rate=float(key_rate),
        power=float(power),
        seed=int(seed),
        codewords=words.copy(),
    )
