"""Attack strategies: power-constrained functions of the jammer's noisy view.

Every strategy consumes a JamContext (observation, channel constants,
randomness, optionally the public codebook) and returns a JamResult
whose vector satisfies the power budget, clipping and flagging when a
raw construction lands outside it. A name registry at the bottom lets
the experiment harness select strategies from config files.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .capacity import ChannelParams, minimize_scale_babble
from .codec import SphericalCodebook

POWER_SLACK = 1e-9


class InfeasibleAttackError(ValueError):
    """The strategy cannot run within the jammer's power budget."""


@dataclass(frozen=True)
class JamContext:
    """Everything the jammer sees: z = x + observation noise, the channel
    constants, a private randomness stream, and (public) codebook."""

    z: np.ndarray
    params: ChannelParams
    rng: np.random.Generator
    codebook: SphericalCodebook | None = None

    @property
    def n(self) -> int:
        return self.z.shape[0]


@dataclass(frozen=True)
class JamResult:
    s: np.ndarray
    clipped: bool
    aux: dict = field(default_factory=dict)


def awgn_observe(rng: np.random.Generator, x: np.ndarray, sigma2: float) -> np.ndarray:
    """The jammer's view: x plus iid Gaussian noise of variance sigma2."""
    if sigma2 < 0.0:
        raise ValueError("sigma2 must be nonnegative")
    if sigma2 == 0.0:
        return x.copy()
    return x + rng.normal(0.0, math.sqrt(sigma2), size=x.shape)


def _clip(s_raw: np.ndarray, budget: float) -> tuple[np.ndarray, bool, float]:
    norm = float(np.linalg.norm(s_raw))
    if norm <= budget:
        return s_raw, False, 1.0
    beta = budget / norm
    return s_raw * beta, True, beta


def jam_silent(ctx: JamContext) -> JamResult:
    """No attack; the registry name for this is "none"."""
    return JamResult(s=np.zeros(ctx.n), clipped=False)


def jam_oblivious(ctx: JamContext) -> JamResult:
    """Ignore z entirely: iid Gaussian at 99% of the budgeted variance.

    The 1% back-off keeps the clip event rare (exponentially so in n)
    without materially weakening the noise.
    """
    nj = ctx.params.jam_power
    s_raw = ctx.rng.normal(0.0, math.sqrt(nj * 0.99), size=ctx.n)
    s, clipped, beta = _clip(s_raw, math.sqrt(ctx.n * nj))
    return JamResult(s=s, clipped=clipped, aux={"beta": beta})


def jam_scale_and_babble(
    ctx: JamContext, alpha: float | None = None, epsilon: float = 0.05
) -> JamResult:
    """Subtract a scaled copy of the observation, then add fresh noise.

    s = beta * (-alpha * z + g) with g iid Gaussian of variance
    gamma^2 = (jam_power - alpha^2 (transmit_power + obs_noise_var)) (1 - epsilon),
    beta clipping to the power sphere. alpha=None uses the rate-minimizing
    coefficient. Unclipped, Bob's channel is y = (1-alpha) x - alpha s_z + g.
    """
    p = ctx.params
    amax = math.sqrt(p.jam_power / (p.transmit_power + p.obs_noise_var))
    if alpha is None:
        alpha = min(minimize_scale_babble(p).arg_opt, amax)
    if not 0.0 < alpha <= amax * (1.0 + 1e-12):
        raise InfeasibleAttackError(
            f"alpha={alpha} outside the feasible interval (0, {amax}]"
        )
    if not 0.0 < epsilon < 1.0:
        raise ValueError("epsilon must lie in (0, 1)")
    gamma2 = (p.jam_power - alpha * alpha * (p.transmit_power + p.obs_noise_var))
    gamma2 = max(0.0, gamma2) * (1.0 - epsilon)
    g = ctx.rng.normal(0.0, math.sqrt(gamma2), size=ctx.n) if gamma2 > 0.0 \
        else np.zeros(ctx.n)
    s_raw = -alpha * ctx.z + g
    s, clipped, beta = _clip(s_raw, math.sqrt(ctx.n * p.jam_power))
    return JamResult(
        s=s, clipped=clipped,
        aux={"alpha": alpha, "gamma2": gamma2, "beta": beta},
    )


def _draw_codeword(ctx: JamContext) -> tuple[np.ndarray, int, int]:
    cb = ctx.codebook
    if cb is None:
        raise ValueError("this attack needs the codebook in JamContext")
    m_prime = int(ctx.rng.integers(cb.num_messages))
    k_prime = int(ctx.rng.integers(cb.num_keys))
    return cb.codewords[m_prime, k_prime], m_prime, k_prime


def jam_symmetrize_z_aware(ctx: JamContext) -> JamResult:
    """Drag the observation halfway toward a random codeword.

    s = beta/2 (x' - z); unclipped this puts Bob's y at the midpoint of
    x' and z shifted by half the observation noise, leaving the decoder
    no way to favor the real message over m'.
    """
    x_prime, m_prime, k_prime = _draw_codeword(ctx)
    s_raw = 0.5 * (x_prime - ctx.z)
    s, clipped, beta = _clip(s_raw, math.sqrt(ctx.n * ctx.params.jam_power))
    return JamResult(
        s=s, clipped=clipped,
        aux={"m_prime": m_prime, "k_prime": k_prime, "beta": beta},
    )


def jam_symmetrize_z_agnostic(ctx: JamContext) -> JamResult:
    """Transmit a random codeword outright; needs jam power >= signal power."""
    p = ctx.params
    if p.jam_power < p.transmit_power:
        raise InfeasibleAttackError(
            "codeword injection needs jam_power >= transmit_power"
        )
    x_prime, m_prime, k_prime = _draw_codeword(ctx)
    return JamResult(
        s=x_prime.copy(), clipped=False,
        aux={"m_prime": m_prime, "k_prime": k_prime},
    )


def jam_push_to_origin(ctx: JamContext, x_estimate: np.ndarray) -> JamResult:
    """Spend the whole budget pushing the estimated codeword toward 0."""
    norm = float(np.linalg.norm(x_estimate))
    if norm < 1e-150:
        raise ValueError("x_estimate must be nonzero")
    s = (-math.sqrt(ctx.n * ctx.params.jam_power) / norm) * x_estimate
    return JamResult(s=s, clipped=False, aux={"estimate_norm": norm})


# ----------------------------------------------------------------------------
# Name registry: adapters take (ctx, x_true, opts) so strategies that need
# the true codeword (omniscient push) share a calling convention with the
# purely z-driven ones.
# ----------------------------------------------------------------------------

def _adapt_push(ctx: JamContext, x: np.ndarray, opts: dict) -> JamResult:
    estimate = opts.get("estimate", "observation")
    if estimate == "observation":
        return jam_push_to_origin(ctx, ctx.z)
    if estimate == "true":
        return jam_push_to_origin(ctx, x)
    raise ValueError(f"unknown push estimate {estimate!r}")


ATTACKS = {
    "none": lambda ctx, x, opts: jam_silent(ctx),
    "oblivious": lambda ctx, x, opts: jam_oblivious(ctx),
    "scale_and_babble": lambda ctx, x, opts: jam_scale_and_babble(
        ctx, alpha=opts.get("alpha"), epsilon=opts.get("epsilon", 0.05)
    ),
    "symmetrize_z_aware": lambda ctx, x, opts: jam_symmetrize_z_aware(ctx),
    "symmetrize_z_agnostic": lambda ctx, x, opts: jam_symmetrize_z_agnostic(ctx),
    "push_to_origin": _adapt_push,
}

# strategies that never read the codebook; only these are valid in the
# ensemble-averaged error mode, where no explicit codebook exists
CODEBOOK_FREE_ATTACKS = frozenset(
    {"none", "oblivious", "scale_and_babble", "push_to_origin"}
)
