import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from avclab.capacity import (
    CapacityVerdict,
    ChannelParams,
    KeyRegime,
    awgn_rate,
    classify,
    list_disambiguation_penalty,
    maximize_myop_ld_radius,
    minimize_scale_babble,
    myop_ld_radius,
    rate_gv,
    rate_ld,
    rate_lp,
    rate_myop,
    rate_rankin,
    symmetrization_pe_floor,
)

# frozen: 0.5*log2(4 - 2*sqrt(2)), the equal-power unit-noise myopic rate
RATE_MYOP_UNIT = 0.1142233484181939

# frozen penalty pair for n=100, L=3e4, R=1, key_bits = 2*log2(n*L)
PENALTY_LOSS = 0.2151653107004533
PENALTY_ERR = 0.046475893197866235


def params(pw=1.0, nj=1.0, s2=1.0) -> ChannelParams:
    return ChannelParams(transmit_power=pw, jam_power=nj, obs_noise_var=s2)


def babble_closed_form(p: ChannelParams) -> float:
    # case split for the attack optimum: full cancellation when the jammer
    # can afford unit scaling, the interior optimum when the scale-down to
    # the informed point stays within budget, else the budget boundary
    pw, nj, s2 = p.transmit_power, p.jam_power, p.obs_noise_var
    if nj >= pw + s2:
        return 0.0
    if nj < pw and s2 <= pw * pw / nj - pw:
        return rate_ld(p)
    return rate_myop(p)


# ----------------------------------------------------------------------------
# closed-form rates
# ----------------------------------------------------------------------------

def test_rate_ld_values():
    assert rate_ld(params(4.0, 1.0)) == 1.0
    assert rate_ld(params(2.0, 2.0)) == 0.0
    assert rate_ld(params(1.0, 4.0)) < 0.0  # negative is allowed, callers clamp


def test_rate_myop_values():
    assert math.isclose(rate_myop(params(1.0, 1.0, 1.0)), RATE_MYOP_UNIT, rel_tol=1e-15)
    assert rate_myop(params(1.0, 2.0, 1.0)) == 0.0
    # huge observation noise reduces to the oblivious-jammer rate
    got = rate_myop(params(1.0, 1.0, 1e12))
    assert abs(got - 0.5 * math.log2(2.0)) <= 1e-4
    with pytest.raises(ValueError):
        rate_myop(params(1.0, 1.0, 0.0))


def test_rate_myop_nonnegative_everywhere():
    for nj in np.logspace(-2, 2, 17):
        for s2 in np.logspace(-2, 2, 17):
            assert rate_myop(params(1.0, float(nj), float(s2))) >= 0.0


def test_packing_rates():
    assert rate_gv(params(2.0, 1.0)) == 0.0  # indicator boundary
    assert math.isclose(rate_gv(params(4.0, 1.0)), 0.5 * math.log2(16.0 / 12.0))
    assert rate_rankin(params(4.0, 1.0)) == 0.5
    assert rate_gv(params(1.0, 0.9)) == 0.0
    assert rate_lp(params(1.0, 0.9)) == 0.0
    assert rate_rankin(params(1.0, 0.9)) == 0.0
    p = params(4.0, 1.0)
    assert rate_gv(p) <= rate_lp(p) <= rate_rankin(p)


@given(
    pw=st.floats(min_value=0.1, max_value=100.0),
    ratio=st.floats(min_value=2.0, max_value=500.0),
)
@settings(max_examples=150, deadline=None)
def test_packing_rate_ordering(pw, ratio):
    p = params(pw, pw / ratio)
    assert rate_gv(p) <= rate_lp(p) + 1e-12
    assert rate_lp(p) <= rate_rankin(p) + 1e-12


def test_awgn_rate():
    assert awgn_rate(1.0, 1.0) == 0.5
    assert math.isclose(awgn_rate(3.0, 1.0), 1.0)
    with pytest.raises(ValueError):
        awgn_rate(1.0, 0.0)


def test_channel_params_validation():
    with pytest.raises(ValueError):
        params(0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        params(1.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        params(1.0, 1.0, -0.5)
    p = params(2.0, 1.0, 3.0)
    assert p.obs_ratio == 1.5
    assert p.jam_ratio == 0.5


# ----------------------------------------------------------------------------
# attack-coefficient optimization
# ----------------------------------------------------------------------------

def test_babble_interior_optimum():
    res = minimize_scale_babble(params(1.0, 0.5, 0.1))
    assert math.isclose(res.achieved_rate, 0.5, abs_tol=1e-9)
    assert math.isclose(res.arg_opt, 0.5, abs_tol=1e-7)
    assert not res.boundary_hit


def test_babble_budget_boundary():
    p = params(1.0, 0.5, 3.0)
    res = minimize_scale_babble(p)
    assert math.isclose(res.achieved_rate, rate_myop(p), abs_tol=1e-9)
    assert res.boundary_hit
    amax = math.sqrt(0.5 / 4.0)
    assert math.isclose(res.arg_opt, amax, abs_tol=1e-9)


def test_babble_full_cancellation():
    res = minimize_scale_babble(params(1.0, 2.0, 0.5))
    assert res.achieved_rate <= 1e-9
    assert math.isclose(res.arg_opt, 1.0, abs_tol=1e-7)


def test_babble_matches_case_split_on_grid():
    for pw in np.logspace(-0.5, 0.5, 5):
        for nj in np.logspace(-1.0, 1.0, 7):
            for s2 in np.logspace(-1.0, 1.0, 7):
                p = params(float(pw), float(nj), float(s2))
                res = minimize_scale_babble(p)
                assert abs(res.achieved_rate - babble_closed_form(p)) <= 1e-8
                assert 0.0 <= res.arg_opt <= math.sqrt(nj / (pw + s2)) + 1e-12


def test_babble_minimum_is_monotone():
    # the attack only improves with a larger budget or a cleaner look
    sig_axis = np.logspace(-1.5, 1.5, 13)
    jam_axis = np.logspace(-1.5, 1.5, 13)
    for nj in jam_axis:
        vals = [
            minimize_scale_babble(params(1.0, float(nj), float(s2))).achieved_rate
            for s2 in sig_axis
        ]
        assert all(b >= a - 1e-10 for a, b in zip(vals, vals[1:]))
    for s2 in sig_axis:
        vals = [
            minimize_scale_babble(params(1.0, float(nj), float(s2))).achieved_rate
            for nj in jam_axis
        ]
        assert all(b <= a + 1e-10 for a, b in zip(vals, vals[1:]))


# ----------------------------------------------------------------------------
# list-decoding radius optimization
# ----------------------------------------------------------------------------

def test_radius_endpoints():
    p = params(1.0, 0.5, 2.7)
    assert math.isclose(myop_ld_radius(p, 0.0), 0.5 / 1.5, rel_tol=1e-15)
    all_parallel = myop_ld_radius(params(1.0, 0.5, 1.0), 0.5)
    assert math.isclose(all_parallel, 0.5, rel_tol=1e-12)
    with pytest.raises(ValueError):
        myop_ld_radius(p, -0.1)
    with pytest.raises(ValueError):
        myop_ld_radius(p, 0.6)
    with pytest.raises(ValueError):
        myop_ld_radius(params(1.0, 1.0, 0.0), 1.0)  # denominator collapses


def test_radius_maximizer_regimes():
    p = params(1.0, 0.3, 5.0)
    res = maximize_myop_ld_radius(p)
    assert abs(res.achieved_rate - rate_myop(p)) <= 1e-9
    assert res.boundary_hit
    assert math.isclose(res.arg_opt, 0.3, abs_tol=1e-9)

    p = params(1.0, 0.3, 1.0)
    res = maximize_myop_ld_radius(p)
    assert abs(res.achieved_rate - rate_ld(p)) <= 1e-9
    assert not res.boundary_hit
    # interior optimum sits at jam_power^2 (pw + s2) / pw^2
    assert math.isclose(res.arg_opt, 0.09 * 2.0, abs_tol=1e-7)


def test_radius_maximizer_vanishing_jammer():
    res = maximize_myop_ld_radius(params(1.0, 1e-9, 1.0))
    assert res.objective_value < 1e-8
    assert res.achieved_rate > 10.0


def test_change_of_variables_agreement():
    for pw in np.logspace(-0.5, 0.5, 5):
        for nj in np.logspace(-1.0, 1.0, 5):
            for s2 in np.logspace(-1.0, 1.0, 5):
                p = params(float(pw), float(nj), float(s2))
                a = minimize_scale_babble(p).achieved_rate
                b = maximize_myop_ld_radius(p).achieved_rate
                assert abs(a - b) <= 1e-8


# ----------------------------------------------------------------------------
# regime classifier
# ----------------------------------------------------------------------------

def test_classify_infinite_examples():
    v = classify(params(1.0, 2.0, 1.0), KeyRegime.infinite())
    assert v.kind == "zero"
    assert v.boundary  # lies exactly on the zero edge
    assert v.regime_label == "infinite/zero"

    v = classify(params(1.0, 0.3, 5.0), KeyRegime.infinite())
    assert v.kind == "exact"
    assert v.regime_label == "infinite/exact:rate_myop"
    assert math.isclose(v.rate, rate_myop(params(1.0, 0.3, 5.0)))


def test_classify_none_examples():
    v = classify(params(1.0, 0.4, 0.1), KeyRegime.none())
    assert v.kind == "bounds"
    assert v.regime_label == "none/bounds:rate_gv:rate_ld"
    assert math.isclose(v.lower, rate_gv(params(1.0, 0.4, 0.1)))
    assert math.isclose(v.upper, rate_ld(params(1.0, 0.4, 0.1)))

    v = classify(params(1.0, 1.5, 0.2), KeyRegime.none())
    assert v.kind == "zero"

    # exact window edge resolves toward exact and is flagged
    v = classify(params(1.0, 0.4, 0.4 / 0.6), KeyRegime.none())
    assert v.kind == "exact"
    assert v.boundary


def test_classify_log_n_example():
    v = classify(params(1.0, 0.5, 4.0), KeyRegime.log_n())
    assert v.kind == "exact"
    assert v.regime_label == "log_n/exact:rate_myop"


def test_classify_zero_edge_flag_without_key():
    # g = 4t - 2 exactly
    v = classify(params(1.0, 0.75, 1.0), KeyRegime.none())
    assert v.kind == "zero"
    assert v.boundary


def test_classify_linear_key_threshold():
    p = params(1.0, 0.8, 2.0)
    threshold = awgn_rate(1.0, 2.0) - rate_myop(p)
    assert threshold > 0.0

    big = classify(p, KeyRegime.linear(2.0 * threshold))
    assert big.kind == "exact"
    assert big.regime_label == "linear/exact:rate_myop:key"
    assert not big.boundary

    small = classify(p, KeyRegime.linear(0.5 * threshold))
    assert small.kind == "bounds"
    assert small.regime_label == "linear/bounds:rate_ld:rate_myop"

    on_edge = classify(p, KeyRegime.linear(threshold))
    assert on_edge.kind == "exact"
    assert on_edge.boundary


def test_classify_omniscient_never_needs_myopic_rate():
    # obs_noise_var = 0 must stay on code paths that avoid the myopic formula
    for regime in (KeyRegime.none(), KeyRegime.log_n(),
                   KeyRegime.linear(0.3), KeyRegime.infinite()):
        for nj in (0.4, 1.0, 2.5):
            v = classify(params(1.0, nj, 0.0), regime)
            assert v.lower <= v.upper


def test_classify_lower_bounds_nest_across_regimes():
    regimes = [KeyRegime.none(), KeyRegime.log_n(), KeyRegime.linear(10.0),
               KeyRegime.infinite()]
    for t in np.logspace(-1.0, 0.7, 12):
        for g in np.logspace(-1.0, 0.7, 12):
            p = params(1.0, float(t), float(g))
            lowers = [classify(p, r).lower for r in regimes]
            for a, b in zip(lowers, lowers[1:]):
                assert a <= b + 1e-12


@given(
    t=st.floats(min_value=0.05, max_value=8.0),
    g=st.floats(min_value=0.0, max_value=8.0),
    kind=st.sampled_from(["none", "log_n", "linear", "infinite"]),
)
@settings(max_examples=300, deadline=None)
def test_classify_verdict_invariants(t, g, kind):
    regime = KeyRegime.linear(0.25) if kind == "linear" else KeyRegime(kind)
    v = classify(params(1.0, t, g), regime)
    assert 0.0 <= v.lower <= v.upper
    assert v.regime_label.startswith(kind + "/")
    if v.kind == "zero":
        assert v.upper == 0.0
    if v.kind == "exact":
        assert v.lower == v.upper == v.rate


def test_verdict_type_contracts():
    with pytest.raises(ValueError):
        CapacityVerdict("bounds", 0.5, 0.4, "x", {}, False)
    v = CapacityVerdict("bounds", 0.1, 0.2, "x", {}, False)
    with pytest.raises(ValueError):
        v.rate
    with pytest.raises(ValueError):
        KeyRegime("linear", 0.0)
    with pytest.raises(ValueError):
        KeyRegime("none", 0.5)
    with pytest.raises(ValueError):
        KeyRegime("some")


# ----------------------------------------------------------------------------
# attack-side analytic quantities
# ----------------------------------------------------------------------------

def test_symmetrization_floor():
    assert symmetrization_pe_floor(params(1.0, 0.625, 0.5)) == 0.0  # 4N = 2P + s2
    assert math.isclose(symmetrization_pe_floor(params(1.0, 1.0, 0.5)), 0.1875)
    assert math.isclose(symmetrization_pe_floor(params(1.0, 1e15, 0.5)), 0.5,
                        rel_tol=1e-12)
    assert symmetrization_pe_floor(params(1.0, 0.1, 0.0)) == 0.0  # clamped


def test_list_penalty_algebraic_case():
    n, list_size, rate = 100, 3.0e4, 1.0
    key_bits = 2.0 * math.log2(n * list_size)
    loss, err = list_disambiguation_penalty(n, list_size, rate, key_bits)
    assert math.isclose(loss, PENALTY_LOSS, rel_tol=1e-12)
    assert math.isclose(err, PENALTY_ERR, rel_tol=1e-12)
    # the simplification the numbers came from
    assert math.isclose(loss, math.log2(n * list_size) / n, rel_tol=1e-12)
    assert math.isclose(err, rate / math.log2(n * list_size), rel_tol=1e-12)


def test_list_penalty_edges():
    loss, err = list_disambiguation_penalty(100, 3.0, 1.0, math.inf)
    assert math.isinf(loss) and err == 0.0
    loss, err = list_disambiguation_penalty(100, 0.0, 1.0, 80.0)
    assert loss == 0.4 and err == 0.0
    _, err = list_disambiguation_penalty(50, 5.0, 1.0, 4000.0)
    assert err == 0.0  # underflows cleanly
    _, err = list_disambiguation_penalty(50, 1e9, 2.0, 4.0)
    assert err == 1.0  # clamped to a probability
    with pytest.raises(ValueError):
        list_disambiguation_penalty(0, 1.0, 1.0, 4.0)
    with pytest.raises(ValueError):
        list_disambiguation_penalty(10, 1.0, 1.0, 0.0)
