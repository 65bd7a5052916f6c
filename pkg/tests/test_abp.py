"""Maximum-principle machinery: Orlicz weights and barriers, the
calibrated sup bound, fixed-budget sweeps, and the decay certificate."""

import math

import numpy as np
import pytest

from hessianlab import (
    HessianDim,
    InvalidArgumentError,
    InvalidWeightError,
    OrliczWeight,
    UnsupportedDimensionError,
    abp_bound_check,
    abp_degiorgi_check,
    barrier_epsilon,
    degiorgi_fit_and_verify,
    degiorgi_threshold,
    fixed_budget_variation_check,
    mollified_dirac_family,
    orlicz_h,
    verify_gk,
)

# Twenty decay curves phi0 (1 - s/a)_+^m satisfying the lemma's
# hypotheses, spanning mass scales, decay powers, and vanish levels.
DECAY_FIXTURES = [
    (phi0, m, a)
    for phi0 in (0.25, 1.0, 4.0, 10.0)
    for m in (1, 2, 3)
    for a in (1.0,)
] + [
    (1.0, 1, 0.5), (1.0, 2, 0.5), (1.0, 3, 0.5),
    (1.0, 1, 2.0), (1.0, 2, 2.0), (1.0, 3, 2.0),
    (10.0, 2, 0.5), (0.25, 3, 2.0),
]


def exp_weight(k: int, rate: float | None = None) -> OrliczWeight:
    return OrliczWeight("exp", k=k, rate=float(k) if rate is None else rate)


class TestThreshold:
    def test_unit_case_is_exact(self):
        # 2 * 1 * (1/4)^1 / (1 - 1/2) = 1, no rounding anywhere.
        assert degiorgi_threshold(1.0, 1.0, 0.25, 0.0) == 1.0

    def test_shifted_case(self):
        expected = 4.0 / (1.0 - 2.0**-0.5) + 3.0
        assert degiorgi_threshold(1.0, 0.5, 4.0, 3.0) == pytest.approx(expected, rel=1e-15)

    def test_zero_mass_returns_the_offset(self):
        assert degiorgi_threshold(7.0, 1.3, 0.0, 2.5) == 2.5
        # c0 is irrelevant once phi0 = 0, so it is not validated.
        assert degiorgi_threshold(-5.0, 1.3, 0.0, 2.5) == 2.5

    def test_monotone_in_constant_and_mass(self):
        base = degiorgi_threshold(1.0, 1.0, 1.0)
        assert degiorgi_threshold(2.0, 1.0, 1.0) > base
        assert degiorgi_threshold(1.0, 1.0, 2.0) > base

    def test_validation(self):
        with pytest.raises(InvalidArgumentError, match="delta"):
            degiorgi_threshold(1.0, 0.0, 1.0)
        with pytest.raises(InvalidArgumentError, match="phi0"):
            degiorgi_threshold(1.0, 1.0, -1.0)
        with pytest.raises(InvalidArgumentError, match="c0"):
            degiorgi_threshold(0.0, 1.0, 1.0)


class TestFitAndVerify:
    @pytest.mark.parametrize("phi0,m,a", DECAY_FIXTURES)
    def test_standard_fixtures_verify_and_vanish(self, phi0, m, a):
        s = np.linspace(0.0, 4.0 * a, 33)
        phi = phi0 * np.maximum(1.0 - s / a, 0.0) ** m
        data = degiorgi_fit_and_verify(s, phi)
        assert data.verified
        # The curve hits zero exactly at s = a, which is a sample node.
        assert data.vanish_level == pytest.approx(a, rel=1e-12)
        assert data.vanish_level <= data.s_inf
        assert math.isfinite(data.c0) and data.c0 > 0
        assert 0.1 <= data.delta <= 2.0

    def test_constant_mass_has_no_certificate(self):
        s = np.linspace(0.0, 2.0, 12)
        data = degiorgi_fit_and_verify(s, np.full_like(s, 0.7))
        assert not data.verified
        assert data.c0 == math.inf
        assert math.isnan(data.delta)
        assert data.s_inf == math.inf
        assert data.vanish_level is None

    def test_explicit_start_level(self):
        s = np.linspace(0.0, 4.0, 33)
        phi = np.maximum(1.0 - s, 0.0)
        shifted = degiorgi_fit_and_verify(s, phi, s0=0.5)
        assert shifted.s0 == 0.5
        assert shifted.verified

    def test_validation(self):
        s = np.linspace(0.0, 1.0, 33)
        good = np.maximum(1.0 - s, 0.0)
        with pytest.raises(InvalidArgumentError, match="at least 8"):
            degiorgi_fit_and_verify(s[:5], good[:5])
        with pytest.raises(InvalidArgumentError, match="increasing"):
            degiorgi_fit_and_verify(s[::-1], good)
        with pytest.raises(InvalidArgumentError, match="nonincreasing"):
            degiorgi_fit_and_verify(s, good[::-1])
        with pytest.raises(InvalidArgumentError, match="nonnegative"):
            degiorgi_fit_and_verify(s, good - 0.5)
        with pytest.raises(InvalidArgumentError, match="finite"):
            degiorgi_fit_and_verify(s, np.where(s < 0.5, np.inf, 0.0))


class TestOrliczWeight:
    def test_exp_tail_closed_form(self):
        # Phi = exp(k t) has Phi^(-1/k) = exp(-t), so the tail from s
        # is exp(-s) and the total budget is 1.
        w = exp_weight(2)
        assert w.lam == pytest.approx(1.0, rel=1e-15)
        assert w.tail(1.0) == pytest.approx(math.exp(-1.0), rel=1e-15)
        assert w.value(0.5) == pytest.approx(math.exp(1.0), rel=1e-15)

    def test_constant_weight_has_infinite_tail(self):
        w = exp_weight(1, rate=0.0)
        assert w.lam == math.inf

    def test_power_tail(self):
        # (1 + t)^m with m > k integrates to k/(m - k) from zero.
        w = OrliczWeight("power", k=1, exponent=2.0)
        assert w.lam == pytest.approx(1.0, rel=1e-15)
        assert OrliczWeight("power", k=2, exponent=2.0).lam == math.inf

    def test_tabulated_tracks_the_exponential(self):
        t = np.linspace(0.0, 8.0, 400)
        w = OrliczWeight("tabulated", k=1, nodes=t, values=np.exp(t))
        assert w.lam == pytest.approx(1.0, rel=1e-4)
        assert w.tail(2.0) == pytest.approx(math.exp(-2.0), rel=1e-4)

    def test_tabulated_validation(self):
        t = np.array([0.0, 1.0, 2.0])
        with pytest.raises(InvalidWeightError, match="nondecreasing"):
            OrliczWeight("tabulated", k=1, nodes=t, values=np.array([2.0, 1.0, 0.5]))
        with pytest.raises(InvalidWeightError, match="positive"):
            OrliczWeight("tabulated", k=1, nodes=t, values=np.array([0.0, 1.0, 2.0]))
        with pytest.raises(InvalidWeightError, match="increasing"):
            OrliczWeight("tabulated", k=1, nodes=t[::-1], values=np.ones(3))
        with pytest.raises(InvalidWeightError, match="length >= 2"):
            OrliczWeight("tabulated", k=1, nodes=t[:1], values=np.ones(1))

    def test_kind_and_parameter_validation(self):
        with pytest.raises(InvalidWeightError, match="kind"):
            OrliczWeight("gaussian", k=1)
        with pytest.raises(InvalidWeightError, match="rate"):
            OrliczWeight("exp", k=1, rate=-1.0)
        with pytest.raises(InvalidWeightError, match="exponent"):
            OrliczWeight("power", k=1)
        with pytest.raises(InvalidWeightError, match="k must"):
            OrliczWeight("exp", k=0, rate=1.0)


class TestBarrier:
    def test_exp_barrier_closed_form(self):
        # scale = (q/alpha) N^(1/k) = (2/4) * 4 = 2 for N = 16, k = 2.
        barrier = orlicz_h(exp_weight(2), budget=16.0, q=2.0, alpha=4.0)
        assert barrier.scale == pytest.approx(2.0, rel=1e-15)
        assert barrier.s0 == pytest.approx(2.0, rel=1e-15)
        assert barrier.h(0.0) == pytest.approx(-2.0, rel=1e-15)
        assert barrier.h_prime(0.0) == pytest.approx(2.0, rel=1e-15)
        assert barrier.h_second(0.0) == pytest.approx(-2.0, rel=1e-15)

    @pytest.mark.parametrize(
        "weight",
        [
            exp_weight(1),
            OrliczWeight("power", k=1, exponent=3.0),
            OrliczWeight(
                "tabulated", k=1,
                nodes=np.linspace(0.0, 8.0, 200),
                values=np.exp(np.linspace(0.0, 8.0, 200)),
            ),
        ],
        ids=["exp", "power", "tabulated"],
    )
    def test_h_is_concave_increasing_negative(self, weight):
        barrier = orlicz_h(weight, budget=2.0, q=1.5, alpha=1.0)
        s = np.linspace(0.0, 5.0, 101)
        h = barrier.h(s)
        assert np.all(h < 0)
        assert np.all(np.diff(h) > 0)
        assert np.all(barrier.h_prime(s) > 0)
        assert np.all(barrier.h_second(s) <= 1e-12)

    def test_divergent_weight_is_rejected(self):
        with pytest.raises(InvalidWeightError, match="diverges"):
            orlicz_h(exp_weight(1, rate=0.0), budget=1.0, q=2.0, alpha=1.0)

    def test_parameter_validation(self):
        w = exp_weight(1)
        with pytest.raises(InvalidArgumentError, match="q > 1"):
            orlicz_h(w, budget=1.0, q=1.0, alpha=1.0)
        with pytest.raises(InvalidArgumentError, match="alpha"):
            orlicz_h(w, budget=1.0, q=2.0, alpha=0.0)
        with pytest.raises(InvalidArgumentError, match="budget"):
            orlicz_h(w, budget=-1.0, q=2.0, alpha=1.0)

    def test_barrier_epsilon_homogeneity_and_value(self):
        # ((k+1)/k)^(k/(k+1)) A^(1/(k+1)); k = 1, A = 1 gives sqrt(2).
        assert barrier_epsilon(1.0, 1) == pytest.approx(math.sqrt(2.0), rel=1e-15)
        for k in (1, 2, 3):
            one = barrier_epsilon(1.0, k)
            assert barrier_epsilon(2.0 ** (k + 1), k) == pytest.approx(2.0 * one, rel=1e-12)
        with pytest.raises(InvalidArgumentError):
            barrier_epsilon(-1.0, 1)
        with pytest.raises(InvalidArgumentError):
            barrier_epsilon(1.0, 0)


class TestVerifyGk:
    def test_constant_density(self, intermediate_dim):
        rec = verify_gk(intermediate_dim, lambda r: np.full_like(r, 2.0), exp_weight(intermediate_dim.k))
        assert rec.passed
        assert rec.details["moment_ok"]
        assert rec.details["budget"] > 0

    def test_gaussian_bump_density(self, intermediate_dim):
        def density(r):
            return 1.0 + 5.0 * np.exp(-(r**2) / 0.02)

        rec = verify_gk(intermediate_dim, density, exp_weight(intermediate_dim.k))
        assert rec.passed
        assert rec.check == f"gk-pointwise[n={intermediate_dim.n},k={intermediate_dim.k},exp]"

    def test_validation(self):
        dim = HessianDim(2, 1)
        with pytest.raises(UnsupportedDimensionError):
            verify_gk(HessianDim(3, 1), lambda r: np.ones_like(r), exp_weight(1))
        with pytest.raises(InvalidWeightError, match="k = "):
            verify_gk(dim, lambda r: np.ones_like(r), exp_weight(2))
        with pytest.raises(InvalidArgumentError, match="alpha"):
            verify_gk(dim, lambda r: np.ones_like(r), exp_weight(1), alpha=dim.moser_constant)
        with pytest.raises(InvalidArgumentError, match="positive"):
            verify_gk(dim, lambda r: np.zeros_like(r), exp_weight(1))


class TestBoundCheck:
    def test_dirac_family_held_out_members_pass(self, intermediate_dim):
        weight = OrliczWeight("exp", intermediate_dim.k, rate=1.0)
        family = mollified_dirac_family(intermediate_dim, weight)
        records = abp_bound_check(intermediate_dim, family, weight)
        assert len(records) == len(family)
        assert all(rec.passed for rec in records)
        held = [rec.inputs["held_out"] for rec in records]
        assert held == [False] * 3 + [True] * 3
        assert all(rec.details["c2"] >= 0 for rec in records)

    def test_zero_density_family(self):
        dim = HessianDim(2, 1)
        family = [(f"zero-{i}", lambda r: np.zeros_like(r)) for i in range(4)]
        records = abp_bound_check(dim, family, exp_weight(1))
        for rec in records:
            assert rec.passed
            assert rec.lhs == 0.0

    def test_constant_density_sup_is_half(self):
        # S_k[u] = binom(n, k) solves to the unit quadratic, whose
        # depth on the unit ball is exactly 1/2.
        dim = HessianDim(2, 1)
        c = float(math.comb(dim.n, dim.k))
        family = [(f"flat-{i}", lambda r, c=c: np.full_like(r, c)) for i in range(4)]
        records = abp_bound_check(dim, family, exp_weight(1))
        for rec in records:
            assert rec.lhs == pytest.approx(0.5, rel=1e-8)
            assert rec.passed

    def test_validation(self):
        dim = HessianDim(2, 1)
        w = exp_weight(1)
        fam = mollified_dirac_family(dim, w)
        with pytest.raises(UnsupportedDimensionError):
            abp_bound_check(HessianDim(3, 1), fam, w)
        with pytest.raises(InvalidWeightError):
            abp_bound_check(dim, fam, exp_weight(2))
        with pytest.raises(InvalidArgumentError, match="at least 4"):
            abp_bound_check(dim, fam[:3], w)
        bad = [("neg", lambda r: -np.ones_like(r))] + fam[:3]
        with pytest.raises(InvalidArgumentError, match="nonnegative"):
            abp_bound_check(dim, bad, w)


class TestFixedBudgetFamily:
    def test_budgets_match_and_heights_blow_up(self):
        # With Phi = e^t and k = 2 the budget is quadratic in the
        # density, so the balancing amplitude grows like eps^-2 and the
        # sweep's height ratio clears 1e3; k = 1 only reaches ~2^5.
        dim = HessianDim(4, 2)
        weight = OrliczWeight("exp", 2, rate=1.0)
        family = mollified_dirac_family(dim, weight)
        assert [label for label, _ in family] == [
            "dirac-eps=0.125", "dirac-eps=0.0625", "dirac-eps=0.03125",
            "dirac-eps=0.015625", "dirac-eps=0.0078125", "dirac-eps=0.00390625",
        ]
        heights = [float(fn(np.array([0.0]))[0]) for _, fn in family]
        assert all(b > a for a, b in zip(heights, heights[1:]))
        assert heights[-1] / heights[0] > 1e3

    def test_validation(self):
        dim = HessianDim(2, 1)
        w = exp_weight(1)
        with pytest.raises(UnsupportedDimensionError):
            mollified_dirac_family(HessianDim(3, 1), w)
        with pytest.raises(InvalidArgumentError, match="lift"):
            mollified_dirac_family(dim, w, budget_lift=1.0)
        with pytest.raises(InvalidArgumentError, match="base"):
            mollified_dirac_family(dim, w, base=0.0)
        with pytest.raises(InvalidArgumentError, match="scale"):
            mollified_dirac_family(dim, w, scales=(1.5,))

    def test_variation_check_passes(self):
        rec = fixed_budget_variation_check(HessianDim(4, 2), OrliczWeight("exp", 2, rate=1.0))
        assert rec.passed
        assert rec.lhs <= rec.rhs
        assert rec.details["height_ratio"] > 1e3
        assert rec.details["budget_spread"] <= 1e-9
        assert len(rec.details["sup_values"]) == 6


class TestPipeline:
    def test_end_to_end_decay_certificate(self, intermediate_dim):
        def density(r):
            return 3.0 * np.exp(-(r**2) / 0.08)

        rec = abp_degiorgi_check(intermediate_dim, density)
        assert rec.passed
        assert rec.lhs <= rec.rhs
        assert math.isfinite(rec.details["c0"])
        assert rec.details["levels"] >= 33
