"""Exponential-equation solver and its blow-up diagnostics, anchored
on the exact n = 2 scale family."""

import math

import numpy as np
import pytest

from hessianlab import (
    HessianDim,
    InvalidArgumentError,
    LiouvilleProblem,
    NoSolutionError,
    PreconditionError,
    UnsupportedDimensionError,
    bubble_local_mass,
    bubble_problem,
    bubble_profile,
    bubble_residual_sup,
    classify_alternative,
    harnack_ratio,
    local_mass,
    make_profile,
    regular_point_classify,
    singular_comparison_check,
    smallness_check,
    solve_liouville,
    solve_sequence,
)
from hessianlab.families import FamilySpec
from hessianlab.liouville import SolutionSequence

DIM2 = HessianDim(2, 1)


def minimal_branch_scale(c: float) -> float:
    # Zero-boundary constant-weight solutions are scale-family members
    # with c = 8b/(1+b)^2; the branch below the fold at c = 2 takes the
    # smaller root of c b^2 + (2c - 8) b + c = 0.
    disc = (2.0 * c - 8.0) ** 2 - 4.0 * c * c
    return ((8.0 - 2.0 * c) - math.sqrt(disc)) / (2.0 * c)


def constant_problem(c: float, **kwargs) -> LiouvilleProblem:
    return LiouvilleProblem(DIM2, lambda r, c=c: np.full_like(r, c), **kwargs)


class TestBubbleOracle:
    @pytest.mark.parametrize("lam", [1.0, 4.0, 16.0])
    def test_defining_identity_holds_pointwise(self, lam):
        # Laplacian and right side agree in closed form; the residual
        # is pure round-off relative to the 8 lam^2 scale.
        assert bubble_residual_sup(lam) <= 1e-10 * 8.0 * lam * lam

    def test_local_mass_closed_form(self):
        # int_{B_r} exp(-u) = 8 pi t/(1+t) with t = (lam r)^2.
        assert bubble_local_mass(2.0, 1.0) == pytest.approx(
            8.0 * math.pi * 4.0 / 5.0, rel=1e-15
        )
        # The full-plane mass saturates at 8 pi.
        assert bubble_local_mass(1e6, 1.0) == pytest.approx(8.0 * math.pi, rel=1e-9)

    @pytest.mark.parametrize("lam", [1.0, 4.0, 16.0])
    def test_quadrature_matches_closed_form(self, lam):
        u = bubble_profile(lam, grid_n=8192)
        got = local_mass(u, lambda r: np.ones_like(r), 1.0)
        assert got == pytest.approx(bubble_local_mass(lam, 1.0), rel=1e-6)

    def test_validation(self):
        with pytest.raises(InvalidArgumentError):
            bubble_profile(0.0)
        with pytest.raises(InvalidArgumentError):
            bubble_profile(-2.0)


class TestSolver:
    @pytest.mark.parametrize("lam", [1.0, 4.0, 16.0])
    def test_bubble_is_stationary(self, lam):
        exact = bubble_profile(lam, grid_n=8192)
        u = solve_liouville(bubble_problem(lam, grid_n=8192), initial=exact)
        assert float(np.max(np.abs(u.values - exact.values))) <= 1e-9

    @pytest.mark.parametrize("c", [0.5, 1.0, 1.5, 1.9])
    def test_flat_start_finds_the_small_branch(self, c):
        u = solve_liouville(constant_problem(c))
        b = minimal_branch_scale(c)
        exact = 2.0 * np.log1p(b * u.nodes**2) - math.log(8.0 * b / c)
        assert float(np.max(np.abs(u.values - exact))) <= 1e-7
        mass = local_mass(u, lambda r: np.full_like(r, c), 1.0)
        assert mass == pytest.approx(8.0 * math.pi * b / (1.0 + b), rel=1e-7)

    def test_zero_weight_returns_the_boundary_constant(self):
        prob = LiouvilleProblem(DIM2, lambda r: np.zeros_like(r), boundary=0.7)
        u = solve_liouville(prob)
        assert np.all(u.values == 0.7)

    def test_weak_weight_linearizes(self):
        # For small eps the equation linearizes to Laplacian(u) = eps,
        # i.e. u ~ eps (r^2 - R^2)/4 with an O(eps^2) defect.
        eps = 1e-3
        u = solve_liouville(constant_problem(eps))
        approx = eps * (u.nodes**2 - 1.0) / 4.0
        assert float(np.max(np.abs(u.values - approx))) <= 10.0 * eps * eps

    def test_past_the_fold_no_solution(self):
        with pytest.raises(NoSolutionError):
            solve_liouville(constant_problem(2.2), max_iter=200)

    def test_initial_guess_dimension_mismatch(self):
        prob = constant_problem(1.0)
        other = make_profile(FamilySpec("quadratic"), HessianDim(4, 2), 1.0, 64)
        with pytest.raises(InvalidArgumentError, match="different"):
            solve_liouville(prob, initial=other)
        with pytest.raises(InvalidArgumentError, match="max_iter"):
            solve_liouville(prob, max_iter=0)

    def test_continuation_sweep_tracks_the_branch(self):
        cs = (0.5, 1.0, 1.5, 1.9)
        seq = solve_sequence([constant_problem(c) for c in cs], continuation=True)
        masses = seq.total_masses()
        assert np.all(np.diff(masses) > 0)
        for c, mass in zip(cs, masses):
            b = minimal_branch_scale(c)
            assert mass == pytest.approx(8.0 * math.pi * b / (1.0 + b), rel=1e-7)


class TestProblemValidation:
    def test_dimension_gate(self):
        with pytest.raises(UnsupportedDimensionError, match="2k = n"):
            LiouvilleProblem(HessianDim(3, 1), lambda r: np.ones_like(r))
        with pytest.raises(UnsupportedDimensionError, match="supported"):
            LiouvilleProblem(HessianDim(6, 3), lambda r: np.ones_like(r))

    def test_parameter_gates(self):
        with pytest.raises(InvalidArgumentError, match="radius"):
            constant_problem(1.0, R=0.0)
        with pytest.raises(InvalidArgumentError, match="exponent"):
            constant_problem(1.0, p=1.0)
        with pytest.raises(InvalidArgumentError, match="boundary"):
            constant_problem(1.0, boundary=math.inf)
        with pytest.raises(InvalidArgumentError, match="callable"):
            LiouvilleProblem(DIM2, 5.0)

    def test_conjugate_exponent_and_threshold(self):
        assert constant_problem(1.0).p_prime == 1.0
        assert constant_problem(1.0, p=2.0).p_prime == 2.0
        assert constant_problem(1.0).threshold == pytest.approx(4.0 * math.pi, rel=1e-15)
        assert constant_problem(1.0, p=2.0).threshold == pytest.approx(
            2.0 * math.pi, rel=1e-15
        )

    def test_negative_weight_rejected_at_solve_time(self):
        prob = LiouvilleProblem(DIM2, lambda r: -np.ones_like(r))
        with pytest.raises(InvalidArgumentError, match="nonnegative"):
            solve_liouville(prob)


class TestSmallness:
    def sweep(self):
        return solve_sequence([constant_problem(c) for c in (0.5, 1.0, 1.5, 1.9)])

    def test_sub_threshold_sweep_reports_a_bound(self):
        rec = smallness_check(self.sweep())
        assert rec.passed
        assert math.isfinite(rec.lhs) and rec.lhs <= 0.0
        assert rec.details["uniform_bound"] == -rec.lhs
        assert max(rec.details["masses"]) <= 0.9 * 4.0 * math.pi

    def test_budget_violation_is_a_precondition_error(self):
        with pytest.raises(PreconditionError, match="exceeds"):
            smallness_check(self.sweep(), mass_budget=1.0)

    def test_budget_validation(self):
        seq = self.sweep()
        with pytest.raises(InvalidArgumentError, match="budget"):
            smallness_check(seq, mass_budget=4.0 * math.pi)
        with pytest.raises(InvalidArgumentError, match="budget"):
            smallness_check(seq, mass_budget=0.0)

    def test_mixed_sweeps_rejected(self):
        seq = SolutionSequence(
            problems=(constant_problem(0.5), constant_problem(0.5, p=2.0)),
            profiles=tuple(solve_liouville(constant_problem(0.5)) for _ in range(2)),
        )
        with pytest.raises(InvalidArgumentError, match="share"):
            smallness_check(seq)


class TestClassification:
    def bubble_sweep(self, weight=1.0):
        lams = [2.0**j for j in range(1, 9)]
        problems = tuple(
            LiouvilleProblem(DIM2, lambda r, w=weight: np.full_like(r, w), label=f"lam={lam:g}")
            for lam in lams
        )
        profiles = tuple(bubble_profile(lam) for lam in lams)
        return SolutionSequence(problems=problems, profiles=profiles)

    def test_concentration_at_the_center(self):
        report = classify_alternative(self.bubble_sweep())
        assert report.classification == "concentration"
        assert report.blowup_radii == (0.0,)
        # The scale family's center mass tends to 8 pi, twice the
        # quantum 4 pi.
        assert report.atom_masses[0] == pytest.approx(8.0 * math.pi, rel=1e-2)
        assert report.atom_masses[0] >= report.threshold

    def test_sub_quantum_atom_is_inconclusive(self):
        # Same profiles under a weight a tenth as large: the center
        # still sinks and the annulus still rises, but the limiting
        # atom stays below the quantum, so no classification is made.
        report = classify_alternative(self.bubble_sweep(weight=0.1))
        assert report.classification == "inconclusive"
        assert report.atom_masses[0] < report.threshold

    def test_uniform_divergence(self):
        # Lifting the boundary with a vanishing weight sends the whole
        # profile up: both probes rise without concentration.
        probs = [
            LiouvilleProblem(DIM2, lambda r, j=j: np.full_like(r, math.exp(-j)), boundary=float(j))
            for j in (5.0, 10.0, 15.0, 20.0)
        ]
        report = classify_alternative(solve_sequence(probs))
        assert report.classification == "uniform-divergence"
        assert report.margins["annulus_rise"] >= 5.0

    def test_bounded_sweep(self):
        probs = [constant_problem(1.0) for _ in range(4)]
        report = classify_alternative(solve_sequence(probs))
        assert report.classification == "bounded"
        assert report.margins["annulus_spread"] <= 1e-9

    def test_validation(self):
        seq = self.bubble_sweep()
        short = SolutionSequence(problems=seq.problems[:3], profiles=seq.profiles[:3])
        with pytest.raises(InvalidArgumentError, match="at least 4"):
            classify_alternative(short)
        with pytest.raises(InvalidArgumentError, match="window"):
            classify_alternative(seq, window=(0.75, 0.25))


class TestHarnack:
    def test_quadratic_ratio_is_exact(self):
        u = make_profile(FamilySpec("quadratic"), DIM2, 1.0, 2048)
        rec = harnack_ratio(u, 0.4, density_bound=10.0, eps=2.0)
        assert rec.sup_abs == pytest.approx(0.5, rel=1e-15)
        assert rec.inf_abs == pytest.approx(0.42, rel=1e-15)
        assert rec.ratio == pytest.approx(1.0 / 0.84, rel=1e-12)

    def test_origin_atom_is_rejected(self):
        u = make_profile(FamilySpec("log"), DIM2, 1.0, 2048)
        with pytest.raises(PreconditionError, match="atom"):
            harnack_ratio(u, 0.4, density_bound=10.0, eps=2.0)

    def test_positive_values_are_rejected(self):
        from hessianlab import RadialMeasure, solve_dirichlet
        import hessianlab.quadrature as quadr

        nodes = quadr.radial_grid(1.0, 512)
        mu = RadialMeasure.from_density(DIM2, 1.0, nodes, np.full_like(nodes, 2.0))
        lifted = solve_dirichlet(mu, 1.0)
        with pytest.raises(PreconditionError, match="nonpositive"):
            harnack_ratio(lifted, 0.4, density_bound=10.0, eps=2.0)

    def test_density_hypothesis_enforced(self):
        # mu(B_s) ~ s^2 beats M s^3 near the origin, so eps = 3 puts
        # the quadratic profile outside the hypothesis class.
        u = make_profile(FamilySpec("quadratic"), DIM2, 1.0, 2048)
        with pytest.raises(PreconditionError, match="measure-density"):
            harnack_ratio(u, 0.4, density_bound=1e3, eps=3.0)

    def test_argument_validation(self):
        u = make_profile(FamilySpec("quadratic"), DIM2, 1.0, 256)
        with pytest.raises(InvalidArgumentError):
            harnack_ratio(u, 2.0, density_bound=1.0, eps=1.0)
        with pytest.raises(InvalidArgumentError):
            harnack_ratio(u, 0.4, density_bound=0.0, eps=1.0)
        with pytest.raises(InvalidArgumentError):
            harnack_ratio(u, 0.4, density_bound=1.0, eps=0.0)


class TestSingularComparison:
    @pytest.mark.parametrize("factor", [1.0, 2.0])
    def test_log_bound_holds(self, intermediate_dim, factor):
        rec = singular_comparison_check(intermediate_dim, atom_factor=factor)
        assert rec.passed
        assert rec.details["atom"] == pytest.approx(
            factor * intermediate_dim.concentration_quantum(1.0), rel=1e-15
        )

    def test_background_density_keeps_the_bound(self):
        rec = singular_comparison_check(DIM2, background=0.5)
        assert rec.passed

    def test_weaker_integrability_shifts_the_quantum(self):
        rec = singular_comparison_check(DIM2, p_prime=2.0)
        assert rec.passed
        assert rec.details["quantum"] == pytest.approx(2.0 * math.pi, rel=1e-15)

    def test_sub_quantum_atom_rejected(self):
        with pytest.raises(InvalidArgumentError, match="quantum"):
            singular_comparison_check(DIM2, atom_factor=0.5)
        with pytest.raises(InvalidArgumentError, match="background"):
            singular_comparison_check(DIM2, background=-1.0)


class TestRegularPointClassify:
    def test_quantum_split(self):
        labels = regular_point_classify(
            DIM2,
            [(0.0, 4.0 * math.pi), (0.2, 4.0 * math.pi - 1e-6), (0.5, 0.0)],
        )
        assert [lab["singular"] for lab in labels] == [True, False, False]
        assert labels[0]["threshold"] == pytest.approx(4.0 * math.pi, rel=1e-15)

    def test_weaker_integrability(self):
        labels = regular_point_classify(DIM2, [(0.0, 2.0 * math.pi)], p_prime=2.0)
        assert labels[0]["singular"]

    def test_no_atoms_means_all_regular(self):
        assert regular_point_classify(DIM2, []) == []

    def test_validation(self):
        with pytest.raises(InvalidArgumentError, match="mass"):
            regular_point_classify(DIM2, [(0.0, -1.0)])
        with pytest.raises(InvalidArgumentError, match="location"):
            regular_point_classify(DIM2, [(-0.5, 1.0)])
