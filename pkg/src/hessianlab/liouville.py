"""Radial solver and blow-up diagnostics for S_k[u] = V exp(-u) with
2k = n.

A damped Picard iteration drives u toward the fixed point of
u <- dirichlet_solve(V exp(-u) dx, b).  On top of the solver sit the
diagnostics: local masses of V exp(-u), the uniform-boundedness check
under a sub-threshold mass budget, the regular/singular split of limit
atoms against the quantum (a0/p')^k, the three-way limit classification
of solution sweeps (bounded / uniform divergence / concentration at the
center), the Harnack-type ratio probe, and the logarithmic comparison
bound near a singular point.

Dimensions are restricted to (n, k) = (2, 1) and (4, 2): the first has
an exact closed-form oracle (the bubble below), the second is the first
genuinely fully nonlinear borderline case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quadrature as quad
from .core import HessianDim
from .errors import (
    InvalidArgumentError,
    InvalidMeasureError,
    NoSolutionError,
    PreconditionError,
    UnsupportedDimensionError,
)
from .parallel import map_ordered
from .radial import (
    RadialMeasure,
    RadialProfile,
    s_k_radial,
    solve_dirichlet,
    value_at,
)
from .report import CheckRecord

__all__ = [
    "LiouvilleProblem",
    "SolutionSequence",
    "solve_liouville",
    "solve_sequence",
    "local_mass",
    "smallness_check",
    "regular_point_classify",
    "BlowupReport",
    "classify_alternative",
    "HarnackRecord",
    "harnack_ratio",
    "singular_comparison_check",
    "bubble_profile",
    "bubble_residual_sup",
    "bubble_local_mass",
    "bubble_problem",
]

SUPPORTED_DIMS = ((2, 1), (4, 2))


@dataclass(frozen=True, eq=False)
class LiouvilleProblem:
    """One Dirichlet problem S_k[u] = V exp(-u) on a centered ball.

    `V` is a callable of the radius array, nonnegative and bounded on
    the grid.  `p` is the integrability exponent of V in (1, inf]; the
    conjugate p' = p/(p-1) (p = inf gives exactly 1) sets the
    concentration quantum (a0/p')^k.
    """

    dim: HessianDim
    V: object
    R: float = 1.0
    p: float = math.inf
    boundary: float = 0.0
    grid_n: int = quad.DEFAULT_GRID_N
    label: str = ""

    def __post_init__(self) -> None:
        if not self.dim.is_intermediate:
            raise UnsupportedDimensionError(
                f"the exponential equation needs 2k = n, got (n, k) = ({self.dim.n}, {self.dim.k})"
            )
        if (self.dim.n, self.dim.k) not in SUPPORTED_DIMS:
            raise UnsupportedDimensionError(
                f"supported dimensions are {SUPPORTED_DIMS}, got ({self.dim.n}, {self.dim.k})"
            )
        if not (np.isfinite(self.R) and self.R > 0):
            raise InvalidArgumentError(f"radius must be positive, got {self.R!r}")
        if not (self.p == math.inf or (np.isfinite(self.p) and self.p > 1)):
            raise InvalidArgumentError(f"integrability exponent must lie in (1, inf], got {self.p!r}")
        if not np.isfinite(self.boundary):
            raise InvalidArgumentError(f"boundary value must be finite, got {self.boundary!r}")
        if not callable(self.V):
            raise InvalidArgumentError("V must be callable on a radius array")

    @property
    def p_prime(self) -> float:
        if self.p == math.inf:
            return 1.0
        return self.p / (self.p - 1.0)

    @property
    def threshold(self) -> float:
        return self.dim.concentration_quantum(self.p_prime)

    def density_on(self, nodes: np.ndarray) -> np.ndarray:
        v = np.asarray(self.V(nodes), dtype=float)
        if v.shape != nodes.shape or not np.all(np.isfinite(v)) or np.any(v < 0):
            raise InvalidArgumentError("V must be nonnegative, finite, and radial on the grid")
        return v


def _picard_residual(prob: LiouvilleProblem, u: RadialProfile, target: RadialMeasure) -> float:
    # Sup mismatch of cumulative masses: S_k[u] against V exp(-u) dx.
    own = s_k_radial(u)
    return float(np.max(np.abs(own.cumulative - target.cumulative)))


def solve_liouville(
    prob: LiouvilleProblem,
    initial: RadialProfile | None = None,
    max_iter: int = 500,
    update_tol: float = 1e-10,
    residual_tol: float = 1e-6,
) -> RadialProfile:
    """Damped fixed-point solve of S_k[u] = V exp(-u), u(R) = boundary.

    The damping factor starts at 1 and is halved (floor 1/64) whenever
    the sup-norm update grows; plain iteration oscillates or diverges
    near the blow-up regime while a convergent one contracts its steps.
    Stops on a relative sup-norm update below `update_tol` or at the
    iteration cap; the result must carry a cumulative-mass residual
    below `residual_tol` times the total mass, else no-solution.
    """
    if max_iter < 1:
        raise InvalidArgumentError("max_iter must be at least 1")
    nodes = quad.radial_grid(prob.R, prob.grid_n)
    v = prob.density_on(nodes)
    if initial is None:
        u_vals = np.full_like(nodes, float(prob.boundary))
        u_slope = np.zeros_like(nodes)
    else:
        if initial.dim != prob.dim:
            raise InvalidArgumentError("initial guess has a different (n, k)")
        logr = np.log(nodes)
        u_vals = np.interp(logr, np.log(initial.nodes), initial.values)
        u_slope = np.interp(logr, np.log(initial.nodes), initial.slope)
        u_vals = u_vals + (prob.boundary - u_vals[-1])
    theta = 1.0
    prev_step = math.inf
    u = None
    for _ in range(max_iter):
        # exp is clipped so the divergent regime surfaces as
        # non-convergence instead of overflow.
        density = v * np.exp(np.minimum(-u_vals, 700.0))
        try:
            target = RadialMeasure.from_density(prob.dim, prob.R, nodes, density)
        except InvalidMeasureError as exc:
            # Super-exponential growth between nodes breaks the
            # quadrature; that only happens on a divergent iteration.
            raise NoSolutionError(f"density blow-up during iteration: {exc}") from exc
        image = solve_dirichlet(target, prob.boundary)
        new_vals = (1.0 - theta) * u_vals + theta * image.values
        new_slope = (1.0 - theta) * u_slope + theta * image.slope
        step = float(np.max(np.abs(new_vals - u_vals)))
        u_vals, u_slope = new_vals, new_slope
        u = RadialProfile(
            dim=prob.dim, R=prob.R, nodes=nodes, values=u_vals, slope=u_slope,
            boundary=prob.boundary,
        )
        if step > prev_step * (1.0 + 1e-12):
            theta = max(theta / 2.0, 1.0 / 64.0)
        prev_step = step
        if step <= update_tol * max(1.0, float(np.max(np.abs(u_vals)))):
            break
    # Acceptance is decided by the equation residual of the final iterate
    # against its own density, not by whether the step tolerance was
    # reached before the iteration cap.
    final_density = v * np.exp(np.minimum(-u_vals, 700.0))
    try:
        final_target = RadialMeasure.from_density(prob.dim, prob.R, nodes, final_density)
    except InvalidMeasureError as exc:
        raise NoSolutionError(f"density blow-up during iteration: {exc}") from exc
    res = _picard_residual(prob, u, final_target)
    total = final_target.total
    if total == 0.0 or res < residual_tol * max(total, np.finfo(float).tiny):
        return u
    raise NoSolutionError(
        f"no fixed point after {max_iter} iterations "
        f"(last residual {res:.3e}, damping {theta:g}); "
        "expected near the blow-up regime"
    )


@dataclass(frozen=True, eq=False)
class SolutionSequence:
    """Solved members of a problem sweep, in sweep order."""

    problems: tuple[LiouvilleProblem, ...]
    profiles: tuple[RadialProfile, ...]

    def __post_init__(self) -> None:
        if len(self.problems) != len(self.profiles) or not self.problems:
            raise InvalidArgumentError("need matching, nonempty problem and profile tuples")

    def __len__(self) -> int:
        return len(self.problems)

    def min_values(self) -> np.ndarray:
        # Profiles are nondecreasing in r, so the minimum sits at the
        # innermost node.
        return np.array([p.values[0] for p in self.profiles])

    def local_masses(self, r: float) -> np.ndarray:
        return np.array(
            [local_mass(u, prob.V, r) for prob, u in zip(self.problems, self.profiles)]
        )

    def total_masses(self) -> np.ndarray:
        return self.local_masses(self.problems[0].R)


def solve_sequence(problems, continuation: bool = False, **kwargs) -> SolutionSequence:
    """Solve a sweep; with continuation each solve starts from the
    previous solution (sequential), otherwise members run concurrently.
    """
    problems = tuple(problems)
    if continuation:
        profiles = []
        prev: RadialProfile | None = None
        for prob in problems:
            prev = solve_liouville(prob, initial=prev, **kwargs)
            profiles.append(prev)
    else:
        profiles = map_ordered(lambda prob: solve_liouville(prob, **kwargs), problems)
    return SolutionSequence(problems=problems, profiles=tuple(profiles))


def local_mass(u: RadialProfile, V, r: float) -> float:
    """int over B_r of V exp(-u), by radial quadrature."""
    if not (np.isfinite(r) and 0 <= r <= u.R * (1.0 + 1e-12)):
        raise InvalidArgumentError(f"need 0 <= r <= {u.R:g}, got {r!r}")
    v = np.asarray(V(u.nodes), dtype=float)
    density = v * np.exp(np.minimum(-u.values, 700.0))
    mu = RadialMeasure.from_density(u.dim, u.R, u.nodes, density)
    return mu.cumulative_at(min(r, u.R))


def smallness_check(seq: SolutionSequence, mass_budget: float | None = None) -> CheckRecord:
    """Uniform lower bound on min u across a sub-threshold sweep.

    Every member's total mass must stay at or below the budget, itself
    strictly below the quantum (a0/p')^k; under that smallness the
    minima admit a uniform bound, which is what gets reported.
    """
    dims = {(p.dim.n, p.dim.k) for p in seq.problems}
    primes = {p.p_prime for p in seq.problems}
    if len(dims) != 1 or len(primes) != 1:
        raise InvalidArgumentError("sweep members must share (n, k) and p'")
    threshold = seq.problems[0].threshold
    budget = 0.9 * threshold if mass_budget is None else float(mass_budget)
    if not 0 < budget < threshold:
        raise InvalidArgumentError(
            f"mass budget must sit in (0, {threshold:g}), got {budget!r}"
        )
    masses = seq.total_masses()
    worst = float(np.max(masses))
    if worst > budget * (1.0 + 1e-12):
        raise PreconditionError(
            f"a member's mass {worst:.6g} exceeds the budget {budget:.6g}"
        )
    floor = float(np.min(np.minimum(seq.min_values(), 0.0)))
    passed = bool(np.isfinite(floor))
    return CheckRecord(
        check=f"smallness[n={seq.problems[0].dim.n},members={len(seq)}]",
        anchor="smallness-uniform-bound",
        inputs={
            "n": seq.problems[0].dim.n, "k": seq.problems[0].dim.k,
            "p_prime": seq.problems[0].p_prime, "budget": budget, "members": len(seq),
        },
        lhs=floor,
        rhs=-math.inf,
        margin=math.inf if passed else -math.inf,
        passed=passed,
        details={"uniform_bound": -floor, "masses": [float(m) for m in masses], "threshold": threshold},
    )


def regular_point_classify(dim: HessianDim, atoms, p_prime: float = 1.0) -> list[dict]:
    """Label limit-measure atoms regular or singular by the quantum.

    `atoms` is a sequence of (location radius, mass) pairs; an atom is
    singular exactly when its mass reaches (a0/p')^k.  No atoms means
    every point is regular.
    """
    threshold = dim.concentration_quantum(p_prime)
    labels = []
    for location, mass in atoms:
        if not (np.isfinite(mass) and mass >= 0):
            raise InvalidArgumentError(f"atom mass must be nonnegative, got {mass!r}")
        if not (np.isfinite(location) and location >= 0):
            raise InvalidArgumentError(f"atom location must be a radius >= 0, got {location!r}")
        singular = mass >= threshold * (1.0 - 1e-12)
        labels.append(
            {
                "location": float(location),
                "mass": float(mass),
                "threshold": threshold,
                "singular": bool(singular),
                "margin": float(mass - threshold),
            }
        )
    return labels


@dataclass(frozen=True)
class BlowupReport:
    """Outcome of the three-way limit classification of a sweep."""

    classification: str
    blowup_radii: tuple[float, ...]
    atom_masses: tuple[float, ...]
    threshold: float
    margins: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


def _trend(series: np.ndarray, sign: float, margin: float) -> bool:
    # Limit behavior is a tail property: require monotonicity over the
    # second half of the sweep (early members may sit in a different
    # regime) plus an overall move of at least `margin`.
    tail = series[len(series) // 2 :]
    diffs = sign * np.diff(tail)
    scale = max(1.0, float(np.max(np.abs(series))))
    return bool(np.all(diffs >= -1e-9 * scale) and sign * (series[-1] - series[0]) >= margin)


def classify_alternative(
    seq: SolutionSequence,
    window: tuple[float, float] = (0.25, 0.75),
    trend_margin: float = 5.0,
    bounded_spread: float = 1.0,
    atom_radius_factor: float = 0.05,
    tol: float = 1e-3,
) -> BlowupReport:
    """Sort a solution sweep into bounded / uniform-divergence /
    concentration, from grid diagnostics alone.

    The probes: the central value u_i(0+) and the minimum over the
    compact annulus window.  Concentration needs the center to sink
    while the annulus rises, and is only accepted when the limiting
    local mass near the center clears the quantum within `tol`;
    anything that fits no case is reported as inconclusive rather than
    guessed.
    """
    if len(seq) < 4:
        raise InvalidArgumentError(f"need at least 4 sweep members, got {len(seq)}")
    dims = {(p.dim.n, p.dim.k) for p in seq.problems}
    primes = {p.p_prime for p in seq.problems}
    radii = {p.R for p in seq.problems}
    if len(dims) != 1 or len(primes) != 1 or len(radii) != 1:
        raise InvalidArgumentError("sweep members must share (n, k), p', and R")
    if not 0.0 < window[0] < window[1] < 1.0:
        raise InvalidArgumentError(f"window must satisfy 0 < a < b < 1, got {window!r}")
    R = seq.problems[0].R
    threshold = seq.problems[0].threshold

    near0 = seq.min_values()
    annulus_min = []
    annulus_sup = []
    for u in seq.profiles:
        mask = (u.nodes >= window[0] * R) & (u.nodes <= window[1] * R)
        vals = u.values[mask]
        annulus_min.append(float(np.min(vals)))
        annulus_sup.append(float(np.max(np.abs(vals))))
    annulus_min = np.array(annulus_min)
    annulus_sup = np.array(annulus_sup)

    diagnostics = {
        "near0": [float(x) for x in near0],
        "annulus_min": [float(x) for x in annulus_min],
        "annulus_sup_abs": [float(x) for x in annulus_sup],
    }
    sinking_center = _trend(near0, -1.0, trend_margin)
    rising_center = _trend(near0, +1.0, trend_margin)
    rising_annulus = _trend(annulus_min, +1.0, trend_margin)

    if sinking_center and rising_annulus:
        atom = float(seq.local_masses(atom_radius_factor * R)[-1])
        if atom >= threshold * (1.0 - tol):
            return BlowupReport(
                classification="concentration",
                blowup_radii=(0.0,),
                atom_masses=(atom,),
                threshold=threshold,
                margins={"atom_minus_threshold": atom - threshold},
                diagnostics=diagnostics,
            )
        return BlowupReport(
            classification="inconclusive",
            blowup_radii=(),
            atom_masses=(atom,),
            threshold=threshold,
            margins={"atom_minus_threshold": atom - threshold},
            diagnostics=diagnostics,
        )
    if rising_annulus and rising_center:
        return BlowupReport(
            classification="uniform-divergence",
            blowup_radii=(),
            atom_masses=(),
            threshold=threshold,
            margins={"annulus_rise": float(annulus_min[-1] - annulus_min[0])},
            diagnostics=diagnostics,
        )
    spread = float(np.max(annulus_sup) - np.min(annulus_sup))
    if not (sinking_center or rising_center or rising_annulus) and spread <= bounded_spread:
        return BlowupReport(
            classification="bounded",
            blowup_radii=(),
            atom_masses=(),
            threshold=threshold,
            margins={"annulus_spread": spread},
            diagnostics=diagnostics,
        )
    return BlowupReport(
        classification="inconclusive",
        blowup_radii=(),
        atom_masses=(),
        threshold=threshold,
        margins={"annulus_spread": spread},
        diagnostics=diagnostics,
    )


@dataclass(frozen=True)
class HarnackRecord:
    sup_abs: float
    inf_abs: float
    ratio: float
    r: float
    density_bound: float
    eps: float


def harnack_ratio(u: RadialProfile, r: float, density_bound: float, eps: float) -> HarnackRecord:
    """Oscillation ratio sup|u| / inf|u| on B_r for nonpositive u.

    Requires the measure-density hypothesis mu(B_s) <= M s^(n-2k+eps)
    at every sampled s <= r; an origin atom violates it and is
    rejected.  Diagnostic only: the caller watches the ratio across a
    refinement sweep, nothing is asserted about its value here.
    """
    if not (np.isfinite(r) and 0 < r <= u.R * (1.0 + 1e-12)):
        raise InvalidArgumentError(f"need 0 < r <= {u.R:g}, got {r!r}")
    if not (np.isfinite(density_bound) and density_bound > 0):
        raise InvalidArgumentError(f"density bound must be positive, got {density_bound!r}")
    if not (np.isfinite(eps) and eps > 0):
        raise InvalidArgumentError(f"eps must be positive, got {eps!r}")
    vscale = max(1.0, float(np.max(np.abs(u.values))))
    if np.any(u.values > 1e-12 * vscale):
        raise PreconditionError("profile must be nonpositive")
    mu = s_k_radial(u)
    n, k = u.dim.n, u.dim.k
    if mu.atom > 0:
        raise PreconditionError("origin atom violates the measure-density hypothesis")
    mask = u.nodes <= r
    allowed = density_bound * u.nodes[mask] ** (n - 2 * k + eps)
    got = mu.cumulative[mask]
    if np.any(got > allowed * (1.0 + 1e-9)):
        worst = int(np.argmax(got - allowed))
        raise PreconditionError(
            f"measure-density hypothesis fails at radius {u.nodes[mask][worst]:.6g}"
        )
    sup_abs = -value_at(u, 0.0)
    inf_abs = max(-value_at(u, r), 0.0)
    ratio = sup_abs / inf_abs if inf_abs > 0 else math.inf
    return HarnackRecord(
        sup_abs=sup_abs, inf_abs=inf_abs, ratio=ratio,
        r=float(r), density_bound=float(density_bound), eps=float(eps),
    )


def singular_comparison_check(
    dim: HessianDim,
    p_prime: float = 1.0,
    R: float = 1.0,
    atom_factor: float = 1.0,
    background: float = 0.0,
    grid_n: int = quad.DEFAULT_GRID_N,
) -> CheckRecord:
    """Logarithmic upper bound near a singular point.

    Solves S_k[z] dx = atom + background with the atom at least the
    quantum (a0/p')^k; then z - (n/p') log r must be nondecreasing, so
    z stays below (n/p') log r plus its boundary offset everywhere.
    """
    if not dim.is_intermediate:
        raise UnsupportedDimensionError(
            f"the comparison needs 2k = n, got (n, k) = ({dim.n}, {dim.k})"
        )
    if atom_factor < 1.0:
        raise InvalidArgumentError(
            f"the bound needs an atom at or above the quantum, got factor {atom_factor!r}"
        )
    if background < 0:
        raise InvalidArgumentError(f"background density must be nonnegative, got {background!r}")
    quantum = dim.concentration_quantum(p_prime)
    atom = atom_factor * quantum
    nodes = quad.radial_grid(R, grid_n)
    mu = RadialMeasure.from_parts(dim, R, nodes, atom, np.full_like(nodes, background))
    z = solve_dirichlet(mu, 0.0)
    shifted = z.values - (dim.n / p_prime) * np.log(nodes)
    offset = float(shifted[-1])
    excess = float(np.max(shifted - offset))
    scale = max(1.0, abs(offset))
    tol = 1e-9 * scale
    return CheckRecord(
        check=f"singular-comparison[n={dim.n},k={dim.k},p'={p_prime:g},factor={atom_factor:g}]",
        anchor="singular-log-comparison",
        inputs={
            "n": dim.n, "k": dim.k, "p_prime": p_prime, "R": R,
            "atom_factor": atom_factor, "background": background,
        },
        lhs=excess,
        rhs=tol,
        margin=tol - excess,
        passed=bool(excess <= tol),
        details={"atom": atom, "quantum": quantum, "boundary_offset": offset},
    )


_BUBBLE_DIM = HessianDim(2, 1)


def bubble_profile(lam: float, R: float = 1.0, grid_n: int = quad.DEFAULT_GRID_N) -> RadialProfile:
    """Exact n = 2 solution u(r) = 2 log(1 + lam^2 r^2) - log(8 lam^2)
    of the unit-weight equation."""
    if not (np.isfinite(lam) and lam > 0):
        raise InvalidArgumentError(f"bubble scale must be positive, got {lam!r}")
    nodes = quad.radial_grid(R, grid_n)
    t = (lam * nodes) ** 2
    values = 2.0 * np.log1p(t) - math.log(8.0 * lam * lam)
    slope = 4.0 * lam * lam * nodes / (1.0 + t)
    return RadialProfile(
        dim=_BUBBLE_DIM, R=R, nodes=nodes, values=values, slope=slope,
        boundary=float(values[-1]), kind="bubble", params={"lam": float(lam)},
    )


def bubble_residual_sup(lam: float, R: float = 1.0, grid_n: int = quad.DEFAULT_GRID_N) -> float:
    """Sup of |Laplacian(u) - exp(-u)| for the bubble, all in closed
    form; zero up to round-off by the defining identity."""
    nodes = quad.radial_grid(R, grid_n)
    t = (lam * nodes) ** 2
    lap = 4.0 * lam * lam * (1.0 - t) / (1.0 + t) ** 2 + 4.0 * lam * lam / (1.0 + t)
    rhs = 8.0 * lam * lam / (1.0 + t) ** 2
    return float(np.max(np.abs(lap - rhs)))


def bubble_local_mass(lam: float, r: float) -> float:
    """Closed-form int over B_r of exp(-u) for the bubble: the value
    tends to 8 pi as lam r grows."""
    t = (lam * r) ** 2
    return 8.0 * math.pi * t / (1.0 + t)


def bubble_problem(lam: float, R: float = 1.0, grid_n: int = quad.DEFAULT_GRID_N) -> LiouvilleProblem:
    """The unit-weight problem whose solution is the lam-bubble."""
    boundary = float(2.0 * math.log1p((lam * R) ** 2) - math.log(8.0 * lam * lam))
    return LiouvilleProblem(
        dim=_BUBBLE_DIM,
        V=lambda r: np.ones_like(r),
        R=R,
        boundary=boundary,
        grid_n=grid_n,
        label=f"bubble-lam={lam:g}",
    )
