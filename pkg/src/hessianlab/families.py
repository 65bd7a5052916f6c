"""Canonical radial families with closed-form values and slopes.

These are the exactly solvable profiles the verification suites lean
on: the log family (point mass in the intermediate regime), the pure
power family (point mass in the subcritical regime, Newtonian potential
at n = 3, k = 1), the quadratic family (constant density), and the
mollified log family (bounded regularization of the log profile).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import quadrature as quad
from .core import HessianDim
from .errors import InvalidArgumentError, UnsupportedDimensionError
from .radial import RadialProfile, profile_from_slope

KINDS = ("log", "power", "quadratic", "mollified-log", "newtonian")

__all__ = ["FamilySpec", "KINDS", "make_profile", "make_family"]


@dataclass(frozen=True)
class FamilySpec:
    """Recipe for one canonical profile: kind, amplitude, mollification."""

    kind: str
    amplitude: float = 1.0
    mollification: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidArgumentError(f"unknown family kind {self.kind!r}, expected one of {KINDS}")
        if not np.isfinite(self.amplitude) or self.amplitude <= 0:
            raise InvalidArgumentError(f"amplitude must be positive, got {self.amplitude!r}")
        if self.kind == "mollified-log":
            if not np.isfinite(self.mollification) or self.mollification <= 0:
                raise InvalidArgumentError("mollified-log needs a positive mollification scale")
        elif self.mollification:
            raise InvalidArgumentError(f"kind {self.kind!r} takes no mollification scale")


def make_profile(
    spec: FamilySpec,
    dim: HessianDim,
    R: float = 1.0,
    grid_n: int = quad.DEFAULT_GRID_N,
) -> RadialProfile:
    """Build one canonical profile on the standard graded grid."""
    r = quad.radial_grid(R, grid_n)
    c = spec.amplitude
    params = {"amplitude": c}
    if spec.kind == "log":
        values = c * np.log(r / R)
        slope = c / r
        return profile_from_slope(
            dim, R, r, slope, 0.0, values=values, kind="log", params=params, unbounded_origin=True
        )
    if spec.kind in ("power", "newtonian"):
        if spec.kind == "newtonian" and (dim.n, dim.k) != (3, 1):
            raise UnsupportedDimensionError("the newtonian kind is the (n, k) = (3, 1) power profile")
        if not dim.is_subcritical:
            raise UnsupportedDimensionError(
                f"power profiles need 2k < n, got (n, k) = ({dim.n}, {dim.k})"
            )
        m = (dim.n - 2.0 * dim.k) / dim.k
        values = -c * (r**-m - R**-m)
        slope = c * m * r ** (-m - 1.0)
        return profile_from_slope(
            dim, R, r, slope, 0.0, values=values, kind=spec.kind, params=params, unbounded_origin=True
        )
    if spec.kind == "quadratic":
        values = c * (r**2 - R**2) / 2.0
        slope = c * r
        return profile_from_slope(
            dim, R, r, slope, 0.0, values=values, kind="quadratic", params=params, unbounded_origin=False
        )
    # mollified-log: c log(sqrt(r^2 + eps^2) / sqrt(R^2 + eps^2))
    eps = spec.mollification
    params["mollification"] = eps
    values = 0.5 * c * (np.log(r**2 + eps**2) - np.log(R**2 + eps**2))
    slope = c * r / (r**2 + eps**2)
    return profile_from_slope(
        dim, R, r, slope, 0.0, values=values, kind="mollified-log", params=params, unbounded_origin=False
    )


def make_family(
    spec: FamilySpec,
    dim: HessianDim,
    R: float = 1.0,
    count: int = 8,
    grid_n: int = quad.DEFAULT_GRID_N,
    mollification_levels: int = 1,
) -> list[RadialProfile]:
    """Deterministic family sweep around the base spec.

    Amplitudes run over the dyadic ladder amplitude * 2^(i - count//2);
    for the mollified kind each amplitude is repeated at
    mollification / 4^j for j < mollification_levels.
    """
    if not isinstance(count, (int, np.integer)) or count < 1:
        raise InvalidArgumentError(f"family count must be a positive integer, got {count!r}")
    if not isinstance(mollification_levels, (int, np.integer)) or mollification_levels < 1:
        raise InvalidArgumentError("mollification_levels must be a positive integer")
    members = []
    for i in range(int(count)):
        c = spec.amplitude * 2.0 ** (i - count // 2)
        if spec.kind == "mollified-log":
            for j in range(int(mollification_levels)):
                eps = spec.mollification / 4.0**j
                members.append(make_profile(FamilySpec(spec.kind, c, eps), dim, R, grid_n))
        else:
            members.append(make_profile(FamilySpec(spec.kind, c), dim, R, grid_n))
    return members
