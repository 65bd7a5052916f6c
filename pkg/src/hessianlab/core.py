"""Elementary symmetric functions of Hessian spectra and derived constants.

The k-Hessian operator of a C^2 function is the k-th elementary
symmetric function of the Hessian eigenvalues.  This module holds the
spectral kernels (stable elementary symmetric evaluation, admissible
cone membership, Maclaurin means) together with the dimensional
constants every other module needs: the unit ball volume, the sharp
exponential coefficient, its exponent ceiling in the intermediate case
2k = n, and the mass quantum separating regular from singular points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

import numpy as np

from .errors import InvalidArgumentError, UnsupportedDimensionError

__all__ = [
    "HessianDim",
    "DerivedConstants",
    "unit_ball_volume",
    "elem_sym",
    "elem_sym_all",
    "s_k_of_matrix",
    "principal_minor_sum",
    "gamma_k_membership",
    "maclaurin_means",
    "derived_constants",
]


@lru_cache(maxsize=None)
def unit_ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n, from the exact closed form.

    Even n = 2m gives pi^m / m!, odd n = 2m+1 gives
    2 m! (4 pi)^m / (2m+1)!; both avoid the gamma function so the
    values are exact products of floats.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidArgumentError(f"ball volume needs an integer n >= 1, got {n!r}")
    m, rem = divmod(int(n), 2)
    if rem == 0:
        return math.pi**m / math.factorial(m)
    return 2.0 * math.factorial(m) * (4.0 * math.pi) ** m / math.factorial(2 * m + 1)


@dataclass(frozen=True)
class HessianDim:
    """Ambient dimension n and Hessian order k with 1 <= k <= n.

    The regime splits on the sign of n - 2k: subcritical (2k < n),
    intermediate (2k = n, the borderline exponential regime), and
    supercritical (2k > n, allowed for profile bookkeeping only).
    """

    n: int
    k: int

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise UnsupportedDimensionError(f"dimension n must be a positive integer, got {self.n!r}")
        if not isinstance(self.k, (int, np.integer)) or not 1 <= self.k <= self.n:
            raise UnsupportedDimensionError(
                f"order k must satisfy 1 <= k <= n = {self.n}, got {self.k!r}"
            )
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "k", int(self.k))

    @property
    def ball_volume(self) -> float:
        return unit_ball_volume(self.n)

    @property
    def n_choose_k(self) -> int:
        return math.comb(self.n, self.k)

    @property
    def is_intermediate(self) -> bool:
        return 2 * self.k == self.n

    @property
    def is_subcritical(self) -> bool:
        return 2 * self.k < self.n

    @property
    def moser_constant(self) -> float:
        """Sharp coefficient n * (omega_n * C(n,k))^(2/n) of the
        exponential integrability bound."""
        return self.n * (self.ball_volume * self.n_choose_k) ** (2.0 / self.n)

    @property
    def beta_max(self) -> float:
        """Largest admissible inner exponent (n+2)/n; only the
        intermediate regime 2k = n has an exponential endpoint."""
        if not self.is_intermediate:
            raise UnsupportedDimensionError(
                f"exponent ceiling is defined only when 2k = n, got (n, k) = ({self.n}, {self.k})"
            )
        return (self.n + 2.0) / self.n

    def concentration_quantum(self, p_prime: float = 1.0) -> float:
        """Mass threshold (moser_constant / p')^k below which a point
        concentration stays regular."""
        if not np.isfinite(p_prime) or p_prime < 1.0:
            raise InvalidArgumentError(f"conjugate exponent p' must be >= 1, got {p_prime!r}")
        return (self.moser_constant / p_prime) ** self.k

    def lp_endpoint(self) -> float:
        """Endpoint integrability exponent k n / (n - 2k) of the
        subcritical regime."""
        if not self.is_subcritical:
            raise UnsupportedDimensionError(
                f"the strong integrability endpoint needs 2k < n, got (n, k) = ({self.n}, {self.k})"
            )
        return self.k * self.n / (self.n - 2.0 * self.k)


@dataclass(frozen=True)
class DerivedConstants:
    n: int
    k: int
    ball_volume: float
    n_choose_k: int
    moser_constant: float
    beta_max: float | None

    def concentration_quantum(self, p_prime: float = 1.0) -> float:
        return HessianDim(self.n, self.k).concentration_quantum(p_prime)


def derived_constants(dim: HessianDim) -> DerivedConstants:
    """Snapshot of the dimensional constants for (n, k)."""
    beta = dim.beta_max if dim.is_intermediate else None
    return DerivedConstants(
        n=dim.n,
        k=dim.k,
        ball_volume=dim.ball_volume,
        n_choose_k=dim.n_choose_k,
        moser_constant=dim.moser_constant,
        beta_max=beta,
    )


def _as_spectrum(eigs) -> np.ndarray:
    arr = np.asarray(eigs, dtype=float)
    if arr.ndim != 1 or arr.size == 0:
        raise InvalidArgumentError("spectrum must be a nonempty 1-d array of eigenvalues")
    if not np.all(np.isfinite(arr)):
        raise InvalidArgumentError("spectrum entries must be finite")
    return arr


def elem_sym_all(eigs) -> np.ndarray:
    """All elementary symmetric functions e_0 .. e_n of the spectrum.

    Builds the coefficients of prod_i (t + lambda_i) by the standard
    one-eigenvalue-at-a-time recurrence, which is numerically stable
    for the moderate n used here.
    """
    lam = _as_spectrum(eigs)
    e = np.zeros(lam.size + 1)
    e[0] = 1.0
    for x in lam:
        # the RHS snapshots the previous coefficients before the update
        e[1:] += x * e[:-1].copy()
    return e


def elem_sym(eigs, j: int) -> float:
    """j-th elementary symmetric function of the eigenvalues."""
    lam = _as_spectrum(eigs)
    if not isinstance(j, (int, np.integer)) or not 0 <= j <= lam.size:
        raise InvalidArgumentError(f"order j must satisfy 0 <= j <= {lam.size}, got {j!r}")
    return float(elem_sym_all(lam)[int(j)])


def _check_symmetric(mat: np.ndarray) -> np.ndarray:
    m = np.asarray(mat, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise InvalidArgumentError("matrix must be square and nonempty")
    scale = np.max(np.abs(m)) or 1.0
    if np.max(np.abs(m - m.T)) > 1e-12 * scale:
        raise InvalidArgumentError("matrix is not symmetric within tolerance")
    return 0.5 * (m + m.T)


def s_k_of_matrix(mat, k: int) -> float:
    """S_k of a symmetric matrix via its eigenvalue spectrum."""
    m = _check_symmetric(mat)
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= m.shape[0]:
        raise InvalidArgumentError(f"order k must satisfy 1 <= k <= {m.shape[0]}, got {k!r}")
    return elem_sym(np.linalg.eigvalsh(m), int(k))


def principal_minor_sum(mat, k: int) -> float:
    """S_k of a symmetric matrix as the sum of its k x k principal minors.

    Independent of the eigenvalue route; the sym suite runs both and
    compares.  Cost grows as C(n,k), fine for n <= 8.
    """
    m = _check_symmetric(mat)
    n = m.shape[0]
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= n:
        raise InvalidArgumentError(f"order k must satisfy 1 <= k <= {n}, got {k!r}")
    total = 0.0
    for idx in combinations(range(n), int(k)):
        sub = m[np.ix_(idx, idx)]
        total += float(np.linalg.det(sub))
    return total


def gamma_k_membership(eigs, k: int, tol: float = 0.0) -> bool:
    """Whether the spectrum lies in the closed admissible cone of order k,
    i.e. e_j >= -tol for every j = 1 .. k."""
    lam = _as_spectrum(eigs)
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= lam.size:
        raise InvalidArgumentError(f"order k must satisfy 1 <= k <= {lam.size}, got {k!r}")
    e = elem_sym_all(lam)
    return bool(np.all(e[1 : int(k) + 1] >= -tol))


def maclaurin_means(eigs, k: int) -> np.ndarray:
    """Normalized means (e_j / C(n,j))^(1/j) for j = 1 .. k.

    On the admissible cone of order k these are nonincreasing in j;
    the suite checks that chain as an invariant.
    """
    lam = _as_spectrum(eigs)
    if not isinstance(k, (int, np.integer)) or not 1 <= k <= lam.size:
        raise InvalidArgumentError(f"order k must satisfy 1 <= k <= {lam.size}, got {k!r}")
    n = lam.size
    e = elem_sym_all(lam)
    means = np.empty(int(k))
    for j in range(1, int(k) + 1):
        normalized = e[j] / math.comb(n, j)
        if normalized < 0:
            means[j - 1] = math.nan
        else:
            means[j - 1] = normalized ** (1.0 / j)
    return means
