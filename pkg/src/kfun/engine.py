"""Complex Gaussian integrals with monomial prefactors.

Evaluates integrals over R^n of the form

    prefactor * exp(-0.5 x^T M x + b^T x) * prod_j (l_j^T x)^{p_j}

for complex symmetric ``M`` whose real part is positive definite.  The
closed-form base case is :func:`gaussian_integral`; the polynomial part is
a normalized expectation computed by :func:`gaussian_moment` as a sum over
partial matchings of the expanded linear forms (pairs contribute central
covariances, singletons contribute means).

The matching-polynomial kernel is the hot spot.  A compiled extension is
preferred and a pure-Python implementation is selected at import when the
extension is missing; ``BACKEND`` names the active one.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegreeCapError, KernelNotConvergentError, OddDimensionError

try:
    from . import _hafnian_cy as _kernels
except ImportError:  # pragma: no cover - depends on the build environment
    from . import _hafnian_py as _kernels

BACKEND = _kernels.BACKEND_NAME

# Hard cap on the total matching degree; a dense subset table is used up to
# MEMO_CAP indices, plain recursion (exponential) above it.
DEGREE_CAP = 32
MEMO_CAP = 24

_SYM_ATOL = 1e-12
_RE_PD_RTOL = 1e-12


def _as_square(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be a square matrix")
    if not np.allclose(M, M.T, rtol=0.0, atol=_SYM_ATOL):
        raise ValueError(f"{name} must be symmetric")
    return M


def _check_damped(M: np.ndarray) -> None:
    """Re(M) must be positive definite for the integral to converge."""
    if M.shape[0] == 0:
        return
    w = np.linalg.eigvalsh((M.real + M.real.T) / 2.0)
    if w[-1] <= 0.0 or w[0] <= _RE_PD_RTOL * w[-1]:
        raise KernelNotConvergentError(
            "real part of the quadratic form is not positive definite")


def _normalize_monomials(monomials, dim: int):
    out = []
    for form, power in monomials:
        form = np.asarray(form, dtype=complex).reshape(-1)
        if form.shape[0] != dim:
            raise ValueError("monomial form length must match the dimension")
        power = int(power)
        if power < 0:
            raise ValueError("monomial powers must be non-negative")
        out.append((form, power))
    return tuple(out)


@dataclass(frozen=True)
class ComplexGaussianIntegrand:
    """Gaussian weight plus monomials, ready for :func:`integrate`.

    Fields mirror the integral written in the module docstring: ``M`` is
    complex symmetric with positive-definite real part, ``b`` the linear
    term, and ``monomials`` an ordered list of ``(form, power)`` pairs
    meaning ``(form . x) ** power``.
    """

    dim: int
    M: np.ndarray
    b: np.ndarray
    prefactor: complex
    monomials: tuple = ()

    def __post_init__(self):
        M = _as_square(self.M, "M")
        if M.shape[0] != self.dim:
            raise ValueError("M must be dim x dim")
        _check_damped(M)
        b = np.asarray(self.b, dtype=complex).reshape(-1)
        if b.shape[0] != self.dim:
            raise ValueError("b length must match the dimension")
        monomials = _normalize_monomials(self.monomials, self.dim)
        if self.total_degree_of(monomials) > DEGREE_CAP:
            raise DegreeCapError(
                f"total monomial degree exceeds the cap of {DEGREE_CAP}")
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "prefactor", complex(self.prefactor))
        object.__setattr__(self, "monomials", monomials)

    @staticmethod
    def total_degree_of(monomials) -> int:
        return sum(power for _, power in monomials)

    @property
    def total_degree(self) -> int:
        return self.total_degree_of(self.monomials)


@dataclass(frozen=True)
class MomentMatrix:
    """Second moments ``F[i, j]`` and first moments ``mu[i]`` of the
    expanded linear forms (one row per repeated form)."""

    F: np.ndarray
    mu: np.ndarray


def gaussian_integral(M, b) -> complex:
    """Closed form ``(2 pi)^{n/2} det(M)^{-1/2} exp(0.5 b^T M^{-1} b)``.

    ``det(M)^{-1/2}`` is the product of reciprocal principal square roots
    of the eigenvalues of ``M``; every eigenvalue lies in the open right
    half-plane because Re(M) is positive definite, so the branch is
    unambiguous.
    """
    M = _as_square(M, "M")
    _check_damped(M)
    b = np.asarray(b, dtype=complex).reshape(-1)
    n = M.shape[0]
    if b.shape[0] != n:
        raise ValueError("b length must match M")
    if n == 0:
        return 1.0 + 0.0j
    eigs = np.linalg.eigvals(M)
    det_root_inv = complex(np.prod(1.0 / np.sqrt(eigs)))
    quad = 0.5 * complex(b @ np.linalg.solve(M, b)) if np.any(b) else 0.0
    return (2.0 * np.pi) ** (n / 2.0) * det_root_inv * np.exp(quad)


def _dispatch_matching(F: np.ndarray, mu: np.ndarray) -> complex:
    n = F.shape[0]
    if n > DEGREE_CAP:
        raise DegreeCapError(f"matching degree {n} exceeds the cap of {DEGREE_CAP}")
    if n > MEMO_CAP:
        warnings.warn(
            f"matching degree {n} exceeds the memoized cap of {MEMO_CAP}; "
            "falling back to non-memoized recursion", RuntimeWarning,
            stacklevel=3)
        return complex(_kernels.loop_hafnian_recursive(F, mu))
    return complex(_kernels.loop_hafnian_memoized(F, mu))


def hafnian(F) -> complex:
    """Sum over perfect matchings of the products of entries of ``F``.

    The diagonal is ignored.  Dimension must be even; the empty matrix
    yields 1.
    """
    F = _as_square(F, "F")
    n = F.shape[0]
    if n % 2:
        raise OddDimensionError("hafnian requires an even dimension")
    return _dispatch_matching(F, np.zeros(n, dtype=complex))


def _expanded_forms(monomials, dim: int) -> np.ndarray:
    rows = []
    for form, power in monomials:
        rows.extend([form] * power)
    if not rows:
        return np.zeros((0, dim), dtype=complex)
    return np.array(rows, dtype=complex)


def build_moment_matrix(M, b, monomials) -> MomentMatrix:
    """Assemble second and first moments of the expanded linear forms
    under the normalized Gaussian weight ``exp(-0.5 x^T M x + b^T x)``."""
    M = _as_square(M, "M")
    _check_damped(M)
    b = np.asarray(b, dtype=complex).reshape(-1)
    monomials = _normalize_monomials(monomials, M.shape[0])
    L = _expanded_forms(monomials, M.shape[0])
    cov = L @ np.linalg.solve(M, L.T) if L.shape[0] else np.zeros((0, 0), complex)
    cov = (cov + cov.T) / 2.0
    mu = L @ np.linalg.solve(M, b) if L.shape[0] else np.zeros(0, complex)
    return MomentMatrix(F=cov + np.outer(mu, mu), mu=mu)


def gaussian_moment(M, b, monomials) -> complex:
    """Expectation of ``prod_j (l_j^T x)^{p_j}`` under the normalized
    Gaussian weight with kernel ``M`` and linear term ``b``.

    Each form is expanded into ``p_j`` repeated indices; partial matchings
    contribute central covariances for pairs and means for singletons.
    With ``b = 0`` an odd total degree returns exactly 0.
    """
    monomials = _normalize_monomials(monomials, np.asarray(M).shape[0])
    total = ComplexGaussianIntegrand.total_degree_of(monomials)
    if total > DEGREE_CAP:
        raise DegreeCapError(f"total monomial degree exceeds the cap of {DEGREE_CAP}")
    if total == 0:
        return 1.0 + 0.0j
    b = np.asarray(b, dtype=complex).reshape(-1)
    if not np.any(b) and total % 2 == 1:
        return 0.0 + 0.0j
    moments = build_moment_matrix(M, b, monomials)
    pair = moments.F - np.outer(moments.mu, moments.mu)
    return _dispatch_matching(pair, moments.mu)


def integrate(integrand: ComplexGaussianIntegrand) -> complex:
    """Evaluate the full integral of a :class:`ComplexGaussianIntegrand`."""
    base = gaussian_integral(integrand.M, integrand.b)
    moment = gaussian_moment(integrand.M, integrand.b, integrand.monomials)
    return integrand.prefactor * base * moment
