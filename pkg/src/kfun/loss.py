"""Uniform pure loss applied to a Gaussian kernel state.

A loss channel of transmittance ``tau`` on every mode turns the pure
kernel into a mixed state whose diagnostics are still 4N-variable
bra/ket Gaussian integrals: the environment trace couples the two label
copies with strength ``1 - tau`` while detected photons couple them with
monomials weighted by ``tau``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import integrate
from .errors import DegreeCapError, UnsupportedDisplacementError
from .gaussian import KKernel
from .kstate import braket_integrand

_COUNT_CAP = 12


@dataclass(frozen=True)
class MixedKernelState:
    """Pure Gaussian kernel after uniform loss of transmittance tau."""

    kernel: KKernel
    tau: float

    def __post_init__(self):
        if not 0.0 < self.tau <= 1.0:
            raise ValueError("tau must lie in (0, 1]")
        if self.kernel.displaced:
            raise UnsupportedDisplacementError(
                "loss diagnostics require zero displacement")
        object.__setattr__(self, "tau", float(self.tau))

    @property
    def n_modes(self) -> int:
        return self.kernel.n_modes


def apply_uniform_loss(kernel: KKernel, tau: float) -> MixedKernelState:
    """Attach a uniform loss channel to every mode."""
    return MixedKernelState(kernel=kernel, tau=tau)


def trace(state: MixedKernelState) -> float:
    """Trace of the lossy density operator; 1 up to quadrature error."""
    n = state.n_modes
    integrand = braket_integrand(state.kernel, np.ones(n), (0,) * n,
                                 (0,) * n, 1.0)
    return float(integrate(integrand).real)


def mean_photon_number(state: MixedKernelState, mode: int) -> float:
    """Mean photon number of one mode after loss (tau times the input's)."""
    n = state.n_modes
    if not 0 <= mode < n:
        raise ValueError("mode out of range")
    one = tuple(1 if i == mode else 0 for i in range(n))
    integrand = braket_integrand(state.kernel, np.ones(n), one, one,
                                 state.tau / 2.0)
    return float(integrate(integrand).real)


def _check_cap(total: int) -> None:
    if total > _COUNT_CAP:
        raise DegreeCapError(
            f"total count {total} exceeds the cap of {_COUNT_CAP}")


def lossy_pattern_probability(state: MixedKernelState, counts) -> float:
    """Probability of detecting ``counts`` on every mode after loss."""
    n = state.n_modes
    counts = tuple(int(c) for c in np.asarray(counts).reshape(-1))
    if len(counts) != n:
        raise ValueError("counts must cover every mode")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total = sum(counts)
    _check_cap(total)
    coeff = state.tau ** total
    for c in counts:
        coeff /= 2.0 ** c * math.factorial(c)
    cross = np.full(n, 1.0 - state.tau)
    integrand = braket_integrand(state.kernel, cross, counts, counts, coeff)
    return float(integrate(integrand).real)


def lossy_marginal_probability(state: MixedKernelState, counts,
                               modes) -> float:
    """Probability of ``counts`` on a subset of modes (1-based), the rest
    traced out."""
    n = state.n_modes
    counts = tuple(int(c) for c in np.asarray(counts).reshape(-1))
    modes = tuple(int(m) for m in np.asarray(modes).reshape(-1))
    if len(counts) != len(modes):
        raise ValueError("counts and modes must align")
    if len(set(modes)) != len(modes) or any(not 1 <= m <= n for m in modes):
        raise ValueError("modes must be distinct 1-based indices")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total = sum(counts)
    _check_cap(total)
    full = [0] * n
    cross = np.ones(n)
    coeff = state.tau ** total
    for c, m in zip(counts, modes):
        full[m - 1] = c
        cross[m - 1] = 1.0 - state.tau
        coeff /= 2.0 ** c * math.factorial(c)
    integrand = braket_integrand(state.kernel, cross, tuple(full),
                                 tuple(full), coeff)
    return float(integrate(integrand).real)
