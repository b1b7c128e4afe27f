"""Photon-number statistics of pure Gaussian states.

Full-pattern probabilities reduce to a single loop-hafnian of the inverse
of ``B + I/2`` conjugated by the detection forms; partial patterns herald
a non-Gaussian remainder whose norm is the same bra/ket integral used for
photon subtraction, keeping one code path for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import ComplexGaussianIntegrand, integrate
from .errors import (DegreeCapError, NormalizeFirstError,
                     UnsupportedDisplacementError)
from .gaussian import KKernel
from .kstate import NonGaussianKState, braket_integrand, success_probability

# Largest total count for a full-pattern hafnian; bra/ket integrands double
# the matching degree, so partial patterns get half of it.
PATTERN_CAP = 24
BRAKET_CAP = PATTERN_CAP // 2


@dataclass(frozen=True)
class PhotonPattern:
    """Detected counts on a subset of modes, 1-based mode numbers."""

    counts: tuple
    measured_modes: tuple

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        modes = tuple(int(m) for m in self.measured_modes)
        if len(counts) != len(modes):
            raise ValueError("counts and measured_modes must align")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be non-negative")
        if len(set(modes)) != len(modes) or any(m < 1 for m in modes):
            raise ValueError("measured_modes must be distinct and 1-based")
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "measured_modes", modes)

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class HMatrix:
    """Ket-side quadratic form ``B + I/2`` of a kernel."""

    H: np.ndarray

    def __post_init__(self):
        H = np.asarray(self.H, dtype=complex)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise ValueError("H must be square")
        if not np.allclose(H, H.T, rtol=0.0, atol=1e-12):
            raise ValueError("H must be symmetric")
        w = np.linalg.eigvalsh((H.real + H.real.T) / 2.0)
        if w[0] <= 0.0:
            raise ValueError("Re(H) must be positive definite")
        object.__setattr__(self, "H", H)


def build_h(kernel: KKernel) -> HMatrix:
    return HMatrix(H=kernel.B + np.eye(2 * kernel.n_modes) / 2.0)


def _require_undisplaced(kernel: KKernel) -> None:
    if kernel.displaced:
        raise UnsupportedDisplacementError(
            "photon-number statistics require zero displacement")


def pattern_probability(kernel: KKernel, counts) -> float:
    """Probability of detecting ``counts`` photons on every mode.

    Odd total photon number gives exactly zero for these states.  The
    amplitude is a 2N-variable Gaussian matching integral with one
    (q + ip)^n form per mode.
    """
    _require_undisplaced(kernel)
    n = kernel.n_modes
    counts = tuple(int(c) for c in np.asarray(counts).reshape(-1))
    if len(counts) != n:
        raise ValueError("counts must cover every mode")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total = sum(counts)
    if total > PATTERN_CAP:
        raise DegreeCapError(
            f"total count {total} exceeds the cap of {PATTERN_CAP}")
    if total % 2:
        return 0.0
    coeff = kernel.norm
    monomials = []
    for i, c in enumerate(counts):
        coeff /= np.sqrt(2.0 ** c * math.factorial(c))
        if c:
            form = np.zeros(2 * n, dtype=complex)
            form[i] = 1.0
            form[n + i] = 1.0j
            monomials.append((form, c))
    integrand = ComplexGaussianIntegrand(dim=2 * n, M=build_h(kernel).H,
                                         b=np.zeros(2 * n), prefactor=coeff,
                                         monomials=tuple(monomials))
    amp = integrate(integrand)
    return float(abs(amp) ** 2)


def herald(kernel: KKernel, pattern: PhotonPattern):
    """Detect a pattern on a strict subset of modes.

    Returns ``(state, p_herald)``: the conditional remainder on the
    surviving modes as a :class:`~kfun.kstate.NonGaussianKState` (with
    ``norm_p`` already cached) and the herald probability.
    """
    _require_undisplaced(kernel)
    n = kernel.n_modes
    if any(m > n for m in pattern.measured_modes):
        raise ValueError("measured mode index exceeds the mode count")
    if len(pattern.measured_modes) == n:
        raise ValueError("pattern covers every mode; "
                         "use pattern_probability instead")
    if pattern.total > BRAKET_CAP:
        raise DegreeCapError(
            f"total count {pattern.total} exceeds the cap of {BRAKET_CAP}")
    counts = [0] * n
    taus = [1.0] * n
    for c, m in zip(pattern.counts, pattern.measured_modes):
        counts[m - 1] = c
        taus[m - 1] = 0.0
    scale = [np.sqrt(t) for t in taus]
    state = NonGaussianKState(kernel=kernel, counts=tuple(counts),
                              taus=tuple(taus), label_scale=tuple(scale),
                              interferometer=np.eye(n))
    p = success_probability(state)
    return state, p


def fock_probability(state: NonGaussianKState, counts) -> float:
    """Photon-count distribution of a normalized non-Gaussian state.

    ``counts`` has one entry per surviving mode (in mode order).  Only
    states with an identity interferometer are supported: detection acts
    mode by mode on the kernel labels.  Requires the cached ``norm_p``.
    """
    if state.norm_p is None:
        raise NormalizeFirstError(
            "call success_probability before detection statistics")
    if not np.allclose(state.interferometer, np.eye(state.n_modes),
                       rtol=0.0, atol=1e-12):
        raise ValueError("detection statistics require an identity "
                         "interferometer")
    live = state.live_modes
    counts = tuple(int(c) for c in np.asarray(counts).reshape(-1))
    if len(counts) != len(live):
        raise ValueError("counts must cover every surviving mode")
    if any(c < 0 for c in counts):
        raise ValueError("counts must be non-negative")
    total_bra = [0] * state.n_modes
    coeff = state.coefficient
    for k, i in zip(counts, live):
        s = state.label_scale[i]
        coeff *= s ** k / np.sqrt(2.0 ** k * math.factorial(k))
        total_bra[i] = state.counts[i] + k
    for i in range(state.n_modes):
        if state.label_scale[i] == 0.0:
            total_bra[i] = state.counts[i]
    if sum(total_bra) > BRAKET_CAP:
        raise DegreeCapError(
            f"total degree {sum(total_bra)} exceeds the cap of {BRAKET_CAP}")
    integrand = braket_integrand(state.kernel, np.zeros(state.n_modes),
                                 tuple(total_bra), tuple(total_bra),
                                 np.conj(coeff) * coeff)
    joint = float(integrate(integrand).real)
    return joint / state.norm_p
