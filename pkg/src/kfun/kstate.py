"""Photon-subtracted Gaussian states in the coherent-label picture.

Subtracting ``m_i`` photons from mode ``i`` through a tap beamsplitter of
transmittance ``tau_i`` multiplies the label-space amplitude by a monomial
``alpha_i^{m_i}`` (times a scalar coefficient), rescales the label by
``sqrt(tau_i)`` and adds per-mode Gaussian damping, all of which the
integral engine handles exactly.  Norms are 4N-variable bra/ket integrals
over two label copies; overlaps with coherent-state superpositions are
2N-variable integrals.  A trailing passive interferometer on the surviving
labels is tracked symbolically and folded into overlaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .engine import ComplexGaussianIntegrand, integrate
from .errors import NormalizeFirstError
from .gaussian import (GaussianPureState, KKernel, build_k_kernel,
                       check_unitary, cross_pairing,
                       displacement_linear_term, label_to_xvec)


def coherent_inner(g1, g2) -> complex:
    """Overlap of two products of coherent states with label vectors
    g1, g2: exp(-|g1|^2/2 - |g2|^2/2 + g1* . g2)."""
    g1 = np.asarray(g1, dtype=complex).reshape(-1)
    g2 = np.asarray(g2, dtype=complex).reshape(-1)
    if g1.shape != g2.shape:
        raise ValueError("label vectors must have equal length")
    return complex(np.exp(-0.5 * np.vdot(g1, g1) - 0.5 * np.vdot(g2, g2)
                          + np.vdot(g1, g2)))


@dataclass(frozen=True)
class CoherentSuperposition:
    """Finite superposition sum_k c_k |g_k> of coherent-product states.

    ``terms`` is a tuple of (coefficient, label vector) pairs, every label
    vector of the same length; ``normalized`` asserts unit norm.
    """

    terms: tuple
    normalized: bool = False

    def __post_init__(self):
        if not self.terms:
            raise ValueError("need at least one term")
        clean = []
        width = None
        for coeff, labels in self.terms:
            labels = np.asarray(labels, dtype=complex).reshape(-1)
            if width is None:
                width = labels.shape[0]
            elif labels.shape[0] != width:
                raise ValueError("label vectors must have equal length")
            clean.append((complex(coeff), labels))
        object.__setattr__(self, "terms", tuple(clean))

    @property
    def n_modes(self) -> int:
        return self.terms[0][1].shape[0]


def superposition_norm(sup: CoherentSuperposition) -> float:
    """Exact norm of a coherent superposition via pairwise overlaps."""
    total = 0.0j
    for ci, gi in sup.terms:
        for cj, gj in sup.terms:
            total += np.conj(ci) * cj * coherent_inner(gi, gj)
    return float(np.sqrt(total.real))


def normalize(sup: CoherentSuperposition) -> CoherentSuperposition:
    """Rescale coefficients to unit norm."""
    scale = superposition_norm(sup)
    if scale <= 0.0:
        raise ValueError("cannot normalize a null superposition")
    terms = tuple((c / scale, g) for c, g in sup.terms)
    return CoherentSuperposition(terms=terms, normalized=True)


def cat_bell(q_gamma: float, p_gamma: float = 0.0) -> CoherentSuperposition:
    """Even two-mode cat (|g, g> + |-g, -g>) / N with g = (q + ip)/sqrt(2)."""
    g = (q_gamma + 1j * p_gamma) / np.sqrt(2.0)
    nplus = np.sqrt(2.0 * (1.0 + np.exp(-2.0 * (q_gamma ** 2
                                                + p_gamma ** 2))))
    labels = np.array([g, g])
    terms = ((1.0 / nplus, labels), (1.0 / nplus, -labels))
    return CoherentSuperposition(terms=terms, normalized=True)


def subtract_coherent(alpha: complex, count: int,
                      tau: float) -> tuple[complex, complex]:
    """Closed form of subtraction acting on a single coherent label.

    Returns ``(coefficient, out_label)`` with the unnormalized post-
    detection coherent state ``coefficient * |out_label>``:
    ``(-sqrt(1-tau))^m / sqrt(m!) * alpha^m * exp(-(1-tau)|alpha|^2 / 2)``
    and ``out_label = sqrt(tau) * alpha``.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if not 0.0 < tau <= 1.0:
        raise ValueError("tau must lie in (0, 1]")
    alpha = complex(alpha)
    coeff = ((-np.sqrt(1.0 - tau)) ** count / np.sqrt(math.factorial(count))
             * alpha ** count * np.exp(-0.5 * (1.0 - tau) * abs(alpha) ** 2))
    return complex(coeff), complex(np.sqrt(tau) * alpha)


@dataclass(frozen=True)
class NonGaussianKState:
    """Gaussian kernel dressed with photon-detection monomials.

    Per mode: ``counts[i]`` detected photons, ``taus[i]`` the tap
    transmittance (0 marks a fully measured mode that no longer carries a
    label), ``label_scale[i] = sqrt(taus[i])``.  ``interferometer`` acts
    on the surviving labels.  ``norm_p`` caches the success probability
    once :func:`success_probability` has run; overlaps require it.
    """

    kernel: KKernel
    counts: tuple
    taus: tuple
    label_scale: tuple
    interferometer: np.ndarray
    norm_p: float | None = None

    def __post_init__(self):
        n = self.kernel.n_modes
        counts = tuple(int(c) for c in self.counts)
        taus = tuple(float(t) for t in self.taus)
        if len(counts) != n or len(taus) != n:
            raise ValueError("counts and taus must have one entry per mode")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be non-negative")
        if any(t < 0.0 or t > 1.0 for t in taus):
            raise ValueError("taus must lie in [0, 1]")
        scale = tuple(float(s) for s in self.label_scale)
        if any(abs(s - np.sqrt(t)) > 1e-12 for s, t in zip(scale, taus)):
            raise ValueError("label_scale must equal sqrt(taus)")
        U = check_unitary(self.interferometer, n)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "taus", taus)
        object.__setattr__(self, "label_scale", scale)
        object.__setattr__(self, "interferometer", U)

    @property
    def n_modes(self) -> int:
        return self.kernel.n_modes

    @property
    def live_modes(self) -> tuple:
        """Modes that still carry a label (tau > 0)."""
        return tuple(i for i, s in enumerate(self.label_scale) if s > 0.0)

    @property
    def coefficient(self) -> complex:
        """Scalar detection coefficient, product over modes of
        (-sqrt(1-tau))^m / sqrt(2^m m!) with the sign dropped on fully
        measured modes."""
        total = 1.0
        for c, t, s in zip(self.counts, self.taus, self.label_scale):
            total /= np.sqrt(2.0 ** c * math.factorial(c))
            if s > 0.0:
                total *= (-np.sqrt(1.0 - t)) ** c
        return complex(total)


def subtract(state, counts, taus) -> NonGaussianKState:
    """Photon-subtract a pure Gaussian state (or its kernel).

    ``counts`` and ``taus`` give per-mode detected photon numbers and tap
    transmittances; ``tau = 1`` with ``count = 0`` leaves a mode alone.
    """
    kernel = state if isinstance(state, KKernel) else build_k_kernel(state)
    counts = tuple(int(c) for c in np.asarray(counts).reshape(-1))
    taus = tuple(float(t) for t in np.asarray(taus, dtype=float).reshape(-1))
    if any(t <= 0.0 or t > 1.0 for t in taus):
        raise ValueError("tap transmittances must lie in (0, 1]")
    scale = tuple(np.sqrt(t) for t in taus)
    return NonGaussianKState(kernel=kernel, counts=counts, taus=taus,
                             label_scale=scale,
                             interferometer=np.eye(kernel.n_modes))


def apply_interferometer(state: NonGaussianKState, U) -> NonGaussianKState:
    """Compose a passive unitary onto the surviving labels."""
    U = check_unitary(U, state.n_modes)
    return replace(state, interferometer=U @ state.interferometer)


def braket_integrand(kernel: KKernel, cross, bra_counts, ket_counts,
                     prefactor) -> ComplexGaussianIntegrand:
    """4N-variable <bra|ket> integrand over stacked label copies.

    ``cross`` couples bra and ket copies mode by mode (1 = intact overlap,
    tau = subtraction tap, 1 - tau = loss channel, 0 = fully detected).
    Per-mode Gaussian damping is implied: the diagonal blocks always carry
    the full I/2 so any cross deficit is exactly the damping.  Bra
    monomials are (q - ip)^m forms, ket monomials (q + ip)^m.
    """
    n = kernel.n_modes
    d = 2 * n
    eye_half = np.eye(d) / 2.0
    XT = cross_pairing(cross)
    M = np.block([[np.conj(kernel.B) + eye_half, -0.5 * XT],
                  [-0.5 * XT.T, kernel.B + eye_half]])
    b = np.zeros(2 * d, dtype=complex)
    pref = complex(prefactor) * (2.0 * np.pi) ** (-d) \
        * kernel.det_gamma ** (-0.5)
    if kernel.displaced:
        bk, const = displacement_linear_term(kernel)
        b[:d] = np.conj(bk)
        b[d:] = bk
        pref *= const * np.conj(const)
    monomials = []
    for i, p in enumerate(bra_counts):
        if p:
            form = np.zeros(2 * d, dtype=complex)
            form[i] = 1.0
            form[n + i] = -1.0j
            monomials.append((form, int(p)))
    for i, p in enumerate(ket_counts):
        if p:
            form = np.zeros(2 * d, dtype=complex)
            form[d + i] = 1.0
            form[d + n + i] = 1.0j
            monomials.append((form, int(p)))
    return ComplexGaussianIntegrand(dim=2 * d, M=M, b=b, prefactor=pref,
                                    monomials=tuple(monomials))


def success_probability(state: NonGaussianKState) -> float:
    """Probability of the recorded detection pattern; caches ``norm_p``.

    Computed as the squared norm of the unnormalized post-detection state,
    a 4N-variable Gaussian matching integral.  The imaginary part of the
    integral is a numerical residual and is discarded.
    """
    coeff = state.coefficient
    cross = np.asarray(state.label_scale, dtype=float) ** 2
    integrand = braket_integrand(state.kernel, cross, state.counts,
                                 state.counts, np.conj(coeff) * coeff)
    p = float(integrate(integrand).real)
    object.__setattr__(state, "norm_p", p)
    return p


def coherent_overlap(state: NonGaussianKState, gamma) -> complex:
    """Amplitude <gamma | normalized state> for a coherent product bra.

    ``gamma`` has one label per surviving mode.  Requires the cached
    ``norm_p`` from :func:`success_probability`.
    """
    if state.norm_p is None:
        raise NormalizeFirstError(
            "call success_probability before taking overlaps")
    n = state.n_modes
    gamma = np.asarray(gamma, dtype=complex).reshape(-1)
    live = state.live_modes
    if gamma.shape[0] != len(live):
        raise ValueError("gamma must have one label per surviving mode")
    full = np.zeros(n, dtype=complex)
    full[list(live)] = gamma
    geff = state.interferometer.conj().T @ full
    xg = label_to_xvec(geff)
    kernel = state.kernel
    H = kernel.B + np.eye(2 * n) / 2.0
    XS = cross_pairing(state.label_scale)
    b = 0.5 * (XS.T @ xg.astype(complex))
    pref = kernel.norm * state.coefficient * np.exp(-0.25 * float(xg @ xg))
    if kernel.displaced:
        bk, const = displacement_linear_term(kernel)
        b = b + bk
        pref = pref * const
    monomials = []
    for i, p in enumerate(state.counts):
        if p:
            form = np.zeros(2 * n, dtype=complex)
            form[i] = 1.0
            form[n + i] = 1.0j
            monomials.append((form, int(p)))
    integrand = ComplexGaussianIntegrand(dim=2 * n, M=H, b=b, prefactor=pref,
                                         monomials=tuple(monomials))
    return complex(integrate(integrand)) / np.sqrt(state.norm_p)


def fidelity(state: NonGaussianKState, target: CoherentSuperposition) -> float:
    """|<target | normalized state>|^2 against a normalized coherent
    superposition on the surviving modes."""
    if not target.normalized:
        raise ValueError("target superposition must be normalized")
    if target.n_modes != len(state.live_modes):
        raise ValueError("target must have one label per surviving mode")
    amp = 0.0j
    for coeff, labels in target.terms:
        amp += np.conj(coeff) * coherent_overlap(state, labels)
    return float(abs(amp) ** 2)
