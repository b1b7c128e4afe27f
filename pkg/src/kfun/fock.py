"""Truncated Fock-basis oracle for small mode counts.

Everything here works on dense photon-number amplitude arrays with a hard
cutoff, completely independent of the Gaussian-kernel engine, so the two
routes can be compared in tests.  At most three modes are supported (two
physical modes plus one ancilla); pipelines that need more compose
two-mode operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lgamma

import numpy as np

DEFAULT_CUTOFF = 60
_MAX_MODES = 3
_NORM_SLACK = 1e-10


def _sqrt_factorials(n: int) -> np.ndarray:
    """sqrt(k!) for k = 0 .. n-1, overflow-safe."""
    k = np.arange(n)
    return np.exp(0.5 * np.vectorize(lgamma)(k + 1.0))


@dataclass(frozen=True)
class FockVector:
    """Dense photon-number amplitudes, one axis per mode, shared cutoff."""

    cutoff: int
    amps: np.ndarray

    def __post_init__(self):
        if self.cutoff < 1:
            raise ValueError("cutoff must be positive")
        amps = np.asarray(self.amps, dtype=complex)
        if amps.ndim < 1 or amps.ndim > _MAX_MODES:
            raise ValueError(f"between 1 and {_MAX_MODES} modes supported")
        if any(d != self.cutoff for d in amps.shape):
            raise ValueError("every axis must have length cutoff")
        nsq = float(np.vdot(amps, amps).real)
        if nsq > 1.0 + _NORM_SLACK:
            raise ValueError(f"norm^2 = {nsq!r} exceeds 1")
        object.__setattr__(self, "amps", amps)

    @property
    def n_modes(self) -> int:
        return self.amps.ndim

    @property
    def norm_sq(self) -> float:
        return float(np.vdot(self.amps, self.amps).real)

    @property
    def truncation_error(self) -> float:
        """Probability weight lost to the cutoff, 1 - |psi|^2."""
        return max(0.0, 1.0 - self.norm_sq)


def squeezed_vacuum_fock(r: float, cutoff: int = DEFAULT_CUTOFF) -> FockVector:
    """Single-mode squeezed vacuum with amplitudes
    sqrt((2n)!) / (2^n n!) * (-tanh r)^n / sqrt(cosh r) on even rungs."""
    amps = np.zeros(cutoff, dtype=complex)
    t = np.tanh(r)
    for n in range((cutoff + 1) // 2):
        if 2 * n >= cutoff:
            break
        logmag = 0.5 * lgamma(2 * n + 1.0) - n * np.log(2.0) - lgamma(n + 1.0)
        amps[2 * n] = (-t) ** n * np.exp(logmag)
    amps /= np.sqrt(np.cosh(r))
    return FockVector(cutoff=cutoff, amps=amps)


def tmsv_fock(r: float, cutoff: int = DEFAULT_CUTOFF) -> FockVector:
    """Two-mode squeezed vacuum, amplitudes tanh(r)^n / cosh(r) on |n, n>."""
    amps = np.zeros((cutoff, cutoff), dtype=complex)
    n = np.arange(cutoff)
    amps[n, n] = np.tanh(r) ** n / np.cosh(r)
    return FockVector(cutoff=cutoff, amps=amps)


def coherent_fock(labels, cutoff: int = DEFAULT_CUTOFF) -> FockVector:
    """Product of coherent states with the given complex labels."""
    labels = np.asarray(labels, dtype=complex).reshape(-1)
    if not 1 <= labels.shape[0] <= _MAX_MODES:
        raise ValueError(f"between 1 and {_MAX_MODES} modes supported")
    sq = _sqrt_factorials(cutoff)
    single = []
    for g in labels:
        n = np.arange(cutoff)
        single.append(np.exp(-0.5 * abs(g) ** 2) * g ** n / sq)
    amps = single[0]
    for s in single[1:]:
        amps = np.multiply.outer(amps, s)
    return FockVector(cutoff=cutoff, amps=amps)


def attach_vacuum(state: FockVector) -> FockVector:
    """Append a vacuum ancilla as the last mode."""
    if state.n_modes >= _MAX_MODES:
        raise ValueError(f"at most {_MAX_MODES} modes supported")
    amps = np.zeros(state.amps.shape + (state.cutoff,), dtype=complex)
    amps[..., 0] = state.amps
    return FockVector(cutoff=state.cutoff, amps=amps)


def beamsplitter_fock(state: FockVector, tau: float,
                      modes: tuple[int, int]) -> FockVector:
    """Beamsplitter of transmittance tau on the given pair of mode axes.

    Creation operators transform column-wise:
    a1+ -> sqrt(tau) a1+ - sqrt(1-tau) a2+ and
    a2+ -> sqrt(1-tau) a1+ + sqrt(tau) a2+.
    Output amplitudes beyond the cutoff are dropped.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError("tau must lie in [0, 1]")
    i, j = modes
    if i == j or not (0 <= i < state.n_modes and 0 <= j < state.n_modes):
        raise ValueError("modes must be two distinct axes of the state")
    D = state.cutoff
    c1, c2 = np.sqrt(tau), -np.sqrt(1.0 - tau)
    d1, d2 = np.sqrt(1.0 - tau), np.sqrt(tau)
    sq = _sqrt_factorials(D)
    work = np.moveaxis(state.amps, (i, j), (-2, -1))
    out = np.zeros_like(work)
    spectator = work.reshape(-1, D, D)
    target = out.reshape(-1, D, D)
    from math import comb
    for block_in, block_out in zip(spectator, target):
        for n1, n2 in np.argwhere(block_in != 0):
            u = np.array([comb(n1, k) * c1 ** k * c2 ** (n1 - k)
                          for k in range(n1 + 1)], dtype=complex)
            v = np.array([comb(n2, k) * d1 ** k * d2 ** (n2 - k)
                          for k in range(n2 + 1)], dtype=complex)
            w = np.convolve(u, v)
            s = n1 + n2
            amp = block_in[n1, n2] / (sq[n1] * sq[n2])
            lo, hi = max(0, s - D + 1), min(s, D - 1)
            for p in range(lo, hi + 1):
                block_out[p, s - p] += amp * w[p] * sq[p] * sq[s - p]
    out = out.reshape(work.shape)
    return FockVector(cutoff=D, amps=np.moveaxis(out, (-2, -1), (i, j)))


def pnr_project(state: FockVector, mode: int,
                count: int) -> tuple[FockVector, float]:
    """Project one mode onto |count>; returns the normalized remainder
    and the outcome probability."""
    if state.n_modes < 2:
        raise ValueError("cannot project out the only mode")
    if not 0 <= mode < state.n_modes:
        raise ValueError("mode out of range")
    if not 0 <= count < state.cutoff:
        raise ValueError("count out of range for this cutoff")
    sub = np.take(state.amps, count, axis=mode)
    prob = float(np.vdot(sub, sub).real)
    amps = sub / np.sqrt(prob) if prob > 0.0 else np.zeros_like(sub)
    return FockVector(cutoff=state.cutoff, amps=amps), prob


def subtract_via_ancilla(state: FockVector, mode: int, count: int,
                         tau: float) -> tuple[FockVector, float]:
    """Tap `mode` through a tau beamsplitter into a fresh vacuum ancilla
    and detect `count` photons there."""
    widened = attach_vacuum(state)
    mixed = beamsplitter_fock(widened, tau, (mode, widened.n_modes - 1))
    return pnr_project(mixed, mixed.n_modes - 1, count)


def fock_overlap(bra: FockVector, ket: FockVector) -> complex:
    """<bra|ket> on matching shapes."""
    if bra.amps.shape != ket.amps.shape:
        raise ValueError("shapes must match")
    return complex(np.vdot(bra.amps, ket.amps))


def fock_mean_photon(state: FockVector, mode: int) -> float:
    """Mean photon number of one mode."""
    if not 0 <= mode < state.n_modes:
        raise ValueError("mode out of range")
    probs = np.abs(state.amps) ** 2
    axes = tuple(a for a in range(state.n_modes) if a != mode)
    marg = probs.sum(axis=axes) if axes else probs
    return float(np.arange(state.cutoff) @ marg)


def lossy_fock_probabilities(state: FockVector, tau: float,
                             count_max: int) -> np.ndarray:
    """Photon-count distribution of a single-mode state after a pure-loss
    channel of transmittance tau (beamsplitter to a traced-out vacuum)."""
    if state.n_modes != 1:
        raise ValueError("single-mode states only")
    if not 0 <= count_max < state.cutoff:
        raise ValueError("count_max out of range for this cutoff")
    widened = attach_vacuum(state)
    mixed = beamsplitter_fock(widened, tau, (0, 1))
    joint = np.abs(mixed.amps) ** 2
    return joint.sum(axis=1)[: count_max + 1]
