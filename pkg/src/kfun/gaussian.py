"""Gaussian pure states and their coherent-label kernels.

A pure state is described by a real symmetric covariance matrix ``V`` in
qqpp ordering (all positions before all momenta, hbar = 1, vacuum = I/2)
plus a real displacement vector.  Its coherent-label amplitude is a
Gaussian in the label coordinates ``x = (sqrt(2) Re a, sqrt(2) Im a)``:

    K(x) = (2 pi)^{-N} det(Gamma)^{-1/4} exp(-0.5 x^T B x),

where ``Gamma = V + I/2`` and the complex symmetric kernel ``B`` is built
from the blocks of ``Gamma^{-1}``.  Displacements enter through a separate
bilinear coupling factor so the quadratic kernel stays displacement-free.

Graph-generated states (two-mode-squeezing Hamiltonian with a symmetric
adjacency matrix) get a direct kernel constructor with a closed form when
the adjacency is its own inverse.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GammaNotInvertibleError

_SYM_ATOL = 1e-12
_PURITY_RTOL = 1e-9
_RCOND_MIN = 1e-14
_UNITARY_ATOL = 1e-10


def _as_real_matrix(M, name: str) -> np.ndarray:
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"{name} must be a square matrix")
    return M


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class GaussianPureState:
    """Pure Gaussian state: covariance matrix plus displacement.

    ``V`` is real symmetric 2N x 2N in qqpp ordering with det(2V) = 1
    (purity); ``disp`` is the real 2N mean vector, zero by default.
    """

    n_modes: int
    V: np.ndarray
    disp: np.ndarray | None = None

    def __post_init__(self):
        n = int(self.n_modes)
        if n < 1:
            raise ValueError("n_modes must be positive")
        V = _as_real_matrix(self.V, "V")
        if V.shape[0] != 2 * n:
            raise ValueError("V must be 2N x 2N")
        if not np.allclose(V, V.T, rtol=0.0, atol=_SYM_ATOL):
            raise ValueError("V must be symmetric")
        det2v = float(np.linalg.det(2.0 * V))
        if abs(det2v - 1.0) > _PURITY_RTOL:
            raise ValueError(
                f"state is not pure: det(2V) = {det2v!r} differs from 1")
        gamma = V + np.eye(2 * n) / 2.0
        if 1.0 / np.linalg.cond(gamma) < _RCOND_MIN:
            raise GammaNotInvertibleError(
                "V + I/2 is numerically singular")
        disp = np.zeros(2 * n) if self.disp is None else \
            np.asarray(self.disp, dtype=float).reshape(-1)
        if disp.shape[0] != 2 * n:
            raise ValueError("disp must have length 2N")
        object.__setattr__(self, "n_modes", n)
        object.__setattr__(self, "V", _readonly(V))
        object.__setattr__(self, "disp", _readonly(disp))

    @property
    def gamma(self) -> np.ndarray:
        """V + I/2."""
        return self.V + np.eye(2 * self.n_modes) / 2.0


@dataclass(frozen=True)
class KKernel:
    """Coherent-label kernel of a pure Gaussian state.

    ``B`` is the complex symmetric 2N x 2N exponent matrix; ``det_gamma``
    the (positive) determinant of V + I/2; ``norm`` the scalar
    ``(2 pi)^{-N} det_gamma^{-1/4}``; ``disp`` the displacement carried
    along for the bilinear coupling factor.
    """

    n_modes: int
    B: np.ndarray
    det_gamma: float
    norm: complex
    disp: np.ndarray

    def __post_init__(self):
        n = int(self.n_modes)
        B = np.asarray(self.B, dtype=complex)
        if B.shape != (2 * n, 2 * n):
            raise ValueError("B must be 2N x 2N")
        if not np.allclose(B, B.T, rtol=0.0, atol=_SYM_ATOL):
            raise ValueError("B must be symmetric")
        if self.det_gamma <= 0.0:
            raise ValueError("det_gamma must be positive")
        w = np.linalg.eigvalsh(B.real + np.eye(2 * n) / 2.0)
        if w[0] <= 0.0:
            raise ValueError("Re(B + I/2) must be positive definite")
        disp = np.asarray(self.disp, dtype=float).reshape(-1)
        if disp.shape[0] != 2 * n:
            raise ValueError("disp must have length 2N")
        object.__setattr__(self, "B", _readonly(B))
        object.__setattr__(self, "det_gamma", float(self.det_gamma))
        object.__setattr__(self, "norm", complex(self.norm))
        object.__setattr__(self, "disp", _readonly(disp))

    @property
    def displaced(self) -> bool:
        return bool(np.any(self.disp))


@dataclass(frozen=True)
class GraphSpec:
    """Symmetric adjacency matrix plus a squeezing strength r >= 0."""

    G: np.ndarray
    r: float

    def __post_init__(self):
        G = _as_real_matrix(self.G, "G")
        if not np.allclose(G, G.T, rtol=0.0, atol=_SYM_ATOL):
            raise ValueError("G must be symmetric")
        if self.r < 0.0:
            raise ValueError("r must be non-negative")
        object.__setattr__(self, "G", _readonly(G))
        object.__setattr__(self, "r", float(self.r))

    @property
    def self_inverse(self) -> bool:
        n = self.G.shape[0]
        return bool(np.allclose(self.G @ self.G, np.eye(n),
                                rtol=0.0, atol=_SYM_ATOL))


def cross_pairing(scales) -> np.ndarray:
    """Bilinear label pairing [[T, iT], [-iT, T]] with T = diag(scales).

    Encodes ``sum_i t_i conj(g_i) a_i = 0.5 x_g^T X x_a`` for label
    coordinate vectors; unit scales give the plain pairing matrix.
    """
    t = np.asarray(scales, dtype=float).reshape(-1)
    T = np.diag(t).astype(complex)
    return np.block([[T, 1j * T], [-1j * T, T]])


def label_to_xvec(labels) -> np.ndarray:
    """Complex label vector -> real coordinate vector (sqrt(2) Re, sqrt(2) Im)."""
    g = np.asarray(labels, dtype=complex).reshape(-1)
    return np.concatenate([np.sqrt(2.0) * g.real, np.sqrt(2.0) * g.imag])


def xvec_to_label(x) -> np.ndarray:
    """Inverse of :func:`label_to_xvec`."""
    x = np.asarray(x, dtype=float).reshape(-1)
    n = x.shape[0] // 2
    return (x[:n] + 1j * x[n:]) / np.sqrt(2.0)


def gamma_inverse_blocks(state: GaussianPureState):
    """N x N blocks (A, B, C) of (V + I/2)^{-1} in qqpp ordering."""
    n = state.n_modes
    gamma = state.gamma
    if 1.0 / np.linalg.cond(gamma) < _RCOND_MIN:
        raise GammaNotInvertibleError("V + I/2 is numerically singular")
    gi = np.linalg.inv(gamma)
    return gi[:n, :n], gi[n:, n:], gi[:n, n:]


def _kernel_from_blocks(a, bb, c) -> np.ndarray:
    return 0.5 * np.block([
        [a + 0.5j * (c + c.T), c - 0.5j * (a - bb)],
        [c.T - 0.5j * (a - bb), bb - 0.5j * (c + c.T)],
    ])


def build_k_kernel(state: GaussianPureState) -> KKernel:
    """Assemble the coherent-label kernel of a pure Gaussian state."""
    n = state.n_modes
    a, bb, c = gamma_inverse_blocks(state)
    B = _kernel_from_blocks(a, bb, c)
    det_gamma = float(np.linalg.det(state.gamma))
    norm = (2.0 * np.pi) ** (-n) * det_gamma ** (-0.25)
    return KKernel(n_modes=n, B=B, det_gamma=det_gamma, norm=norm,
                   disp=state.disp)


def k_eval(kernel: KKernel, x_alpha) -> complex:
    """Kernel value ``norm * exp(-0.5 x^T B x)`` (displacement excluded)."""
    x = np.asarray(x_alpha, dtype=float).reshape(-1)
    if x.shape[0] != 2 * kernel.n_modes:
        raise ValueError("x_alpha must have length 2N")
    return kernel.norm * complex(np.exp(-0.5 * (x @ kernel.B @ x)))


def displacement_factor(kernel: KKernel, x_alpha, x_beta) -> complex:
    """Bilinear coupling between label and displacement coordinates.

    Multiplying :func:`k_eval` at ``x_alpha`` by this factor (with
    ``x_beta`` the displacement) gives the full coherent-label amplitude
    of the displaced state, normalization included.
    """
    n2 = 2 * kernel.n_modes
    xa = np.asarray(x_alpha, dtype=float).reshape(-1)
    xb = np.asarray(x_beta, dtype=float).reshape(-1)
    if xa.shape[0] != n2 or xb.shape[0] != n2:
        raise ValueError("label and displacement vectors must have length 2N")
    B = kernel.B
    X = cross_pairing(np.ones(kernel.n_modes))
    D = np.block([[np.zeros((n2, n2)), 2.0 * B + X],
                  [2.0 * B - X, -2.0 * B]])
    z = np.concatenate([xa, xb]).astype(complex)
    return complex(np.exp(0.25 * (z @ D @ z)))


def displacement_linear_term(kernel: KKernel):
    """Linear term and constant the displacement adds to a ket integrand.

    Returns ``(b, c)`` with ``b = (B + (X - X^T)/4) x_beta`` and
    ``c = exp(-0.5 x_beta^T B x_beta)`` so the displaced amplitude is
    ``c * exp(-0.5 x^T B x + b^T x)`` times the kernel norm.
    """
    n2 = 2 * kernel.n_modes
    if not kernel.displaced:
        return np.zeros(n2, dtype=complex), 1.0 + 0.0j
    X = cross_pairing(np.ones(kernel.n_modes))
    L = kernel.B + 0.25 * (X - X.T)
    xb = kernel.disp.astype(complex)
    b = L @ xb
    const = complex(np.exp(-0.5 * (xb @ kernel.B @ xb)))
    return b, const


def cluster_b_matrix(spec: GraphSpec) -> KKernel:
    """Coherent-label kernel of the graph state with adjacency G.

    Uses the closed form ``0.5 I + 0.5 tanh(r) [[-G, iG], [iG, G]]`` when
    G is its own inverse, otherwise the matrix function tanh(rG) via the
    symmetric eigendecomposition of G.
    """
    G, r = spec.G, spec.r
    n = G.shape[0]
    if spec.self_inverse:
        th = np.tanh(r) * G
        det_gamma = float(np.cosh(r) ** (2 * n))
    else:
        w, Q = np.linalg.eigh(G)
        th = (Q * np.tanh(r * w)) @ Q.T
        det_gamma = float(np.prod(np.cosh(r * w) ** 2))
    eye = np.eye(n)
    B = 0.5 * np.block([[eye - th, 1j * th], [1j * th, eye + th]])
    norm = (2.0 * np.pi) ** (-n) * det_gamma ** (-0.25)
    return KKernel(n_modes=n, B=B, det_gamma=det_gamma, norm=norm,
                   disp=np.zeros(2 * n))


def cluster_covariance(spec: GraphSpec) -> GaussianPureState:
    """Covariance matrix 0.5 diag(e^{2rG}, e^{-2rG}) of the graph state."""
    G, r = spec.G, spec.r
    n = G.shape[0]
    w, Q = np.linalg.eigh(G)
    plus = (Q * np.exp(2.0 * r * w)) @ Q.T
    minus = (Q * np.exp(-2.0 * r * w)) @ Q.T
    V = 0.5 * np.block([[plus, np.zeros((n, n))], [np.zeros((n, n)), minus]])
    return GaussianPureState(n_modes=n, V=V)


def vacuum_state(n_modes: int = 1) -> GaussianPureState:
    """N-mode vacuum, V = I/2."""
    return GaussianPureState(n_modes=n_modes, V=np.eye(2 * n_modes) / 2.0)


def squeezed_vacuum_state(r: float) -> GaussianPureState:
    """Single-mode squeezed vacuum, V = diag(e^{2r}, e^{-2r}) / 2.

    Positive r stretches the position quadrature; negative r is allowed
    and squeezes it instead.
    """
    V = np.diag([np.exp(2.0 * r), np.exp(-2.0 * r)]) / 2.0
    return GaussianPureState(n_modes=1, V=V)


def tmsv_state(r: float) -> GaussianPureState:
    """Two-mode squeezed vacuum (graph adjacency [[0, 1], [1, 0]])."""
    c, s = np.cosh(2.0 * r), np.sinh(2.0 * r)
    G = np.array([[0.0, 1.0], [1.0, 0.0]])
    eye = np.eye(2)
    V = 0.5 * np.block([[c * eye + s * G, np.zeros((2, 2))],
                        [np.zeros((2, 2)), c * eye - s * G]])
    return GaussianPureState(n_modes=2, V=V)


def product_state(*states: GaussianPureState) -> GaussianPureState:
    """Tensor product, interleaving qqpp blocks of the factors."""
    if not states:
        raise ValueError("need at least one state")
    n = sum(s.n_modes for s in states)
    V = np.zeros((2 * n, 2 * n))
    disp = np.zeros(2 * n)
    offset = 0
    for s in states:
        m = s.n_modes
        q = slice(offset, offset + m)
        p = slice(n + offset, n + offset + m)
        V[q, q] = s.V[:m, :m]
        V[p, p] = s.V[m:, m:]
        V[q, p] = s.V[:m, m:]
        V[p, q] = s.V[m:, :m]
        disp[q] = s.disp[:m]
        disp[p] = s.disp[m:]
        offset += m
    return GaussianPureState(n_modes=n, V=V, disp=disp)


def check_unitary(U, n: int | None = None) -> np.ndarray:
    """Validate and return U as a complex unitary matrix."""
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError("U must be square")
    if n is not None and U.shape[0] != n:
        raise ValueError(f"U must be {n} x {n}")
    if not np.allclose(U.conj().T @ U, np.eye(U.shape[0]),
                       rtol=0.0, atol=_UNITARY_ATOL):
        raise ValueError("U must be unitary")
    return U


def passive_transform(state: GaussianPureState, U) -> GaussianPureState:
    """Apply a passive linear-optics unitary (labels map to U labels)."""
    U = check_unitary(U, state.n_modes)
    X, Y = U.real, U.imag
    S = np.block([[X, -Y], [Y, X]])
    return GaussianPureState(n_modes=state.n_modes, V=S @ state.V @ S.T,
                             disp=S @ state.disp)


def state_to_dict(state: GaussianPureState) -> dict:
    """JSON-ready form {"n_modes": N, "V": row-major 2N x 2N, "disp": 2N}."""
    return {"n_modes": state.n_modes, "V": state.V.tolist(),
            "disp": state.disp.tolist()}


def state_from_dict(doc: dict) -> GaussianPureState:
    """Inverse of :func:`state_to_dict`."""
    return GaussianPureState(n_modes=int(doc["n_modes"]),
                             V=np.asarray(doc["V"], dtype=float),
                             disp=np.asarray(doc.get("disp"), dtype=float)
                             if doc.get("disp") is not None else None)


def graph_from_dict(doc: dict) -> GraphSpec:
    """Parse {"G": N x N, "r": float} into a :class:`GraphSpec`."""
    return GraphSpec(G=np.asarray(doc["G"], dtype=float), r=float(doc["r"]))
