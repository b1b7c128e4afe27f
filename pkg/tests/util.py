"""Shared helpers: random state factories and brute-force oracles."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from kfun.gaussian import GaussianPureState


def haar_unitary(n: int, rng) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def symplectic_from_unitary(U: np.ndarray) -> np.ndarray:
    X, Y = U.real, U.imag
    return np.block([[X, -Y], [Y, X]])


def random_pure_state(n: int, rng, max_squeeze: float = 1.0,
                      displaced: bool = False) -> GaussianPureState:
    """Random pure Gaussian state via squeeze sandwiched by passives."""
    d = rng.uniform(-max_squeeze, max_squeeze, size=n)
    S = symplectic_from_unitary(haar_unitary(n, rng)) \
        @ np.diag(np.concatenate([np.exp(d), np.exp(-d)])) \
        @ symplectic_from_unitary(haar_unitary(n, rng))
    disp = rng.normal(scale=0.5, size=2 * n) if displaced else None
    return GaussianPureState(n_modes=n, V=0.5 * S @ S.T, disp=disp)


def random_self_inverse(n: int, rng) -> np.ndarray:
    """Random symmetric matrix with G @ G = I (signature flips in a
    random orthogonal frame)."""
    q, _ = np.linalg.qr(rng.normal(size=(n, n)))
    signs = np.where(rng.uniform(size=n) < 0.5, -1.0, 1.0)
    return (q * signs) @ q.T


def random_symmetric_complex(n: int, rng) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return z + z.T


def pairings(idx: tuple):
    """All perfect matchings of the index tuple."""
    if not idx:
        yield ()
        return
    first, rest = idx[0], idx[1:]
    for pos in range(len(rest)):
        partner = rest[pos]
        remaining = rest[:pos] + rest[pos + 1:]
        for tail in pairings(remaining):
            yield ((first, partner),) + tail


def hafnian_enum(F: np.ndarray) -> complex:
    """Sum over perfect matchings, brute force."""
    n = F.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n % 2:
        return 0.0 + 0.0j
    total = 0.0j
    for match in pairings(tuple(range(n))):
        term = 1.0 + 0.0j
        for i, j in match:
            term *= F[i, j]
        total += term
    return total


def loop_hafnian_enum(F: np.ndarray, mu: np.ndarray) -> complex:
    """Sum over partial matchings: singletons weighted by mu, pairs by F."""
    n = F.shape[0]
    total = 0.0j
    for k in range(0, n + 1, 2):
        for singles in combinations(range(n), n - k):
            single_set = set(singles)
            rest = tuple(i for i in range(n) if i not in single_set)
            weight = 1.0 + 0.0j
            for i in singles:
                weight *= mu[i]
            total += weight * hafnian_enum(F[np.ix_(rest, rest)])
    return total
