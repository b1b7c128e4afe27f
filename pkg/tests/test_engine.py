"""Integral engine: closed forms, quadrature oracles, matching kernels."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate as sci

from kfun.engine import (ComplexGaussianIntegrand, build_moment_matrix,
                         gaussian_integral, gaussian_moment, hafnian,
                         integrate)
from kfun.errors import (DegreeCapError, KernelNotConvergentError,
                         OddDimensionError)

from .util import (hafnian_enum, loop_hafnian_enum, random_symmetric_complex)

RNG = np.random.default_rng(20260815)


def test_gaussian_integral_identity():
    assert abs(gaussian_integral(np.eye(2), np.zeros(2))
               - 2.0 * np.pi) < 1e-14


def test_gaussian_integral_with_linear_term():
    got = gaussian_integral(np.array([[2.0]]), np.array([1.0]))
    assert abs(got - np.sqrt(np.pi) * np.exp(0.25)) < 1e-14


def test_gaussian_integral_complex_matrix():
    M = np.array([[1.0, 0.5j], [0.5j, 1.0]])
    assert abs(gaussian_integral(M, np.zeros(2))
               - 2.0 * np.pi / np.sqrt(1.25)) < 1e-13


def test_gaussian_integral_against_quadrature_1d():
    M = np.array([[1.3 + 0.4j]])
    b = np.array([0.2 - 0.7j])

    def f(x):
        return np.exp(-0.5 * M[0, 0] * x * x + b[0] * x)

    want = sci.quad(lambda x: f(x).real, -15, 15, epsabs=1e-13)[0] \
        + 1j * sci.quad(lambda x: f(x).imag, -15, 15, epsabs=1e-13)[0]
    got = gaussian_integral(M, b)
    assert abs(got - want) < 1e-10


def test_integrate_against_quadrature_2d():
    M = np.array([[1.4, 0.3 - 0.2j], [0.3 - 0.2j, 1.1 + 0.3j]])
    b = np.array([0.1j, -0.2])
    forms = (([1.0, 0.5j], 2), ([0.0, 1.0], 1))
    integrand = ComplexGaussianIntegrand(dim=2, M=M, b=b, prefactor=1.3,
                                         monomials=forms)

    def f(x, y):
        v = np.array([x, y])
        val = 1.3 * np.exp(-0.5 * (v @ M @ v) + b @ v)
        val *= (x + 0.5j * y) ** 2 * y
        return val

    want_re = sci.dblquad(lambda y, x: f(x, y).real, -10, 10,
                          -10, 10, epsabs=1e-11)[0]
    want_im = sci.dblquad(lambda y, x: f(x, y).imag, -10, 10,
                          -10, 10, epsabs=1e-11)[0]
    got = integrate(integrand)
    assert abs(got - (want_re + 1j * want_im)) < 1e-8


def test_gaussian_moment_against_sympy_derivatives():
    import sympy as sp

    M = np.array([[1.5, 0.2 + 0.1j], [0.2 + 0.1j, 1.2 - 0.2j]])
    b = np.array([0.3, -0.1 + 0.2j])
    forms = (([1.0, -0.5j], 3), ([0.2, 1.0], 2))
    L = np.array([f for f, _ in forms], dtype=complex)
    powers = [p for _, p in forms]
    C = L @ np.linalg.solve(M, L.T)
    m = L @ np.linalg.solve(M, b)
    ts = sp.symbols("t0 t1")
    expr = sp.exp(sp.Rational(1, 2) * sum(
        sp.nsimplify(C[i, j], rational=False) * ts[i] * ts[j]
        for i in range(2) for j in range(2))
        + sum(sp.nsimplify(m[i], rational=False) * ts[i] for i in range(2)))
    for t, p in zip(ts, powers):
        expr = sp.diff(expr, t, p)
    want = complex(expr.subs({t: 0 for t in ts}))
    got = gaussian_moment(M, b, forms)
    assert abs(got - want) < 1e-10 * max(1.0, abs(want))


def test_hafnian_examples():
    assert abs(hafnian(np.array([[0.0, 3.0], [3.0, 0.0]])) - 3.0) < 1e-15
    K4 = np.ones((4, 4)) - np.eye(4)
    assert abs(hafnian(K4) - 3.0) < 1e-14


def test_hafnian_empty_and_odd():
    assert hafnian(np.zeros((0, 0))) == 1.0
    with pytest.raises(OddDimensionError):
        hafnian(np.zeros((3, 3)))


def test_hafnian_matches_enumeration():
    for n in (2, 4, 6):
        F = random_symmetric_complex(n, RNG)
        want = hafnian_enum(F)
        assert abs(hafnian(F) - want) < 1e-12 * max(1.0, abs(want))


def test_loop_hafnian_matches_enumeration():
    for n in (2, 3, 4, 5, 6):
        M = 0.1 * random_symmetric_complex(n, RNG) + 2.0 * np.eye(n)
        b = RNG.normal(size=n) + 1j * RNG.normal(size=n)
        forms = tuple((row, 1) for row in np.eye(n))
        got = gaussian_moment(M, b, forms)
        cov = np.linalg.inv(M)
        want = loop_hafnian_enum(cov, cov @ b)
        assert abs(got - want) < 1e-11 * max(1.0, abs(want))


def test_hafnian_diagonal_is_ignored():
    F = random_symmetric_complex(6, RNG)
    G = F.copy()
    np.fill_diagonal(G, RNG.normal(size=6))
    assert abs(hafnian(F) - hafnian(G)) < 1e-12


def test_hafnian_block_multiplicativity():
    F1 = random_symmetric_complex(4, RNG)
    F2 = random_symmetric_complex(4, RNG)
    big = np.zeros((8, 8), dtype=complex)
    big[:4, :4] = F1
    big[4:, 4:] = F2
    want = hafnian(F1) * hafnian(F2)
    assert abs(hafnian(big) - want) < 1e-11 * max(1.0, abs(want))


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 30))
def test_hafnian_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    F = random_symmetric_complex(6, rng)
    perm = rng.permutation(6)
    want = hafnian(F)
    got = hafnian(F[np.ix_(perm, perm)])
    assert abs(got - want) < 1e-11 * max(1.0, abs(want))


def test_backend_parity():
    try:
        from kfun import _hafnian_cy as cy
    except ImportError:
        pytest.skip("compiled backend unavailable")
    from kfun import _hafnian_py as py

    for n in (2, 6, 11, 14):
        F = random_symmetric_complex(n, RNG)
        mu = RNG.normal(size=n) + 1j * RNG.normal(size=n)
        a = cy.loop_hafnian_memoized(F, mu)
        b = py.loop_hafnian_memoized(F, mu)
        assert abs(a - b) <= 1e-12 * max(1.0, abs(b))
        c = cy.loop_hafnian_recursive(F, mu)
        d = py.loop_hafnian_recursive(F, mu)
        assert abs(c - b) <= 1e-10 * max(1.0, abs(b))
        assert abs(d - b) <= 1e-10 * max(1.0, abs(b))


def test_degree_warning_above_memo_cap():
    with pytest.warns(RuntimeWarning):
        assert hafnian(np.zeros((26, 26))) == 0.0


def test_degree_cap_error():
    with pytest.raises(DegreeCapError):
        hafnian(np.zeros((34, 34)))
    with pytest.raises(DegreeCapError):
        ComplexGaussianIntegrand(dim=2, M=np.eye(2), b=np.zeros(2),
                                 prefactor=1.0,
                                 monomials=(([1.0, 0.0], 33),))


def test_not_convergent_rejected():
    with pytest.raises(KernelNotConvergentError):
        gaussian_integral(np.array([[-1.0]]), np.zeros(1))
    with pytest.raises(KernelNotConvergentError):
        gaussian_integral(np.diag([1.0, -0.5]).astype(complex), np.zeros(2))


def test_asymmetric_matrix_rejected():
    with pytest.raises(ValueError):
        gaussian_integral(np.array([[1.0, 0.2], [0.0, 1.0]]), np.zeros(2))


def test_moment_zero_mean_odd_degree_is_exact_zero():
    got = gaussian_moment(np.eye(2), np.zeros(2), (([1.0, 2.0], 3),))
    assert got == 0.0


def test_moment_examples():
    got = gaussian_moment(np.eye(2), np.zeros(2), (([1.0, 1.0j], 2),))
    assert abs(got) < 1e-15
    got = gaussian_moment(np.eye(1), np.ones(1), (([1.0], 2),))
    assert abs(got - 2.0) < 1e-14


def test_moment_matrix_raw_second_moments():
    M = np.array([[2.0, 0.3], [0.3, 1.5]])
    b = np.array([0.4, -0.2])
    forms = (([1.0, 0.0], 1), ([0.5, 1.0], 1))
    mm = build_moment_matrix(M, b, forms)
    L = np.array([f for f, _ in forms])
    cov = L @ np.linalg.solve(M, L.T)
    mean = L @ np.linalg.solve(M, b)
    want = cov + np.outer(mean, mean)
    assert np.allclose(mm.F, want, atol=1e-13)
    assert np.allclose(mm.mu, mean, atol=1e-13)


def test_integrand_linearity_in_prefactor():
    M = np.eye(2)
    one = ComplexGaussianIntegrand(dim=2, M=M, b=np.zeros(2), prefactor=1.0)
    three = ComplexGaussianIntegrand(dim=2, M=M, b=np.zeros(2),
                                     prefactor=3.0 - 1.0j)
    assert abs(integrate(three) - (3.0 - 1.0j) * integrate(one)) < 1e-12
