"""Photon subtraction: norms, overlaps, fidelities, closed-form anchors."""

from math import exp, factorial, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kfun.errors import NormalizeFirstError
from kfun.fock import (coherent_fock, fock_overlap, squeezed_vacuum_fock,
                       subtract_via_ancilla)
from kfun.gaussian import (GaussianPureState, build_k_kernel, label_to_xvec,
                           product_state, squeezed_vacuum_state, tmsv_state,
                           vacuum_state)
from kfun.kstate import (CoherentSuperposition, apply_interferometer,
                         cat_bell, coherent_inner, coherent_overlap, fidelity,
                         normalize, subtract, subtract_coherent,
                         success_probability, superposition_norm)

from .util import random_pure_state

RNG = np.random.default_rng(17)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def test_subtract_coherent_example():
    coeff, label = subtract_coherent(1.0, 1, 0.75)
    assert abs(coeff - (-0.4412484512922977)) < 1e-15
    assert abs(label - sqrt(0.75)) < 1e-15


def test_subtract_coherent_validation():
    with pytest.raises(ValueError):
        subtract_coherent(1.0, -1, 0.5)
    with pytest.raises(ValueError):
        subtract_coherent(1.0, 1, 0.0)


@settings(max_examples=25, deadline=None)
@given(st.floats(min_value=-2.0, max_value=2.0),
       st.floats(min_value=-2.0, max_value=2.0))
def test_cat_bell_is_normalized(q, p):
    assert abs(superposition_norm(cat_bell(q, p)) - 1.0) < 1e-12


def test_normalize_superposition():
    raw = CoherentSuperposition(terms=((1.0, [0.4]), (1.0, [-0.4])))
    assert not raw.normalized
    unit = normalize(raw)
    assert unit.normalized
    assert abs(superposition_norm(unit) - 1.0) < 1e-12


def test_coherent_inner_matches_fock():
    g1, g2 = 0.5 + 0.2j, -0.3 + 0.8j
    want = fock_overlap(coherent_fock([g1], 50), coherent_fock([g2], 50))
    assert abs(coherent_inner([g1], [g2]) - want) < 1e-12


def test_vacuum_noop_subtraction():
    state = subtract(vacuum_state(1), (0,), (1.0,))
    assert abs(success_probability(state) - 1.0) < 1e-12
    g = 0.4 - 0.2j
    got = coherent_overlap(state, [g])
    assert abs(got - exp(-abs(g) ** 2 / 2.0)) < 1e-12


def test_overlap_requires_norm():
    state = subtract(vacuum_state(1), (0,), (1.0,))
    with pytest.raises(NormalizeFirstError):
        coherent_overlap(state, [0.1])


def test_norm_is_cached_and_survives_rotation():
    state = subtract(tmsv_state(0.5), (1, 1), (0.3, 0.3))
    p = success_probability(state)
    assert state.norm_p == p
    rotated = apply_interferometer(state, HADAMARD)
    assert rotated.norm_p == p


def test_tau_range_enforced():
    with pytest.raises(ValueError):
        subtract(vacuum_state(1), (1,), (0.0,))
    with pytest.raises(ValueError):
        subtract(vacuum_state(1), (1,), (1.2,))


def test_displaced_coherent_subtraction_closed_form():
    beta, m, tau = 0.9 - 0.4j, 2, 0.6
    state = GaussianPureState(n_modes=1, V=np.eye(2) / 2.0,
                              disp=label_to_xvec([beta]))
    st_sub = subtract(state, (m,), (tau,))
    p = success_probability(st_sub)
    lam = (1.0 - tau) * abs(beta) ** 2
    assert abs(p - exp(-lam) * lam ** m / factorial(m)) < 1e-13
    coeff, label = subtract_coherent(beta, m, tau)
    phase = coeff / abs(coeff)
    for g in (0.3 + 0.1j, -0.5j, 1.0):
        got = coherent_overlap(st_sub, [g])
        want = phase * coherent_inner([g], [label])
        assert abs(got - want) < 1e-12


def test_joint_subtraction_frozen_point():
    state = subtract(tmsv_state(0.9), (1, 1), (0.4, 0.4))
    assert abs(success_probability(state) - 0.125838643164153) < 1e-12
    assert abs(fidelity(state, cat_bell(1.0)) - 0.806242729249073) < 1e-11
    assert abs(fidelity(state, cat_bell(0.1)) - 0.718781882979163) < 1e-11


def test_split_scheme_frozen_point():
    base = product_state(squeezed_vacuum_state(0.9), vacuum_state(1))
    state = subtract(base, (2, 0), (0.4, 1.0))
    state = apply_interferometer(state, HADAMARD)
    assert abs(success_probability(state) - 0.0929423290039915) < 1e-12
    assert abs(fidelity(state, cat_bell(1.0))
               - 0.99049315008528194388) < 1e-11


def test_five_photon_frozen_point():
    state = subtract(tmsv_state(1.0), (5, 5), (0.01, 0.01))
    assert abs(success_probability(state)
               - 0.024987181837313947497) < 1e-12
    assert abs(fidelity(state, cat_bell(0.5))
               - 0.97862490523328188477) < 1e-11


def test_subtraction_symmetric_under_mode_swap():
    a = subtract(tmsv_state(0.7), (2, 0), (0.5, 1.0))
    b = subtract(tmsv_state(0.7), (0, 2), (1.0, 0.5))
    assert abs(success_probability(a) - success_probability(b)) < 1e-13


def test_engine_matches_fock_oracle():
    r, tau, m = 0.6, 0.5, 2
    state = subtract(squeezed_vacuum_state(r), (m,), (tau,))
    p_engine = success_probability(state)
    post, p_fock = subtract_via_ancilla(squeezed_vacuum_fock(-r), 0, m, tau)
    assert abs(p_engine - p_fock) / p_fock < 1e-10
    for g in (0.2, 0.4 + 0.3j):
        got = coherent_overlap(state, [g])
        want = fock_overlap(coherent_fock([g]), post)
        assert abs(got - want) < 1e-9


@settings(max_examples=15, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 30))
def test_success_probability_is_a_probability(seed):
    rng = np.random.default_rng(seed)
    state = random_pure_state(2, rng, max_squeeze=0.8)
    sub = subtract(state, (1, 0), (0.5, 1.0))
    p = success_probability(sub)
    assert 0.0 <= p <= 1.0 + 1e-9


def test_coefficient_formula():
    state = subtract(tmsv_state(0.5), (2, 1), (0.36, 0.75))
    want = ((-0.8) ** 2 / sqrt(2.0 ** 2 * 2.0)) * (-0.5 / sqrt(2.0))
    assert abs(state.coefficient - want) < 1e-14


def test_fidelity_requires_normalized_target():
    state = subtract(tmsv_state(0.5), (1, 1), (0.3, 0.3))
    success_probability(state)
    raw = CoherentSuperposition(terms=((1.0, [0.1, 0.1]),))
    with pytest.raises(ValueError, match="normalized"):
        fidelity(state, raw)
