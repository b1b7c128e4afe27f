"""Cat-state preparation benchmarks: probabilities and fidelities.

Three subtraction schemes aiming at the even two-mode cat
``(|g, g> + |-g, -g>) / N`` with ``g = (q + ip) / sqrt(2)``:

* ``five_five``: five photons off each arm of a two-mode squeezed vacuum.
* ``split_cat_i``: two photons off one squeezed mode, then a balanced
  beamsplitter against vacuum.
* ``joint_subtract_ii``: one photon off each arm of a two-mode squeezed
  vacuum.

Each scheme has a closed form in ``mu = tau * tanh(r)`` and an engine
path through the full integral machinery; both are exposed so they can
be cross-checked.  Parameter sweeps write CSV rows and fan out over a
thread pool sized by the ``KFUN_THREADS`` environment variable.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from math import cosh, exp, sqrt, tanh

import numpy as np

from .gaussian import (product_state, squeezed_vacuum_state, tmsv_state,
                       vacuum_state)
from .kstate import (apply_interferometer, cat_bell, fidelity, subtract,
                     success_probability)

_HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


class Scenario(str, Enum):
    FIVE_FIVE = "five_five"
    SPLIT_CAT_I = "split_cat_i"
    JOINT_SUBTRACT_II = "joint_subtract_ii"


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    ENGINE = "engine"


@dataclass(frozen=True)
class ScenarioResult:
    scenario: Scenario
    method: Method
    q_gamma: float
    p_gamma: float
    r: float
    tau: float
    p_success: float
    fidelity: float


def _check_params(r: float, tau: float, engine: bool) -> None:
    if r <= 0.0:
        raise ValueError("r must be positive")
    if not 0.0 < tau <= 1.0:
        raise ValueError("tau must lie in (0, 1]")
    if engine and tau == 1.0:
        raise ValueError("the engine path needs tau < 1 "
                         "(zero subtraction probability otherwise)")


def _five_closed(q: float, p: float, r: float, tau: float):
    mu = tau * tanh(r)
    m2 = mu * mu
    poly = 1.0 + 25.0 * m2 + 100.0 * m2 ** 2 + 100.0 * m2 ** 3 \
        + 25.0 * m2 ** 4 + m2 ** 5
    weight = poly / (1.0 - m2) ** 11
    p5 = (1.0 - tau) ** 10 * tanh(r) ** 10 * weight / cosh(r) ** 2
    z = mu * (q - 1j * p) ** 2
    series = 1.0 + 2.5 * z + 1.25 * z ** 2 + (5.0 / 24.0) * z ** 3 \
        + (5.0 / 384.0) * z ** 4 + z ** 5 / 3840.0
    a2 = q * q + p * p
    f5 = 2.0 * exp(-a2) * abs(np.exp(0.5 * z) * series) ** 2 \
        / ((1.0 + exp(-2.0 * a2)) * weight)
    return p5, f5


def _split_closed(q: float, r: float, tau: float):
    mu = tau * tanh(r)
    p1 = tanh(r) ** 2 * (1.0 - tau) ** 2 * (1.0 + 2.0 * mu * mu) \
        / (2.0 * cosh(r) * (1.0 - mu * mu) ** 2.5)
    f1 = 2.0 * exp(-q * q) * exp(mu * q * q) * (1.0 + mu * q * q) ** 2 \
        * (1.0 - mu * mu) ** 2.5 \
        / ((1.0 + exp(-2.0 * q * q)) * (1.0 + 2.0 * mu * mu))
    return p1, f1


def _joint_closed(q: float, r: float, tau: float):
    mu = tau * tanh(r)
    p2 = tanh(r) ** 2 * (1.0 - tau) ** 2 * (1.0 + mu * mu) \
        / (cosh(r) ** 2 * (1.0 - mu * mu) ** 3)
    f2 = 2.0 * exp(-q * q) * exp(mu * q * q) * (1.0 + 0.5 * mu * q * q) ** 2 \
        * (1.0 - mu * mu) ** 3 \
        / ((1.0 + exp(-2.0 * q * q)) * (1.0 + mu * mu))
    return p2, f2


def _five_engine(q: float, p: float, r: float, tau: float):
    state = subtract(tmsv_state(r), (5, 5), (tau, tau))
    prob = success_probability(state)
    return prob, fidelity(state, cat_bell(q, p))


def _split_engine(q: float, r: float, tau: float):
    base = product_state(squeezed_vacuum_state(r), vacuum_state(1))
    state = subtract(base, (2, 0), (tau, 1.0))
    state = apply_interferometer(state, _HADAMARD)
    prob = success_probability(state)
    return prob, fidelity(state, cat_bell(q))


def _joint_engine(q: float, r: float, tau: float):
    state = subtract(tmsv_state(r), (1, 1), (tau, tau))
    prob = success_probability(state)
    return prob, fidelity(state, cat_bell(q))


def five_photon_tmsv(q_gamma: float, p_gamma: float, r: float, tau: float,
                     method: Method = Method.CLOSED_FORM) -> ScenarioResult:
    """Five-photon scheme at one parameter point."""
    method = Method(method)
    _check_params(r, tau, engine=method is Method.ENGINE)
    if method is Method.CLOSED_FORM:
        prob, fid = _five_closed(q_gamma, p_gamma, r, tau)
    else:
        prob, fid = _five_engine(q_gamma, p_gamma, r, tau)
    return ScenarioResult(scenario=Scenario.FIVE_FIVE, method=method,
                          q_gamma=q_gamma, p_gamma=p_gamma, r=r, tau=tau,
                          p_success=prob, fidelity=fid)


def compare_bell_schemes(q_gamma: float, r: float, tau: float,
                         method: Method = Method.CLOSED_FORM):
    """Both two-photon schemes at one parameter point (p_gamma = 0)."""
    method = Method(method)
    _check_params(r, tau, engine=method is Method.ENGINE)
    if method is Method.CLOSED_FORM:
        p1, f1 = _split_closed(q_gamma, r, tau)
        p2, f2 = _joint_closed(q_gamma, r, tau)
    else:
        p1, f1 = _split_engine(q_gamma, r, tau)
        p2, f2 = _joint_engine(q_gamma, r, tau)
    one = ScenarioResult(scenario=Scenario.SPLIT_CAT_I, method=method,
                         q_gamma=q_gamma, p_gamma=0.0, r=r, tau=tau,
                         p_success=p1, fidelity=f1)
    two = ScenarioResult(scenario=Scenario.JOINT_SUBTRACT_II, method=method,
                         q_gamma=q_gamma, p_gamma=0.0, r=r, tau=tau,
                         p_success=p2, fidelity=f2)
    return one, two


def grid(start: float, stop: float, step: float) -> tuple:
    """Inclusive arithmetic grid, robust to float step accumulation."""
    if step <= 0.0:
        raise ValueError("step must be positive")
    count = int(round((stop - start) / step))
    values = [round(start + k * step, 12) for k in range(count + 1)]
    return tuple(v for v in values if v <= stop + 1e-12 * max(1.0, abs(stop)))


def _thread_count() -> int:
    env = os.environ.get("KFUN_THREADS")
    if env:
        return max(1, int(env))
    return min(8, os.cpu_count() or 1)


def sweep(scenarios, q_gamma: float, r_values, tau_values) -> list:
    """Closed-form results over the (r, tau) product grid.

    Rows are ordered scenario by scenario, r outer, tau inner; evaluation
    fans out across r values on a thread pool.
    """
    scenarios = [Scenario(s) for s in scenarios]
    r_values = [float(r) for r in r_values]
    tau_values = [float(t) for t in tau_values]

    def eval_r(r: float) -> list:
        rows = []
        for tau in tau_values:
            for scenario in scenarios:
                if scenario is Scenario.FIVE_FIVE:
                    res = five_photon_tmsv(q_gamma, 0.0, r, tau)
                else:
                    one, two = compare_bell_schemes(q_gamma, r, tau)
                    res = one if scenario is Scenario.SPLIT_CAT_I else two
                rows.append(res)
        return rows

    with ThreadPoolExecutor(max_workers=_thread_count()) as pool:
        per_r = list(pool.map(eval_r, r_values))
    out = []
    for scenario in scenarios:
        for chunk in per_r:
            out.extend(row for row in chunk if row.scenario is scenario)
    return out


CSV_HEADER = "scenario,q_gamma,r,tau,p_success,fidelity"


def write_sweep_csv(rows, stream) -> None:
    """Write sweep rows as CSV with 12-significant-digit numbers."""
    stream.write(CSV_HEADER + "\n")
    for row in rows:
        fields = (row.scenario.value, f"{row.q_gamma:.12g}", f"{row.r:.12g}",
                  f"{row.tau:.12g}", f"{row.p_success:.12g}",
                  f"{row.fidelity:.12g}")
        stream.write(",".join(fields) + "\n")
