"""Benchmark the compiled matching-sum kernel against the pure-Python one.

Times ``loop_hafnian_memoized`` from both backends on random complex
symmetric matrices.  Run from the repository root::

    python3 benchmarks/hafnian_bench.py
"""

import time

import numpy as np

from kfun import _hafnian_py

try:
    from kfun import _hafnian_cy
except ImportError:
    _hafnian_cy = None


def random_case(n: int, rng: np.random.Generator):
    A = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    F = (A + A.T) / 2.0
    mu = rng.normal(size=n) + 1j * rng.normal(size=n)
    return F, mu


def time_backend(fn, cases, repeats: int = 3) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for F, mu in cases:
            fn(F, mu)
        best = min(best, (time.perf_counter() - start) / len(cases))
    return best


def main() -> None:
    rng = np.random.default_rng(7)
    print(f"{'n':>4} {'pure (ms)':>12} {'compiled (ms)':>14} {'speedup':>9}")
    for n in (12, 14, 16, 18, 20, 22):
        cases = [random_case(n, rng) for _ in range(3 if n < 18 else 1)]
        py = time_backend(_hafnian_py.loop_hafnian_memoized, cases)
        if _hafnian_cy is None:
            print(f"{n:>4} {py * 1e3:>12.3f} {'n/a':>14} {'n/a':>9}")
            continue
        cy = time_backend(_hafnian_cy.loop_hafnian_memoized, cases)
        check = abs(_hafnian_cy.loop_hafnian_memoized(*cases[0])
                    - _hafnian_py.loop_hafnian_memoized(*cases[0]))
        scale = abs(_hafnian_py.loop_hafnian_memoized(*cases[0]))
        assert check <= 1e-9 * max(1.0, scale), "backend mismatch"
        print(f"{n:>4} {py * 1e3:>12.3f} {cy * 1e3:>14.3f} {py / cy:>8.1f}x")


if __name__ == "__main__":
    main()
