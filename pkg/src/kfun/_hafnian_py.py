"""Pure-Python matching-polynomial kernels.

Fallback used when the compiled extension is unavailable.  Both entry
points sum weighted partial matchings of an index set: ``F[i, j]`` weighs
the pair ``{i, j}`` and ``mu[i]`` weighs a singleton ``i``.  With ``mu``
identically zero only perfect matchings contribute and the result is the
Hafnian of ``F``.  Size caps and warnings are enforced by the caller
(:mod:`kfun.engine`), not here.
"""

import numpy as np

BACKEND_NAME = "python"


def _rows(F, mu):
    """Convert to plain lists; Python scalar indexing beats ndarray access."""
    return [list(map(complex, row)) for row in F], list(map(complex, mu))


def loop_hafnian_memoized(F, mu):
    """Partial-matching sum with subset memoization (dict keyed on bitmask)."""
    n = F.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    Fl, mul = _rows(F, mu)
    has_mu = any(m != 0 for m in mul)
    memo = {0: 1.0 + 0.0j}

    def rec(subset):
        val = memo.get(subset)
        if val is not None:
            return val
        i = (subset & -subset).bit_length() - 1
        rest = subset & (subset - 1)
        total = 0.0 + 0.0j
        if has_mu and mul[i] != 0:
            total += mul[i] * rec(rest)
        row = Fl[i]
        r = rest
        while r:
            j = (r & -r).bit_length() - 1
            w = row[j]
            if w != 0:
                total += w * rec(rest & ~(1 << j))
            r &= r - 1
        memo[subset] = total
        return total

    return rec((1 << n) - 1)


def loop_hafnian_recursive(F, mu):
    """Plain recursion without memoization; exponential, for oversized inputs."""
    n = F.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    Fl, mul = _rows(F, mu)
    has_mu = any(m != 0 for m in mul)

    def rec(subset):
        if subset == 0:
            return 1.0 + 0.0j
        i = (subset & -subset).bit_length() - 1
        rest = subset & (subset - 1)
        total = 0.0 + 0.0j
        if has_mu and mul[i] != 0:
            total += mul[i] * rec(rest)
        row = Fl[i]
        r = rest
        while r:
            j = (r & -r).bit_length() - 1
            w = row[j]
            if w != 0:
                total += w * rec(rest & ~(1 << j))
            r &= r - 1
        return total

    return rec((1 << n) - 1)
