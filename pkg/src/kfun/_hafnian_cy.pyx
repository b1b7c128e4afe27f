# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled matching-polynomial kernels.

Same contract as ``kfun._hafnian_py``: sum weighted partial matchings of an
index set, pairs weighed by ``F[i, j]`` and singletons by ``mu[i]``.  The
memoized variant recurses top-down and caches results in a dense ``2**n``
table, so only subsets the recursion actually reaches are ever computed;
the table size still limits it to moderate ``n`` and the caller enforces
that cap.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

BACKEND_NAME = "compiled"


cdef double complex _memo_rec(double complex* fp, double complex* mp,
                              bint has_mu, Py_ssize_t n,
                              unsigned long long subset,
                              double complex* tab,
                              unsigned char* seen) noexcept nogil:
    if subset == 0:
        return 1.0
    if seen[subset]:
        return tab[subset]
    cdef int i = __builtin_popcountll((subset & (~subset + 1)) - 1)
    cdef unsigned long long rest = subset & (subset - 1)
    cdef unsigned long long r, jbit
    cdef int j
    cdef double complex acc = 0.0
    cdef double complex w
    if has_mu:
        w = mp[i]
        if w != 0.0:
            acc = w * _memo_rec(fp, mp, has_mu, n, rest, tab, seen)
    r = rest
    while r:
        jbit = r & (~r + 1)
        j = __builtin_popcountll(jbit - 1)
        w = fp[i * n + j]
        if w != 0.0:
            acc = acc + w * _memo_rec(fp, mp, has_mu, n, rest & ~jbit,
                                      tab, seen)
        r &= r - 1
    seen[subset] = 1
    tab[subset] = acc
    return acc


def loop_hafnian_memoized(F, mu):
    """Partial-matching sum, memoized over the subsets the recursion visits."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode='c'] Fa = \
        np.ascontiguousarray(F, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode='c'] mua = \
        np.ascontiguousarray(mu, dtype=np.complex128)
    cdef Py_ssize_t n = Fa.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    if n > 28:
        raise ValueError("subset table would exceed memory; size cap is 28")
    cdef bint has_mu = bool(np.any(mua))
    cdef unsigned long long size = (<unsigned long long>1) << n
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode='c'] table = \
        np.zeros(size, dtype=np.complex128)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1, mode='c'] visited = \
        np.zeros(size, dtype=np.uint8)
    cdef double complex out
    with nogil:
        out = _memo_rec(<double complex*>Fa.data,
                        <double complex*>mua.data, has_mu, n, size - 1,
                        <double complex*>table.data,
                        <unsigned char*>visited.data)
    return complex(out)


cdef double complex _rec(double complex* fp, double complex* mp,
                         bint has_mu, Py_ssize_t n,
                         unsigned long long subset) noexcept nogil:
    if subset == 0:
        return 1.0
    cdef int i = __builtin_popcountll((subset & (~subset + 1)) - 1)
    cdef unsigned long long rest = subset & (subset - 1)
    cdef unsigned long long r, jbit
    cdef int j
    cdef double complex acc = 0.0
    cdef double complex w
    if has_mu:
        w = mp[i]
        if w != 0.0:
            acc = w * _rec(fp, mp, has_mu, n, rest)
    r = rest
    while r:
        jbit = r & (~r + 1)
        j = __builtin_popcountll(jbit - 1)
        w = fp[i * n + j]
        if w != 0.0:
            acc = acc + w * _rec(fp, mp, has_mu, n, rest & ~jbit)
        r &= r - 1
    return acc


def loop_hafnian_recursive(F, mu):
    """Plain recursion without memoization; exponential, for oversized inputs."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2, mode='c'] Fa = \
        np.ascontiguousarray(F, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=1, mode='c'] mua = \
        np.ascontiguousarray(mu, dtype=np.complex128)
    cdef Py_ssize_t n = Fa.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    cdef bint has_mu = bool(np.any(mua))
    cdef double complex out
    with nogil:
        out = _rec(<double complex*>Fa.data, <double complex*>mua.data,
                   has_mu, n, ((<unsigned long long>1) << n) - 1)
    return complex(out)
