# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled lattice scan over the integer-composition grid of the simplex.

Point ``n / k`` of the grid scores as one of

* POWER:  ``logsumexp_i(a_i + c * log u_i) / c``
* LINEAR: ``sum_i a_i * log u_i``
* MIN:    ``min_i (log u_i + a_i)``

with the sums restricted to ``active`` coordinates. Points are visited in
lexicographic order of the composition and the first strict maximum wins.
"""

from libc.math cimport exp, log, INFINITY
from libc.stdlib cimport free, malloc

cdef enum:
    POWER = 0
    LINEAR = 1
    MIN = 2


cdef inline double _score(int mode, double c, const double* a,
                          const unsigned char* act, const double* u,
                          int d) noexcept nogil:
    cdef int i
    cdef double m, s, t
    if mode == LINEAR:
        s = 0.0
        for i in range(d):
            if act[i]:
                s += a[i] * u[i]
        return s
    if mode == MIN:
        m = INFINITY
        for i in range(d):
            if act[i]:
                t = u[i] + a[i]
                if t < m:
                    m = t
        return m
    m = -INFINITY
    for i in range(d):
        if act[i]:
            t = a[i] + c * u[i]
            if t > m:
                m = t
    if m == INFINITY or m == -INFINITY:
        return m / c
    s = 0.0
    for i in range(d):
        if act[i]:
            s += exp(a[i] + c * u[i] - m)
    return (m + log(s)) / c


def lattice_argmax(int k, int d, int mode, double c, double[::1] a,
                   unsigned char[::1] active):
    """Return ``(composition, best_score, n_points)``."""
    if d < 1 or k < 1:
        raise ValueError("need d >= 1 and k >= 1")
    if a.shape[0] != d or active.shape[0] != d:
        raise ValueError("coefficient arrays must have length d")
    cdef int* comp = <int*> malloc(d * sizeof(int))
    cdef int* best = <int*> malloc(d * sizeof(int))
    cdef double* u = <double*> malloc(d * sizeof(double))
    cdef double* logtab = <double*> malloc((k + 1) * sizeof(double))
    if comp == NULL or best == NULL or u == NULL or logtab == NULL:
        free(comp); free(best); free(u); free(logtab)
        raise MemoryError()
    cdef int i, j, partial = 0
    cdef long n = 0
    cdef double s, best_score = -INFINITY
    cdef bint found = False
    try:
        logtab[0] = -INFINITY
        for j in range(1, k + 1):
            logtab[j] = log(<double> j) - log(<double> k)
        for i in range(d):
            comp[i] = 0
            best[i] = 0
        comp[d - 1] = k
        with nogil:
            while True:
                for i in range(d):
                    u[i] = logtab[comp[i]]
                s = _score(mode, c, &a[0], &active[0], u, d)
                n += 1
                if s > best_score or not found and s == s:
                    best_score = s
                    found = True
                    for i in range(d):
                        best[i] = comp[i]
                i = d - 2
                while i >= 0:
                    if partial < k:
                        comp[i] += 1
                        partial += 1
                        comp[d - 1] = k - partial
                        break
                    partial -= comp[i]
                    comp[i] = 0
                    i -= 1
                if i < 0:
                    break
        return tuple(best[i] for i in range(d)), best_score, n
    finally:
        free(comp)
        free(best)
        free(u)
        free(logtab)
