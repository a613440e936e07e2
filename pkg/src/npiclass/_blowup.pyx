# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled blow-up simulation; same contract as ``_blowup_py.simulate``.

Multiplicities must fit in a signed 64-bit integer.
"""

from libc.stdlib cimport malloc, free

cdef enum:
    MAXDEG = 8


def simulate(mults):
    cdef Py_ssize_t n = len(mults)
    cdef long long *cap = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef long long *mv = <long long *> malloc(max(n, 1) * sizeof(long long))
    cdef int *adj = <int *> malloc(max(n, 1) * MAXDEG * sizeof(int))
    cdef int *deg = <int *> malloc(max(n, 1) * sizeof(int))
    cdef Py_ssize_t i, j, pred, best, k
    cdef long long m
    cdef int ties = 0
    if cap == NULL or mv == NULL or adj == NULL or deg == NULL:
        free(cap); free(mv); free(adj); free(deg)
        raise MemoryError()
    partners = [-1] * n
    try:
        for i in range(n):
            mv[i] = mults[i]
            cap[i] = mv[i]
            deg[i] = 0
        for i in range(1, n):
            m = mv[i]
            pred = i - 1
            cap[pred] -= m
            best = -1
            for j in range(deg[pred]):
                k = adj[pred * MAXDEG + j]
                if cap[k] >= m:
                    if best >= 0:
                        ties += 1
                    if k > best:
                        best = k
            if best >= 0:
                cap[best] -= m
                partners[i] = best
                _replace(adj, deg, pred, best, i)
                _replace(adj, deg, best, pred, i)
                _push(adj, deg, i, pred)
                _push(adj, deg, i, best)
            else:
                _push(adj, deg, pred, i)
                _push(adj, deg, i, pred)
        edges = []
        for i in range(n):
            for j in range(deg[i]):
                k = adj[i * MAXDEG + j]
                if i < k:
                    edges.append((i, k))
        edges.sort()
        return partners, edges, ties
    finally:
        free(cap); free(mv); free(adj); free(deg)


cdef inline void _replace(int *adj, int *deg, Py_ssize_t a, Py_ssize_t old, Py_ssize_t new):
    cdef int j
    for j in range(deg[a]):
        if adj[a * MAXDEG + j] == old:
            adj[a * MAXDEG + j] = <int> new
            return


cdef inline int _push(int *adj, int *deg, Py_ssize_t a, Py_ssize_t b) except -1:
    if deg[a] >= MAXDEG:
        raise ValueError(f"vertex {a} exceeds degree {MAXDEG}")
    adj[a * MAXDEG + deg[a]] = <int> b
    deg[a] += 1
    return 0
