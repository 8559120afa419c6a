# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled graph kernels; same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64

cnp.import_array()

from ._pykernels import induced_from_noninduced


def motif_counts(i64[::1] indptr, i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t u, v, w, a, k, p, q, t, c, d
    cdef i64 tri3 = 0, paths = 0, diamonds = 0, k4 = 0, paws = 0
    cdef i64 wedges = 0, stars = 0, cycles2 = 0
    cdef i64[::1] mark = np.full(max(n, 1), -1, dtype=np.int64)
    cdef i64[::1] tri_at = np.zeros(max(n, 1), dtype=np.int64)
    cdef i64[::1] codeg = np.zeros(max(n, 1), dtype=np.int64)
    cdef i64[::1] touched = np.empty(max(n, 1), dtype=np.int64)
    cdef i64[::1] umark = np.zeros(max(n, 1), dtype=np.int64)
    cdef i64 stamp = 0
    cdef i64[::1] upper = np.empty(max(n, 1), dtype=np.int64)
    cdef Py_ssize_t n_touched, n_upper

    for u in range(n):
        # mark neighbours of u
        for p in range(indptr[u], indptr[u + 1]):
            mark[indices[p]] = u
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if v <= u:
                continue
            t = 0
            n_upper = 0
            for q in range(indptr[v], indptr[v + 1]):
                w = indices[q]
                if mark[w] == u:
                    t += 1
                    if w > v:
                        upper[n_upper] = w
                        n_upper += 1
            tri3 += t
            tri_at[u] += t
            tri_at[v] += t
            paths += (indptr[u + 1] - indptr[u] - 1) * (indptr[v + 1] - indptr[v] - 1)
            diamonds += t * (t - 1) // 2
            # K4 through edge (u, v): adjacent pairs among common upper neighbours
            stamp += 1
            for a in range(n_upper):
                umark[upper[a]] = stamp
            for a in range(n_upper):
                w = upper[a]
                for q in range(indptr[w], indptr[w + 1]):
                    c = indices[q]
                    if c > w and umark[c] == stamp:
                        k4 += 1
    for v in range(n):
        d = indptr[v + 1] - indptr[v]
        paws += (tri_at[v] // 2) * (d - 2)
        wedges += d * (d - 1) // 2
        stars += d * (d - 1) * (d - 2) // 6

    for u in range(n):
        n_touched = 0
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            for q in range(indptr[v], indptr[v + 1]):
                w = indices[q]
                if w > u:
                    if codeg[w] == 0:
                        touched[n_touched] = w
                        n_touched += 1
                    codeg[w] += 1
        for k in range(n_touched):
            w = touched[k]
            c = codeg[w]
            cycles2 += c * (c - 1) // 2
            codeg[w] = 0

    tri = tri3 // 3
    return np.array(
        induced_from_noninduced(tri, wedges, paths - 3 * tri, stars, cycles2 // 2,
                                paws, diamonds, k4),
        dtype=np.int64,
    )


def betweenness_raw(i64[::1] indptr, i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t s, v, w, p, head, tail, top
    cdef i64 dv
    cdef double coeff
    bc_arr = np.zeros(n, dtype=np.float64)
    if n == 0:
        return bc_arr
    cdef double[::1] bc = bc_arr
    cdef double[::1] sigma = np.zeros(n, dtype=np.float64)
    cdef double[::1] delta = np.zeros(n, dtype=np.float64)
    cdef i64[::1] dist = np.full(n, -1, dtype=np.int64)
    cdef i64[::1] order = np.empty(n, dtype=np.int64)

    for s in range(n):
        # BFS; ``order`` doubles as queue and stack
        head = 0
        tail = 0
        order[tail] = s
        tail += 1
        dist[s] = 0
        sigma[s] = 1.0
        while head < tail:
            v = order[head]
            head += 1
            dv = dist[v] + 1
            for p in range(indptr[v], indptr[v + 1]):
                w = indices[p]
                if dist[w] < 0:
                    dist[w] = dv
                    order[tail] = w
                    tail += 1
                if dist[w] == dv:
                    sigma[w] += sigma[v]
        top = tail
        while top > 0:
            top -= 1
            w = order[top]
            coeff = (1.0 + delta[w]) / sigma[w]
            dv = dist[w] - 1
            for p in range(indptr[w], indptr[w + 1]):
                v = indices[p]
                if dist[v] == dv:
                    delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
        for p in range(tail):
            v = order[p]
            dist[v] = -1
            sigma[v] = 0.0
            delta[v] = 0.0
    return bc_arr / 2.0


def core_numbers(i64[::1] indptr, i64[::1] indices):
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef Py_ssize_t i, v, u, p, w, du, pu, pw, start, d, max_deg = 0
    deg_arr = np.zeros(n, dtype=np.int64)
    if n == 0:
        return deg_arr
    cdef i64[::1] deg = deg_arr
    for v in range(n):
        deg[v] = indptr[v + 1] - indptr[v]
        if deg[v] > max_deg:
            max_deg = deg[v]
    cdef i64[::1] bins = np.zeros(max_deg + 1, dtype=np.int64)
    cdef i64[::1] pos = np.empty(n, dtype=np.int64)
    cdef i64[::1] order = np.empty(n, dtype=np.int64)
    for v in range(n):
        bins[deg[v]] += 1
    start = 0
    for d in range(max_deg + 1):
        du = bins[d]
        bins[d] = start
        start += du
    for v in range(n):
        pos[v] = bins[deg[v]]
        order[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    for i in range(n):
        v = order[i]
        for p in range(indptr[v], indptr[v + 1]):
            u = indices[p]
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bins[du]
                w = order[pw]
                if u != w:
                    pos[u] = pw
                    pos[w] = pu
                    order[pu] = w
                    order[pw] = u
                bins[du] += 1
                deg[u] -= 1
    return deg_arr
