"""Pure-Python graph kernels.

Reference implementations of the hot loops over a sorted CSR skeleton
``(indptr, indices)``. ``_ckernels`` provides the same functions compiled;
``syndisim.kernels`` picks one at import time.
"""

from collections import deque

import numpy as np

# order of the motif vector returned by motif_counts
MOTIF_ORDER = ("triangle", "wedge", "path4", "star3", "cycle4", "paw", "diamond", "complete4")


def _neighbour_lists(indptr, indices):
    ptr = indptr.tolist()
    idx = indices.tolist()
    return [idx[ptr[i]:ptr[i + 1]] for i in range(len(ptr) - 1)]


def induced_from_noninduced(tri, wedges, paths, stars, cycles, paws, diamonds, k4):
    """Convert non-induced subgraph counts into induced counts.

    Each argument except ``tri`` and ``k4`` counts (not necessarily induced)
    copies of the pattern; a K4 holds 6 diamonds, 3 four-cycles, 12 paws,
    4 claws and 12 four-paths, a diamond holds 1 four-cycle, 4 paws, 2 claws
    and 6 four-paths, a four-cycle holds 4 four-paths, a paw holds 1 claw and
    2 four-paths.
    """
    diamond = diamonds - 6 * k4
    cycle4 = cycles - diamond - 3 * k4
    paw = paws - 4 * diamond - 12 * k4
    star3 = stars - paw - 2 * diamond - 4 * k4
    path4 = paths - 2 * paw - 4 * cycle4 - 6 * diamond - 12 * k4
    wedge = wedges - 3 * tri
    return [tri, wedge, path4, star3, cycle4, paw, diamond, k4]


def motif_counts(indptr, indices):
    nbrs = _neighbour_lists(indptr, indices)
    sets = [set(r) for r in nbrs]
    n = len(nbrs)
    deg = [len(r) for r in nbrs]

    tri3 = 0          # 3 * triangles
    paths = 0
    diamonds = 0
    k4 = 0
    tri_at = [0] * n  # 2 * triangles through each node
    for u in range(n):
        su = sets[u]
        for v in nbrs[u]:
            if v <= u:
                continue
            common = su & sets[v]
            t = len(common)
            tri3 += t
            tri_at[u] += t
            tri_at[v] += t
            paths += (deg[u] - 1) * (deg[v] - 1)
            diamonds += t * (t - 1) // 2
            upper = sorted(w for w in common if w > v)
            for a_pos, a in enumerate(upper):
                sa = sets[a]
                for b in upper[a_pos + 1:]:
                    if b in sa:
                        k4 += 1
    tri = tri3 // 3
    paths -= 3 * tri
    paws = sum((tri_at[v] // 2) * (deg[v] - 2) for v in range(n))
    wedges = sum(d * (d - 1) // 2 for d in deg)
    stars = sum(d * (d - 1) * (d - 2) // 6 for d in deg)

    cycles2 = 0
    for u in range(n):
        codeg: dict[int, int] = {}
        for v in nbrs[u]:
            for w in nbrs[v]:
                if w > u:
                    codeg[w] = codeg.get(w, 0) + 1
        cycles2 += sum(c * (c - 1) // 2 for c in codeg.values())
    cycles = cycles2 // 2

    return np.array(
        induced_from_noninduced(tri, wedges, paths, stars, cycles, paws, diamonds, k4),
        dtype=np.int64,
    )


def betweenness_raw(indptr, indices):
    """Unnormalised pair betweenness (each unordered pair counted once)."""
    nbrs = _neighbour_lists(indptr, indices)
    n = len(nbrs)
    bc = [0.0] * n
    for s in range(n):
        stack = []
        sigma = [0] * n
        dist = [-1] * n
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv = dist[v] + 1
            for w in nbrs[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            dw = dist[w] - 1
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in nbrs[w]:
                if dist[v] == dw:
                    delta[v] += sigma[v] * coeff
            if w != s:
                bc[w] += delta[w]
    return np.array(bc, dtype=np.float64) / 2.0


def core_numbers(indptr, indices):
    """Batagelj-Zaversnik bucket peeling."""
    nbrs = _neighbour_lists(indptr, indices)
    n = len(nbrs)
    deg = [len(r) for r in nbrs]
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    max_deg = max(deg)
    bins = [0] * (max_deg + 1)
    for d in deg:
        bins[d] += 1
    start = 0
    for d in range(max_deg + 1):
        bins[d], start = start, start + bins[d]
    pos = [0] * n
    order = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        order[pos[v]] = v
        bins[deg[v]] += 1
    for d in range(max_deg, 0, -1):
        bins[d] = bins[d - 1]
    bins[0] = 0
    for i in range(n):
        v = order[i]
        for u in nbrs[v]:
            if deg[u] > deg[v]:
                du = deg[u]
                pu = pos[u]
                pw = bins[du]
                w = order[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    order[pu], order[pw] = w, u
                bins[du] += 1
                deg[u] -= 1
    return np.array(deg, dtype=np.int64)
