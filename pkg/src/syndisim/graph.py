"""Weighted, undirected co-investment graph and its primitive queries.

Nodes are dense integers ``0..n-1``. An edge weight counts joint
investments between two VC firms, so it is always a positive integer.
Neighbour iteration is in ascending id order everywhere so that
simulations are reproducible bit for bit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator

import numpy as np
import scipy.sparse as sp


class GraphError(ValueError):
    """Base class for graph contract violations."""


class SelfEdgeError(GraphError):
    pass


class UnknownNodeError(GraphError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class UndefinedDensityError(GraphError):
    pass


class SyndicationGraph:
    """Accretion-only weighted graph: nodes and weights can be added, never removed."""

    __slots__ = ("_adj", "_n_edges")

    def __init__(self, n_nodes: int = 0) -> None:
        if n_nodes < 0:
            raise ValueError("n_nodes must be non-negative")
        self._adj: list[dict[int, int]] = [{} for _ in range(n_nodes)]
        self._n_edges = 0

    @property
    def n_nodes(self) -> int:
        return len(self._adj)

    @property
    def n_edges(self) -> int:
        return self._n_edges

    def __len__(self) -> int:
        return len(self._adj)

    def __contains__(self, node: object) -> bool:
        return isinstance(node, (int, np.integer)) and 0 <= node < len(self._adj)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SyndicationGraph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"SyndicationGraph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"

    def _check(self, node: int) -> None:
        if not 0 <= node < len(self._adj):
            raise UnknownNodeError(f"unknown node {node!r}")

    def add_node(self) -> int:
        self._adj.append({})
        return len(self._adj) - 1

    def add_nodes(self, count: int) -> range:
        start = len(self._adj)
        self._adj.extend({} for _ in range(count))
        return range(start, start + count)

    def record_coinvestment(self, i: int, j: int, times: int = 1) -> None:
        """Increment the joint-investment count of the pair ``(i, j)``."""
        if i == j:
            raise SelfEdgeError(f"self-edge on node {i}")
        self._check(i)
        self._check(j)
        if times < 1:
            raise ValueError("times must be >= 1")
        row_i = self._adj[i]
        if j not in row_i:
            self._n_edges += 1
            row_i[j] = times
            self._adj[j][i] = times
        else:
            row_i[j] += times
            self._adj[j][i] += times

    def weight(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        return self._adj[i].get(j, 0)

    def neighbors(self, i: int) -> list[int]:
        self._check(i)
        return sorted(self._adj[i])

    def partners(self, i: int) -> dict[int, int]:
        """Neighbour -> weight mapping of ``i`` in ascending neighbour order."""
        self._check(i)
        row = self._adj[i]
        return {j: row[j] for j in sorted(row)}

    def degree(self, i: int) -> int:
        self._check(i)
        return len(self._adj[i])

    def strength(self, i: int) -> int:
        self._check(i)
        return sum(self._adj[i].values())

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(r) for r in self._adj), dtype=np.int64, count=len(self._adj))

    def nodes(self) -> range:
        return range(len(self._adj))

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(i, j, weight)`` with ``i < j`` in lexicographic order."""
        for i, row in enumerate(self._adj):
            for j in sorted(k for k in row if k > i):
                yield i, j, row[j]

    def copy(self) -> SyndicationGraph:
        g = SyndicationGraph()
        g._adj = [dict(r) for r in self._adj]
        g._n_edges = self._n_edges
        return g

    def subgraph_edge_count(self, members: Iterable[int]) -> int:
        member_set = set(members)
        for m in member_set:
            self._check(m)
        return sum(1 for u in member_set for v in self._adj[u] if v in member_set) // 2

    def to_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Sorted CSR arrays ``(indptr, indices, weights)`` of the symmetric adjacency."""
        n = len(self._adj)
        indptr = np.zeros(n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(r) for r in self._adj])
        indices = np.empty(indptr[-1], dtype=np.int64)
        weights = np.empty(indptr[-1], dtype=np.int64)
        for i, row in enumerate(self._adj):
            if row:
                keys = sorted(row)
                indices[indptr[i]:indptr[i + 1]] = keys
                weights[indptr[i]:indptr[i + 1]] = [row[k] for k in keys]
        return indptr, indices, weights

    def weight_matrix(self) -> sp.csr_matrix:
        indptr, indices, weights = self.to_csr()
        n = len(self._adj)
        return sp.csr_matrix((weights, indices, indptr), shape=(n, n))

    def check_invariants(self) -> None:
        """Raise AssertionError if symmetry, zero diagonal or positivity is broken."""
        count = 0
        for i, row in enumerate(self._adj):
            assert i not in row, f"self-edge stored on {i}"
            for j, w in row.items():
                assert isinstance(w, int) and w >= 1, f"bad weight {w!r} on ({i}, {j})"
                assert self._adj[j].get(i) == w, f"asymmetric weight on ({i}, {j})"
                if j > i:
                    count += 1
        assert count == self._n_edges, "edge counter out of sync"


def density(g: SyndicationGraph) -> float:
    """Distinct edges over ``n(n-1)/2``; weights are ignored."""
    n = g.n_nodes
    if n < 2:
        raise UndefinedDensityError(f"density needs at least 2 nodes, got {n}")
    return g.n_edges / (n * (n - 1) / 2)


@dataclass(frozen=True)
class SecondOrderMatrix:
    """Square of the weight matrix, ``m_ij = sum_k n_ik * n_kj``.

    The diagonal is kept in ``matrix`` but excluded by :meth:`entry` callers
    through :meth:`off_diagonal_max` and :meth:`row`.
    """

    matrix: sp.csr_matrix

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def entry(self, i: int, j: int) -> int:
        return int(self.matrix[i, j])

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def off_diagonal_max(self) -> int:
        m = self.matrix.tocoo()
        mask = m.row != m.col
        return int(m.data[mask].max()) if mask.any() else 0

    def row(self, i: int, include_diagonal: bool = False) -> dict[int, int]:
        """Non-zero entries of row ``i`` as ``{j: m_ij}`` in ascending ``j``."""
        lo, hi = self.matrix.indptr[i], self.matrix.indptr[i + 1]
        cols = self.matrix.indices[lo:hi]
        vals = self.matrix.data[lo:hi]
        return {int(c): int(v) for c, v in zip(cols, vals)
                if v != 0 and (include_diagonal or c != i)}

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()


def second_order(g: SyndicationGraph) -> SecondOrderMatrix:
    n_mat = g.weight_matrix()
    m = (n_mat @ n_mat).tocsr()
    m.sort_indices()
    m.eliminate_zeros()
    return SecondOrderMatrix(m)


def bfs_distances(g: SyndicationGraph, source: int) -> np.ndarray:
    """Hop distance from ``source`` to every node; ``-1`` marks unreachable."""
    g._check(source)
    adj = g._adj
    dist = np.full(g.n_nodes, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv
                queue.append(w)
    return dist


def shortest_distance(g: SyndicationGraph, i: int, j: int) -> int | None:
    """Unweighted hop count between ``i`` and ``j``, or ``None`` if unreachable."""
    g._check(i)
    g._check(j)
    if i == j:
        return 0
    d = int(bfs_distances(g, i)[j])
    return None if d < 0 else d


# -- edge-list serialization -------------------------------------------------

def write_edgelist(g: SyndicationGraph, fh: IO[str]) -> None:
    """Write ``<i> <j> <weight>`` lines preceded by a ``# nodes <n>`` header.

    The header keeps trailing isolated nodes; readers that only understand
    the bare format skip it as a comment.
    """
    fh.write(f"# nodes {g.n_nodes}\n")
    for i, j, w in g.edges():
        fh.write(f"{i} {j} {w}\n")


def read_edgelist(fh: IO[str]) -> SyndicationGraph:
    n_declared = 0
    triples: list[tuple[int, int, int]] = []
    for lineno, line in enumerate(fh, start=1):
        text = line.strip()
        if not text:
            continue
        if text.startswith("#"):
            parts = text[1:].split()
            if len(parts) == 2 and parts[0] == "nodes":
                n_declared = int(parts[1])
            continue
        parts = text.split()
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected '<i> <j> <weight>', got {text!r}")
        try:
            i, j, w = (int(p) for p in parts)
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer field in {text!r}") from None
        if i < 0 or j < 0 or w < 1:
            raise GraphError(f"line {lineno}: ids must be >= 0 and weight >= 1")
        triples.append((i, j, w))
    n = max([n_declared] + [max(i, j) + 1 for i, j, _ in triples])
    g = SyndicationGraph(n)
    for i, j, w in triples:
        g.record_coinvestment(i, j, w)
    return g


def save_edgelist(g: SyndicationGraph, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        write_edgelist(g, fh)


def load_edgelist(path: str | Path) -> SyndicationGraph:
    with open(path, encoding="utf-8") as fh:
        return read_edgelist(fh)
