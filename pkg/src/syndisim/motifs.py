"""Induced 3- and 4-node motif census.

Counts are over node subsets: every connected 3- or 4-subset is tallied once,
under the class of the subgraph it induces. Edge weights are ignored.
"""

from __future__ import annotations

from itertools import combinations

from .graph import GraphError, SyndicationGraph
from .kernels import MOTIF_ORDER, motif_counts

ORACLE_MAX_NODES = 64

MotifCounts = dict[str, int]

# (edge count, sorted degree sequence) -> class, for connected induced subgraphs
_SIGNATURES = {
    (2, (1, 1, 2)): "wedge",
    (3, (2, 2, 2)): "triangle",
    (3, (1, 1, 2, 2)): "path4",
    (3, (1, 1, 1, 3)): "star3",
    (4, (2, 2, 2, 2)): "cycle4",
    (4, (1, 2, 2, 3)): "paw",
    (5, (2, 2, 3, 3)): "diamond",
    (6, (3, 3, 3, 3)): "complete4",
}


class GraphTooLargeError(GraphError):
    pass


def census(g: SyndicationGraph) -> MotifCounts:
    indptr, indices, _ = g.to_csr()
    counts = motif_counts(indptr, indices)
    return {name: int(c) for name, c in zip(MOTIF_ORDER, counts)}


def oracle_census(g: SyndicationGraph) -> MotifCounts:
    """Exhaustive subset enumeration; exponential cost, for verification only."""
    n = g.n_nodes
    if n > ORACLE_MAX_NODES:
        raise GraphTooLargeError(f"oracle census limited to {ORACLE_MAX_NODES} nodes, got {n}")
    adj = [set(g.neighbors(v)) for v in range(n)]
    counts = dict.fromkeys(MOTIF_ORDER, 0)
    for size in (3, 4):
        for subset in combinations(range(n), size):
            degs = [sum(1 for u in subset if u in adj[v]) for v in subset]
            key = (sum(degs) // 2, tuple(sorted(degs)))
            name = _SIGNATURES.get(key)
            if name is not None:
                counts[name] += 1
    return counts
