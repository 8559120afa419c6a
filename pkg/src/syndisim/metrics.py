"""Node- and group-level indicators of a syndication network.

Covers the macro distributions (degree, tie strength, clustering), the
centralities used to separate elites from followers, the elite proxy and
group assignment, and the density-ratio "EI" index.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graph import GraphError, SyndicationGraph, UndefinedDensityError, density
from .kernels import betweenness_raw, core_numbers


class UndefinedEIError(GraphError):
    pass


def round_half_up(x: float) -> int:
    return int(np.floor(x + 0.5))


# -- distributions -----------------------------------------------------------

def degree_distribution(g: SyndicationGraph) -> dict[int, int]:
    """Degree -> number of nodes."""
    return dict(sorted(Counter(int(d) for d in g.degrees()).items()))


def strength_distribution(g: SyndicationGraph) -> dict[int, int]:
    """Tie strength (edge weight) -> number of edges."""
    return dict(sorted(Counter(w for _, _, w in g.edges()).items()))


def node_strengths(g: SyndicationGraph) -> np.ndarray:
    return np.array([g.strength(v) for v in g.nodes()], dtype=np.int64)


def local_clustering(g: SyndicationGraph) -> np.ndarray:
    """Watts-Strogatz coefficient per node; degree < 2 gives 0."""
    adj = [set(g.neighbors(v)) for v in g.nodes()]
    out = np.zeros(g.n_nodes, dtype=np.float64)
    for v, nb in enumerate(adj):
        k = len(nb)
        if k < 2:
            continue
        closed = sum(len(nb & adj[u]) for u in nb) // 2
        out[v] = closed / (k * (k - 1) / 2)
    return out


# -- centralities ------------------------------------------------------------

def betweenness(g: SyndicationGraph) -> np.ndarray:
    """Unweighted shortest-path betweenness normalised by ``(n-1)(n-2)/2``."""
    n = g.n_nodes
    indptr, indices, _ = g.to_csr()
    raw = betweenness_raw(indptr, indices)
    if n < 3:
        return np.zeros(n, dtype=np.float64)
    return raw / ((n - 1) * (n - 2) / 2)


def k_shell(g: SyndicationGraph) -> np.ndarray:
    indptr, indices, _ = g.to_csr()
    return core_numbers(indptr, indices)


# -- elites and groups -------------------------------------------------------

def detect_elites(g: SyndicationGraph, fraction: float,
                  between: np.ndarray | None = None) -> list[int]:
    """Top ``max(1, round(fraction * n))`` nodes by (betweenness, degree), ties to low id.

    A deterministic stand-in for a learned elite classifier.
    """
    if not 0 < fraction <= 1:
        raise ValueError(f"fraction must lie in (0, 1], got {fraction}")
    n = g.n_nodes
    if n == 0:
        return []
    k = min(n, max(1, round_half_up(fraction * n)))
    if between is None:
        between = betweenness(g)
    deg = g.degrees()
    # lexsort: last key is primary
    order = np.lexsort((np.arange(n), -deg, -np.asarray(between)))
    return [int(v) for v in order[:k]]


@dataclass(frozen=True)
class Partition:
    elites: tuple[int, ...]
    group_of: Mapping[int, int] = field(default_factory=dict)

    def groups(self) -> dict[int, list[int]]:
        """Elite -> members (the elite first, then its satellites ascending)."""
        out = {e: [e] for e in self.elites}
        for s in sorted(self.group_of):
            out[self.group_of[s]].append(s)
        return out


def assign_groups(g: SyndicationGraph, elites: Iterable[int]) -> Partition:
    """Attach every non-elite to its heaviest-tied elite neighbour."""
    elite_list = tuple(elites)
    elite_set = set(elite_list)
    for e in elite_list:
        if e not in g:
            raise GraphError(f"elite {e} is not a node")
    group_of: dict[int, int] = {}
    for v in g.nodes():
        if v in elite_set:
            continue
        best, best_w = None, 0
        for u, w in g.partners(v).items():  # ascending ids: strict > keeps lowest on ties
            if u in elite_set and w > best_w:
                best, best_w = u, w
        if best is not None:
            group_of[v] = best
    return Partition(elite_list, group_of)


# -- EI ----------------------------------------------------------------------

def density_ratio(within: float, whole: float) -> float:
    if whole <= 0:
        raise UndefinedEIError("whole-network density is zero")
    return within / whole


def subset_density(g: SyndicationGraph, members: Iterable[int]) -> float:
    member_set = set(members)
    k = len(member_set)
    if k < 2:
        raise UndefinedDensityError(f"density needs at least 2 nodes, got {k}")
    return g.subgraph_edge_count(member_set) / (k * (k - 1) / 2)


def ei_index(g: SyndicationGraph, members: Iterable[int]) -> float:
    """Induced density of ``members`` divided by the whole-network density."""
    member_set = set(members)
    if len(member_set) < 2:
        raise UndefinedEIError("EI index needs at least 2 members")
    try:
        whole = density(g)
    except UndefinedDensityError as exc:
        raise UndefinedEIError(str(exc)) from None
    return density_ratio(subset_density(g, member_set), whole)


# -- indicator table ---------------------------------------------------------

@dataclass(frozen=True)
class ClassMeans:
    size: int
    degree: float | None
    k_shell: float | None
    betweenness: float | None
    investment_frequency: float | None


# flattened order used for correlation across tables
INDICATOR_VECTOR_ORDER = (
    "elite.degree",
    "elite.k_shell",
    "elite.betweenness",
    "elite.investment_frequency",
    "elite_clique_density",
    "elite_clique_ei",
    "group_density",
    "group_ei",
)


@dataclass(frozen=True)
class IndicatorTable:
    elite: ClassMeans
    follower: ClassMeans
    all: ClassMeans
    elite_clique_density: float | None
    elite_clique_ei: float | None
    group_density: float | None
    group_ei: float | None
    n_groups: int

    def vector(self) -> list[float | None]:
        out = []
        for key in INDICATOR_VECTOR_ORDER:
            obj, _, attr = key.rpartition(".")
            out.append(getattr(getattr(self, obj) if obj else self, attr))
        return out

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: Mapping) -> IndicatorTable:
        kw = dict(d)
        for key in ("elite", "follower", "all"):
            kw[key] = ClassMeans(**d[key])
        return cls(**kw)


def _class_means(nodes: Sequence[int], deg, shell, between, freq) -> ClassMeans:
    if not nodes:
        return ClassMeans(0, None, None, None, None)
    idx = np.asarray(nodes, dtype=np.int64)
    f = None
    if freq is not None:
        f = float(np.mean([freq[int(v)] for v in idx]))
    return ClassMeans(
        size=len(nodes),
        degree=float(deg[idx].mean()),
        k_shell=float(shell[idx].mean()),
        betweenness=float(between[idx].mean()),
        investment_frequency=f,
    )


def indicator_table(
    g: SyndicationGraph,
    partition: Partition,
    investment_frequency: Mapping[int, float] | Sequence[float] | None = None,
    between: np.ndarray | None = None,
) -> IndicatorTable:
    """Assemble the eight elite/follower indicators.

    ``investment_frequency`` is either the simulated per-node frequency
    attribute or per-node investment counts taken from event data; without it
    the frequency rows are absent.
    """
    n = g.n_nodes
    deg = g.degrees()
    shell = k_shell(g)
    if between is None:
        between = betweenness(g)
    elites = list(partition.elites)
    elite_set = set(elites)
    followers = [v for v in range(n) if v not in elite_set]

    whole = density(g) if n >= 2 else 0.0
    clique_density = clique_ei = None
    if len(elites) >= 2:
        clique_density = subset_density(g, elites)
        clique_ei = clique_density / whole if whole > 0 else None

    group_densities = [subset_density(g, members)
                       for members in partition.groups().values() if len(members) >= 2]
    group_density = group_ei = None
    if group_densities:
        group_density = float(np.mean(group_densities))
        group_ei = group_density / whole if whole > 0 else None

    return IndicatorTable(
        elite=_class_means(elites, deg, shell, between, investment_frequency),
        follower=_class_means(followers, deg, shell, between, investment_frequency),
        all=_class_means(list(range(n)), deg, shell, between, investment_frequency),
        elite_clique_density=clique_density,
        elite_clique_ei=clique_ei,
        group_density=group_density,
        group_ei=group_ei,
        n_groups=len(group_densities),
    )
