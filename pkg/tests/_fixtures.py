"""Test-data generators and brute-force oracles.

Each generator plants known parameters, so it doubles as the oracle for the
estimator that should recover them.
"""

from collections import deque
from itertools import combinations

import numpy as np

from syndisim.graph import SyndicationGraph
from syndisim.ingest import InvestmentEvent


def random_graph(n, p, rng, max_weight=1):
    g = SyndicationGraph(n)
    for i, j in combinations(range(n), 2):
        if rng.random() < p:
            g.record_coinvestment(i, j, int(rng.integers(1, max_weight + 1)))
    return g


def graph_from_edges(n, edges):
    g = SyndicationGraph(n)
    for e in edges:
        i, j = e[0], e[1]
        g.record_coinvestment(i, j, e[2] if len(e) > 2 else 1)
    return g


def path_graph(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(n):
    return graph_from_edges(n, [(0, i) for i in range(1, n)])


def complete_graph(n):
    return graph_from_edges(n, list(combinations(range(n), 2)))


# -- oracles -----------------------------------------------------------------

def brute_second_order(g):
    n = g.n_nodes
    m = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            m[i, j] = sum(g.weight(i, k) * g.weight(k, j) for k in range(n))
    return m


def _all_geodesics(adj, s, t):
    """Every shortest s-t path, by BFS layering then exhaustive DFS."""
    n = len(adj)
    dist = [-1] * n
    dist[s] = 0
    q = deque([s])
    while q:
        v = q.popleft()
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                q.append(w)
    if dist[t] < 0:
        return []
    paths = []

    def extend(path):
        v = path[-1]
        if v == t:
            paths.append(list(path))
            return
        for w in adj[v]:
            if len(path) < dist[t] + 1 and w not in path:
                path.append(w)
                # prune walks that cannot be geodesic
                if dist[w] == len(path) - 1:
                    extend(path)
                path.pop()

    extend([s])
    return [p for p in paths if len(p) == dist[t] + 1]


def brute_betweenness_raw(g):
    n = g.n_nodes
    adj = [g.neighbors(v) for v in range(n)]
    bc = np.zeros(n)
    for s, t in combinations(range(n), 2):
        paths = _all_geodesics(adj, s, t)
        if not paths:
            continue
        for p in paths:
            for v in p[1:-1]:
                bc[v] += 1 / len(paths)
    return bc


def naive_core_numbers(g):
    n = g.n_nodes
    adj = [set(g.neighbors(v)) for v in range(n)]
    core = np.zeros(n, dtype=np.int64)
    k = 0
    while True:
        k += 1
        alive = set(range(n))
        changed = True
        while changed:
            changed = False
            for v in list(alive):
                if len(adj[v] & alive) < k:
                    alive.discard(v)
                    changed = True
        if not alive:
            return core
        for v in alive:
            core[v] = k


# -- event fixtures ----------------------------------------------------------

def frequency_fixture(rates=(0.26, 0.80, 5.05), n_vcs=1436, periods=100, seed=0):
    """VCs invest exactly ``rate * periods`` times, first in period 1, the rest at random.

    Group sizes follow the lower-groups-take-the-remainder rule, so the true
    tertile means are exactly ``rates``.
    """
    rng = np.random.default_rng(seed)
    q, r = divmod(n_vcs, 3)
    sizes = [q + (r >= 1), q + (r >= 2), q]
    events = []
    vc = 0
    for rate, size in zip(rates, sizes):
        count = round(rate * periods)
        for _ in range(size):
            chosen = np.concatenate([[1], rng.integers(1, periods + 1, size=count - 1)])
            if vc == 0:
                chosen[-1] = periods  # pin the last period on record
            for k, p in enumerate(chosen):
                events.append(InvestmentEvent(f"v{vc}-{k}", int(p), f"t{vc}-{k}", (vc,)))
            vc += 1
    rng.shuffle(events)
    return events


def tendency_fixture(tendencies=(0.30, 0.59, 0.96), per_group=100, investments=100):
    """Pairs of same-group VCs syndicate together ``tendency * investments`` times."""
    events = []
    vc = 0
    for tend in tendencies:
        joint = round(tend * investments)
        for _ in range(per_group // 2):
            a, b = vc, vc + 1
            for k in range(joint):
                events.append(InvestmentEvent(f"j{a}-{k}", k % 10, f"tj{a}-{k}", (a, b)))
            for who in (a, b):
                for k in range(investments - joint):
                    events.append(InvestmentEvent(f"s{who}-{k}", k % 10, f"ts{who}-{k}", (who,)))
            vc += 2
    return events


def invitation_fixture(loyal=4, loyal_repeat=3, casual=96, rounds=10):
    """``loyal`` pairs co-invest every period 1..rounds; ``loyal_repeat`` of them
    again in period rounds+1; ``casual`` pairs co-invest once, in period ``rounds``.

    Yields probability(1) = loyal / (loyal + casual) and
    probability(rounds) = loyal_repeat / loyal.
    """
    events = []
    vc = 0
    loyal_pairs = []
    for _ in range(loyal):
        loyal_pairs.append((vc, vc + 1))
        vc += 2
    for p in range(1, rounds + 1):
        for a, b in loyal_pairs:
            events.append(InvestmentEvent(f"L{a}-{p}", p, f"tL{a}-{p}", (a, b)))
    for a, b in loyal_pairs[:loyal_repeat]:
        events.append(InvestmentEvent(f"L{a}-{rounds + 1}", rounds + 1, f"tL{a}-{rounds + 1}", (a, b)))
    for _ in range(casual):
        events.append(InvestmentEvent(f"C{vc}", rounds, f"tC{vc}", (vc, vc + 1)))
        vc += 2
    return events
