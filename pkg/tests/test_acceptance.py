"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` (the lines are printed even
without ``-s``).
"""
import json
import statistics

import numpy as np
import pytest

from syndisim.cli import main
from syndisim.ingest import (
    estimate_frequency_tertiles,
    estimate_tendency_tertiles,
    invitation_curve,
)
from syndisim.metrics import (
    betweenness,
    density_ratio,
    detect_elites,
    ei_index,
    k_shell,
    local_clustering,
)
from syndisim.motifs import census, oracle_census
from syndisim.rundir import sha256_file
from syndisim.sim import (
    SimulationConfig,
    growth_schedule,
    relational_invite_weights,
    run,
    structural_invite_weights,
)

from _fixtures import (
    brute_betweenness_raw,
    complete_graph,
    cycle_graph,
    frequency_fixture,
    invitation_fixture,
    naive_core_numbers,
    path_graph,
    random_graph,
    star_graph,
    tendency_fixture,
)

SEEDS = range(30)
VARIANTS = ("random", "relational", "structural")


@pytest.fixture
def report(capsys):
    def _report(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return _report


@pytest.fixture(scope="module")
def step10():
    """Per-variant, per-seed statistics of the step-10 network."""
    out = {v: [] for v in VARIANTS}
    for variant in VARIANTS:
        for seed in SEEDS:
            g = run(SimulationConfig(horizon=10, variant=variant, seed=seed))[-1].graph
            elites = detect_elites(g, 0.03)
            out[variant].append({
                "cycle4": census(g)["cycle4"],
                "clustering": float(local_clustering(g).mean()),
                "elite_ei": ei_index(g, elites),
            })
    return out


def _median(rows, key):
    return statistics.median(r[key] for r in rows)


def test_c01_growth_schedule(report):
    cfg = SimulationConfig()
    got = (growth_schedule(cfg, 1), growth_schedule(cfg, 2))
    report(1, got == ((75, 375), (98, 488)), f"t=1,2 -> {got}")


def test_c02_ei_arithmetic(report):
    a, b = density_ratio(0.492, 0.004), density_ratio(0.100, 0.004)
    report(2, abs(a - 123) <= 1 and b == pytest.approx(25, abs=1e-9), f"{a:.3f}, {b:.6f}")


def test_c03_motif_oracle(report):
    rng = np.random.default_rng(2024)
    graphs = [random_graph(8, p, rng) for p in np.linspace(0.1, 0.9, 9) for _ in range(500)]
    graphs += [random_graph(12, rng.random(), rng) for _ in range(50)]
    bad = sum(census(g) != oracle_census(g) for g in graphs)
    report(3, bad == 0, f"{len(graphs) - bad}/{len(graphs)} graphs agree")


def test_c04_chordless_quadrangle(report, step10):
    med = {v: _median(step10[v], "cycle4") for v in VARIANTS}
    limit = 0.02 * med["random"]
    ok = med["random"] > 0 and med["relational"] <= limit and med["structural"] <= limit
    report(4, ok, "median cycle-4 " + ", ".join(f"{v}={m:g}" for v, m in med.items())
           + f" (limit {limit:g})")


def test_c05_clustering_separation(report, step10):
    ratio = _median(step10["structural"], "clustering") / _median(step10["random"], "clustering")
    report(5, ratio >= 2, f"structural/random clustering = {ratio:.2f}")


def test_c06_elite_clique(report, step10):
    s, r = _median(step10["structural"], "elite_ei"), _median(step10["random"], "elite_ei")
    report(6, s >= 10 and r <= 3, f"median elite-clique EI structural={s:.1f}, random={r:.1f}")


def test_c07_centrality_oracles(report):
    rng = np.random.default_rng(7)
    graphs = [path_graph(6), star_graph(7), cycle_graph(5), cycle_graph(8), complete_graph(4)]
    graphs += [random_graph(int(rng.integers(2, 13)), rng.random(), rng) for _ in range(100)]
    bad_b = 0
    for g in graphs:
        raw = brute_betweenness_raw(g)
        n = g.n_nodes
        scale = (n - 1) * (n - 2) / 2 if n > 2 else 1.0
        if not np.allclose(betweenness(g), raw / scale, rtol=0, atol=1e-12):
            bad_b += 1
    big = [random_graph(int(rng.integers(2, 51)), rng.random() * 0.3, rng) for _ in range(100)]
    bad_k = sum(not np.array_equal(k_shell(g), naive_core_numbers(g)) for g in big)
    report(7, bad_b == 0 and bad_k == 0,
           f"betweenness mismatches {bad_b}/{len(graphs)}, k-shell mismatches {bad_k}/{len(big)}")


def test_c08_determinism(report, tmp_path):
    differing = []
    for variant in VARIANTS:
        cfg = tmp_path / f"{variant}.json"
        cfg.write_text(json.dumps({"variant": variant}))
        dirs = [tmp_path / f"{variant}-{k}" for k in (1, 2)]
        for d in dirs:
            assert main(["simulate", "--config", str(cfg), "--out", str(d)]) == 0
        names = sorted(p.name for p in (dirs[0] / "steps").iterdir())
        differing += [f"{variant}/{n}" for n in names
                      if sha256_file(dirs[0] / "steps" / n) != sha256_file(dirs[1] / "steps" / n)]
    report(8, not differing, f"differing edge lists: {differing or 'none'}")


def test_c09_model_nesting(report):
    base = dict(tendency_tertiles=(0.0, 0.0, 0.0), seed=5)
    trajs = {v: run(SimulationConfig(variant=v, **base)) for v in VARIANTS}
    ref = [s.graph for s in trajs["random"]]
    ok = all([s.graph for s in trajs[v]] == ref for v in VARIANTS)
    report(9, ok, f"{len(ref)} steps compared across variants")


def test_c10_estimator_recovery(report):
    freq = estimate_frequency_tertiles(frequency_fixture())
    tend = estimate_tendency_tertiles(tendency_fixture())
    curve = invitation_curve(invitation_fixture())
    checks = list(zip(freq, (0.26, 0.80, 5.05))) + list(zip(tend, (0.30, 0.59, 0.96)))
    checks += [(curve.get(1, 0.0), 0.04), (curve.get(10, 0.0), 0.75)]
    worst = max(abs(est - true) / true for est, true in checks)
    report(10, worst <= 0.05, f"worst relative error {worst:.4f}")


def test_c11_invitation_weights(report):
    rng = np.random.default_rng(11)
    sum_bad = restrict_bad = nodes = 0
    for _ in range(1000):
        g = random_graph(int(rng.integers(2, 25)), rng.random() * 0.5, rng, max_weight=8)
        for i in g.nodes():
            rel = relational_invite_weights(g, i)
            if not g.degree(i):
                continue
            nodes += 1
            if abs(sum(rel.values()) - 1.0) > 1e-12:
                sum_bad += 1
            st = structural_invite_weights(g, i)
            if {j: st[j] for j in rel} != rel:
                restrict_bad += 1
    report(11, sum_bad == 0 and restrict_bad == 0,
           f"{nodes} nodes: sum violations {sum_bad}, restriction violations {restrict_bad}")

