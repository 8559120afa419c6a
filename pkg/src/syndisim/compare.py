"""Model-versus-reference comparison: distribution distances, motif tables,
and the per-step indicator correlation series."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .graph import SyndicationGraph
from .metrics import (
    IndicatorTable,
    assign_groups,
    betweenness,
    degree_distribution,
    detect_elites,
    indicator_table,
    local_clustering,
    strength_distribution,
)
from .motifs import census


class InsufficientDataError(ValueError):
    pass


class AlignmentError(ValueError):
    pass


def histogram(samples) -> dict:
    values, counts = np.unique(np.asarray(samples), return_counts=True)
    return {v.item(): int(c) for v, c in zip(values, counts)}


def ks_distance(h1: Mapping[float, int], h2: Mapping[float, int]) -> float:
    """Two-sample KS statistic between two value -> count histograms."""
    n1 = sum(h1.values())
    n2 = sum(h2.values())
    if n1 <= 0 or n2 <= 0:
        raise InsufficientDataError("KS distance needs two non-empty histograms")
    support = sorted(set(h1) | set(h2))
    c1 = np.cumsum([h1.get(v, 0) for v in support]) / n1
    c2 = np.cumsum([h2.get(v, 0) for v in support]) / n2
    return float(np.max(np.abs(c1 - c2)))


def pearson(x: Sequence[float | None], y: Sequence[float | None]) -> float | None:
    """Pearson correlation over pairs where both sides are present.

    ``None`` when fewer than 3 pairs remain or either side has zero variance.
    """
    pairs = [(a, b) for a, b in zip(x, y) if a is not None and b is not None]
    if len(pairs) < 3:
        return None
    a = np.array([p[0] for p in pairs], dtype=np.float64)
    b = np.array([p[1] for p in pairs], dtype=np.float64)
    a = a - a.mean()
    b = b - b.mean()
    denom = np.sqrt((a @ a) * (b @ b))
    if denom == 0 or not np.isfinite(denom):
        return None
    return float(np.clip((a @ b) / denom, -1.0, 1.0))


def indicator_correlation(model: IndicatorTable, reference: IndicatorTable) -> float | None:
    return pearson(model.vector(), reference.vector())


@dataclass
class Network:
    """A graph plus optional per-node investment frequency."""

    graph: SyndicationGraph
    investment_frequency: Sequence[float] | None = None


@dataclass
class NetworkSummary:
    degree: dict
    strength: dict
    clustering: np.ndarray
    indicators: IndicatorTable
    elites: list[int]


def summarize(net: Network, elite_fraction: float) -> NetworkSummary:
    g = net.graph
    between = betweenness(g)
    elites = detect_elites(g, elite_fraction, between) if g.n_nodes else []
    table = indicator_table(g, assign_groups(g, elites), net.investment_frequency, between)
    return NetworkSummary(degree_distribution(g), strength_distribution(g),
                          local_clustering(g), table, elites)


def _ks_or_none(h1, h2) -> float | None:
    try:
        return ks_distance(h1, h2)
    except InsufficientDataError:
        return None


@dataclass
class ComparisonReport:
    ks: dict[int, dict[str, float | None]] = field(default_factory=dict)
    motifs: dict[str, dict[str, int]] = field(default_factory=dict)
    correlation_series: list[dict] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "ks": {str(step): v for step, v in self.ks.items()},
            "motifs": self.motifs,
            "correlation_series": self.correlation_series,
            "meta": self.meta,
        }

    @classmethod
    def from_json_dict(cls, d: Mapping) -> ComparisonReport:
        return cls(
            ks={int(step): dict(v) for step, v in d["ks"].items()},
            motifs={k: dict(v) for k, v in d["motifs"].items()},
            correlation_series=[dict(x) for x in d["correlation_series"]],
            meta=dict(d["meta"]),
        )


def compare_runs(
    model: Mapping[int, Network],
    reference: Network | Mapping[int, Network],
    elite_fraction: float = 0.03,
    meta: Mapping | None = None,
) -> ComparisonReport:
    """Compare a model trajectory with a static reference or a matching trajectory."""
    if not model:
        raise InsufficientDataError("model side has no snapshots")
    steps = sorted(model)
    if isinstance(reference, Network):
        ref_by_step = None
        ref_static = summarize(reference, elite_fraction)
    else:
        if not reference:
            raise InsufficientDataError("reference side has no snapshots")
        missing = [s for s in steps if s not in reference]
        if missing:
            raise AlignmentError(
                f"model steps {missing} absent from reference; available: {sorted(reference)}")
        ref_by_step = reference
        ref_static = None

    report = ComparisonReport()
    last_ref_net = None
    for step in steps:
        mine = summarize(model[step], elite_fraction)
        if ref_by_step is None:
            theirs = ref_static
            last_ref_net = reference
        else:
            theirs = summarize(ref_by_step[step], elite_fraction)
            last_ref_net = ref_by_step[step]
        report.ks[step] = {
            "degree": _ks_or_none(mine.degree, theirs.degree),
            "strength": _ks_or_none(mine.strength, theirs.strength),
            "clustering": _ks_or_none(histogram(mine.clustering), histogram(theirs.clustering)),
        }
        report.correlation_series.append(
            {"step": step, "correlation": indicator_correlation(mine.indicators, theirs.indicators)})

    report.motifs = {
        "model": census(model[steps[-1]].graph),
        "reference": census(last_ref_net.graph),
    }
    report.meta = {
        "steps": steps,
        "final_step": steps[-1],
        "reference": "static" if ref_by_step is None else "trajectory",
        "elite_fraction": elite_fraction,
        **(dict(meta) if meta else {}),
    }
    return report
