"""Investment-event records: parsing, projection to a co-investment graph,
and the parameter estimators read off real data.

Event CSV layout (UTF-8, comma separated, one row per participation)::

    event_id,period,target,investor
    E1,2003,acme,Alpha Capital
    E1,2003,acme,Beta Ventures
"""

from __future__ import annotations

import csv
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import IO, Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csgraph

from .graph import SyndicationGraph

HEADER = ("event_id", "period", "target", "investor")


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class InsufficientDataError(ValueError):
    pass


@dataclass(frozen=True)
class InvestmentEvent:
    event_id: str
    period: int
    target: str
    investors: tuple[int, ...]  # VcIds, ascending, no duplicates

    def __post_init__(self) -> None:
        if not self.investors:
            raise ValueError(f"event {self.event_id!r} has no investors")
        if len(set(self.investors)) != len(self.investors):
            raise ValueError(f"event {self.event_id!r} lists an investor twice")


@dataclass
class EventLog:
    """Ordered events plus the VcId -> name table built during parsing."""

    events: list[InvestmentEvent] = field(default_factory=list)
    vc_names: list[str] = field(default_factory=list)

    def __iter__(self) -> Iterator[InvestmentEvent]:
        return iter(self.events)

    def __len__(self) -> int:
        return len(self.events)

    def __getitem__(self, i):
        return self.events[i]

    @property
    def n_vcs(self) -> int:
        return len(self.vc_names)


def parse_events(source: IO[str] | Iterable[str]) -> EventLog:
    """Read the event CSV; rows sharing an ``event_id`` are merged."""
    reader = csv.reader(source)
    name_to_id: dict[str, int] = {}
    names: list[str] = []
    order: list[str] = []
    meta: dict[str, tuple[int, str]] = {}
    members: dict[str, list[int]] = {}
    header_seen = False
    for lineno, row in enumerate(reader, start=1):
        if not row or all(not cell.strip() for cell in row):
            continue
        cells = [c.strip() for c in row]
        if not header_seen:
            if tuple(c.lower() for c in cells) != HEADER:
                raise ParseError(lineno, f"expected header {','.join(HEADER)!r}, got {','.join(cells)!r}")
            header_seen = True
            continue
        if len(cells) != 4:
            raise ParseError(lineno, f"expected 4 fields (event_id,period,target,investor), got {len(cells)}")
        event_id, period_text, target, investor = cells
        if not event_id or not investor:
            raise ParseError(lineno, "empty event_id or investor")
        try:
            period = int(period_text)
        except ValueError:
            raise ParseError(lineno, f"period {period_text!r} is not an integer") from None

        if investor not in name_to_id:
            name_to_id[investor] = len(names)
            names.append(investor)
        vc = name_to_id[investor]

        if event_id not in meta:
            meta[event_id] = (period, target)
            members[event_id] = []
            order.append(event_id)
        elif meta[event_id] != (period, target):
            raise ParseError(lineno, f"event {event_id!r} has conflicting period/target")
        if vc in members[event_id]:
            warnings.warn(f"line {lineno}: duplicate investor {investor!r} in event {event_id!r} ignored",
                          stacklevel=2)
            continue
        members[event_id].append(vc)

    events = [InvestmentEvent(eid, meta[eid][0], meta[eid][1], tuple(sorted(members[eid])))
              for eid in order]
    return EventLog(events, names)


def read_events(path: str | Path) -> EventLog:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_events(fh)


def write_events(events: Iterable[InvestmentEvent], fh: IO[str],
                 vc_names: Sequence[str] | None = None) -> None:
    fh.write(",".join(HEADER) + "\n")
    for ev in events:
        for vc in ev.investors:
            name = vc_names[vc] if vc_names is not None else str(vc)
            fh.write(f"{ev.event_id},{ev.period},{ev.target},{name}\n")


def project(events: Iterable[InvestmentEvent], n_nodes: int | None = None) -> SyndicationGraph:
    """Clique-project each event: every investor pair gains one joint investment."""
    events = list(events)
    seen = max((max(ev.investors) for ev in events), default=-1) + 1
    g = SyndicationGraph(max(seen, n_nodes or 0))
    for ev in events:
        for i, j in combinations(ev.investors, 2):
            g.record_coinvestment(i, j)
    return g


def investment_counts(events: Iterable[InvestmentEvent], n_nodes: int) -> np.ndarray:
    counts = np.zeros(n_nodes, dtype=np.int64)
    for ev in events:
        for vc in ev.investors:
            counts[vc] += 1
    return counts


# -- estimators ----------------------------------------------------------------

def tertile_means(values: Iterable[float]) -> tuple[float, float, float]:
    """Sort ascending, cut into thirds (lower groups take the remainder), average each."""
    xs = sorted(values)
    n = len(xs)
    if n < 3:
        raise InsufficientDataError(f"need at least 3 VCs, got {n}")
    q, r = divmod(n, 3)
    sizes = [q + (r >= 1), q + (r >= 2), q]
    out = []
    start = 0
    for size in sizes:
        out.append(float(np.mean(xs[start:start + size])))
        start += size
    return out[0], out[1], out[2]


def investment_rates(events: Iterable[InvestmentEvent]) -> dict[int, float]:
    """Mean investments per period, counted from each VC's first period to the last period on record."""
    events = list(events)
    if not events:
        return {}
    last = max(ev.period for ev in events)
    first: dict[int, int] = {}
    total: Counter[int] = Counter()
    for ev in events:
        for vc in ev.investors:
            total[vc] += 1
            if vc not in first or ev.period < first[vc]:
                first[vc] = ev.period
    return {vc: total[vc] / (last - first[vc] + 1) for vc in sorted(total)}


def syndication_tendencies(events: Iterable[InvestmentEvent]) -> dict[int, float]:
    """Share of each VC's investments that had at least two participants."""
    total: Counter[int] = Counter()
    joint: Counter[int] = Counter()
    for ev in events:
        syndicated = len(ev.investors) >= 2
        for vc in ev.investors:
            total[vc] += 1
            joint[vc] += syndicated
    return {vc: joint[vc] / total[vc] for vc in sorted(total)}


def estimate_frequency_tertiles(events: Iterable[InvestmentEvent]) -> tuple[float, float, float]:
    return tertile_means(investment_rates(events).values())


def estimate_tendency_tertiles(events: Iterable[InvestmentEvent]) -> tuple[float, float, float]:
    return tertile_means(syndication_tendencies(events).values())


def _pairs_by_period(events: Iterable[InvestmentEvent]) -> dict[int, Counter]:
    out: dict[int, Counter] = defaultdict(Counter)
    for ev in events:
        out[ev.period].update(combinations(ev.investors, 2))
    return out


def invitation_curve(events: Iterable[InvestmentEvent]) -> dict[int, float]:
    """Prior joint-investment count -> share of such pairs co-investing next period."""
    events = list(events)
    periods = sorted({ev.period for ev in events})
    by_period = _pairs_by_period(events)
    cumulative: Counter = Counter()
    hits: Counter[int] = Counter()
    seen: Counter[int] = Counter()
    for k, p in enumerate(periods[:-1]):
        cumulative.update(by_period[p])
        nxt = by_period[periods[k + 1]]
        for pair, c in cumulative.items():
            seen[c] += 1
            hits[c] += pair in nxt
    return {c: hits[c] / seen[c] for c in sorted(seen)}


def distance_label(joint: int, hops: int | None = None) -> str:
    """Class label: ``1``, ``1/2``, ``1/3`` ... for prior partners, else the hop count."""
    if joint >= 1:
        return "1" if joint == 1 else f"1/{joint}"
    return str(hops)


def _label_key(label: str) -> float:
    if label.startswith("1/"):
        return 1.0 / int(label[2:])
    return float(label)


def syndication_by_distance(events: Iterable[InvestmentEvent]) -> dict[str, float]:
    """Next-period syndication frequency per distance class.

    Prior partners with ``c`` joint investments fall in class ``1/c``; other
    pairs use their hop distance in the cumulative network. Unreachable pairs
    and VCs not yet on record are skipped.
    """
    events = list(events)
    periods = sorted({ev.period for ev in events})
    if len(periods) < 2:
        return {}
    by_period = _pairs_by_period(events)
    n = max(max(ev.investors) for ev in events) + 1
    active = np.zeros(n, dtype=bool)
    first_period: dict[int, int] = {}
    for ev in events:
        for vc in ev.investors:
            first_period[vc] = min(first_period.get(vc, ev.period), ev.period)
    g = SyndicationGraph(n)
    hits: Counter[str] = Counter()
    seen: Counter[str] = Counter()
    for k, p in enumerate(periods[:-1]):
        for (i, j), c in by_period[p].items():
            g.record_coinvestment(i, j, c)
        for vc, fp in first_period.items():
            if fp == p:
                active[vc] = True
        nodes = np.flatnonzero(active)
        if len(nodes) < 2:
            continue
        nxt = by_period[periods[k + 1]]
        hops = csgraph.shortest_path(g.weight_matrix()[nodes][:, nodes], method="D",
                                     unweighted=True, directed=False)
        for a in range(len(nodes)):
            i = int(nodes[a])
            for b in range(a + 1, len(nodes)):
                j = int(nodes[b])
                w = g.weight(i, j)
                if w:
                    label = distance_label(w)
                elif np.isinf(hops[a, b]):
                    continue
                else:
                    label = distance_label(0, int(hops[a, b]))
                seen[label] += 1
                hits[label] += (i, j) in nxt
    return {lab: hits[lab] / seen[lab] for lab in sorted(seen, key=_label_key)}


@dataclass(frozen=True)
class ParameterEstimate:
    freq_tertiles: tuple[float, float, float]
    tendency_tertiles: tuple[float, float, float]
    invitation_curve: dict[int, float]

    def to_json_dict(self) -> dict:
        return {
            "freq_tertiles": list(self.freq_tertiles),
            "tendency_tertiles": list(self.tendency_tertiles),
            "invitation_curve": {str(c): p for c, p in self.invitation_curve.items()},
        }


def estimate_parameters(events: Iterable[InvestmentEvent]) -> ParameterEstimate:
    events = list(events)
    return ParameterEstimate(
        freq_tertiles=estimate_frequency_tertiles(events),
        tendency_tertiles=estimate_tendency_tertiles(events),
        invitation_curve=invitation_curve(events),
    )
