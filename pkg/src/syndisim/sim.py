"""Generative models of a growing syndication network.

Every step has an investing stage, in which each VC picks targets at random
according to its investment frequency, and, for the embeddedness variants,
an inviting stage in which investors bring a partner into their deal:

* ``random``     -- no inviting stage.
* ``relational`` -- partners chosen in proportion to past joint investments.
* ``structural`` -- as relational, plus friends of friends weighted by the
  second-order co-investment matrix.

Two independent random streams are used, one for node creation and
investing, one for inviting, so the three variants share their investing
draws when every syndication tendency is zero.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .graph import SecondOrderMatrix, SyndicationGraph, second_order
from .ingest import InvestmentEvent

VARIANTS = ("random", "relational", "structural")


class ConfigError(ValueError):
    """Invalid simulation config; ``errors`` maps field name to message."""

    def __init__(self, errors: Mapping[str, str]) -> None:
        self.errors = dict(errors)
        super().__init__("; ".join(f"{k}: {v}" for k, v in self.errors.items()))


def round_half_up(x: float) -> int:
    # small slack so 97.49999999999999 from float error still lands on 98
    return int(math.floor(x + 0.5 + 1e-9 * max(1.0, abs(x))))


@dataclass(frozen=True)
class SimulationConfig:
    m1: int = 75
    growth_rate: float = 1.3
    target_multiplier: float = 5.0
    horizon: int = 14
    freq_tertiles: tuple[float, float, float] = (0.26, 0.80, 5.05)
    tendency_tertiles: tuple[float, float, float] = (0.30, 0.59, 0.96)
    variant: str = "random"
    elite_fraction: float = 0.03
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "freq_tertiles", tuple(float(x) for x in self.freq_tertiles))
        object.__setattr__(self, "tendency_tertiles", tuple(float(x) for x in self.tendency_tertiles))
        errors = {}
        if not isinstance(self.m1, int) or self.m1 < 1:
            errors["m1"] = "must be an integer >= 1"
        if not self.growth_rate > 1:
            errors["growth_rate"] = "must be > 1"
        if not self.target_multiplier > 0:
            errors["target_multiplier"] = "must be > 0"
        if not isinstance(self.horizon, int) or self.horizon < 1:
            errors["horizon"] = "must be an integer >= 1"
        for name in ("freq_tertiles", "tendency_tertiles"):
            vals = getattr(self, name)
            if len(vals) != 3:
                errors[name] = "must have exactly three values"
            elif any(b < a for a, b in zip(vals, vals[1:])):
                errors[name] = "must be non-decreasing"
            elif any(v < 0 or not math.isfinite(v) for v in vals):
                errors[name] = "must be finite and non-negative"
        if "tendency_tertiles" not in errors and any(v > 1 for v in self.tendency_tertiles):
            errors["tendency_tertiles"] = "must lie in [0, 1]"
        if self.variant not in VARIANTS:
            errors["variant"] = f"must be one of {', '.join(VARIANTS)}"
        if not 0 < self.elite_fraction <= 1:
            errors["elite_fraction"] = "must lie in (0, 1]"
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2**64:
            errors["seed"] = "must be an unsigned 64-bit integer"
        if errors:
            raise ConfigError(errors)

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["freq_tertiles"] = list(self.freq_tertiles)
        d["tendency_tertiles"] = list(self.tendency_tertiles)
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> SimulationConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(d) - known)
        if unknown:
            raise ConfigError({k: "unknown field" for k in unknown})
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError({"config": str(exc)}) from None

    def replace(self, **changes) -> SimulationConfig:
        return dataclasses.replace(self, **changes)


def growth_schedule(cfg: SimulationConfig, t: int) -> tuple[int, int]:
    """VC count and target-firm count at step ``t`` (1-based).

    Both are rounded from the unrounded exponential so that step 2 gives
    98 VCs and 488 targets.
    """
    if not 1 <= t <= cfg.horizon:
        raise ValueError(f"step {t} outside 1..{cfg.horizon}")
    vcs = cfg.m1 * cfg.growth_rate ** (t - 1)
    return round_half_up(vcs), round_half_up(cfg.target_multiplier * vcs)


@dataclass
class SimState:
    graph: SyndicationGraph = field(default_factory=SyndicationGraph)
    freq: np.ndarray = field(default_factory=lambda: np.zeros(0))
    tendency: np.ndarray = field(default_factory=lambda: np.zeros(0))
    freq_class: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    tendency_class: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    birth_step: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=np.int64))
    step: int = 0
    target_count: int = 0
    events: list[InvestmentEvent] = field(default_factory=list)

    @property
    def n_vcs(self) -> int:
        return self.graph.n_nodes

    def snapshot(self) -> SimState:
        return SimState(
            graph=self.graph.copy(),
            freq=self.freq.copy(),
            tendency=self.tendency.copy(),
            freq_class=self.freq_class.copy(),
            tendency_class=self.tendency_class.copy(),
            birth_step=self.birth_step.copy(),
            step=self.step,
            target_count=self.target_count,
            events=list(self.events),
        )


def spawn_nodes(state: SimState, rng: np.random.Generator, new_count: int,
                cfg: SimulationConfig) -> SimState:
    """Add VCs whose frequency and tendency classes are drawn independently and uniformly."""
    if new_count <= 0:
        return state
    classes = rng.integers(0, 3, size=(new_count, 2))
    freq_vals = np.asarray(cfg.freq_tertiles)
    tend_vals = np.asarray(cfg.tendency_tertiles)
    state.graph.add_nodes(new_count)
    state.freq_class = np.concatenate([state.freq_class, classes[:, 0]])
    state.tendency_class = np.concatenate([state.tendency_class, classes[:, 1]])
    state.freq = np.concatenate([state.freq, freq_vals[classes[:, 0]]])
    state.tendency = np.concatenate([state.tendency, tend_vals[classes[:, 1]]])
    state.birth_step = np.concatenate([state.birth_step, np.full(new_count, state.step, dtype=np.int64)])
    return state


def random_stage(state: SimState, rng: np.random.Generator) -> tuple[SimState, list[InvestmentEvent]]:
    """Poisson(F_i) investments per VC into uniformly chosen targets of this step."""
    n = state.n_vcs
    if n == 0 or state.target_count < 1:
        return state, []
    k = rng.poisson(state.freq)
    investors = np.repeat(np.arange(n, dtype=np.int64), k)
    targets = rng.integers(0, state.target_count, size=investors.size)
    if investors.size == 0:
        return state, []
    order = np.lexsort((investors, targets))
    investors, targets = investors[order], targets[order]
    bounds = np.flatnonzero(np.diff(targets)) + 1
    events = []
    g = state.graph
    for inv, tg in zip(np.split(investors, bounds), np.split(targets, bounds)):
        members = tuple(int(v) for v in np.unique(inv))
        target = int(tg[0])
        events.append(InvestmentEvent(f"s{state.step}-{target}", state.step,
                                      f"s{state.step}-f{target}", members))
        for a in range(len(members)):
            for b in range(a + 1, len(members)):
                g.record_coinvestment(members[a], members[b])
    state.events.extend(events)
    return state, events


def relational_invite_weights(g: SyndicationGraph, i: int) -> dict[int, float]:
    """Partner ``j`` -> ``n_ij / sum_k n_ik``; empty for an isolated node."""
    partners = g.partners(i)
    total = sum(partners.values())
    return {j: w / total for j, w in partners.items()}


def structural_invite_weights(g: SyndicationGraph, i: int,
                              m: SecondOrderMatrix | None = None,
                              max_m: int | None = None) -> dict[int, float]:
    """Relational weights for partners plus ``m_ij / max(M)`` for friends of friends.

    ``max(M)`` is the largest off-diagonal entry of the whole second-order
    matrix; pass ``m`` and ``max_m`` to reuse them across inviters.
    """
    direct = relational_invite_weights(g, i)
    if m is None:
        m = second_order(g)
    if max_m is None:
        max_m = m.off_diagonal_max()
    out = dict(direct)
    if max_m > 0:
        for j, v in m.row(i).items():
            if j not in direct:
                out[j] = v / max_m
    return dict(sorted(out.items()))


def _pick(weights: Mapping[int, float], rng: np.random.Generator) -> int:
    keys = list(weights)
    cum = np.cumsum(list(weights.values()))
    u = rng.random() * cum[-1]
    idx = int(np.searchsorted(cum, u, side="right"))
    return keys[min(idx, len(keys) - 1)]


def invitation_stage(state: SimState, rng: np.random.Generator, variant: str,
                     events: Sequence[InvestmentEvent]) -> tuple[SimState, list[InvestmentEvent]]:
    """Each original investor invites one partner with probability ``Q_i``.

    Candidate weights come from the network as it stood when the stage began;
    invitees join the whole event and do not invite in turn.
    """
    if variant == "random":
        return state, list(events)
    if variant not in ("relational", "structural"):
        raise ValueError(f"unknown variant {variant!r}")
    g = state.graph
    frozen = g.copy()
    m = max_m = None
    if variant == "structural":
        m = second_order(frozen)
        max_m = m.off_diagonal_max()
    cache: dict[int, dict[int, float]] = {}

    def candidates(i: int) -> dict[int, float]:
        if i not in cache:
            if variant == "relational":
                cache[i] = relational_invite_weights(frozen, i)
            else:
                cache[i] = structural_invite_weights(frozen, i, m, max_m)
        return cache[i]

    tendency = state.tendency
    out = []
    for ev in events:
        members = list(ev.investors)
        member_set = set(members)
        for i in ev.investors:
            if rng.random() >= tendency[i]:
                continue
            weights = candidates(i)
            if not weights:
                continue
            j = _pick(weights, rng)
            if j in member_set:
                continue
            for k in members:
                g.record_coinvestment(k, j)
            members.append(j)
            member_set.add(j)
        if len(members) != len(ev.investors):
            ev = dataclasses.replace(ev, investors=tuple(sorted(members)))
        out.append(ev)
    # replace this step's random-stage events with their final membership
    state.events[len(state.events) - len(events):] = out
    return state, out


def make_rngs(seed: int) -> tuple[np.random.Generator, np.random.Generator]:
    invest_ss, invite_ss = np.random.SeedSequence(seed).spawn(2)
    return np.random.default_rng(invest_ss), np.random.default_rng(invite_ss)


def run(cfg: SimulationConfig) -> list[SimState]:
    """Simulate steps ``1..horizon`` and return a snapshot after each step."""
    invest_rng, invite_rng = make_rngs(cfg.seed)
    state = SimState()
    snapshots = []
    for t in range(1, cfg.horizon + 1):
        m_t, n_t = growth_schedule(cfg, t)
        state.step = t
        spawn_nodes(state, invest_rng, m_t - state.n_vcs, cfg)
        state.target_count = n_t
        _, events = random_stage(state, invest_rng)
        invitation_stage(state, invite_rng, cfg.variant, events)
        snapshots.append(state.snapshot())
    return snapshots
