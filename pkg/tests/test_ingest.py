import io

import numpy as np
import pytest

from syndisim.graph import read_edgelist, write_edgelist
from syndisim.ingest import (
    InsufficientDataError,
    InvestmentEvent,
    ParseError,
    estimate_frequency_tertiles,
    estimate_parameters,
    estimate_tendency_tertiles,
    invitation_curve,
    investment_counts,
    parse_events,
    project,
    syndication_by_distance,
    syndication_tendencies,
    tertile_means,
    write_events,
)

from _fixtures import frequency_fixture, invitation_fixture, tendency_fixture


def ev(eid, period, *investors):
    return InvestmentEvent(eid, period, f"t-{eid}", tuple(sorted(investors)))


def csv_text(*rows):
    return "event_id,period,target,investor\n" + "".join(r + "\n" for r in rows)


def test_parse_merges_rows_by_event():
    log = parse_events(io.StringIO(csv_text("E1,1,x,A", "E1,1,x,B", "E1,1,x,C")))
    assert len(log) == 1
    assert log[0].investors == (0, 1, 2)
    assert log.vc_names == ["A", "B", "C"]


def test_parse_disjoint_events():
    log = parse_events(io.StringIO(csv_text("E1,1,x,A", "E1,1,x,B", "E2,2,y,C", "E2,2,y,D")))
    assert len(log) == 2 and log.n_vcs == 4


def test_parse_missing_column_names_line():
    with pytest.raises(ParseError, match="line 3"):
        parse_events(io.StringIO(csv_text("E1,1,x,A", "E2,1,y")))


def test_parse_duplicate_row_warns():
    with pytest.warns(UserWarning, match="duplicate"):
        log = parse_events(io.StringIO(csv_text("E1,1,x,A", "E1,1,x,A", "E1,1,x,B")))
    assert log[0].investors == (0, 1)


def test_parse_empty_and_bad_header():
    assert len(parse_events(io.StringIO(""))) == 0
    with pytest.raises(ParseError, match="line 1"):
        parse_events(io.StringIO("a,b,c,d\n"))
    with pytest.raises(ParseError, match="integer"):
        parse_events(io.StringIO(csv_text("E1,soon,x,A")))


def test_write_parse_roundtrip():
    events = [ev("a", 1, 0, 1), ev("b", 2, 1)]
    buf = io.StringIO()
    write_events(events, buf, vc_names=["X", "Y"])
    log = parse_events(io.StringIO(buf.getvalue()))
    assert [e.investors for e in log] == [(0, 1), (1,)]


def test_project_examples():
    g = project([ev("e", 1, 0, 1, 2)])
    assert g.n_edges == 3 and all(w == 1 for *_, w in g.edges())
    g = project([ev("a", 1, 0, 1), ev("b", 1, 0, 1)])
    assert g.weight(0, 1) == 2
    g = project([ev("a", 1, 0)])
    assert g.n_nodes == 1 and g.n_edges == 0


def test_project_order_independent_and_roundtrip():
    rng = np.random.default_rng(1)
    events = [ev(str(k), int(rng.integers(1, 5)),
                 *rng.choice(20, size=int(rng.integers(1, 5)), replace=False).tolist())
              for k in range(60)]
    g = project(events)
    shuffled = list(events)
    rng.shuffle(shuffled)
    assert project(shuffled) == g
    buf = io.StringIO()
    write_edgelist(g, buf)
    assert read_edgelist(io.StringIO(buf.getvalue())) == g
    counts = investment_counts(events, 20)
    assert counts.sum() == sum(len(e.investors) for e in events)


def test_tertile_means():
    assert tertile_means([1, 2, 9]) == (1.0, 2.0, 9.0)
    assert tertile_means([9, 1, 2, 2, 1, 9]) == (1.0, 2.0, 9.0)
    # 7 values: sizes 3, 2, 2
    assert tertile_means([1, 1, 1, 2, 2, 3, 3]) == (1.0, 2.0, 3.0)
    with pytest.raises(InsufficientDataError):
        tertile_means([1, 2])


def test_frequency_tertiles_small():
    # rates 1, 2, 9 over a single period
    events = [ev("a", 1, 0)] + [ev(f"b{k}", 1, 1) for k in range(2)] + [ev(f"c{k}", 1, 2) for k in range(9)]
    assert estimate_frequency_tertiles(events) == (1.0, 2.0, 9.0)
    with pytest.raises(InsufficientDataError):
        estimate_frequency_tertiles(events[:3])


def test_frequency_tertiles_fixture():
    got = estimate_frequency_tertiles(frequency_fixture())
    for est, true in zip(got, (0.26, 0.80, 5.05)):
        assert abs(est - true) / true <= 0.05


def test_tendency():
    events = [ev("a", 1, 0, 1), ev("b", 1, 0, 2), ev("c", 1, 0, 3), ev("d", 1, 0)]
    assert syndication_tendencies(events)[0] == 0.75
    solo = [ev(str(k), 1, k) for k in range(6)]
    assert estimate_tendency_tertiles(solo) == (0.0, 0.0, 0.0)
    got = estimate_tendency_tertiles(tendency_fixture())
    for est, true in zip(got, (0.30, 0.59, 0.96)):
        assert abs(est - true) / true <= 0.05


def test_invitation_curve():
    # a pair co-investing in both periods succeeds in bucket 1
    assert invitation_curve([ev("a", 1, 0, 1), ev("b", 2, 0, 1)]) == {1: 1.0}
    assert invitation_curve([ev("a", 1, 0, 1)]) == {}
    curve = invitation_curve(invitation_fixture())
    assert curve[1] == pytest.approx(0.04, abs=1e-12)
    assert curve[10] == pytest.approx(0.75, abs=1e-12)
    assert 11 not in curve  # no pair ever reaches 11 before a later period
    assert all(0 <= p <= 1 for p in curve.values())


def test_syndication_by_distance():
    events = [
        # period 1: path 0-1-2-3 plus a repeated pair 4-5 (8 times)
        ev("a", 1, 0, 1), ev("b", 1, 1, 2), ev("c", 1, 2, 3), ev("z", 1, 6),
        *[ev(f"r{k}", 1, 4, 5) for k in range(8)],
        # period 2: the distance-2 pair syndicates, distance-3 pair does not
        ev("d", 2, 0, 2),
    ]
    probs = syndication_by_distance(events)
    assert probs["2"] == 0.5       # pairs (0,2) and (1,3); only (0,2) syndicates
    assert probs["3"] == 0.0       # (0,3) has no chance
    assert probs["1/8"] == 0.0     # (4,5): eight joint investments
    assert probs["1"] == 0.0
    assert list(probs) == ["1/8", "1", "2", "3"]
    assert syndication_by_distance([ev("a", 1, 0, 1)]) == {}


def test_estimate_parameters_json_shape():
    est = estimate_parameters(invitation_fixture())
    doc = est.to_json_dict()
    assert set(doc) == {"freq_tertiles", "tendency_tertiles", "invitation_curve"}
    assert doc["freq_tertiles"] == sorted(doc["freq_tertiles"])
    assert doc["invitation_curve"]["10"] == 0.75
