"""Command-line entry point: ``syndisim {estimate,simulate,analyze,compare}``.

Exit codes: 0 success, 1 usage or config error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .compare import AlignmentError, Network, compare_runs, histogram, summarize
from .compare import InsufficientDataError as CompareDataError
from .graph import GraphError, density, load_edgelist
from .ingest import InsufficientDataError, ParseError, estimate_parameters, project, read_events
from .motifs import census
from .rundir import is_run_dir, load_run, sha256_file, write_json, write_run
from .sim import ConfigError, SimulationConfig, run

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

DATA_ERRORS = (ParseError, InsufficientDataError, CompareDataError, GraphError,
               AlignmentError, OSError, UnicodeDecodeError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def cmd_estimate(args) -> int:
    log = read_events(args.events)
    est = estimate_parameters(log.events)
    write_json(est.to_json_dict(), args.out)
    return EXIT_OK


def _load_config(path: str, seed: int | None) -> SimulationConfig:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError({"config": f"invalid JSON: {exc}"}) from None
    if not isinstance(raw, dict):
        raise ConfigError({"config": "top level must be a JSON object"})
    if seed is not None:
        raw["seed"] = seed
    return SimulationConfig.from_dict(raw)


def cmd_simulate(args) -> int:
    cfg = _load_config(args.config, args.seed)
    snapshots = run(cfg)
    write_run(args.out, cfg, snapshots, inputs={"config": sha256_file(args.config)})
    return EXIT_OK


def _event_frequency(log, n_nodes: int) -> list[float]:
    """Per-node investment counts; numeric investor names are taken as node ids."""
    numeric = all(name.isdigit() for name in log.vc_names)
    counts = [0.0] * n_nodes
    for ev in log:
        for vc in ev.investors:
            node = int(log.vc_names[vc]) if numeric else vc
            if node < n_nodes:
                counts[node] += 1
    return counts


def cmd_analyze(args) -> int:
    log = read_events(args.events) if args.events else None
    if args.graph:
        g = load_edgelist(args.graph)
    elif log is not None:
        g = project(log.events, log.n_vcs)
    else:
        raise UsageError("analyze needs --graph or --events")
    freq = _event_frequency(log, g.n_nodes) if log is not None else None
    summary = summarize(Network(g, freq), args.elite_fraction)
    doc = {
        "graph": {
            "nodes": g.n_nodes,
            "edges": g.n_edges,
            "density": density(g) if g.n_nodes >= 2 else None,
        },
        "histograms": {
            "degree": summary.degree,
            "strength": summary.strength,
            "clustering": histogram(summary.clustering),
        },
        "elites": summary.elites,
        "indicators": summary.indicators.to_dict(),
        "motifs": census(g),
        "meta": {
            "elite_fraction": args.elite_fraction,
            "frequency_source": "events" if freq is not None else "none",
        },
    }
    write_json(doc, args.out)
    return EXIT_OK


def cmd_compare(args) -> int:
    model_manifest, model = load_run(args.model)
    if is_run_dir(args.reference):
        _, reference = load_run(args.reference)
        ref_kind = "run"
    else:
        reference = Network(load_edgelist(args.reference))
        ref_kind = "edgelist"
    report = compare_runs(model, reference, args.elite_fraction,
                          meta={"model_config": model_manifest["config"], "reference_kind": ref_kind})
    write_json(report.to_json_dict(), args.out)
    if args.series_csv:
        with open(args.series_csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("step,ks_degree,ks_strength,ks_clustering,correlation\n")
            for item in report.correlation_series:
                ks = report.ks[item["step"]]
                cells = [ks["degree"], ks["strength"], ks["clustering"], item["correlation"]]
                fh.write(f"{item['step']}," + ",".join("" if c is None else f"{c:.6g}" for c in cells) + "\n")
    return EXIT_OK


def _fraction(text: str) -> float:
    value = float(text)
    if not 0 < value <= 1:
        raise argparse.ArgumentTypeError("must lie in (0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="syndisim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("estimate", help="estimate model parameters from an event CSV")
    p.add_argument("--events", required=True, help="event CSV (event_id,period,target,investor)")
    p.add_argument("--out", required=True, help="output JSON path")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("simulate", help="run one generative model")
    p.add_argument("--config", required=True, help="JSON config; keys mirror SimulationConfig")
    p.add_argument("--out", required=True, help="run directory to create")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("analyze", help="indicators, distributions and motifs of one network")
    p.add_argument("--graph", help="weighted edge list")
    p.add_argument("--events", help="event CSV; investment frequency is counted from it")
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--elite-fraction", type=_fraction, default=0.03)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("compare", help="compare a model run with a reference")
    p.add_argument("--model", required=True, help="run directory written by simulate")
    p.add_argument("--reference", required=True, help="edge list or run directory")
    p.add_argument("--out", required=True, help="output JSON path")
    p.add_argument("--elite-fraction", type=_fraction, default=0.03)
    p.add_argument("--series-csv", help="also write the per-step series as CSV")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, UsageError) as exc:
        for line in (exc.errors.items() if isinstance(exc, ConfigError) else [("error", str(exc))]):
            print(f"syndisim {args.command}: {line[0]}: {line[1]}", file=sys.stderr)
        return EXIT_USAGE
    except DATA_ERRORS as exc:
        print(f"syndisim {args.command}: data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
