"""On-disk layout of a simulation run and deterministic JSON output.

A run directory holds::

    manifest.json        effective config, seed, version, digests
    events.csv           synthetic event log (ingest CSV format)
    attributes.csv       node,freq,tendency,birth_step
    steps/step_01.edges  one weighted edge list per step
"""

from __future__ import annotations

import hashlib
import json
import math
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from . import __version__
from .compare import Network
from .graph import load_edgelist, save_edgelist
from .ingest import read_events, write_events
from .sim import SimState, SimulationConfig

MANIFEST = "manifest.json"
EVENTS = "events.csv"
ATTRIBUTES = "attributes.csv"
STEPS_DIR = "steps"


def canonical(obj: Any) -> Any:
    """Round floats to 6 significant digits and stringify mapping keys."""
    if isinstance(obj, np.generic):
        obj = obj.item()
    if obj is None or isinstance(obj, (bool, str, int)):
        return obj
    if isinstance(obj, float):
        return float(f"{obj:.6g}") if math.isfinite(obj) else None
    if isinstance(obj, Mapping):
        return {_key(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _key(k: Any) -> str:
    if isinstance(k, np.generic):
        k = k.item()
    if isinstance(k, float):
        return repr(float(f"{k:.6g}"))
    return str(k)


def dumps(obj: Any) -> str:
    return json.dumps(canonical(obj), indent=2, ensure_ascii=False) + "\n"


def write_json(obj: Any, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


def sha256_file(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def step_filename(step: int, horizon: int) -> str:
    width = max(2, len(str(horizon)))
    return f"step_{step:0{width}d}.edges"


def write_run(out_dir: str | Path, cfg: SimulationConfig, snapshots: list[SimState],
              inputs: dict[str, str] | None = None) -> dict:
    out = Path(out_dir)
    (out / STEPS_DIR).mkdir(parents=True, exist_ok=True)
    produced = []
    for snap in snapshots:
        rel = f"{STEPS_DIR}/{step_filename(snap.step, cfg.horizon)}"
        save_edgelist(snap.graph, out / rel)
        produced.append(rel)
    final = snapshots[-1] if snapshots else SimState()
    with open(out / EVENTS, "w", encoding="utf-8", newline="\n") as fh:
        write_events(final.events, fh)
    produced.append(EVENTS)
    with open(out / ATTRIBUTES, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("node,freq,tendency,birth_step\n")
        for v in range(final.n_vcs):
            fh.write(f"{v},{float(final.freq[v])!r},{float(final.tendency[v])!r},{final.birth_step[v]}\n")
    produced.append(ATTRIBUTES)
    manifest = {
        "tool": "syndisim",
        "version": __version__,
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "inputs": {name: {"sha256": digest} for name, digest in sorted((inputs or {}).items())},
        "outputs": {rel: sha256_file(out / rel) for rel in produced},
    }
    write_json(manifest, out / MANIFEST)
    return manifest


def is_run_dir(path: str | Path) -> bool:
    return (Path(path) / MANIFEST).is_file()


def load_run(run_dir: str | Path) -> tuple[dict, dict[int, Network]]:
    """Manifest and per-step networks; frequency = investments on record up to that step."""
    root = Path(run_dir)
    manifest = json.loads((root / MANIFEST).read_text(encoding="utf-8"))
    horizon = manifest["config"]["horizon"]
    log = read_events(root / EVENTS) if (root / EVENTS).exists() else None
    nets = {}
    for step in range(1, horizon + 1):
        path = root / STEPS_DIR / step_filename(step, horizon)
        if not path.exists():
            continue
        g = load_edgelist(path)
        freq = None
        if log is not None:
            # event-file investor names are the numeric VcIds written by write_run
            upto = [ev for ev in log if ev.period <= step]
            counts = [0] * g.n_nodes
            for ev in upto:
                for vc in ev.investors:
                    vid = int(log.vc_names[vc])
                    if vid < g.n_nodes:
                        counts[vid] += 1
            freq = [float(c) for c in counts]
        nets[step] = Network(g, freq)
    return manifest, nets
