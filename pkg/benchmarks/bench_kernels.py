"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--variant structural] [--horizon 10] [--repeat 3]

The input is the last snapshot of one simulated run.  Both backends must
agree on every output; the script exits non-zero if they do not.
"""
import argparse
import sys
import time

import numpy as np

from syndisim import _pykernels
from syndisim.sim import SimulationConfig, run

try:
    from syndisim import _ckernels
except ImportError:
    _ckernels = None

KERNELS = ("motif_counts", "betweenness_raw", "core_numbers")


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--variant", default="structural", choices=["random", "relational", "structural"])
    ap.add_argument("--horizon", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    g = run(SimulationConfig(horizon=args.horizon, variant=args.variant, seed=args.seed))[-1].graph
    indptr, indices, _ = g.to_csr()
    print(f"graph: {g.n_nodes} nodes, {g.n_edges} edges ({args.variant}, T={args.horizon})")
    if _ckernels is None:
        print("compiled extension not built; only the Python backend is available")

    ok = True
    print(f"{'kernel':<16}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}")
    for name in KERNELS:
        t_py, out_py = best_of(getattr(_pykernels, name), (indptr, indices), args.repeat)
        if _ckernels is None:
            print(f"{name:<16}{t_py:>12.4f}{'-':>12}{'-':>10}")
            continue
        t_c, out_c = best_of(getattr(_ckernels, name), (indptr, indices), args.repeat)
        if name == "betweenness_raw":
            same = np.allclose(out_py, out_c, rtol=1e-12, atol=1e-9)
        else:
            same = np.array_equal(np.asarray(out_py), np.asarray(out_c))
        ok &= same
        print(f"{name:<16}{t_py:>12.4f}{t_c:>12.4f}{t_py / t_c:>9.1f}x" + ("" if same else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
