"""Benchmark: compiled vs pure-Python min-ratio-cut kernel.

Runs the exact Cheeger search on planted-tree graphs of growing size with
both kernel implementations and reports wall times and speedup.  Usage:

    python3 benchmarks/bench_cheeger.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import time

from expander_forge import _mincut_py
from expander_forge.cheeger import HAVE_COMPILED_KERNEL, _bitmask_inputs
from expander_forge.construct import k4_graph, plant_trees, theta_base

try:
    from expander_forge import _mincut_core
except ImportError:
    _mincut_core = None


def cases():
    yield "K4+T1 (16v)", plant_trees(k4_graph(), 1)
    yield "theta+T3 (20v)", plant_trees(theta_base(), 3)
    yield "K4+T2 (28v)", plant_trees(k4_graph(), 2)


def run(kernel, g, repeat):
    adj, mult = _bitmask_inputs(g)
    nv = g.num_vertices
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernel.min_ratio_cut(adj, mult, nv, nv // 2)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if _mincut_core is None:
        print("compiled kernel not built; benchmarking pure Python only")
    print(f"{'case':<18}{'vertices':>9}{'python (s)':>12}"
          f"{'compiled (s)':>14}{'speedup':>9}")
    for name, g in cases():
        t_py, r_py = run(_mincut_py, g, args.repeat)
        if _mincut_core is not None:
            t_c, r_c = run(_mincut_core, g, args.repeat)
            assert (r_py[0], r_py[1], r_py[2]) == (r_c[0], r_c[1], r_c[2]), (
                f"kernel disagreement on {name}"
            )
            print(f"{name:<18}{g.num_vertices:>9}{t_py:>12.4f}"
                  f"{t_c:>14.4f}{t_py / t_c:>9.1f}x")
        else:
            print(f"{name:<18}{g.num_vertices:>9}{t_py:>12.4f}"
                  f"{'-':>14}{'-':>9}")
    print(f"\nactive kernel at import time: "
          f"{'compiled' if HAVE_COMPILED_KERNEL else 'pure python'}")


if __name__ == "__main__":
    main()
