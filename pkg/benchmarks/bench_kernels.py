"""Compare the compiled and pure-Python search kernels.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are run on identical inputs and their outputs compared
before any timing is reported.
"""

import argparse
import sys
import time

import numpy as np

from poncelet9 import kernels
from poncelet9.desarguesian import all_conics, pg
from poncelet9.poncelet import conic_oval_arrays


def best_of(fn, repeat):
    times = []
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def cycle_workload(q, n_conics):
    space = pg(q)
    conics = all_conics(space.F)[:n_conics]
    tangents, sec_a, sec_b, _ = conic_oval_arrays(space, conics)
    return lambda backend: kernels.cycle_masks(tangents, sec_a, sec_b, q + 1, backend=backend)


def arc_workload(q, max_results):
    plane = pg(q).plane
    return lambda backend: kernels.arc_search(plane, [], plane.order + 1, max_results, backend=backend)


WORKLOADS = [
    ("cycle masks PG(2,5), 400x400 conic pairs", cycle_workload(5, 400)),
    ("cycle masks PG(2,9), 150x150 conic pairs", cycle_workload(9, 150)),
    ("arc search PG(2,5), all ovals from scratch", arc_workload(5, 100_000)),
    ("arc search PG(2,9), first 300 ovals", arc_workload(9, 300)),
]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    try:
        kernels.backend_module("cython")
    except ImportError:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1

    print(f"{'workload':48} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for label, run in WORKLOADS:
        t_py, out_py = best_of(lambda: run("python"), args.repeat)
        t_c, out_c = best_of(lambda: run("cython"), args.repeat)
        same = np.array_equal(out_py, out_c) if isinstance(out_py, np.ndarray) else out_py == out_c
        if not same:
            print(f"{label}: backends disagree")
            return 1
        print(f"{label:48} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
