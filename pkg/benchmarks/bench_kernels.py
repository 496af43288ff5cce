"""Time each kernel under the compiled and pure-Python backends.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Prints one row per kernel with the best wall time per backend and the speedup.
"""
from __future__ import annotations

import argparse
import random
import time

from garment import kernels
from garment.geom import random_point_set
from garment.structures import StructureKind, kind_mask

ALL = kind_mask(StructureKind)
PB = kind_mask({StructureKind.PANT, StructureKind.BOWTIE})


def _xy(pts):
    return [p.x for p in pts], [p.y for p in pts]


def workloads(seed: int):
    rng = random.Random(seed)
    xs12, ys12 = _xy(random_point_set(12, rng, 2**16))
    xs11, ys11 = _xy(random_point_set(11, rng, 2**16))
    xs40, ys40 = _xy(random_point_set(40, rng, 2**20))
    rows11, _ = kernels.instance_table(xs11, ys11, PB, True)
    red = sum(1 << i for i in rng.sample(range(12), 6))
    return {
        "orientation_table n=40": lambda k: k.orientation_table(xs40, ys40),
        "instance_table n=12 all kinds": lambda k: k.instance_table(xs12, ys12, ALL, False),
        "empty_mono_count n=12": lambda k: k.empty_mono_count(xs12, ys12, red, PB),
        "find_coloring n=11 full scan": lambda k: k.find_coloring(k.quad_masks(rows11), 11),
        "max_convex_chain n=40": lambda k: k.max_convex_chain(xs40, ys40),
        "count_convex n=40 k=5": lambda k: k.count_convex(xs40, ys40, 5),
    }


def best_time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    names = sorted(kernels.BACKENDS)
    print(f"{'kernel':34s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, job in workloads(args.seed).items():
        times = {n: best_time(lambda: job(kernels.BACKENDS[n]), args.repeat) for n in names}
        line = f"{label:34s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if "cython" in times:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
