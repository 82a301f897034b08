"""Compare the compiled and pure-Python kernels on the DP and the greedy sweep.

    python benchmarks/bench_backends.py [--dp-sizes 100,200,400] [--greedy-sizes 100000,400000]
"""
import argparse
import time

import numpy as np

from stackfold import _backend
from stackfold.corpus import random_sequence, trial_rng
from stackfold.greedy import GreedyConfig, greedy_fold
from stackfold.nested import dp_tables


def best_of(fn, repeats):
    fn()
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--dp-sizes", default="100,200,400")
    ap.add_argument("--greedy-sizes", default="100000,400000")
    ap.add_argument("--repeats", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    names = sorted(_backend.BACKENDS)
    if len(names) < 2:
        print("compiled kernels not importable; only the python backend will run")
    print(f"{'kernel':8} {'n':>9} " + " ".join(f"{b:>10}" for b in names) + "   speedup  agree")
    jobs = [("dp", int(s)) for s in args.dp_sizes.split(",")]
    jobs += [("greedy", int(s)) for s in args.greedy_sizes.split(",")]
    for kind, n in jobs:
        seq = random_sequence(trial_rng(args.seed, n), n)
        if kind == "dp":
            fn = lambda b: dp_tables(seq, backend=b).w  # noqa: E731
        else:
            fn = lambda b: greedy_fold(seq, GreedyConfig(3), backend=b).p  # noqa: E731
        res = {b: best_of(lambda: fn(b), args.repeats) for b in names}
        agree = all(np.array_equal(res[b][1], res[names[0]][1]) for b in names)
        speed = (f"{res['python'][0] / res['compiled'][0]:9.1f}x"
                 if "compiled" in res else "        -")
        print(f"{kind:8} {n:>9} " + " ".join(f"{res[b][0]:10.4f}" for b in names)
              + f" {speed}  {agree}")


if __name__ == "__main__":
    main()
