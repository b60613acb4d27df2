"""Time the compiled and pure-Python diagram kernels on identical inputs.

    python3 benchmarks/bench_kernels.py [--n 6] [--m 3] [--cases 2000] [--repeat 5]

Prints one line per kernel and backend with the best per-call time, and the
speedup when both backends are importable.
"""

import argparse
import random
import timeit

from bubble import diagrams
from bubble.cells import WeightLambda, enumerate_delta_basis
from bubble.kernels import available_backends


def workloads(n, m, cases, seed):
    rng = random.Random(seed)
    compose_args, planar_args = [], []
    for _ in range(cases):
        a = diagrams.random_diagram(n, m, rng)
        b = diagrams.random_diagram(n, m, rng, top=a.bottom)
        compose_args.append((a.labels, b.labels, n, n, n, a.bottom, m))
        d = diagrams.random_bubble(n, m, rng)
        planar_args.append((d.labels, n, n, d.colours, m))
    basis = enumerate_delta_basis(WeightLambda.of(n, (0,) * m))
    pairs = []
    for _ in range(cases):
        x = rng.choice(basis)
        same = [s for s in basis if s.colours == x.colours]
        y = rng.choice(same)
        pairs.append((x.partners(), y.partners(), x.colours, m))
    return {"compose": compose_args, "pair_form": pairs, "planar_pairing": planar_args}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--m", type=int, default=2)
    ap.add_argument("--cases", type=int, default=2000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if args.n % 2:
        ap.error("--n must be even so the zero weight has link states")

    data = workloads(args.n, args.m, args.cases, args.seed)
    backends = available_backends()
    print(f"n={args.n} m={args.m} cases={args.cases} backends={', '.join(backends)}")
    for name, calls in data.items():
        timings = {}
        for label, mod in backends.items():
            fn = getattr(mod, name)
            best = min(timeit.repeat(lambda: [fn(*c) for c in calls], number=1, repeat=args.repeat))
            timings[label] = best / len(calls)
            print(f"{name:15s} {label:7s} {timings[label] * 1e6:9.2f} us/call")
        if len(timings) == 2:
            print(f"{name:15s} speedup {timings['python'] / timings['cython']:8.1f}x")


if __name__ == "__main__":
    main()
