"""Compare the compiled kernels against the pure-Python fallback.

Run from the repository root::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--seed 1]

Each workload is a fixed batch of random small digraphs; the table reports
the best-of-``repeat`` wall time per batch and the speedup.
"""

import argparse
import random
import sys
import timeit

from kbranching import kernels


def _digraphs(rng, count, n, m):
    out = []
    for _ in range(count):
        arcs = [rng.sample(range(n), 2) for _ in range(m)]
        out.append((n, [a[0] for a in arcs], [a[1] for a in arcs],
                    [rng.randint(-3, 3) for _ in arcs]))
    return out


def _workloads(rng):
    small = _digraphs(rng, 40, 4, 6)
    mid = _digraphs(rng, 20, 8, 14)

    def deficiency(mod):
        for n, t, h, _ in mid:
            mod.deficiency_min(n, t, h, (1 << len(t)) - 1, 2, [[1] * n, [0] * (n - 2) + [1, 1]])

    def forests(mod):
        for n, t, h, _ in mid:
            mod.kforest_independent(n, t, h, (1 << len(t)) - 1, 2)

    def tables(mod):
        for n, t, h, c in small:
            mod.fb_table(n, t, h, c, 2)

    def packing(mod):
        for n, t, h, _ in mid:
            mod.pack(n, t, h, 1, [[1] + [0] * (n - 1), [0] * (n - 1) + [1]])

    shape = (3, 3, 3, 3)
    values = [rng.randint(-2, 2) if rng.random() < 0.7 else None for _ in range(81)]

    def exchange(mod):
        mod.check_exchange(shape, values, True)

    return [("deficiency_min n=8", deficiency), ("kforest_independent n=8", forests),
            ("fb_table n=4 k=2", tables), ("pack n=8 p=2", packing),
            ("check_exchange 3^4", exchange)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled kernels are not built; run `pip install --no-build-isolation -e .`")
        return 1
    print(f"{'workload':<26}{'python ms':>12}{'compiled ms':>14}{'speedup':>10}")
    for name, fn in _workloads(random.Random(args.seed)):
        times = []
        for mod in (kernels.python, kernels.compiled):
            best = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
            times.append(best * 1e3)
        print(f"{name:<26}{times[0]:>12.2f}{times[1]:>14.2f}{times[0] / times[1]:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
