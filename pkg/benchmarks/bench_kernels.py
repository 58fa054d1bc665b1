"""Compiled subset kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--points 8 10 12] [--repeat 3]

Times Hausdorff rows, a min-plus sweep and an exhaustive Fermat-Steiner solve
on seeded random spaces, and checks both kernels give the same answers.
"""

import argparse
import random
import time

from hypersteiner import fermat_steiner as fs
from hypersteiner.extended import INF
from hypersteiner.kernels import SubsetKernel, native_available
from hypersteiner.metric import FiniteSpace
from hypersteiner.random_instances import random_boundary, random_finite_space


def _best(fn, repeat):
    out, best = None, float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def _space_with(space, force_pure):
    sp = FiniteSpace(space.labels, space.dist, validate=False)
    s = sp.scale
    W = [[None if v is INF else int(v * s) for v in row] for row in sp.dist]
    sp.__dict__["kernel"] = SubsetKernel(W, force_pure=force_pure)
    return sp


def bench(n, repeat, seed=0):
    rng = random.Random(seed + n)
    base = random_finite_space(rng, n)
    sets = random_boundary(rng, base, 3)
    masks = [rng.randrange(1, 1 << n) for _ in range(8)]
    out = {}
    for label, force in (("native", False), ("python", True)):
        sp = _space_with(base, force)
        k = sp.kernel
        if k.backend != label:
            continue
        rows, t_row = _best(lambda: [k.row(m) for m in masks], repeat)
        cost = [k.inf] + [(m * 7919) % 97 for m in range(1, 1 << n)]
        (vals, _), t_mp = _best(lambda: k.minplus(cost), repeat)
        M = fs.Boundary([sp.from_mask(S.mask) for S in sets])
        res, t_b = _best(lambda: fs.solve_bruteforce(M), repeat)
        decoded = [[sp.decode(x) for x in r[1:]] for r in rows]
        out[label] = (t_row, t_mp, t_b, res.value, decoded, [sp.decode(v) for v in vals[1:]])
    return out


def main():
    ap = argparse.ArgumentParser(description="native vs fallback subset kernels")
    ap.add_argument("--points", type=int, nargs="+", default=[8, 10, 12])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not native_available():
        print("compiled kernels not built; timing the fallback only")
    print(f"{'n':>3} {'kernel':>7} {'rows s':>9} {'minplus s':>10} {'brute s':>9} {'value':>7}")
    for n in args.points:
        out = bench(n, args.repeat)
        for label, (t_row, t_mp, t_b, value, _, _) in out.items():
            print(f"{n:>3} {label:>7} {t_row:9.4f} {t_mp:10.4f} {t_b:9.4f} {str(value):>7}")
        if len(out) == 2:
            a, b = out["native"], out["python"]
            if a[3:] != b[3:]:
                raise SystemExit(f"kernels disagree at n={n}")
            print(f"{'':>3} {'speedup':>7} {b[0] / a[0]:8.1f}x {b[1] / a[1]:9.1f}x {b[2] / a[2]:8.1f}x")


if __name__ == "__main__":
    main()
