"""Compare the compiled and pure-Python kernels on the hot paths.

    python benchmarks/bench_kernels.py [--sieve 2000000] [--repeat 3]

Each row is the best of ``--repeat`` wall-clock runs.
"""
import argparse
import time

from zetapartial import build_partial_sum, cyclotomic_field, kernels, strip_bounds
from zetapartial.coefficients import _local_rows


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def cases(args):
    F = cyclotomic_field(12)
    rows = _local_rows(F, args.sieve, "a")
    P = build_partial_sum(F, args.terms)
    G = cyclotomic_field(4)
    Q = build_partial_sum(G, 50)
    sb = strip_bounds(Q, G.n0)
    lo, hi, T = sb.alpha - 1, sb.beta + 1, args.height

    def table(k):
        k.multiplicative_table(args.sieve, 12, rows)

    def sums(k):
        for i in range(200):
            k.eval_sum(P.log_n, P.coef, 0, 0.5, 100.0 + i)

    def contour(k):
        for s0, s1 in ((lo, lo + T * 1j), (lo + T * 1j, hi + T * 1j), (hi + T * 1j, hi), (hi, lo)):
            k.edge_arg_change(Q.log_n, Q.coef, s0.real, s0.imag, s1.real, s1.imag, 1e-10, 60)

    return [
        (f"sieve table q=12 n<={args.sieve}", table),
        (f"200 sums, {len(P)} terms", sums),
        (f"contour q=4 X=50 T={T:g}", contour),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sieve", type=int, default=2_000_000)
    ap.add_argument("--terms", type=float, default=1e5)
    ap.add_argument("--height", type=float, default=500.0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    names = kernels.available()
    mods = {n: kernels.load(n) for n in names}
    print(f"{'case':<36}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases(args):
        t = {n: best_of(lambda m=m: fn(m), args.repeat) for n, m in mods.items()}
        line = f"{label:<36}" + "".join(f"{t[n]:>11.4f}s" for n in names)
        if "cython" in t:
            line += f"{t['python'] / t['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
