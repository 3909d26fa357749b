"""Compare the compiled and pure-Python HNF row kernels.

    python3 benchmarks/bench_kernels.py [--sizes 2 4 6] [--repeat 5]

The compiled kernel works on 64-bit words and hands a matrix back to the
Python kernel once an intermediate entry would overflow, so on large dense
inputs both columns converge.
"""
import argparse
import random
import timeit

from fgab.kernel import BACKENDS


def random_rows(rng, r, c, bound):
    return [[rng.randint(-bound, bound) for _ in range(c)] for _ in range(r)]


def bench(fn, cases, ncols, repeat):
    def once():
        for rows in cases:
            fn([list(r) for r in rows], ncols)

    return min(timeit.repeat(once, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 5, 6, 8, 12])
    ap.add_argument("--cases", type=int, default=200)
    ap.add_argument("--bound", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    names = sorted(BACKENDS)
    print(f"backends: {', '.join(names)}")
    header = f"{'size':>6} " + " ".join(f"{n:>12}" for n in names)
    if "cython" in BACKENDS:
        header += f" {'speedup':>9}"
    print(header)
    for n in args.sizes:
        rng = random.Random(n)
        cases = [random_rows(rng, n, 2 * n, args.bound) for _ in range(args.cases)]
        # identity block appended, as the library does when tracking transforms
        for rows in cases:
            for i, row in enumerate(rows):
                row[n:] = [int(i == j) for j in range(n)]
        times = {name: bench(BACKENDS[name], cases, n, args.repeat) for name in names}
        for name in names[1:]:
            ref = [list(r) for r in cases[0]]
            out = [list(r) for r in cases[0]]
            BACKENDS[names[0]](ref, n)
            BACKENDS[name](out, n)
            assert ref == out, "backends disagree"
        line = f"{n:>4}x{2 * n:<3}" + " ".join(f"{times[k] * 1e3:>10.1f}ms" for k in names)
        if "cython" in times:
            line += f" {times['python'] / times['cython']:>8.1f}x"
        print(line)


if __name__ == "__main__":
    main()
