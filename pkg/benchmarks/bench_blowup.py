"""Compare the compiled and pure-Python blow-up kernels.

    python benchmarks/bench_blowup.py [--repeat N]

Workloads: every multiplicity sequence of a small class grid (the shape of a
graph-law scan), and a few long sequences from classes with large exponents.
"""

import argparse
import sys
import timeit

from npiclass import _kernels, parse_class
from npiclass.dual_graph import _stage_sequences
from npiclass.grid import ScanSpec, iter_grid


def sequences(classes):
    out = []
    for t in classes:
        stages, _, _ = _stage_sequences(t, None, 256)
        out.append([m for s in stages for m in s])
    return out


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not _kernels.HAVE_EXTENSION:
        print("compiled kernel not built; only the Python backend is available")
        return 1

    grid = sequences(iter_grid(ScanSpec(max_g=2, max_numerator=20, max_denominator=5)))
    long = sequences(
        parse_class(s)
        for s in ["1; 3/2, 5000", "2; 5/2, 7/5, 20000", "3; 5/2, 7/5, 8/3, 3200", "1; 999/2, 1"]
    )
    for s in grid + long:
        assert _kernels.simulate(s, "cython") == _kernels.simulate(s, "python")

    print(f"{'workload':<22}{'seqs':>7}{'points':>10}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for name, seqs in [("grid g<=2 q<=20 p<=5", grid), ("long tails", long)]:
        times = {}
        for backend in ("python", "cython"):
            times[backend] = min(
                timeit.repeat(
                    lambda: [_kernels.simulate(s, backend) for s in seqs], number=1, repeat=args.repeat
                )
            )
        pts = sum(map(len, seqs))
        print(
            f"{name:<22}{len(seqs):>7}{pts:>10}{times['python']:>11.3f}{times['cython']:>11.3f}"
            f"{times['python'] / times['cython']:>8.1f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
