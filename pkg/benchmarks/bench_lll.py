#!/usr/bin/env python3
"""Benchmark the pure Python LLL kernel against the compiled one.

Runs both kernels on identical integer bases, checks that the outputs
match bit for bit, and reports wall times. The --pipeline flag adds
the real workload: the scaled diophantine approximation lattice of a
generated n = 10 instance.

    python benchmarks/bench_lll.py
    python benchmarks/bench_lll.py --backend gmpy2 --pipeline
"""

import argparse
import math
import sys
import time
from fractions import Fraction

from sscert import _lll_py
from sscert.diophantine import build_approx_lattice, choose_precision
from sscert.model import generate_instance
from sscert.rng import SplitMix64

try:
    from sscert import _lll_cy
except ImportError:
    _lll_cy = None

try:
    from gmpy2 import mpz
except ImportError:
    mpz = None


def random_cols(seed, d, bits):
    rng = SplitMix64(seed)
    return [
        [rng.randbits(bits) - (1 << (bits - 1)) for _ in range(d)] for _ in range(d)
    ]


def pipeline_cols(seed):
    inst = generate_instance(10, seed)
    ainf = inst.linf_norm
    alpha = tuple(Fraction(a, ainf) for a in inst.a)
    basis = build_approx_lattice(alpha, choose_precision(10))
    scale = math.lcm(*(x.denominator for col in basis.cols for x in col))
    return [
        [x.numerator * (scale // x.denominator) for x in col] for col in basis.cols
    ]


def run_kernel(kernel, cols, convert):
    cols = [[convert(x) for x in col] for col in cols]
    start = time.perf_counter()
    result = kernel.lll_reduce_ints(cols, convert(3), convert(4))
    elapsed = time.perf_counter() - start
    reduced = tuple(tuple(int(x) for x in col) for col in result[0])
    return elapsed, reduced


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--backend", choices=["int", "gmpy2"], default="int")
    parser.add_argument("--pipeline", action="store_true",
                        help="include the n=10 approximation lattice")
    args = parser.parse_args()

    if args.backend == "gmpy2":
        if mpz is None:
            sys.exit("gmpy2 is not installed")
        convert = mpz
    else:
        convert = int

    cases = [
        ("random d=6, 32-bit", random_cols(1, 6, 32)),
        ("random d=8, 64-bit", random_cols(2, 8, 64)),
        ("random d=10, 128-bit", random_cols(3, 10, 128)),
        ("random d=12, 256-bit", random_cols(4, 12, 256)),
    ]
    if args.pipeline:
        cases.append(("dioph lattice n=10 (~430-bit)", pipeline_cols(42)))

    kernels = [("python", _lll_py)]
    if _lll_cy is not None:
        kernels.append(("cython", _lll_cy))
    else:
        print("note: compiled kernel not built, timing the pure kernel only")

    width = max(len(name) for name, _ in cases)
    header = f"{'case':<{width}}  " + "".join(f"{name:>12}" for name, _ in kernels)
    if len(kernels) == 2:
        header += f"{'speedup':>10}"
    print(f"backend: {args.backend}")
    print(header)
    for case_name, cols in cases:
        times = []
        outputs = []
        for _, kernel in kernels:
            best = min(
                run_kernel(kernel, cols, convert) for _ in range(args.trials)
            )
            times.append(best[0])
            outputs.append(best[1])
        assert all(out == outputs[0] for out in outputs), "kernel outputs differ"
        row = f"{case_name:<{width}}  " + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
