"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--n 9] [--repeat 3]
"""

import timeit

import numpy as np

from cycdes import _kernels_py as py

try:
    from cycdes import _kernels as cy
except ImportError:
    cy = None

ARC_PATTERNS = [
    (1, 3, 2, 4), (1, 3, 4, 2), (2, 4, 1, 3), (2, 4, 3, 1),
    (3, 1, 2, 4), (3, 1, 4, 2), (4, 2, 1, 3), (4, 2, 3, 1),
]


def cases(n):
    P = py.permutations_array(n)
    small = P[:: max(1, len(P) // 5000)]
    rng = np.random.default_rng(0)
    W = rng.integers(1, 5, size=(20000, 14), dtype=np.uint8)
    steps = [3, 2, 1, 3, 2, 3]
    words = [list(rng.integers(1, 3, size=40)) for _ in range(2000)]
    return [
        ("permutations_array", lambda k: k.permutations_array(n)),
        ("des_masks", lambda k: k.des_masks(P)),
        ("cdes_masks", lambda k: k.cdes_masks(P)),
        ("inverse_rows", lambda k: k.inverse_rows(P)),
        ("arc_flags", lambda k: k.arc_flags(P)),
        ("avoids_flags (8 patterns)", lambda k: k.avoids_flags(small, ARC_PATTERNS)),
        ("word_f x2000", lambda k: [k.word_f(w) for w in words]),
        ("multi_shuffle_rows", lambda k: k.multi_shuffle_rows(W, steps)),
    ]


def best(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    import argparse

    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=9, help="permutation size for the S_n kernels")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    if cy is None:
        print("compiled kernels not built; run: pip install -e . --no-build-isolation")
    print(f"S_{args.n}: {len(py.permutations_array(args.n))} permutations")
    print(f"{'kernel':<28}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for name, fn in cases(args.n):
        t_py = best(lambda: fn(py), args.repeat)
        if cy is None:
            print(f"{name:<28}{t_py:12.4f}{'-':>12}{'-':>10}")
            continue
        t_cy = best(lambda: fn(cy), args.repeat)
        print(f"{name:<28}{t_py:12.4f}{t_cy:12.4f}{t_py / t_cy:9.1f}x")


if __name__ == "__main__":
    main()
