"""Compare the numba and numpy modular rank kernels on real strand matrices.

    python3 benchmarks/bench_rank.py [--repeat 3]
"""

from __future__ import annotations

import argparse
import os
import time

from spechtres import kernels
from spechtres.resolution import assemble
from spechtres.verify import strand_matrix

CASES = [("n22", 5, 2, 6), ("n22", 6, 2, 7), ("n22", 6, 3, 8), ("dd1", 2, 1, 7), ("dd1", 3, 2, 8)]


def timed_rank(mat, backend: str, repeat: int) -> tuple[int, float]:
    os.environ["SPECHTRES_BACKEND"] = backend
    kernels.rank_mod_p(mat[:2, :2])  # compile outside the timing
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        rank = kernels.rank_mod_p(mat)
        best = min(best, time.perf_counter() - start)
    return rank, best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    print(f"{'case':<22}{'shape':>14}{'rank':>8}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for family, size, i, e in CASES:
        mat = strand_matrix(assemble(family, size).differential(i), e)
        r_fast, t_fast = timed_rank(mat, "numba", args.repeat)
        r_slow, t_slow = timed_rank(mat, "numpy", args.repeat)
        assert r_fast == r_slow, (family, size, i, e, r_fast, r_slow)
        label = f"{family}({size}) d{i} e={e}"
        shape = f"{mat.shape[0]}x{mat.shape[1]}"
        print(f"{label:<22}{shape:>14}{r_fast:>8}{t_fast:>10.3f}{t_slow:>10.3f}{t_slow / t_fast:>9.1f}")
    os.environ.pop("SPECHTRES_BACKEND", None)


if __name__ == "__main__":
    main()
