"""Compare the compiled and pure-Python row-echelon kernels.

    python3 benchmarks/bench_elimination.py [--repeat N]

Inputs include the coboundary matrices the cohomology code actually reduces.
"""

from __future__ import annotations

import argparse
import random
import time

from l3kit import _elim_py
from l3kit import fixtures as fx
from l3kit.exactla import _int_rows
from l3kit.rbo_cohomology import delta_T_matrix

try:
    from l3kit import _elim_ext
except ImportError:  # pragma: no cover
    _elim_ext = None


def _random_rows(rng, r, c, span):
    return [[rng.randint(-span, span) for _ in range(c)] for _ in range(r)]


def cases():
    rng = random.Random(0)
    out = [
        ("random 40x40 small", _random_rows(rng, 40, 40, 3)),
        ("random 80x60 small", _random_rows(rng, 80, 60, 3)),
        ("random 30x30 big ints", _random_rows(rng, 30, 30, 10 ** 12)),
    ]
    for name in ("fix_t", "lie2_regular_inverse", "sl2_adjoint_inverse"):
        S, T = fx.named_trbo_fixtures()[name]
        rows, _, _ = _int_rows(delta_T_matrix(S, T, 2))
        out.append((f"delta_T degree 2 on {name} ({len(rows)}x{len(rows[0])})", rows))
    return out


def bench(fn, rows, repeat):
    ncols = len(rows[0])
    best = float("inf")
    for _ in range(repeat):
        work = [list(r) for r in rows]
        t0 = time.perf_counter()
        res = fn(work, ncols)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'case':52s} {'python':>10s} {'cython':>10s} {'speedup':>8s}")
    for name, rows in cases():
        tp, rp = bench(_elim_py.row_echelon, rows, args.repeat)
        if _elim_ext is None:
            print(f"{name:52s} {tp * 1e3:9.2f}ms {'n/a':>10s}")
            continue
        tc, rc = bench(_elim_ext.row_echelon, rows, args.repeat)
        assert rp == rc, f"backends disagree on {name}"
        print(f"{name:52s} {tp * 1e3:9.2f}ms {tc * 1e3:9.2f}ms {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
