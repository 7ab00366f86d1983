"""Compare the compiled rank kernels against the pure-Python fallback.

The backend is fixed at import time, so the script re-runs itself in two
subprocesses (one with ``BCL_PURE=1``) and prints a side-by-side table.

    python3 benchmarks/bench_backends.py [--repeat N]

Workloads cover the three paths that matter in practice: Bareiss on
boundary matrices (entries stay tiny — the compiled fast path), dense
modular rank on random matrices, and an end-to-end Betti computation.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

HERE = os.path.abspath(os.path.dirname(__file__))


def _boundary_matrix(C, k):
    from bcl import bits

    faces_k = C.faces(k)
    row_index = {m: i for i, m in enumerate(C.faces(k - 1))}
    mat = [[0] * len(faces_k) for _ in range(len(row_index))]
    for j, f in enumerate(faces_k):
        for t, v in enumerate(bits(f)):
            mat[row_index[f & ~(1 << v)]][j] = -1 if t & 1 else 1
    return mat


def workloads():
    import numpy as np

    from bcl import QQ, betti, bm
    from bcl import linalg

    B5, B6 = bm(5).complex, bm(6).complex
    bd = {(d, k): _boundary_matrix(C, k)
          for d, C in ((5, B5), (6, B6)) for k in (2, 3)}
    rng = np.random.default_rng(7)
    dense_small = rng.integers(0, 10007, size=(150, 150)).tolist()
    dense_large = rng.integers(0, 10007, size=(300, 300)).tolist()

    def bareiss_boundaries():
        return sum(linalg.rank_exact(m) for m in bd.values())

    def mod_p_150():
        return linalg.rank_mod_p_dense(dense_small, 10007)

    def mod_p_300():
        return linalg.rank_mod_p_dense(dense_large, 10007)

    def betti_bm5():
        from bcl.homology import _betti_cached

        _betti_cached.cache_clear()
        return betti(B5, QQ).betti

    return [
        ("bareiss boundary matrices (d=5,6; k=2,3)", bareiss_boundaries),
        ("dense rank mod 10007, 150x150", mod_p_150),
        ("dense rank mod 10007, 300x300", mod_p_300),
        ("betti over Q, d=5 bundle (cold cache)", betti_bm5),
    ]


def run_inner(repeat: int) -> None:
    from bcl.linalg import BACKEND

    results = {"backend": BACKEND, "times": {}, "answers": {}}
    for name, fn in workloads():
        best = None
        for _ in range(repeat):
            t0 = time.perf_counter()
            answer = fn()
            dt = time.perf_counter() - t0
            best = dt if best is None else min(best, dt)
        results["times"][name] = best
        results["answers"][name] = answer
    print(json.dumps(results))


def run_outer(repeat: int) -> int:
    rows = {}
    for pure in (False, True):
        env = dict(os.environ)
        env.pop("BCL_PURE", None)
        if pure:
            env["BCL_PURE"] = "1"
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner",
             "--repeat", str(repeat)],
            env=env, capture_output=True, text=True, check=True,
        )
        rows[pure] = json.loads(out.stdout)
    fast, slow = rows[False], rows[True]
    if fast["backend"] != "compiled":
        print("note: compiled extension unavailable; comparing python vs python")
    if fast["answers"] != slow["answers"]:
        print("BACKEND DISAGREEMENT:", fast["answers"], slow["answers"])
        return 1
    width = max(len(n) for n in fast["times"])
    print(f"{'workload':<{width}}  {'compiled':>10}  {'pure':>10}  {'speedup':>8}")
    for name, t_fast in fast["times"].items():
        t_slow = slow["times"][name]
        ratio = t_slow / t_fast if t_fast else float("inf")
        print(f"{name:<{width}}  {t_fast * 1e3:>8.1f}ms  {t_slow * 1e3:>8.1f}ms  {ratio:>7.1f}x")
    print("answers agree on all workloads")
    return 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3, help="take the best of N runs")
    ap.add_argument("--inner", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.inner:
        run_inner(args.repeat)
        return 0
    return run_outer(args.repeat)


if __name__ == "__main__":
    sys.exit(main())
