"""Pure-Python backend for the rank kernels.

Mirrors the compiled extension: ``bareiss_rank`` (arbitrary-precision, so
it never overflows) and ``rank_mod_p`` (numpy-vectorized row reduction).
Selected at import time by :mod:`bcl.linalg` when the extension is absent
or ``BCL_PURE`` is set; also used as the escalation path when the compiled
Bareiss kernel hits its int64 magnitude guard.
"""

from __future__ import annotations

import numpy as np


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank over Q by fraction-free elimination on Python integers."""
    m = [list(r) for r in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    r = 0
    prev = 1
    while r < nr and r < nc:
        pi = pj = -1
        best = None
        for i in range(r, nr):
            row = m[i]
            for j in range(r, nc):
                v = row[j]
                if v:
                    a = -v if v < 0 else v
                    if best is None or a < best:
                        best = a
                        pi, pj = i, j
        if pi < 0:
            break
        if pi != r:
            m[r], m[pi] = m[pi], m[r]
        if pj != r:
            for row in m:
                row[r], row[pj] = row[pj], row[r]
        piv = m[r][r]
        rowr = m[r]
        for i in range(r + 1, nr):
            rowi = m[i]
            f = rowi[r]
            for j in range(r + 1, nc):
                rowi[j] = (piv * rowi[j] - f * rowr[j]) // prev
            rowi[r] = 0
        prev = piv
        r += 1
    return r


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    """Rank over Z/p by vectorized Gaussian elimination (p < 2**31)."""
    m = np.array(mat, dtype=np.int64) % p
    nr, nc = m.shape
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pi = r + int(nz[0])
        if pi != r:
            m[[r, pi]] = m[[pi, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r, c:] = (m[r, c:] * inv) % p
        factors = m[r + 1 :, c]
        hot = np.nonzero(factors)[0]
        if hot.size:
            block = m[r + 1 :, c:]
            block[hot] = (block[hot] - np.outer(factors[hot], m[r, c:])) % p
        r += 1
    return r
