"""Exact linear algebra over Q and Z/p.

No floating point is used anywhere: ranks over Q come from fraction-free
(Bareiss) elimination on integer matrices, ranks over Z/p from modular
elimination.  Two backends implement the dense kernels — a compiled
extension and a pure-Python mirror — and one is chosen at import time;
``BACKEND`` records the choice and ``BCL_PURE=1`` forces the fallback.
The compiled Bareiss kernel guards int64 magnitudes and escalates to
arbitrary-precision Python integers when intermediate values grow.

The sparse Z/p rank (`rank_mod_p_sparse`) is an independent pipeline:
persistence-style column reduction on dictionaries, sharing no code with
the dense route.  Keep it that way; the test-suite uses the disagreement
of the two pipelines as an error detector.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _purerank
from .errors import BadParameters

try:
    if os.environ.get("BCL_PURE"):
        raise ImportError("BCL_PURE set")
    from . import _fastrank

    BACKEND = "compiled"
except ImportError:  # pragma: no cover - depends on build environment
    _fastrank = None
    BACKEND = "python"

_GUARD = 1 << 30


def check_prime(p: int) -> int:
    if p < 2 or p >= 1 << 31:
        raise BadParameters(f"modulus {p} out of range")
    if p % 2 == 0 and p != 2:
        raise BadParameters(f"modulus {p} is not prime")
    f = 3
    while f * f <= p:
        if p % f == 0:
            raise BadParameters(f"modulus {p} is not prime")
        f += 2
    return p


# ---------------------------------------------------------------------------
# dense ranks

def rank_exact(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix given as rows."""
    if not rows or not rows[0]:
        return 0
    if _fastrank is not None:
        try:
            arr = np.array(rows, dtype=np.int64)
        except OverflowError:
            arr = None
        if arr is not None and (arr.size == 0 or int(np.abs(arr).max()) < _GUARD):
            try:
                return _fastrank.bareiss_rank(arr)
            except OverflowError:
                pass  # escalate to big integers
    return _purerank.bareiss_rank([list(r) for r in rows])


def rank_mod_p_dense(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over Z/p by dense elimination."""
    if not rows or not rows[0]:
        return 0
    arr = np.array(rows, dtype=np.int64)
    if _fastrank is not None:
        return _fastrank.rank_mod_p(arr, p)
    return _purerank.rank_mod_p(arr, p)


# ---------------------------------------------------------------------------
# sparse rank over Z/p (independent pipeline)

def rank_mod_p_sparse(cols: Iterable[Iterable[tuple[int, int]]], p: int) -> int:
    """Rank over Z/p of a matrix given column-wise as (row, coeff) pairs.

    Column reduction: repeatedly cancel each column's lowest nonzero row
    against the stored pivot column for that row; a column that survives
    becomes a new pivot.  The number of pivots is the rank.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in cols:
        cur: dict[int, int] = {}
        for r, v in col:
            v %= p
            if v:
                w = (cur.get(r, 0) + v) % p
                if w:
                    cur[r] = w
                else:
                    cur.pop(r, None)
        while cur:
            low = max(cur)
            piv = pivots.get(low)
            if piv is None:
                break
            f = cur[low]  # pivot columns are normalized to coefficient 1
            for r, v in piv.items():
                w = (cur.get(r, 0) - f * v) % p
                if w:
                    cur[r] = w
                else:
                    cur.pop(r, None)
        if cur:
            low = max(cur)
            inv = pow(cur[low], p - 2, p)
            pivots[low] = {r: (v * inv) % p for r, v in cur.items()}
            rank += 1
    return rank


# ---------------------------------------------------------------------------
# kernels (small dense systems; used for relative-cycle bases)

def kernel_mod_p(rows: Sequence[Sequence[int]], ncols: int, p: int) -> list[tuple[int, ...]]:
    """Basis of the right kernel over Z/p, as coefficient tuples."""
    m = [[v % p for v in row] for row in rows]
    nr = len(m)
    pivots: list[int] = []  # pivot column of each pivot row
    r = 0
    for c in range(ncols):
        pi = next((i for i in range(r, nr) if m[i][c]), None)
        if pi is None:
            continue
        m[r], m[pi] = m[pi], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(v * inv) % p for v in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for c in free:
        vec = [0] * ncols
        vec[c] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-m[i][c]) % p
        basis.append(tuple(vec))
    return basis


def kernel_exact(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the right kernel over Q, cleared to integer tuples."""
    m = [[Fraction(v) for v in row] for row in rows]
    nr = len(m)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pi = next((i for i in range(r, nr) if m[i][c]), None)
        if pi is None:
            continue
        m[r], m[pi] = m[pi], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nr):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for c in free:
        vec = [Fraction(0)] * ncols
        vec[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][c]
        lcm = 1
        for v in vec:
            lcm = lcm * v.denominator // gcd(lcm, v.denominator)
        ints = [int(v * lcm) for v in vec]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        basis.append(tuple(ints))
    return basis


def rank_over(rows: Sequence[Sequence[int]], field_p: int | None) -> int:
    """Rank of an integer matrix over Q (``field_p=None``) or Z/p."""
    if field_p is None:
        return rank_exact(rows)
    return rank_mod_p_dense(rows, field_p)
