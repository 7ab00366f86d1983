"""Combinatorial isomorphism of simplicial complexes.

Two complexes are isomorphic when a bijection of their active vertices
carries the facet set of one onto the facet set of the other.  Ambient
vertices that appear in no face are ignored.

Three cooperating pieces:

* iterated partition refinement (degree/link signatures) used as a cheap
  screen and as a candidate filter,
* a germ-propagation matcher for closed pseudomanifolds whose facet
  adjacency graph is connected: a facet-to-facet seed bijection forces the
  whole map along ridges, so candidates die fast,
* a generic backtracking matcher for everything else.

Every map produced by a matcher is re-verified against the facet sets
before it is returned.
"""

from __future__ import annotations

from itertools import permutations

from .core import Complex, bits, mask_of
from .errors import BadParameters

__all__ = ["canonical_form", "find_isomorphism", "is_isomorphic"]


# ---------------------------------------------------------------------------
# partition refinement

def _refine(C: Complex, seed: dict[int, int] | None = None) -> dict[int, int]:
    """Stable vertex coloring; isomorphic complexes get matching colorings.

    Colors are dense ints ordered by the (invariant) signature that produced
    them, so color k in one complex corresponds to color k in another.
    ``seed`` pins extra distinctions (used for individualization).
    """
    vs = list(C.vertices)
    if not vs:
        return {}
    facets_at: dict[int, list[int]] = {v: [] for v in vs}
    for f in C.facets:
        for v in bits(f):
            facets_at[v].append(f)
    # initial signature: f-vector of the star, i.e. face counts through v
    col: dict[int, int] = {}
    init: dict[int, tuple] = {}
    for v in vs:
        counts = []
        for k in range(1, C.dim + 1):
            counts.append(sum(1 for f in C.faces(k) if f >> v & 1))
        init[v] = (tuple(counts), -1 if seed is None else seed.get(v, -1))
    order = sorted(set(init.values()))
    col = {v: order.index(init[v]) for v in vs}
    ncls = len(order)
    while True:
        sig: dict[int, tuple] = {}
        for v in vs:
            around = sorted(
                tuple(sorted(col[u] for u in bits(f) if u != v)) for f in facets_at[v]
            )
            sig[v] = (col[v], tuple(around))
        order = sorted(set(sig.values()))
        new = {v: order.index(sig[v]) for v in vs}
        nnew = len(order)
        if nnew == ncls:
            return new
        col, ncls = new, nnew


def _color_classes(col: dict[int, int]) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for v, c in col.items():
        out.setdefault(c, []).append(v)
    return [sorted(out[c]) for c in sorted(out)]


def _color_profile(col: dict[int, int]) -> tuple[tuple[int, int], ...]:
    counts: dict[int, int] = {}
    for c in col.values():
        counts[c] = counts.get(c, 0) + 1
    return tuple(sorted(counts.items()))


# ---------------------------------------------------------------------------
# verification

def _apply(mapping: dict[int, int], f: int) -> int:
    return mask_of(mapping[v] for v in bits(f))


def _is_iso(A: Complex, B: Complex, mapping: dict[int, int]) -> bool:
    if sorted(mapping) != list(A.vertices):
        return False
    if sorted(mapping.values()) != list(B.vertices):
        return False
    return {_apply(mapping, f) for f in A.facets} == set(B.facets)


# ---------------------------------------------------------------------------
# germ propagation (closed pseudomanifolds)

def _facet_adjacency(C: Complex) -> dict[int, list[tuple[int, int]]] | None:
    """facet -> [(ridge, other facet)], or None when some ridge degree != 2
    or the facet adjacency graph is disconnected."""
    at_ridge: dict[int, list[int]] = {}
    for f in C.facets:
        for v in bits(f):
            at_ridge.setdefault(f & ~(1 << v), []).append(f)
    adj: dict[int, list[tuple[int, int]]] = {f: [] for f in C.facets}
    for r, fs in at_ridge.items():
        if len(fs) != 2:
            return None
        a, b = fs
        adj[a].append((r, b))
        adj[b].append((r, a))
    # connectivity of the facet graph
    facets = C.facets
    start = min(facets)
    seen = {start}
    stack = [start]
    while stack:
        f = stack.pop()
        for _, g in adj[f]:
            if g not in seen:
                seen.add(g)
                stack.append(g)
    if len(seen) != len(facets):
        return None
    return adj


def _propagate_germ(
    A: Complex,
    B: Complex,
    adj_a: dict[int, list[tuple[int, int]]],
    adj_b: dict[int, list[tuple[int, int]]],
    f0: int,
    g0: int,
    seed: dict[int, int],
) -> dict[int, int] | None:
    """Grow a vertex map from a seeded facet pair by walking ridges.

    Crossing a ridge in A forces crossing the image ridge in B (degree two
    everywhere), which forces the image of the one new vertex.  Returns the
    completed map or None on any clash; the caller must still verify."""
    vmap = dict(seed)
    used = set(vmap.values())
    if len(used) != len(vmap):
        return None
    fmap = {f0: g0}
    stack = [f0]
    while stack:
        f = stack.pop()
        g = fmap[f]
        for r, f2 in adj_a[f]:
            r_img = _apply(vmap, r)
            g2 = None
            for s, cand in adj_b[g]:
                if s == r_img:
                    g2 = cand
                    break
            if g2 is None:
                return None
            prev = fmap.get(f2)
            if prev is not None:
                if prev != g2:
                    return None
                continue
            v_new = (f2 & ~r).bit_length() - 1
            w_new = (g2 & ~r_img).bit_length() - 1
            got = vmap.get(v_new)
            if got is None:
                if w_new in used:
                    return None
                vmap[v_new] = w_new
                used.add(w_new)
            elif got != w_new:
                return None
            fmap[f2] = g2
            stack.append(f2)
    return vmap


def _germ_search(
    A: Complex, B: Complex, col_a: dict[int, int], col_b: dict[int, int]
):
    """Returns a map, None (no isomorphism), or _BACKTRACK (not applicable)."""
    adj_a = _facet_adjacency(A)
    if adj_a is None:
        return _BACKTRACK
    adj_b = _facet_adjacency(B)
    if adj_b is None:
        return None  # A qualifies, B does not: not isomorphic
    f0 = min(A.facets)
    src = tuple(bits(f0))
    src_cols = tuple(col_a[v] for v in src)
    for g0 in sorted(B.facets):
        for img in permutations(bits(g0)):
            if tuple(col_b[w] for w in img) != src_cols:
                continue
            vmap = _propagate_germ(A, B, adj_a, adj_b, f0, g0, dict(zip(src, img)))
            if vmap is not None and _is_iso(A, B, vmap):
                return vmap
    return None


_BACKTRACK = object()  # sentinel: germ matcher does not apply, fall through


# ---------------------------------------------------------------------------
# generic backtracking

def _backtrack_search(
    A: Complex, B: Complex, col_a: dict[int, int], col_b: dict[int, int]
) -> dict[int, int] | None:
    faces_a = A.face_set
    faces_b = B.face_set
    by_col: dict[int, list[int]] = {}
    for w, c in col_b.items():
        by_col.setdefault(c, []).append(w)
    # rare colors first, then favor vertices adjacent to already-placed ones
    graph = A.graph()
    order: list[int] = []
    placed_mask = 0
    rest = set(A.vertices)
    while rest:
        best = min(
            rest,
            key=lambda v: (
                -(graph.adj.get(v, 0) & placed_mask).bit_count(),
                len(by_col.get(col_a[v], ())),
                v,
            ),
        )
        order.append(best)
        placed_mask |= 1 << best
        rest.remove(best)

    vmap: dict[int, int] = {}
    used: set[int] = set()

    def feasible(v: int, w: int) -> bool:
        # every face through v whose other vertices are all placed must map
        # to a face of B (dimension-by-dimension would be slower than this
        # single sweep over the star)
        placed = mask_of(vmap) | (1 << v)
        for f in faces_a:
            if f >> v & 1 and f & ~placed == 0:
                img = mask_of(vmap[u] if u != v else w for u in bits(f))
                if img not in faces_b:
                    return False
        return True

    def go(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in by_col.get(col_a[v], ()):
            if w in used or not feasible(v, w):
                continue
            vmap[v] = w
            used.add(w)
            if go(i + 1):
                return True
            del vmap[v]
            used.remove(w)
        return False

    if go(0) and _is_iso(A, B, vmap):
        return dict(vmap)
    return None


# ---------------------------------------------------------------------------
# public API

def find_isomorphism(A: Complex, B: Complex) -> dict[int, int] | None:
    """A vertex bijection carrying facets(A) onto facets(B), or None."""
    if A.is_empty or B.is_empty:
        return {} if A.is_empty and B.is_empty else None
    if len(A.vertices) != len(B.vertices) or A.f_vector() != B.f_vector():
        return None
    col_a = _refine(A)
    col_b = _refine(B)
    if _color_profile(col_a) != _color_profile(col_b):
        return None
    got = _germ_search(A, B, col_a, col_b)
    if got is _BACKTRACK:
        got = _backtrack_search(A, B, col_a, col_b)
    return got


def is_isomorphic(A: Complex, B: Complex) -> bool:
    """Do the two complexes differ only by a relabeling of vertices?"""
    return find_isomorphism(A, B) is not None


_CANON_LIMIT = 16


def canonical_form(C: Complex) -> tuple:
    """A label-invariant fingerprint: equal forms iff isomorphic complexes.

    Individualization-refinement: repeatedly split the first non-singleton
    color class on every choice of distinguished vertex, and take the
    lexicographically least relabeled facet tuple over all discrete leaves.
    Exponential in principle, fine for the intended range (<= 16 active
    vertices)."""
    if C.is_empty:
        return (0, ())
    vs = list(C.vertices)
    if len(vs) > _CANON_LIMIT:
        raise BadParameters(
            f"canonical form supports at most {_CANON_LIMIT} active vertices"
        )
    best: tuple | None = None

    def leaves(seed: dict[int, int]) -> None:
        nonlocal best
        col = _refine(C, seed)
        classes = _color_classes(col)
        target = next((cls for cls in classes if len(cls) > 1), None)
        if target is None:
            perm = {v: i for i, (_, v) in enumerate(sorted((col[v], v) for v in vs))}
            form = tuple(sorted(tuple(sorted(perm[v] for v in bits(f))) for f in C.facets))
            if best is None or form < best:
                best = form
            return
        marks = max(seed.values(), default=-1) + 1
        for v in target:
            child = dict(seed)
            child[v] = marks
            leaves(child)

    leaves({})
    assert best is not None
    return (len(vs), best)
