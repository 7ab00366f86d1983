"""Explicit balanced constructions: cross-polytope boundaries, balanced
connected sums and handle additions, stacked cross-polytopal spheres, and
the 3d-vertex sphere-bundle triangulations BM_d.

Vertex numbering is canonical so that two builds of the same object are
equal as complexes, not merely isomorphic: class c, index i (1-based)
occupies id c*d + (i-1).  For BM_d the classes are x:0, y:1, z:2.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .coloring import Coloring, validate_coloring
from .core import Complex, bits, mask_of
from .errors import (
    BadDimension,
    BadParameters,
    ColorMismatch,
    FaceCollision,
    NotAFacet,
    NotLocallyValid,
    SharedVertices,
)

__all__ = [
    "LabeledComplex",
    "bm",
    "bm_from_handle_pipeline",
    "connected_sum",
    "cross_polytope_boundary",
    "handle_addition",
    "stacked_cross_polytopal_sphere",
]


@dataclass(frozen=True)
class LabeledComplex:
    """A complex with a proper coloring and symbolic vertex names."""

    complex: Complex
    coloring: Coloring
    names: Mapping[int, str]

    def __post_init__(self):
        if not validate_coloring(self.complex, self.coloring):
            raise ColorMismatch("labeling requires a proper (dim+1)-coloring")
        names = dict(self.names)
        object.__setattr__(self, "names", names)
        if sorted(names) != list(self.complex.vertices):
            raise BadParameters("names must cover exactly the active vertices")
        if len(set(names.values())) != len(names):
            raise BadParameters("vertex names must be injective")

    @property
    def d(self) -> int:
        return self.complex.dim + 1


def _as_mask(face) -> int:
    return face if isinstance(face, int) else mask_of(face)


def cross_polytope_boundary(d: int) -> LabeledComplex:
    """Boundary of the d-dimensional cross-polytope: vertices u_i, v_i with
    color i, facets every transversal {w_1..w_d}, w_i in {u_i, v_i}."""
    if d < 1:
        raise BadDimension("cross-polytope boundary needs d >= 1")
    facets = []
    for pick in range(1 << d):
        facets.append([i + (d if pick >> i & 1 else 0) for i in range(d)])
    C = Complex.from_facets(2 * d, facets)
    kappa = Coloring({v: v % d + 1 for v in range(2 * d)})
    names = {i: f"u{i + 1}" for i in range(d)}
    names.update({d + i: f"v{i + 1}" for i in range(d)})
    return LabeledComplex(C, kappa, names)


def _fresh_name(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "'"
    return name


def _check_match(
    A: LabeledComplex, B: LabeledComplex, fa: int, fb: int, match
) -> dict[int, int]:
    """Normalize/derive the junction bijection as {B-vertex: A-vertex}."""
    va, vb = bits(fa), bits(fb)
    if match is None:
        by_color = {A.coloring[u]: u for u in va}
        try:
            pairs = {w: by_color[B.coloring[w]] for w in vb}
        except KeyError:
            raise ColorMismatch("facet colors do not match; give an explicit match")
        if len(set(pairs.values())) != len(va):
            raise ColorMismatch("facet colors do not match; give an explicit match")
        return pairs
    fwd = dict(match)  # A-vertex -> B-vertex, per the declared direction
    if sorted(fwd) != sorted(va) or sorted(fwd.values()) != sorted(vb):
        raise ColorMismatch("match must biject the two facet vertex sets")
    if any(A.coloring[u] != B.coloring[w] for u, w in fwd.items()):
        raise ColorMismatch("match does not preserve colors")
    return {w: u for u, w in fwd.items()}


def connected_sum(
    A: LabeledComplex,
    B: LabeledComplex,
    face_a,
    face_b,
    match: Mapping[int, int] | None = None,
) -> LabeledComplex:
    """Remove a facet from each summand and glue along the exposed boundary,
    identifying matched (same-colored, unless overridden) vertices.

    B's non-junction vertices get fresh ids after A's block, in ascending
    order of their original ids; names follow, primed on collision."""
    fa, fb = _as_mask(face_a), _as_mask(face_b)
    if not A.complex.is_facet(fa):
        raise NotAFacet("first face is not a facet of the first summand")
    if not B.complex.is_facet(fb):
        raise NotAFacet("second face is not a facet of the second summand")
    if fa.bit_count() != fb.bit_count():
        raise ColorMismatch("facets have different sizes")
    b_to_a = _check_match(A, B, fa, fb, match)

    relab: dict[int, int] = dict(b_to_a)
    nxt = A.complex.n
    for w in B.complex.vertices:
        if w not in relab:
            relab[w] = nxt
            nxt += 1
    facets = [f for f in A.complex.facets if f != fa]
    for g in B.complex.facets:
        if g != fb:
            facets.append(mask_of(relab[w] for w in bits(g)))
    C = Complex.from_facets(nxt, map(bits, facets))

    d = fa.bit_count()
    expect = (
        len(A.complex.face_set) - 1 + len(B.complex.face_set) - 1 - (2**d - 2)
    )
    if len(C.face_set) != expect:
        raise FaceCollision("identification merged faces beyond the glued boundary")

    kappa = dict(A.coloring.kappa)
    names = dict(A.names)
    taken = set(names.values())
    for w in B.complex.vertices:
        if w in b_to_a:
            continue
        kappa[relab[w]] = B.coloring[w]
        name = _fresh_name(B.names[w], taken)
        names[relab[w]] = name
        taken.add(name)
    return LabeledComplex(C, Coloring(kappa), names)


def handle_addition(
    A: LabeledComplex, face_f, face_g, match: Mapping[int, int] | None = None
) -> LabeledComplex:
    """Remove two disjoint facets and identify their vertex sets pairwise.

    The result must stay a closed simplicial pseudomanifold: no faces may
    merge apart from the two glued boundaries, and every ridge must end up
    in exactly two facets.  Violations raise with the offending face.
    Surviving ids are compacted to 0..n-1 in order; names and colors follow
    the kept (lower) vertex of each identified pair."""
    ff, fg = _as_mask(face_f), _as_mask(face_g)
    if ff & fg:
        raise SharedVertices("handle facets must be vertex-disjoint")
    if not A.complex.is_facet(ff) or not A.complex.is_facet(fg):
        raise NotAFacet("handle addition needs two facets")
    g_to_f = _check_match(A, A, ff, fg, match)

    facets = []
    for f in A.complex.facets:
        if f in (ff, fg):
            continue
        vs = [g_to_f.get(v, v) for v in bits(f)]
        if len(set(vs)) != len(vs):
            raise NotLocallyValid(f"facet collapsed under identification: {sorted(set(vs))}")
        facets.append(mask_of(vs))
    if len(set(facets)) != len(facets):
        dup = sorted({m for m in facets if facets.count(m) > 1})
        raise NotLocallyValid(f"facets merged under identification: {[bits(m) for m in dup]}")
    C = Complex.from_facets(A.complex.n, map(bits, facets))

    d = ff.bit_count()
    if len(C.face_set) != len(A.complex.face_set) - 2**d:
        raise NotLocallyValid("identification merged faces away from the glued pair")
    for ridge, deg in C.ridge_degrees().items():
        if deg != 2:
            raise NotLocallyValid(f"ridge {bits(ridge)} lies in {deg} facets")

    perm = {v: i for i, v in enumerate(C.vertices)}
    out = C.relabel(perm, n=len(perm))
    kappa = {perm[v]: A.coloring[v] for v in C.vertices}
    names = {perm[v]: A.names[v] for v in C.vertices}
    return LabeledComplex(out, Coloring(kappa), names)


def stacked_cross_polytopal_sphere(n: int, d: int) -> LabeledComplex:
    """Chain of n/d - 1 cross-polytope boundaries, consecutive copies glued
    along pure facets with same-colored vertices identified.  Layer j's
    color-i vertex has id j*d + (i-1)."""
    if d < 1 or n % d != 0 or n < 2 * d:
        raise BadParameters("need d >= 1, d | n and n >= 2d")
    if d == 1 and n > 2:
        raise BadParameters(
            "d = 1 only admits the single copy: gluing points leaves fewer than n vertices"
        )
    copies = n // d - 1
    out = cross_polytope_boundary(d)
    for j in range(1, copies):
        free_end = mask_of(range(j * d, (j + 1) * d))
        nxt = cross_polytope_boundary(d)
        out = connected_sum(out, nxt, free_end, mask_of(range(d)))
    return out


def bm(d: int) -> LabeledComplex:
    """The 3d-vertex balanced triangulation of the S^(d-2)-bundle over S^1:
    classes x, y, z of d vertices each; facets are the transversals inside
    each of the unions x∪y, y∪z, z∪x, minus each family's two one-class
    facets."""
    if d < 3:
        raise BadDimension("needs d >= 3")
    facets = []
    for a, b in ((0, 1), (1, 2), (2, 0)):
        for pick in range(1, (1 << d) - 1):  # skip all-a and all-b
            facets.append(
                [(b if pick >> i & 1 else a) * d + i for i in range(d)]
            )
    C = Complex.from_facets(3 * d, facets)
    kappa = Coloring({v: v % d + 1 for v in range(3 * d)})
    names = {}
    for c, cls in enumerate("xyz"):
        for i in range(d):
            names[c * d + i] = f"{cls}{i + 1}"
    return LabeledComplex(C, kappa, names)


def bm_from_handle_pipeline(d: int) -> LabeledComplex:
    """Build BM_d the long way: chain three cross-polytope boundaries by
    connected sums, then add a handle identifying the first and last layers.
    Equal (not merely isomorphic) to bm(d) under the canonical numbering."""
    if d < 3:
        raise BadDimension("needs d >= 3")
    chain = stacked_cross_polytopal_sphere(4 * d, d)
    first = mask_of(range(d))
    last = mask_of(range(3 * d, 4 * d))
    out = handle_addition(chain, first, last)
    names = {}
    for c, cls in enumerate("xyz"):
        for i in range(d):
            names[c * d + i] = f"{cls}{i + 1}"
    return LabeledComplex(out.complex, out.coloring, names)
