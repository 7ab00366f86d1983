"""Proper vertex colorings, balancedness, and rank selection.

Colors are integers starting at 1.  A pure (d-1)-complex is *balanced*
when its 1-skeleton admits a proper d-coloring; facets are then rainbow
(one vertex of each color).
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .core import Complex, bits, mask_of
from .errors import BadParameters, ColorMismatch, NotPure


class Coloring:
    """A vertex-id -> color map (colors are ints >= 1)."""

    def __init__(self, kappa: Mapping[int, int]):
        k = {int(v): int(c) for v, c in kappa.items()}
        for v, c in k.items():
            if c < 1:
                raise BadParameters(f"color {c} for vertex {v}; colors start at 1")
        self.kappa = k

    def __getitem__(self, v: int) -> int:
        return self.kappa[v]

    def get(self, v: int, default=None):
        return self.kappa.get(v, default)

    def __contains__(self, v: int) -> bool:
        return v in self.kappa

    def __eq__(self, other) -> bool:
        return isinstance(other, Coloring) and self.kappa == other.kappa

    def __repr__(self) -> str:
        return f"Coloring({self.kappa!r})"

    def items(self):
        return self.kappa.items()

    def as_sorted_items(self) -> list[tuple[int, int]]:
        """JSON-friendly deterministic form: [(vertex, color), ...]."""
        return sorted(self.kappa.items())

    def colors_used(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.kappa.values())))

    def classes(self) -> dict[int, tuple[int, ...]]:
        out: dict[int, list[int]] = {}
        for v in sorted(self.kappa):
            out.setdefault(self.kappa[v], []).append(v)
        return {c: tuple(vs) for c, vs in out.items()}

    def class_mask(self, color: int) -> int:
        return mask_of(v for v, c in self.kappa.items() if c == color)

    def restrict(self, vertex_mask: int) -> "Coloring":
        return Coloring({v: c for v, c in self.kappa.items() if vertex_mask >> v & 1})

    def face_colors(self, face_mask: int) -> tuple[int, ...]:
        return tuple(self.kappa[v] for v in bits(face_mask))


def validate_coloring(C: Complex, kappa: Coloring) -> bool:
    """Total on the active vertices, proper on edges, and uses exactly
    ``dim+1`` colors."""
    active = C.vertices
    if any(v not in kappa for v in active):
        return False
    for e in C.faces(1):
        u, v = bits(e)
        if kappa[u] == kappa[v]:
            return False
    return len({kappa[v] for v in active}) == C.dim + 1


def find_balanced_coloring(C: Complex) -> Coloring | None:
    """Search for a proper (dim+1)-coloring of the 1-skeleton.

    Deterministic backtracking over vertices in id order; a vertex may
    take color ``c`` only if ``c <= (max color used so far) + 1``, which
    breaks color-permutation symmetry without losing completeness.
    Returns None when no balanced coloring exists.
    """
    if not C.is_pure:
        raise NotPure("balancedness is defined for pure complexes")
    d = C.dim + 1
    verts = list(C.vertices)
    adj = C.graph().adj
    assign: dict[int, int] = {}

    def walk(i: int, max_used: int) -> bool:
        if i == len(verts):
            return max_used == d
        v = verts[i]
        taken = {assign[u] for u in bits(adj.get(v, 0)) if u in assign}
        # cannot finish if the remaining vertices can't introduce enough colors
        if max_used + (len(verts) - i) < d:
            return False
        for c in range(1, min(max_used + 1, d) + 1):
            if c in taken:
                continue
            assign[v] = c
            if walk(i + 1, max(max_used, c)):
                return True
            del assign[v]
        return False

    if walk(0, 0):
        return Coloring(assign)
    return None


def rank_selected(C: Complex, kappa: Coloring, colors: Iterable[int]) -> Complex:
    """Subcomplex of the faces whose colors all lie in ``colors``.

    With ``colors`` empty this is the empty complex ``{∅}``."""
    if not validate_coloring(C, kappa):
        raise ColorMismatch("coloring is not a proper (dim+1)-coloring of the complex")
    s = frozenset(colors)
    bad = s - set(kappa.kappa.values())
    if bad:
        raise BadParameters(f"selected colors {sorted(bad)} are not used")
    keep = mask_of(v for v in C.vertices if kappa[v] in s)
    return C.restrict(keep)


def unique_large_class(kappa: Coloring, size: int) -> tuple[int, ...] | None:
    """Vertices of the unique color class of the given size, or None if no
    class (or more than one) has that size."""
    hits = [vs for vs in kappa.classes().values() if len(vs) == size]
    if len(hits) != 1:
        return None
    return hits[0]
