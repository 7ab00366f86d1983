"""Finite simplicial complexes on at most 64 vertices.

Faces are stored as integer bitmasks over vertex ids ``0..n-1``; bit ``v``
set means vertex ``v`` is in the face.  A complex is determined by its
inclusion-maximal faces (facets).  Lower-dimensional faces are materialized
per dimension on first use and cached; complexes are immutable, so the
caches are write-once and instances can be shared freely.

The ambient vertex count ``n`` is part of the identity of a complex and is
preserved by ``link``/``delete``/``restrict``/``contrastar``, so identities
such as  ``star(C, s).union(C.delete(s)) == C``  hold literally, with
equality meaning "same ambient ``n``, same facet set".
"""

from __future__ import annotations

import hashlib
from math import comb
from typing import Iterable, Iterator

from .errors import BadVertex, EmptyInput, NotAFace, NotPure

MAX_VERTICES = 64


# ---------------------------------------------------------------------------
# bitmask helpers

def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex ids into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into a sorted tuple of vertex ids."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _maximal(masks: Iterable[int]) -> frozenset[int]:
    """Filter a collection of masks down to the inclusion-maximal ones."""
    uniq = sorted(set(masks), key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return frozenset(kept)


# ---------------------------------------------------------------------------
# face-count vectors

class FVector:
    """Face numbers ``(f_{-1}, f_0, ..., f_{dim})`` with ``f_{-1} = 1``.

    Indexing is by dimension: ``fv[i]`` is the number of ``i``-faces, and
    indices outside the stored range give 0.
    """

    __slots__ = ("counts",)

    def __init__(self, counts: Iterable[int]):
        self.counts = tuple(int(c) for c in counts)

    @property
    def dim(self) -> int:
        return len(self.counts) - 2

    def __getitem__(self, i: int) -> int:
        j = i + 1
        if 0 <= j < len(self.counts):
            return self.counts[j]
        return 0

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, FVector):
            return self.counts == other.counts
        return self.counts == tuple(other)

    def __hash__(self) -> int:
        return hash(self.counts)

    def __repr__(self) -> str:
        return f"FVector{self.counts}"

    def euler_characteristic(self) -> int:
        """Alternating sum ``f_0 - f_1 + f_2 - ...`` (empty face excluded)."""
        return sum((-1) ** i * self.counts[i + 1] for i in range(len(self.counts) - 1))

    def reduced_euler_characteristic(self) -> int:
        return self.euler_characteristic() - 1


class HVector:
    """The h-vector ``(h_0, ..., h_d)`` of a pure ``(d-1)``-complex."""

    __slots__ = ("counts",)

    def __init__(self, counts: Iterable[int]):
        self.counts = tuple(int(c) for c in counts)

    @property
    def d(self) -> int:
        return len(self.counts) - 1

    def __getitem__(self, j: int) -> int:
        if 0 <= j < len(self.counts):
            return self.counts[j]
        return 0

    def __iter__(self):
        return iter(self.counts)

    def __eq__(self, other) -> bool:
        if isinstance(other, HVector):
            return self.counts == other.counts
        return self.counts == tuple(other)

    def __hash__(self) -> int:
        return hash(self.counts)

    def __repr__(self) -> str:
        return f"HVector{self.counts}"


def f_to_h(f: FVector, d: int | None = None) -> HVector:
    """Convert an f-vector to the h-vector, via
    ``h_k = sum_i (-1)^(k-i) C(d-i, k-i) f_{i-1}``."""
    if d is None:
        d = f.dim + 1
    return HVector(
        sum((-1) ** (k - i) * comb(d - i, k - i) * f[i - 1] for i in range(k + 1))
        for k in range(d + 1)
    )


def h_to_f(h: HVector) -> FVector:
    """Inverse of :func:`f_to_h`:  ``f_{i-1} = sum_j C(d-j, i-j) h_j``."""
    d = h.d
    return FVector(
        sum(comb(d - j, i - j) * h[j] for j in range(i + 1)) for i in range(d + 1)
    )


# ---------------------------------------------------------------------------
# the complex

class Complex:
    """An immutable simplicial complex given by its facet bitmasks.

    Use :meth:`from_facets` to construct from vertex iterables; it drops
    non-maximal input faces and validates vertex ids.  The complex whose
    only face is the empty face is represented by an empty facet set (it
    arises from deletions and rank selection, never from ``from_facets``).
    """

    def __init__(self, n: int, facets: frozenset[int], _token=None):
        if _token is not _TOKEN:
            raise TypeError("use Complex.from_facets()")
        self.n = n
        self.facets = facets
        self._faces: dict[int, tuple[int, ...]] | None = None
        self._face_set: frozenset[int] | None = None
        self._digest: str | None = None

    # -- construction -------------------------------------------------

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]]) -> "Complex":
        if n < 0 or n > MAX_VERTICES:
            raise BadVertex(f"ambient vertex count {n} outside 0..{MAX_VERTICES}")
        masks = []
        for f in facets:
            vs = tuple(f)
            for v in vs:
                if not isinstance(v, int) or v < 0 or v >= n:
                    raise BadVertex(f"vertex {v!r} outside 0..{n - 1}")
            masks.append(mask_of(vs))
        if not masks:
            raise EmptyInput("no facets given")
        return cls._make(n, _maximal(masks))

    @classmethod
    def empty(cls, n: int = 0) -> "Complex":
        """The complex ``{∅}`` on an ambient id range of size n."""
        if n < 0 or n > MAX_VERTICES:
            raise BadVertex(f"ambient vertex count {n} outside 0..{MAX_VERTICES}")
        return cls._make(n, frozenset())

    @classmethod
    def _make(cls, n: int, facets: frozenset[int]) -> "Complex":
        if facets == frozenset({0}):
            facets = frozenset()
        return cls(n, facets, _token=_TOKEN)

    def __getstate__(self):
        return (self.n, self.facets)

    def __setstate__(self, state):
        self.n, self.facets = state
        self._faces = None
        self._face_set = None
        self._digest = None

    # -- identity ------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Complex)
            and self.n == other.n
            and self.facets == other.facets
        )

    def __hash__(self) -> int:
        return hash((self.n, self.facets))

    def __repr__(self) -> str:
        return f"<Complex n={self.n} dim={self.dim} facets={len(self.facets)}>"

    def digest(self) -> str:
        """Hex digest of the canonical serialization (ambient n + facets)."""
        if self._digest is None:
            payload = f"n={self.n};facets={sorted(self.facets)}"
            self._digest = hashlib.sha256(payload.encode()).hexdigest()
        return self._digest

    # -- basic queries ---------------------------------------------------

    @property
    def is_empty(self) -> bool:
        """True for the complex ``{∅}`` with no vertices."""
        return not self.facets

    @property
    def dim(self) -> int:
        if not self.facets:
            return -1
        return max(f.bit_count() for f in self.facets) - 1

    @property
    def is_pure(self) -> bool:
        sizes = {f.bit_count() for f in self.facets}
        return len(sizes) <= 1

    @property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    @property
    def vertices(self) -> tuple[int, ...]:
        return bits(self.vertex_mask)

    def _build_faces(self) -> dict[int, tuple[int, ...]]:
        if self._faces is None:
            per_dim: dict[int, set[int]] = {}
            for facet in self.facets:
                for sub in iter_submasks(facet):
                    if sub:
                        per_dim.setdefault(sub.bit_count() - 1, set()).add(sub)
            self._faces = {k: tuple(sorted(v)) for k, v in per_dim.items()}
        return self._faces

    def faces(self, k: int) -> tuple[int, ...]:
        """All ``k``-faces as masks, sorted ascending by mask value."""
        if k == -1:
            return (0,)
        return self._build_faces().get(k, ())

    @property
    def face_set(self) -> frozenset[int]:
        """Every nonempty face as a mask (the empty face is implicit)."""
        if self._face_set is None:
            fs: set[int] = set()
            for v in self._build_faces().values():
                fs.update(v)
            self._face_set = frozenset(fs)
        return self._face_set

    def has_face(self, mask: int) -> bool:
        if mask == 0:
            return True
        if self._face_set is not None:
            return mask in self._face_set
        return any(mask & f == mask for f in self.facets)

    def is_facet(self, mask: int) -> bool:
        return mask in self.facets

    # -- enumerative invariants -------------------------------------------

    def f_vector(self) -> FVector:
        faces = self._build_faces()
        return FVector([1] + [len(faces.get(k, ())) for k in range(self.dim + 1)])

    def h_vector(self) -> HVector:
        if not self.is_pure:
            raise NotPure("h-vector requires a pure complex")
        return f_to_h(self.f_vector(), self.dim + 1)

    def euler_characteristic(self) -> int:
        return self.f_vector().euler_characteristic()

    # -- subcomplex operations ----------------------------------------------

    def _require_face(self, s: int) -> None:
        if not self.has_face(s):
            raise NotAFace(f"{bits(s)} is not a face")

    def link(self, s: int) -> "Complex":
        """Faces ``t`` disjoint from ``s`` with ``s ∪ t`` a face."""
        self._require_face(s)
        return Complex._make(
            self.n, frozenset(f & ~s for f in self.facets if s & f == s)
        )

    def star(self, s: int) -> "Complex":
        """Closed star: all faces ``t`` with ``s ∪ t`` a face."""
        self._require_face(s)
        return Complex._make(self.n, frozenset(f for f in self.facets if s & f == s))

    def contrastar(self, s: int) -> "Complex":
        """All faces not containing ``s`` (the "cost" of ``s``)."""
        self._require_face(s)
        out: set[int] = set()
        for f in self.facets:
            if s & f != s:
                out.add(f)
            else:
                m = s
                while m:
                    low = m & -m
                    out.add(f & ~low)
                    m ^= low
        return Complex._make(self.n, _maximal(out))

    def delete(self, w: int) -> "Complex":
        """All faces avoiding the vertex set ``w``."""
        return Complex._make(self.n, _maximal(f & ~w for f in self.facets))

    def restrict(self, w: int) -> "Complex":
        """Induced subcomplex on the vertex set ``w``."""
        return Complex._make(self.n, _maximal(f & w for f in self.facets))

    def union(self, other: "Complex") -> "Complex":
        if self.n != other.n:
            raise BadVertex("union needs matching ambient vertex counts")
        return Complex._make(self.n, _maximal(self.facets | other.facets))

    def intersection(self, other: "Complex") -> "Complex":
        if self.n != other.n:
            raise BadVertex("intersection needs matching ambient vertex counts")
        common = self.face_set & other.face_set
        return Complex._make(self.n, _maximal(common) if common else frozenset())

    def is_subcomplex_of(self, other: "Complex") -> bool:
        return self.n == other.n and all(other.has_face(f) for f in self.facets)

    def relabel(self, perm: dict[int, int], n: int | None = None) -> "Complex":
        """Apply an injective vertex relabeling; ids not in ``perm`` are kept."""
        n_new = self.n if n is None else n
        if not self.facets:
            return Complex._make(n_new, frozenset())
        out = []
        for f in self.facets:
            out.append(tuple(perm.get(v, v) for v in bits(f)))
        return Complex.from_facets(n_new, out)

    # -- combinatorial structure -----------------------------------------

    def missing_faces(self, k: int) -> tuple[int, ...]:
        """Minimal non-faces with ``k+1`` vertices: every proper subset is a
        face but the set itself is not."""
        if k < 0:
            return ()
        if k == 0:
            # inactive ambient vertices: their only proper subset is the
            # empty face, which is always present
            active = self.vertex_mask
            return tuple(1 << v for v in range(self.n) if not active >> v & 1)
        cands: set[int] = set()
        active = self.vertex_mask
        for g in self.faces(k - 1):
            rest = active & ~g
            while rest:
                low = rest & -rest
                rest ^= low
                cands.add(g | low)
        out = []
        for c in sorted(cands):
            if self.has_face(c):
                continue
            ok = True
            m = c
            while m:
                low = m & -m
                m ^= low
                if not self.has_face(c & ~low):
                    ok = False
                    break
            if ok:
                out.append(c)
        return tuple(out)

    def graph(self) -> "Graph":
        adj = {v: 0 for v in self.vertices}
        for e in self.faces(1):
            u, v = bits(e)
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(self.vertices, adj)

    def is_connected(self) -> bool:
        if self.is_empty:
            return False
        return self.graph().component_count() == 1

    def ridge_degrees(self) -> dict[int, int]:
        """For pure complexes: facet count through each ridge ((dim-1)-face)."""
        if not self.is_pure:
            raise NotPure("ridge degrees require a pure complex")
        deg: dict[int, int] = {}
        for facet in self.facets:
            m = facet
            while m:
                low = m & -m
                m ^= low
                r = facet & ~low
                deg[r] = deg.get(r, 0) + 1
        return deg

    def is_closed_pseudomanifold(self) -> bool:
        """Pure, and every ridge lies in exactly two facets."""
        if not self.facets or not self.is_pure:
            return False
        return all(c == 2 for c in self.ridge_degrees().values())


_TOKEN = object()


class Graph:
    """Undirected graph on vertex ids with bitmask adjacency."""

    def __init__(self, vertices: tuple[int, ...], adj: dict[int, int]):
        self.vertices = tuple(vertices)
        self.adj = adj

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in self.vertices:
            m = self.adj.get(u, 0)
            while m:
                low = m & -m
                m ^= low
                v = low.bit_length() - 1
                if v > u:
                    out.append((u, v))
        return sorted(out)

    def edge_count(self) -> int:
        return sum(self.adj.get(u, 0).bit_count() for u in self.vertices) // 2

    def degree(self, v: int) -> int:
        return self.adj.get(v, 0).bit_count()

    def components(self) -> dict[int, int]:
        """Map vertex id -> component index, indices in discovery order."""
        label: dict[int, int] = {}
        comp = 0
        for start in self.vertices:
            if start in label:
                continue
            stack = [start]
            label[start] = comp
            while stack:
                u = stack.pop()
                m = self.adj.get(u, 0)
                while m:
                    low = m & -m
                    m ^= low
                    w = low.bit_length() - 1
                    if w not in label:
                        label[w] = comp
                        stack.append(w)
            comp += 1
        return label

    def component_count(self) -> int:
        if not self.vertices:
            return 0
        return max(self.components().values()) + 1


def connected_components(G: Graph) -> tuple[int, dict[int, int]]:
    """Component count together with a vertex -> component labeling."""
    label = G.components()
    return (max(label.values()) + 1 if label else 0, label)
