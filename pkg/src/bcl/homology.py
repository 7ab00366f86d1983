"""Simplicial homology with exact arithmetic.

Reduced Betti numbers come from boundary-matrix ranks of the augmented
chain complex: ``beta~_k = f_k - rank d_k - rank d_{k+1}``, where ``d_0``
is the augmentation onto the empty face.  Faces of each dimension are
ordered by increasing bitmask value and oriented by increasing vertex id,
so the matrices — and everything derived from them — are deterministic.

Over Q, ranks are computed by dense fraction-free elimination on integer
matrices (no floating point); over Z/p, by sparse column reduction.  These
are independent pipelines on purpose — see :mod:`bcl.linalg`.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from . import linalg
from .core import Complex, bits, mask_of
from .errors import (
    BadParameters,
    BadVertex,
    DimensionTooSmall,
    EmptyInput,
    HypothesisViolated,
    NotASphere,
    NotASubcomplex,
    NotBuchsbaum,
    NotMonochromatic,
    NotPure,
)
from .report import Certificate, certificate, complex_payload


# ---------------------------------------------------------------------------
# coefficient fields

@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field Z/p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            linalg.check_prime(self.p)

    @property
    def is_q(self) -> bool:
        return self.p is None

    def label(self) -> str:
        return "Q" if self.p is None else f"Z/{self.p}"

    @staticmethod
    def parse(text: str | int | None) -> "Field":
        if text is None:
            return QQ
        if isinstance(text, int):
            return Field(text)
        s = str(text).strip()
        if s.upper() in ("Q", "QQ"):
            return QQ
        for prefix in ("Z/", "z/", "Z", "z", "F", "f", "GF", "gf"):
            if s.startswith(prefix) and s[len(prefix) :].isdigit():
                return Field(int(s[len(prefix) :]))
        if s.isdigit():
            return Field(int(s))
        raise BadParameters(f"cannot parse coefficient field {text!r}")


QQ = Field(None)
GF2 = Field(2)


@dataclass(frozen=True)
class BettiVector:
    """Reduced Betti numbers ``(beta~_0, ..., beta~_dim)`` over ``field``."""

    betti: tuple[int, ...]
    field: str

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.betti):
            return self.betti[i]
        return 0

    def __iter__(self):
        return iter(self.betti)

    def __len__(self):
        return len(self.betti)


# ---------------------------------------------------------------------------
# boundary ranks

def _boundary_rank(C: Complex, k: int, p: int | None) -> int:
    faces_k = C.faces(k)
    if not faces_k:
        return 0
    if k == 0:
        return 1  # augmentation row of ones has rank 1
    row_index = {m: i for i, m in enumerate(C.faces(k - 1))}
    if p is None:
        mat = [[0] * len(faces_k) for _ in range(len(row_index))]
        for j, f in enumerate(faces_k):
            for t, v in enumerate(bits(f)):
                mat[row_index[f & ~(1 << v)]][j] = -1 if t & 1 else 1
        return linalg.rank_exact(mat)
    cols = []
    for f in faces_k:
        cols.append(
            [(row_index[f & ~(1 << v)], -1 if t & 1 else 1) for t, v in enumerate(bits(f))]
        )
    return linalg.rank_mod_p_sparse(cols, p)


@lru_cache(maxsize=16384)
def _betti_cached(C: Complex, p: int | None) -> tuple[int, ...]:
    dim = C.dim
    ranks = [_boundary_rank(C, k, p) for k in range(dim + 2)]
    fv = C.f_vector()
    return tuple(fv[k] - ranks[k] - ranks[k + 1] for k in range(dim + 1))


def betti(C: Complex, field: Field = QQ) -> BettiVector:
    """Reduced Betti numbers of a nonempty complex."""
    if C.is_empty:
        raise EmptyInput("betti of the empty complex; use reduced_betti for degree -1")
    return BettiVector(_betti_cached(C, field.p), field.label())


def reduced_betti(C: Complex, i: int, field: Field = QQ) -> int:
    """``beta~_i`` with the conventions ``beta~_{-1}({∅}) = 1`` and 0 outside
    the supported range."""
    if C.is_empty:
        return 1 if i == -1 else 0
    if i == -1:
        return 0
    if i < -1 or i > C.dim:
        return 0
    return betti(C, field)[i]


# ---------------------------------------------------------------------------
# relative homology

def relative_betti(
    C: Complex, A: Complex, field: Field = QQ, degree: int | None = None
) -> tuple[int, ...] | int:
    """Betti numbers of the pair ``(C, A)``.

    With ``degree=None`` returns the full profile in degrees ``0..dim C``;
    with an integer degree returns that single Betti number (0 outside the
    supported range).  ``A`` may be the empty complex ``{∅}``, in which case
    this is the unreduced homology of ``C`` (the empty face is quotiented
    away, so no augmentation survives).
    """
    if C.is_empty:
        raise EmptyInput("relative homology needs a nonempty ambient complex")
    if not A.is_subcomplex_of(C):
        raise NotASubcomplex("second argument is not a subcomplex of the first")
    if degree is not None and not 0 <= degree <= C.dim:
        return 0
    dim = C.dim
    a_faces = A.face_set
    gens = [tuple(m for m in C.faces(k) if m not in a_faces) for k in range(dim + 1)]
    ranks = []
    for k in range(dim + 2):
        col_faces = gens[k] if k <= dim else ()
        row_pos = {m: i for i, m in enumerate(gens[k - 1])} if k >= 1 else {}
        if not col_faces or not row_pos:
            ranks.append(0)
            continue
        cols = []
        for f in col_faces:
            entries = []
            for t, v in enumerate(bits(f)):
                g = f & ~(1 << v)
                i = row_pos.get(g)
                if i is not None:
                    entries.append((i, -1 if t & 1 else 1))
            cols.append(entries)
        if field.is_q:
            mat = [[0] * len(cols) for _ in range(len(row_pos))]
            for j, entries in enumerate(cols):
                for i, s in entries:
                    mat[i][j] = s
            ranks.append(linalg.rank_exact(mat))
        else:
            ranks.append(linalg.rank_mod_p_sparse(cols, field.p))
    out = tuple(len(gens[k]) - ranks[k] - ranks[k + 1] for k in range(dim + 1))
    return out if degree is None else out[degree]


def _top_relative_cycles(
    C: Complex, s: int, p: int | None
) -> tuple[tuple[int, ...], list[tuple[int, ...]]]:
    """Basis of the top relative cycles of ``(C, cost s)``.

    Columns are the ``(d-1)``-faces containing ``s`` (in mask order); rows
    the ``(d-2)``-faces containing ``s``.  Returns (columns, basis vectors).
    ``s = 0`` gives the absolute (unreduced) top cycles: cost ∅ is void, so
    no augmentation row may appear even when ``d = 1``.
    """
    d = C.dim + 1
    cols = tuple(f for f in C.faces(d - 1) if f & s == s)
    if s == 0 and d == 1:
        rows: tuple[int, ...] = ()
    else:
        rows = tuple(f for f in C.faces(d - 2) if f & s == s)
    row_pos = {m: i for i, m in enumerate(rows)}
    mat = [[0] * len(cols) for _ in range(len(rows))]
    for j, f in enumerate(cols):
        for t, v in enumerate(bits(f)):
            g = f & ~(1 << v)
            i = row_pos.get(g)
            if i is not None:
                mat[i][j] = -1 if t & 1 else 1
    if not rows:
        # no relative boundary constraints: every column is a cycle
        basis = [tuple(1 if i == j else 0 for i in range(len(cols))) for j in range(len(cols))]
        return cols, basis
    if p is None:
        return cols, linalg.kernel_exact(mat, len(cols))
    return cols, linalg.kernel_mod_p(mat, len(cols), p)


# ---------------------------------------------------------------------------
# link-based predicates

def _sphere_profile_ok(link: Complex, target_dim: int, field: Field) -> bool:
    """Does ``link`` have the reduced homology of a ``target_dim``-sphere?"""
    if link.is_empty:
        return target_dim == -1
    if target_dim == -1:
        return False
    bv = betti(link, field)
    for k in range(link.dim + 1):
        if bv[k] != (1 if k == target_dim else 0):
            return False
    # degrees above link.dim vanish, so the target degree must be in range
    return target_dim <= link.dim


def _manifold_worker(args) -> bool:
    C, chunk, p = args
    field = Field(p)
    dim = C.dim
    for s in chunk:
        if not _sphere_profile_ok(C.link(s), dim - s.bit_count(), field):
            return False
    return True


def _all_nonempty_faces(C: Complex) -> list[int]:
    out: list[int] = []
    for k in range(C.dim + 1):
        out.extend(C.faces(k))
    return out


_MANIFOLD_CACHE: dict[tuple[Complex, int | None], bool] = {}


def is_homology_manifold(C: Complex, field: Field = QQ, jobs: int = 1) -> bool:
    """Every nonempty face's link has the homology of a sphere of the
    complementary dimension (computed over ``field``)."""
    if C.is_empty:
        raise EmptyInput("empty complex")
    if not C.is_pure:
        raise NotPure("homology manifolds are pure")
    key = (C, field.p)
    got = _MANIFOLD_CACHE.get(key)
    if got is None:
        faces = _all_nonempty_faces(C)
        jobs = max(1, jobs)
        if jobs > 1 and len(faces) > 64:
            chunks = [faces[i::jobs] for i in range(jobs)]
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                got = all(ex.map(_manifold_worker, [(C, ch, field.p) for ch in chunks]))
        else:
            got = _manifold_worker((C, faces, field.p))
        _MANIFOLD_CACHE[key] = got
    return got


def is_homology_sphere(C: Complex, field: Field = QQ, jobs: int = 1) -> bool:
    """Homology manifold with the reduced homology of ``S^dim``."""
    if C.is_empty:
        raise EmptyInput("empty complex")
    if not C.is_pure:
        raise NotPure("homology spheres are pure")
    if not _sphere_profile_ok(C, C.dim, field):
        return False
    return is_homology_manifold(C, field, jobs)


def is_buchsbaum(C: Complex, field: Field = QQ) -> bool:
    """Pure, and every nonempty face's link has vanishing reduced homology
    below its own dimension."""
    if C.is_empty:
        raise EmptyInput("empty complex")
    if not C.is_pure:
        raise NotPure("Buchsbaum complexes are pure")
    dim = C.dim
    for s in _all_nonempty_faces(C):
        link = C.link(s)
        if link.is_empty:
            continue  # link of a facet
        bv = betti(link, field)
        for k in range(dim - s.bit_count()):
            if bv[k] != 0:
                return False
    return True


def is_buchsbaum_star(C: Complex, field: Field = GF2) -> bool:
    """Buchsbaum, and for all faces ``s ⊆ t`` with ``t`` nonempty the map
    ``H_{d-1}(C, cost s) -> H_{d-1}(C, cost t)`` induced by inclusion of
    pairs is surjective (top-degree homology, coefficients in ``field``).
    ``s = ∅`` is part of the family: its cost is void, so that case demands
    the absolute class hit every local one — dropping it would wave through
    complexes with no top class at all, like the projective plane over Q.

    Top relative cycles of ``(C, cost s)`` are supported on the
    ``(d-1)``-faces containing ``s``; there are no boundaries in top
    degree, so surjectivity is a rank condition on the projection of one
    cycle basis onto the other's support.
    """
    if not C.is_pure:
        raise NotPure("Buchsbaum* is defined for pure complexes")
    if not is_buchsbaum(C, field):
        raise NotBuchsbaum(f"complex is not Buchsbaum over {field.label()}")
    p = field.p
    cycle_cache: dict[int, tuple[tuple[int, ...], list[tuple[int, ...]]]] = {}

    def cycles(s: int):
        got = cycle_cache.get(s)
        if got is None:
            got = _top_relative_cycles(C, s, p)
            cycle_cache[s] = got
        return got

    for t in _all_nonempty_faces(C):
        cols_t, basis_t = cycles(t)
        need = len(basis_t)
        if need == 0:
            continue  # nothing to hit; surjectivity is automatic
        sub = (t - 1) & t
        while True:  # subsets s of t, the empty face included
            s = sub
            cols_s, basis_s = cycles(s)
            pos = {m: i for i, m in enumerate(cols_s)}
            proj = [[vec[pos[m]] for m in cols_t] for vec in basis_s]
            if not proj:
                return False
            got = linalg.rank_exact(proj) if p is None else linalg.rank_mod_p_dense(proj, p)
            if got < need:
                return False
            if sub == 0:
                break
            sub = (sub - 1) & t
    return True


# ---------------------------------------------------------------------------
# duality and deletion checks

def alexander_duality_check(C: Complex, w, field: Field = QQ) -> Certificate:
    """Check ``beta~_i(C[W]) == beta~_{d-2-i}(C[V-W])`` for all degrees,
    where ``C`` must be a homology sphere over ``field`` and ``d = dim+1``.
    """
    w_mask = mask_of(w) if not isinstance(w, int) else w
    v_mask = C.vertex_mask
    if w_mask & ~v_mask:
        raise BadVertex("W contains vertices outside the complex")
    if not is_homology_sphere(C, field):
        raise NotASphere(f"ambient complex is not a homology sphere over {field.label()}")
    d = C.dim + 1
    inside = C.restrict(w_mask)
    outside = C.restrict(v_mask & ~w_mask)
    pairs = []
    ok = True
    for i in range(-1, d):
        lhs = reduced_betti(inside, i, field)
        rhs = reduced_betti(outside, d - 2 - i, field)
        pairs.append({"i": i, "lhs": lhs, "rhs": rhs, "equal": lhs == rhs})
        ok = ok and lhs == rhs
    return certificate(
        "alexander-duality",
        {"complex": complex_payload(C), "w": list(bits(w_mask)), "field": field.label()},
        "pass" if ok else "fail",
        {"field": field.label(), "w": list(bits(w_mask)), "pairs": pairs},
    )


def color_deletion_invariance_check(
    C: Complex,
    kappa,
    w,
    field: Field = QQ,
    check_manifold: bool = True,
    jobs: int = 1,
) -> Certificate:
    """Deleting part of one color class from a balanced homology manifold
    of dimension ``d-1 >= 3`` preserves ``beta~_i`` for ``1 <= i <= d-3``."""
    w_mask = mask_of(w) if not isinstance(w, int) else w
    d = C.dim + 1
    if d < 4:
        raise DimensionTooSmall(f"need d >= 4, got d = {d}")
    colors = {kappa[v] for v in bits(w_mask)}
    if len(colors) > 1:
        raise NotMonochromatic(f"deleted set spans colors {sorted(colors)}")
    if check_manifold and not is_homology_manifold(C, field, jobs):
        raise HypothesisViolated(
            f"complex is not a homology manifold over {field.label()}"
        )
    before = betti(C, field)
    after_complex = C.delete(w_mask)
    after = betti(after_complex, field)
    rows = []
    ok = True
    for i in range(1, d - 2):
        eq = before[i] == after[i]
        rows.append({"i": i, "before": before[i], "after": after[i], "equal": eq})
        ok = ok and eq
    return certificate(
        "color-deletion-invariance",
        {
            "complex": complex_payload(C),
            "w": list(bits(w_mask)),
            "field": field.label(),
            "colors": {str(v): kappa[v] for v in C.vertices},
        },
        "pass" if ok else "fail",
        {
            "field": field.label(),
            "w": list(bits(w_mask)),
            "color": sorted(colors)[0] if colors else None,
            "degrees": rows,
        },
    )
