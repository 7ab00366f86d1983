"""Isomorph-free enumeration of small balanced triangulations.

The generator walks a facet-oriented backtracking tree: vertices are
pre-partitioned into color classes (class c is a contiguous id block),
candidate facets are the rainbow transversals, and each node branches on
the facets covering the lexicographically least open ridge (a ridge used
by exactly one chosen facet).  A state with no open ridge is a closed
candidate, re-checked exactly against the target predicates and
deduplicated by canonical form.

Pruning never decides the census: leaves are verified from scratch, and
``verify_census`` re-validates everything once more with the homology
engine.  The first facet is pinned to the least vertex of every class,
which is a pure symmetry break (any complex on the full vertex set has a
rainbow facet that within-class relabeling moves there).
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product

from .coloring import find_balanced_coloring
from .core import Complex, bits, mask_of
from .errors import BadParameters, BudgetExceeded
from .homology import QQ, betti, is_homology_manifold
from .iso import canonical_form
from .report import Certificate, certificate, complex_payload

__all__ = [
    "PRUNES",
    "SearchResult",
    "SearchSpec",
    "enumerate_complexes",
    "verify_census",
]

PRUNES = ("dead-ridge", "link-cycle", "four-class-graph")


@dataclass(frozen=True)
class SearchSpec:
    """What to enumerate and when to give up.

    ``chi``, ``require_beta1`` and ``betti_profile`` are target predicates
    applied exactly at the leaves; ``disable_prunes`` switches individual
    speedups off (the census must not change, only the node count).
    """

    d: int
    class_sizes: tuple[int, ...]
    chi: int | None = None
    require_beta1: bool = False
    betti_profile: tuple[int, ...] | None = None
    closed_manifold: bool = True
    connected: bool = True
    max_nodes: int | None = None
    max_seconds: float | None = None
    disable_prunes: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "class_sizes", tuple(self.class_sizes))
        object.__setattr__(self, "disable_prunes", frozenset(self.disable_prunes))
        if self.d < 3:
            raise BadParameters("enumeration supports d >= 3")
        if len(self.class_sizes) != self.d:
            raise BadParameters("need one class size per color")
        if any(s < 3 for s in self.class_sizes):
            raise BadParameters(
                "class sizes below 3 force suspensions; they are out of scope"
            )
        if self.d >= 4 and self.max_nodes is None and self.max_seconds is None:
            raise BadParameters("d >= 4 requires an explicit node or time budget")
        unknown = self.disable_prunes - set(PRUNES)
        if unknown:
            raise BadParameters(f"unknown prunes: {sorted(unknown)}")

    @property
    def n(self) -> int:
        return sum(self.class_sizes)

    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for s in self.class_sizes:
            out.append(acc)
            acc += s
        return tuple(out)

    def payload(self) -> dict:
        return {
            "d": self.d,
            "class_sizes": list(self.class_sizes),
            "chi": self.chi,
            "require_beta1": self.require_beta1,
            "betti_profile": list(self.betti_profile) if self.betti_profile else None,
            "closed_manifold": self.closed_manifold,
            "connected": self.connected,
            "disable_prunes": sorted(self.disable_prunes),
        }


@dataclass
class SearchResult:
    complexes: tuple[Complex, ...]
    stats: dict = field(default_factory=dict)


def _candidates(spec: SearchSpec) -> list[int]:
    blocks = []
    off = spec.offsets()
    for c, size in enumerate(spec.class_sizes):
        blocks.append(range(off[c], off[c] + size))
    return sorted(mask_of(pick) for pick in product(*blocks))


class _Engine:
    def __init__(self, spec: SearchSpec, jobs: int = 1):
        self.spec = spec
        self.n = spec.n
        self.cands = _candidates(spec)
        self.cand_set = set(self.cands)
        self.ridges_of = {c: tuple(c & ~(1 << v) for v in bits(c)) for c in self.cands}
        by_ridge: dict[int, list[int]] = {}
        for c in self.cands:
            for r in self.ridges_of[c]:
                by_ridge.setdefault(r, []).append(c)
        self.by_ridge = {r: tuple(cs) for r, cs in by_ridge.items()}
        self.use_link_cycle = (
            spec.d == 3 and "link-cycle" not in spec.disable_prunes
        )
        self.use_dead_ridge = "dead-ridge" not in spec.disable_prunes
        sizes = sorted(spec.class_sizes, reverse=True)
        self.use_four_class = (
            "four-class-graph" not in spec.disable_prunes
            and spec.d >= 4
            and sizes[0] == 4
            and all(s == 3 for s in sizes[1:])
        )
        if self.use_four_class:
            off = spec.offsets()
            big = next(
                c for c, s in enumerate(spec.class_sizes) if s == 4
            )
            rest = [
                range(off[c], off[c] + s)
                for c, s in enumerate(spec.class_sizes)
                if c != big
            ]
            self.cross_pairs = [
                (1 << u) | (1 << w)
                for ra, rb in combinations(rest, 2)
                for u in ra
                for w in rb
            ]
        # mutable search state
        self.chosen: list[int] = []
        self.chosen_set: set[int] = set()
        self.ridge_use: dict[int, int] = {}
        self.link_adj: list[dict[int, int]] = [dict() for _ in range(self.n)]
        self.nodes = 0
        self.leaves = 0
        self.raw: list[tuple[int, ...]] = []
        self.deadline = None
        self.budget_hit = False
        self.t0 = time.monotonic()

    # -- state updates ------------------------------------------------------

    def _push(self, c: int) -> None:
        self.chosen.append(c)
        self.chosen_set.add(c)
        for r in self.ridges_of[c]:
            self.ridge_use[r] = self.ridge_use.get(r, 0) + 1
        if self.use_link_cycle:
            a, b, d = bits(c)
            for v, e0, e1 in ((a, b, d), (b, a, d), (d, a, b)):
                adj = self.link_adj[v]
                adj[e0] = adj.get(e0, 0) | (1 << e1)
                adj[e1] = adj.get(e1, 0) | (1 << e0)

    def _pop(self) -> None:
        c = self.chosen.pop()
        self.chosen_set.remove(c)
        for r in self.ridges_of[c]:
            u = self.ridge_use[r] - 1
            if u:
                self.ridge_use[r] = u
            else:
                del self.ridge_use[r]
        if self.use_link_cycle:
            a, b, d = bits(c)
            for v, e0, e1 in ((a, b, d), (b, a, d), (d, a, b)):
                adj = self.link_adj[v]
                adj[e0] &= ~(1 << e1)
                adj[e1] &= ~(1 << e0)
                if not adj[e0]:
                    del adj[e0]
                if not adj[e1]:
                    del adj[e1]

    # -- prunes -------------------------------------------------------------

    def _cand_ok(self, c: int) -> bool:
        if c in self.chosen_set:
            return False
        for r in self.ridges_of[c]:
            if self.ridge_use.get(r, 0) >= 2:
                return False
        if self.use_link_cycle:
            for v in bits(c):
                adj = self.link_adj[v]
                if adj and self._link_closed_cycle(v):
                    return False
        return True

    def _link_closed_cycle(self, v: int) -> bool:
        """Is v's current link graph a union of closed cycles (degrees all 2)?
        Then no further facet may touch v."""
        adj = self.link_adj[v]
        return all(m.bit_count() == 2 for m in adj.values())

    def _link_state_dead(self, c: int) -> bool:
        """After pushing a facet: a vertex whose link contains a finished
        cycle plus anything else can never reach a single-cycle link."""
        for v in bits(c):
            adj = self.link_adj[v]
            verts = list(adj)
            seen: set[int] = set()
            for start in verts:
                if start in seen:
                    continue
                comp = {start}
                stack = [start]
                while stack:
                    x = stack.pop()
                    m = adj[x]
                    while m:
                        low = m & -m
                        m ^= low
                        y = low.bit_length() - 1
                        if y not in comp:
                            comp.add(y)
                            stack.append(y)
                seen |= comp
                closed = all(adj[x].bit_count() == 2 for x in comp)
                if closed and len(comp) != len(verts):
                    return True
        return False

    def _dead_open_ridge(self) -> bool:
        for r, u in self.ridge_use.items():
            if u == 1 and not any(self._cand_ok(c) for c in self.by_ridge[r]):
                return True
        return False

    def _four_class_dead(self) -> bool:
        edges = set()
        for c in self.chosen:
            for pair in combinations(bits(c), 2):
                edges.add((1 << pair[0]) | (1 << pair[1]))
        for pair in self.cross_pairs:
            if pair in edges:
                continue
            if not any(
                c & pair == pair and self._cand_ok(c) for c in self.cand_set
            ):
                return True
        return False

    # -- leaf evaluation ----------------------------------------------------

    def _leaf(self) -> None:
        self.leaves += 1
        spec = self.spec
        if len({v for c in self.chosen for v in bits(c)}) != self.n:
            return
        C = Complex.from_facets(self.n, [bits(c) for c in self.chosen])
        if spec.connected and not C.is_connected():
            return
        if spec.closed_manifold:
            if spec.d == 3:
                if not self._links_single_cycles(C):
                    return
            elif not is_homology_manifold(C, QQ):
                return
        if spec.chi is not None and C.euler_characteristic() != spec.chi:
            return
        if spec.require_beta1 or spec.betti_profile is not None:
            bv = betti(C, QQ)
            if spec.require_beta1 and bv[1] == 0:
                return
            if spec.betti_profile is not None and tuple(bv.betti) != tuple(
                spec.betti_profile
            ):
                return
        self.raw.append(tuple(sorted(self.chosen)))

    @staticmethod
    def _links_single_cycles(C: Complex) -> bool:
        for v in C.vertices:
            link = C.link(1 << v)
            if link.dim != 1:
                return False
            g = link.graph()
            if any(g.degree(u) != 2 for u in g.vertices):
                return False
            if g.component_count() != 1:
                return False
        return True

    # -- tree walk ----------------------------------------------------------

    def _over_budget(self) -> bool:
        spec = self.spec
        if spec.max_nodes is not None and self.nodes >= spec.max_nodes:
            return True
        if spec.max_seconds is not None and self.nodes % 256 == 0:
            if time.monotonic() - self.t0 > spec.max_seconds:
                return True
        return False

    def _walk(self) -> None:
        self.nodes += 1
        if self.budget_hit or self._over_budget():
            self.budget_hit = True
            return
        open_ridge = None
        for r, u in self.ridge_use.items():
            if u == 1 and (open_ridge is None or r < open_ridge):
                open_ridge = r
        if open_ridge is None:
            self._leaf()
            return
        if self.use_dead_ridge and self._dead_open_ridge():
            return
        if self.use_four_class and self._four_class_dead():
            return
        for c in self.by_ridge[open_ridge]:
            if not self._cand_ok(c):
                continue
            self._push(c)
            if not (self.use_link_cycle and self._link_state_dead(c)):
                self._walk()
            self._pop()
            if self.budget_hit:
                return

    def run(self, prefix: tuple[int, ...]) -> None:
        for c in prefix:
            self._push(c)
        self._walk()
        for _ in prefix:
            self._pop()


def _first_facet(spec: SearchSpec) -> int:
    return mask_of(spec.offsets())


def _worker(args) -> tuple[list[tuple[int, ...]], int, int, bool]:
    spec, prefix = args
    eng = _Engine(spec)
    eng.run(prefix)
    return (eng.raw, eng.nodes, eng.leaves, eng.budget_hit)


def enumerate_complexes(
    spec: SearchSpec, jobs: int = 1, strict: bool = False
) -> SearchResult:
    """Exhaustive (within budget) census of the spec's target complexes, one
    representative per isomorphism class, in canonical-form order.

    A blown budget either raises BudgetExceeded (``strict=True``) or returns
    the partial census with ``stats["exhausted"] = False``."""
    t0 = time.monotonic()
    first = _first_facet(spec)
    raw: list[tuple[int, ...]] = []
    nodes = leaves = 0
    budget_hit = False
    if jobs > 1:
        probe = _Engine(spec)
        probe._push(first)
        open_r = min(r for r, u in probe.ridge_use.items() if u == 1)
        branches = [c for c in probe.by_ridge[open_r] if probe._cand_ok(c)]
        tasks = [(spec, (first, b)) for b in branches]
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for got_raw, got_nodes, got_leaves, got_hit in ex.map(_worker, tasks):
                raw.extend(got_raw)
                nodes += got_nodes
                leaves += got_leaves
                budget_hit = budget_hit or got_hit
        nodes += 1  # the shared root
    else:
        eng = _Engine(spec)
        eng.run((first,))
        raw, nodes, leaves, budget_hit = eng.raw, eng.nodes, eng.leaves, eng.budget_hit
    by_form: dict[tuple, Complex] = {}
    for facet_tuple in sorted(set(raw)):
        C = Complex.from_facets(spec.n, [bits(c) for c in facet_tuple])
        form = canonical_form(C)
        by_form.setdefault(form, C)
    reps = tuple(by_form[f] for f in sorted(by_form))
    stats = {
        "nodes": nodes,
        "leaves": leaves,
        "raw_hits": len(raw),
        "classes": len(reps),
        "elapsed_ms": int((time.monotonic() - t0) * 1000),
        "exhausted": not budget_hit,
        "workers": max(1, jobs),
    }
    if budget_hit and strict:
        raise BudgetExceeded(f"search budget exhausted after {nodes} nodes")
    return SearchResult(reps, stats)


def verify_census(results: SearchResult | list[Complex], spec: SearchSpec) -> Certificate:
    """Re-validate every census member against the full predicate set with
    the homology engine; search-internal shortcuts are never trusted."""
    if isinstance(results, SearchResult):
        complexes = list(results.complexes)
        exhausted = results.stats.get("exhausted")
    else:
        complexes = list(results)
        exhausted = None
    rows = []
    ok = True
    for idx, C in enumerate(complexes):
        checks: dict[str, bool] = {
            "pure": C.is_pure and C.dim + 1 == spec.d,
            "vertex_count": len(C.vertices) == spec.n,
        }
        kappa = find_balanced_coloring(C)
        checks["balanced"] = kappa is not None and sorted(
            len(vs) for vs in kappa.classes().values()
        ) == sorted(spec.class_sizes)
        if spec.connected:
            checks["connected"] = C.is_connected()
        if spec.closed_manifold:
            checks["closed_pseudomanifold"] = C.is_closed_pseudomanifold()
            checks["homology_manifold"] = (
                C.is_pure and not C.is_empty and is_homology_manifold(C, QQ)
            )
        if spec.chi is not None:
            checks["euler"] = (
                not C.is_empty and C.euler_characteristic() == spec.chi
            )
        if spec.require_beta1:
            checks["beta1_nonzero"] = not C.is_empty and betti(C, QQ)[1] != 0
        if spec.betti_profile is not None:
            checks["betti_profile"] = (
                not C.is_empty and tuple(betti(C, QQ).betti) == tuple(spec.betti_profile)
            )
        rows.append({"index": idx, "n": C.n, "checks": checks})
        ok = ok and all(checks.values())
    return certificate(
        "census-verification",
        {"spec": spec.payload(), "complexes": [complex_payload(C) for C in complexes]},
        "pass" if ok else "fail",
        {"count": len(complexes), "exhausted": exhausted, "rows": rows},
    )
