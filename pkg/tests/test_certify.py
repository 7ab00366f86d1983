"""Instance checkers: the three-graph lemma with verified witnesses, the
balanced lower-bound inequality, the link edge bound, the hypothesis bundle
that pins down the sphere bundle, and the two counting contradictions.

Numeric tables (residuals, targets, s-values) are frozen from independent
arithmetic; the graph-lemma witnesses are re-verified here with a local BFS
that shares no code with the library's."""

import random
from itertools import product
from math import comb

import pytest

import bcl
from bcl import Complex, Coloring, GF2, QQ, bm, cross_polytope_boundary
from bcl.certify import (
    GraphTriple,
    balanced_link_lbt_check,
    bm_hypotheses_check,
    facet_count_contradiction_check,
    four_class_deletion_check,
    graph_triple_witness,
    lbt_inequality_check,
    random_graph_triple,
)
from bcl.errors import HypothesisViolated, NoUniqueLargeClass, NotPure
from bcl.report import canonical_json


# ---------------------------------------------------------------------------
# graph triples

HAND = dict(
    vertices=(1, 2, 3),
    g1=((1, 2), (2, 3)),
    g2=((1, 2), (1, 3)),
    g3=((2, 3), (1, 3)),
    s=2,
)


def components(vertices, edges):
    """Local BFS component list, independent of the library's."""
    adj = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen, out = set(), []
    for start in sorted(adj):
        if start in seen:
            continue
        comp, stack = {start}, [start]
        while stack:
            for y in adj[stack.pop()]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(comp)
    return out


def check_witness(T, w):
    """Re-verify a witness triple from scratch: distinct vertices, and
    removing u_i disconnects G_i."""
    assert len(set(w)) == 3
    for g, u in zip(T.graphs, w):
        rest = [v for v in T.vertices if v != u]
        cut = [e for e in g if u not in e]
        assert len(components(rest, cut)) >= 2


def test_hand_instance_valid():
    T = GraphTriple(**HAND)
    assert T.violations() == []
    assert T.vertices == (1, 2, 3)


def test_hand_instance_witness():
    T = GraphTriple(**HAND)
    w = graph_triple_witness(T)
    assert w == (2, 1, 3)
    check_witness(T, w)


def test_edges_normalized():
    T = GraphTriple((1, 2, 3), ((2, 1), (3, 2)), HAND["g2"], HAND["g3"], 2)
    assert T.g1 == frozenset({(1, 2), (2, 3)})


def test_loop_edge_rejected():
    with pytest.raises(HypothesisViolated):
        GraphTriple((1, 2, 3), ((1, 1),), HAND["g2"], HAND["g3"], 2)


def test_violation_wrong_vertex_count():
    T = GraphTriple(**{**HAND, "s": 3})
    assert any("2s-1" in v for v in T.violations())


def test_violation_stray_vertex():
    T = GraphTriple((1, 2, 3), ((1, 9), (1, 2), (2, 3)), HAND["g2"], HAND["g3"], 2)
    assert any("outside U" in v for v in T.violations())


def test_violation_disconnected():
    T = GraphTriple((1, 2, 3), ((1, 2),), HAND["g2"], HAND["g3"], 2)
    assert any("disconnected" in v for v in T.violations())


def test_violation_cover_breach():
    # G1 owns the edge 13, which neither other graph has
    path = ((1, 2), (2, 3))
    T = GraphTriple((1, 2, 3), ((1, 2), (2, 3), (1, 3)), path, path, 2)
    assert any("outside G2" in v for v in T.violations())


def test_violation_intersection_count():
    path = ((1, 2), (2, 3))
    T = GraphTriple((1, 2, 3), path, path, path, 2)
    assert any("components, expected s = 2" in v for v in T.violations())


def test_witness_refuses_invalid_triple():
    T = GraphTriple(**{**HAND, "s": 3})
    with pytest.raises(HypothesisViolated):
        graph_triple_witness(T)


@pytest.mark.parametrize("s", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("seed", [0, 1, 2, 7, 23, 101])
def test_random_triples_have_witnesses(s, seed):
    T = random_graph_triple(s, random.Random(seed))
    assert T.violations() == []
    assert len(T.vertices) == 2 * s - 1
    check_witness(T, graph_triple_witness(T))


def test_random_triple_deterministic():
    a = random_graph_triple(4, random.Random(11))
    b = random_graph_triple(4, random.Random(11))
    assert a == b


def test_random_triple_needs_s_at_least_two():
    with pytest.raises(HypothesisViolated):
        random_graph_triple(1, random.Random(0))


# ---------------------------------------------------------------------------
# lower-bound inequality

@pytest.mark.parametrize("d", [3, 4, 5, 6])
def test_lbt_equality_on_bundles(d):
    lab = bm(d)
    cert = lbt_inequality_check(lab.complex, lab.coloring, t=2)
    ev = cert.evidence
    assert cert.verdict == "pass"
    assert ev["equality"] is True
    assert ev["lhs"] == ev["bound"] == 4 * comb(d, 2)
    assert ev["beta1"] >= 1
    assert ev["edge_form_holds"] is True
    assert ev["t_bound_holds"] is True


@pytest.mark.parametrize("d", [7, 8])
def test_lbt_equality_arithmetic_large_d(d):
    # homology is skipped here; the h-numbers alone decide equality
    h = bm(d).complex.h_vector()
    assert 2 * h[2] - (d - 1) * h[1] == 4 * comb(d, 2)


def test_lbt_inapplicable_on_sphere(octahedron):
    cert = lbt_inequality_check(octahedron.complex, octahedron.coloring)
    assert cert.verdict == "inapplicable"
    assert cert.evidence["beta1"] == 0
    assert cert.evidence["lhs"] == 0  # 2*3 - 2*3


def test_lbt_fail_branch_on_hexagon():
    # a 6-cycle is balanced with beta_1 = 1 but lies far below the bound;
    # the inequality is asserted for d >= 3, and the checker reports what
    # it sees rather than guessing the regime
    hexagon = Complex.from_facets(6, [(i, (i + 1) % 6) for i in range(6)])
    kappa = Coloring({v: 1 + v % 2 for v in range(6)})
    cert = lbt_inequality_check(hexagon, kappa)
    assert cert.verdict == "fail"
    assert cert.evidence["lhs"] == -2
    assert cert.evidence["bound"] == 4


def test_lbt_not_balanced_is_inapplicable(bm3):
    shifted = Coloring({v: 1 for v in bm3.complex.vertices})
    cert = lbt_inequality_check(bm3.complex, shifted)
    assert cert.verdict == "inapplicable"
    assert cert.evidence["balanced"] is False


# ---------------------------------------------------------------------------
# link edge bound

def test_link_edge_bound_bm5_every_vertex(bm5):
    for v in bm5.complex.vertices:
        cert = balanced_link_lbt_check(bm5.complex, bm5.coloring, v)
        assert cert.verdict == "pass"
        assert cert.evidence["f1_link"] == 42 == 7 * comb(4, 2)
        assert cert.evidence["equality"] is True


def test_link_edge_bound_low_dimension_inapplicable(bm3, bm4):
    for lab in (bm3, bm4):
        cert = balanced_link_lbt_check(lab.complex, lab.coloring, 0)
        assert cert.verdict == "inapplicable"


def test_link_edge_bound_needs_three_per_color():
    lab = cross_polytope_boundary(5)  # d = 5 but classes of size 2
    cert = balanced_link_lbt_check(lab.complex, lab.coloring, 0)
    assert cert.verdict == "inapplicable"
    assert cert.evidence["three_per_color"] is False


def test_link_edge_bound_skip_manifold_check(bm5):
    cert = balanced_link_lbt_check(bm5.complex, bm5.coloring, 3, verify_manifold=False)
    assert cert.verdict == "pass"
    assert cert.evidence["manifold"] is None


# ---------------------------------------------------------------------------
# hypothesis bundle

@pytest.mark.parametrize("d", [4, 5])
def test_bm_hypotheses_pass(d):
    lab = bm(d)
    cert = bm_hypotheses_check(lab.complex, lab.coloring)
    ev = cert.evidence
    assert cert.verdict == "pass"
    assert all(ev["checks"].values())
    assert ev["complete_d_partite"] is True
    assert ev["s"] == 2
    assert ev["triple_is_2s_minus_1"] is True
    structure = ev["class_link_structure"]
    assert len(structure) == d
    for info in structure.values():
        assert set(info["pair_components"].values()) == {2}
        assert info["triple_components"] == 3


def test_bm_hypotheses_fail_d3(bm3):
    # beta_2 of the 3-dimensional bundle is 1, so the d >= 4 bundle of
    # hypotheses correctly rejects it
    cert = bm_hypotheses_check(bm3.complex, bm3.coloring)
    assert cert.verdict == "fail"
    checks = cert.evidence["checks"]
    assert checks["beta2_zero"] is False
    assert checks["beta1_nonzero"] and checks["balanced"] and checks["homology_manifold"]
    assert cert.evidence["s"] == 3


def test_bm_hypotheses_field_sensitive(bm4):
    # over Z/2 the bundle picks up torsion classes: beta_2 jumps to 1
    cert = bm_hypotheses_check(bm4.complex, bm4.coloring, GF2)
    assert cert.verdict == "fail"
    assert cert.evidence["checks"]["beta2_zero"] is False
    assert cert.evidence["field"] == "Z/2"


def test_bm_hypotheses_fail_on_sphere(st12_3):
    cert = bm_hypotheses_check(st12_3.complex, st12_3.coloring)
    assert cert.verdict == "fail"
    checks = cert.evidence["checks"]
    assert checks["vertex_count_3d"] is False  # 12 != 3*3
    assert checks["beta1_nonzero"] is False


# ---------------------------------------------------------------------------
# deletion of the four-vertex class

def _rainbow(blocks):
    """All transversal facets of the given color blocks."""
    return list(product(*blocks))


@pytest.fixture
def ten_vertex_instance():
    # W = {0..3} in one color, two size-3 classes; facets are all rainbow
    # triangles, so the deletion leaves exactly the complete bipartite graph
    blocks = [(0, 1, 2, 3), (4, 5, 6), (7, 8, 9)]
    C = Complex.from_facets(10, _rainbow(blocks))
    kappa = Coloring({v: i + 1 for i, blk in enumerate(blocks) for v in blk})
    return C, kappa


def test_four_class_deletion_pass(ten_vertex_instance):
    C, kappa = ten_vertex_instance
    cert = four_class_deletion_check(C, kappa)
    assert cert.verdict == "pass"
    assert cert.evidence == {
        "d": 3,
        "w": [0, 1, 2, 3],
        "f1_after_deletion": 9,
        "expected_f1": 9,
        "complete_multipartite": True,
    }


def test_four_class_deletion_fail_missing_edge(ten_vertex_instance):
    C, kappa = ten_vertex_instance
    thinned = [f for f in _rainbow([(0, 1, 2, 3), (4, 5, 6), (7, 8, 9)])
               if not {4, 7} <= set(f)]
    cert = four_class_deletion_check(Complex.from_facets(10, thinned), kappa)
    assert cert.verdict == "fail"
    assert cert.evidence["f1_after_deletion"] == 8
    assert cert.evidence["complete_multipartite"] is False


def test_four_class_deletion_needs_pure(ten_vertex_instance):
    _, kappa = ten_vertex_instance
    mixed = Complex.from_facets(10, [(0, 4, 7), (1, 5)])
    with pytest.raises(NotPure):
        four_class_deletion_check(mixed, kappa)


def test_four_class_deletion_needs_balance(ten_vertex_instance):
    C, _ = ten_vertex_instance
    with pytest.raises(HypothesisViolated):
        four_class_deletion_check(C, Coloring({v: 1 for v in range(10)}))


def test_four_class_deletion_needs_3d_plus_1(bm3):
    with pytest.raises(HypothesisViolated, match="3d\\+1"):
        four_class_deletion_check(bm3.complex, bm3.coloring)


def test_four_class_deletion_needs_unique_class():
    blocks = [(0, 1, 2, 3), (4, 5, 6, 7), (8, 9)]
    C = Complex.from_facets(10, _rainbow(blocks))
    kappa = Coloring({v: i + 1 for i, blk in enumerate(blocks) for v in blk})
    with pytest.raises(NoUniqueLargeClass):
        four_class_deletion_check(C, kappa)


# ---------------------------------------------------------------------------
# facet-count contradiction

def test_facet_count_d6_table():
    cert = facet_count_contradiction_check(6)
    assert cert.verdict == "pass"
    ev = cert.evidence
    assert ev["primary_target"] == 198
    assert [r["value"] for r in ev["primary"]] == [159, 190, 221, 252]
    assert [r["residual"] for r in ev["primary"]] == [-39, -8, 23, 54]
    assert ev["alternate_target"] == 186
    assert [r["value"] for r in ev["alternate"]] == [158, 188, 218, 248]
    assert [r["residual"] for r in ev["alternate"]] == [-28, 2, 32, 62]


@pytest.mark.parametrize("d", [7, 8, 9, 10])
def test_facet_count_clear_for_larger_d(d):
    cert = facet_count_contradiction_check(d)
    assert cert.verdict == "pass"
    for row in cert.evidence["primary"] + cert.evidence["alternate"]:
        assert row["residual"] != 0


@pytest.mark.parametrize("d", [3, 4, 5])
def test_facet_count_small_d_inapplicable(d):
    cert = facet_count_contradiction_check(d)
    assert cert.verdict == "inapplicable"
    assert "d > 5" in cert.evidence["reason"]


def test_facet_count_custom_target_can_collide():
    # 190 is attainable at k = 2, so the contradiction evaporates
    cert = facet_count_contradiction_check(6, target=190)
    assert cert.verdict == "fail"
    assert any(r["residual"] == 0 for r in cert.evidence["primary"])


# ---------------------------------------------------------------------------
# certificates are stable records

def test_certificates_are_byte_deterministic(bm4):
    a = bm_hypotheses_check(bm4.complex, bm4.coloring)
    b = bm_hypotheses_check(bm4.complex, bm4.coloring)
    assert canonical_json(a.to_dict()) == canonical_json(b.to_dict())
    assert a.inputs_digest == b.inputs_digest


def test_certificate_claims():
    assert facet_count_contradiction_check(6).claim == "facet-count-contradiction"
    lab = bm(3)
    assert lbt_inequality_check(lab.complex, lab.coloring).claim == "lbt-inequality"
    assert bm_hypotheses_check(lab.complex, lab.coloring).claim == "bm-hypotheses"
    assert balanced_link_lbt_check(lab.complex, lab.coloring, 0).claim == "link-edge-bound"
