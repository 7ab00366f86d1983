"""Proper colorings, balancedness search, rank selection."""

import pytest

import bcl
from bcl import BadParameters, ColorMismatch, Coloring, Complex, mask_of
from bcl.errors import NotPure


def test_coloring_basics():
    k = Coloring({0: 1, 1: 2, 2: 1})
    assert k[0] == 1 and k.get(9) is None
    assert 2 in k and 9 not in k
    assert k.colors_used() == (1, 2)
    assert k.classes() == {1: (0, 2), 2: (1,)}
    assert k.class_mask(1) == 0b101
    assert k.as_sorted_items() == [(0, 1), (1, 2), (2, 1)]
    assert k.face_colors(0b011) == (1, 2)
    assert k.restrict(0b001).kappa == {0: 1}


def test_colors_start_at_one():
    with pytest.raises(BadParameters):
        Coloring({0: 0})


def test_validate_coloring(octahedron):
    C, kappa = octahedron.complex, octahedron.coloring
    assert bcl.validate_coloring(C, kappa)
    # monochromatic edge
    bad = Coloring({**kappa.kappa, 3: kappa[4]})
    assert not bcl.validate_coloring(C, bad)
    # proper but with too many colors: rainbow on all six vertices
    rainbow = Coloring({v: v + 1 for v in C.vertices})
    assert not bcl.validate_coloring(C, rainbow)
    # missing a vertex
    partial = Coloring({v: kappa[v] for v in C.vertices if v != 5})
    assert not bcl.validate_coloring(C, partial)


def test_find_balanced_coloring_octahedron(octahedron):
    C = octahedron.complex
    kappa = bcl.find_balanced_coloring(C)
    assert kappa is not None
    assert bcl.validate_coloring(C, kappa)
    # antipodal classes of size 2 each
    assert sorted(len(vs) for vs in kappa.classes().values()) == [2, 2, 2]


def test_find_balanced_coloring_rejects_unbalanceable():
    # a triangle with a pendant edge colored fine, but the full 2-simplex
    # boundary plus a chord cannot be 2-colored
    C = Complex.from_facets(3, [(0, 1), (1, 2), (0, 2)])
    assert C.dim == 1
    assert bcl.find_balanced_coloring(C) is None  # odd cycle needs 3 colors


def test_find_balanced_coloring_impure():
    C = Complex.from_facets(4, [(0, 1, 2), (3,)])
    with pytest.raises(NotPure):
        bcl.find_balanced_coloring(C)


def test_bm_coloring_is_balanced(bm4):
    assert bcl.validate_coloring(bm4.complex, bm4.coloring)
    assert all(len(vs) == 3 for vs in bm4.coloring.classes().values())


def test_rank_selected_octahedron(octahedron):
    C, kappa = octahedron.complex, octahedron.coloring
    sub = bcl.rank_selected(C, kappa, {1, 2})
    assert sub.dim == 1
    assert sub.f_vector().counts == (1, 4, 4)  # 4-cycle on two antipodal classes
    empty = bcl.rank_selected(C, kappa, ())
    assert empty.is_empty


def test_rank_selected_full_set_is_identity(bm3):
    C, kappa = bm3.complex, bm3.coloring
    assert bcl.rank_selected(C, kappa, kappa.colors_used()).facets == C.facets


def test_rank_selected_validates():
    C = Complex.from_facets(3, [(0, 1, 2)])
    with pytest.raises(ColorMismatch):
        bcl.rank_selected(C, Coloring({0: 1, 1: 1, 2: 2}), {1})
    good = Coloring({0: 1, 1: 2, 2: 3})
    with pytest.raises(BadParameters):
        bcl.rank_selected(C, good, {7})


def test_rank_selected_buchsbaum_star_closure(octahedron):
    # dropping one color from a Buchsbaum* sphere keeps the property
    oc4 = bcl.cross_polytope_boundary(4)
    sub = bcl.rank_selected(oc4.complex, oc4.coloring, {1, 2, 3})
    assert bcl.is_buchsbaum_star(sub)


def test_unique_large_class():
    k = Coloring({0: 1, 1: 1, 2: 2, 3: 2, 4: 3})
    assert bcl.unique_large_class(k, 1) == (4,)
    assert bcl.unique_large_class(k, 2) is None  # two classes of size 2
    assert bcl.unique_large_class(k, 5) is None  # none of size 5
