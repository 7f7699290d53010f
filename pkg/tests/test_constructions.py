from collections import Counter

import pytest
from helpers import FIXTURES, all_codes

from opetopic.axioms import check_opetopic, check_pasting_diagram, is_opetope
from opetopic.calculus import degen, shift
from opetopic.codec import decode, encode, shape_of
from opetopic.constructions import (Boundary, boundary, coproduct, fill, fiber, inclusion,
                                    opetope_of_pd, pd_target, pushout, restrict_below, slice,
                                    slice_with_projection, source_horn)
from opetopic.core import (SOURCE, TARGET, Morphism, OpetopicGraph, find_isomorphism,
                           validate_morphism)
from opetopic.fixtures import arrow, globe3, loop, point, triangle

tri2 = triangle(2)


def iso(a, b) -> bool:
    return find_isomorphism(a, b) is not None


# slices

def test_slice_examples():
    assert iso(slice(tri2, "c"), tri2)
    assert iso(slice(tri2, "a1"), arrow())
    assert iso(slice(globe3(), "c"), tri2)
    assert iso(slice(tri2, "p0"), point())


def test_slices_are_opetopes():
    for g in FIXTURES.values():
        for x in g.cells:
            s, proj = slice_with_projection(g, x)
            assert check_opetopic(s).all_pass
            assert is_opetope(s) is not None
            assert validate_morphism(proj) == []


def test_restrict_and_fiber():
    small = restrict_below(tri2, 2)
    assert sorted(small.cells) == ["a1", "a2", "b", "p0", "p1", "p2"]
    assert len(restrict_below(tri2, 0).cells) == 0
    assert sorted(fiber(tri2, 1)) == ["a1", "a2", "b"]


# boundary and fill

def test_boundary_examples():
    b = boundary(arrow())
    assert dict(b.marking) == {"s": SOURCE, "t": TARGET}
    b = boundary(tri2)
    assert dict(b.marking) == {"a1": SOURCE, "a2": SOURCE, "b": TARGET}
    b = boundary(point())
    assert b.n == 0 and not b.graph.cells


def test_fill_examples():
    for name in ("tri2", "loop", "arr", "op3"):
        g = FIXTURES[name]
        assert iso(fill(boundary(g)), g), name
    assert iso(fill(Boundary(OpetopicGraph({}), 0, {})), point())
    filled = fill(boundary(loop()))
    assert len(filled.diamonds) == 1


def test_fill_boundary_round_trip_on_enumeration():
    for code in all_codes(3):
        x = decode(code)
        again = fill(boundary(x))
        assert encode(again) == code
        b = boundary(again)
        assert encode(fill(b)) == code


# source horn

def test_source_horn_examples():
    horn = source_horn(boundary(tri2))
    assert horn.n == 1
    assert horn.leaves == ("p0",) and horn.roots == ("p2",)
    assert sorted(horn.graph.cells) == ["a1", "a2", "p0", "p1", "p2"]
    horn = source_horn(boundary(arrow()))
    assert horn.n == 0 and list(horn.graph.cells) == ["s"]
    horn = source_horn(boundary(loop()))
    assert horn.top_cells == [] and horn.leaves == horn.roots == ("p",)


# pd target and opetope of pd

def test_pd_target_examples():
    assert iso(pd_target(shift(tri2)), arrow())
    for g in (arrow(), tri2, point()):
        assert iso(pd_target(degen(g)), g)


def test_opetope_of_horn_is_identity():
    for name in ("arr", "loop", "tri1", "tri2", "tri3", "op3"):
        g = FIXTURES[name]
        assert iso(opetope_of_pd(source_horn(boundary(g))), g), name


def test_opetope_of_shift_tri2_is_op3():
    x = opetope_of_pd(shift(tri2))
    assert iso(x, globe3())
    assert x.profile() == (3, 3, 2, 1)


def test_opetope_of_degen_arr():
    x = opetope_of_pd(degen(arrow()))
    assert x.profile() == (2, 1, 1, 1)
    top = is_opetope(x)
    assert x.arrows_into(top, SOURCE) == []
    assert check_opetopic(x).all_pass


# pushouts

def _leg_counts(f: Morphism, g: Morphism, deg: int) -> int:
    """Size of the set pushout of the degree ``deg`` fibers."""
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x

    for c in f.target.fiber(deg):
        find(("a", c))
    for c in g.target.fiber(deg):
        find(("b", c))
    for c in f.source.fiber(deg):
        ra, rb = find(("a", f.cell_map[c])), find(("b", g.cell_map[c]))
        if ra != rb:
            parent[ra] = rb
    return len({find(x) for x in list(parent)})


def test_pushout_over_empty_is_disjoint_union():
    empty = OpetopicGraph({})
    a, b = tri2, arrow()
    d, ia, ib = pushout(Morphism(empty, a, {}, {}), Morphism(empty, b, {}, {}))
    assert d.profile() == tuple(x + y for x, y in zip(a.profile(), b.profile() + (0,)))
    assert validate_morphism(ia) == [] and validate_morphism(ib) == []


def test_pushout_along_identity():
    b = restrict_below(tri2, 2)
    d, ia, ib = pushout(Morphism.identity(b), inclusion(b, tri2))
    assert iso(d, tri2)


def test_pushout_of_filled_shift():
    p = shift(tri2)
    bd = boundary(tri2)
    filled = fill(bd)
    f = inclusion(bd.graph, filled)
    g = inclusion(bd.graph, p.graph)
    d, ia, ib = pushout(f, g)
    assert len(d.fiber(2)) == 2
    for deg in range(3):
        assert len(d.fiber(deg)) == _leg_counts(f, g, deg)


def test_pushout_commutes_and_is_fiberwise():
    # two copies of tri2 glued along their boundary
    b = restrict_below(tri2, 2)
    inc = inclusion(b, tri2)
    d, ia, ib = pushout(inc, inc)
    for c in b.cells:
        assert ia.cell_map[inc.cell_map[c]] == ib.cell_map[inc.cell_map[c]]
    for deg in range(3):
        assert len(d.fiber(deg)) == _leg_counts(inc, inc, deg)
    assert d.profile() == (3, 3, 2)
    assert restrict_below(d, 2).profile() == b.profile()


def test_pushout_with_non_injective_leg():
    # both ends of an arrow sent to one point of a loop
    arr = arrow()
    ends = restrict_below(arr, 1)
    lp = loop()
    squash = Morphism(ends, lp, {c: "p" for c in ends.cells}, {})
    d, ia, ib = pushout(inclusion(ends, arr), squash)
    assert d.profile() == (1, 2, 1)
    assert validate_morphism(ia) == [] and validate_morphism(ib) == []


def test_coproduct_injections():
    g, injs = coproduct([tri2, tri2])
    assert len(g.cells) == 2 * len(tri2.cells)
    assert all(validate_morphism(m) == [] for m in injs)
    assert set(injs[0].cell_map.values()).isdisjoint(injs[1].cell_map.values())


# slice transport along constructed morphisms

def test_slice_transport_and_shape_naturality():
    for p in (shift(tri2), source_horn(boundary(globe3()))):
        x = opetope_of_pd(p)
        bd = boundary(x)
        m = inclusion(bd.graph, x)
        for c in bd.graph.cells:
            assert iso(slice(bd.graph, c), slice(x, m.cell_map[c]))
            assert shape_of(bd.graph, c) == shape_of(x, m.cell_map[c])


def test_horn_marking_matches_leaf_root_counts():
    for g in FIXTURES.values():
        if g.dimension < 1:
            continue
        horn = source_horn(boundary(g))
        if horn.n == 0:
            continue
        top_cells = horn.top_cells
        n = horn.n
        targets = Counter(horn.graph.target_arrow(v).dom for v in top_cells)
        sources = Counter(a.dom for v in top_cells for a in horn.graph.arrows_into(v, SOURCE))
        for c in horn.graph.fiber(n - 1):
            assert horn.leaves.count(c) + targets[c] == 1
            assert horn.roots.count(c) + sources[c] == 1
        assert check_pasting_diagram(horn).all_pass


def test_source_horn_rejects_degree_zero():
    with pytest.raises(ValueError):
        source_horn(Boundary(OpetopicGraph({}), 0, {}))
