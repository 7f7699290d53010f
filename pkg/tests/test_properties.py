"""Property tests over enumerated opetopes and seeded random pasting diagrams."""

import random

from helpers import FIXTURES, all_codes, composable_paths, diamond_class, random_pd
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st
from laws import LAWS, run_law

from opetopic.axioms import check_pasting_diagram, is_opetope
from opetopic.calculus import source_pd
from opetopic.codec import (code_tree, decode, encode, parse_code, parse_tree, pd_code,
                            pd_to_tree, render, shape_of, tree_to_pd)
from opetopic.constructions import (boundary, fill, opetope_of_pd, slice,
                                    slice_with_projection, source_horn)
from opetopic.core import compose, hom, is_normal, normalize, relabel
from opetopic.document import Document, parse, serialize

CODES = all_codes(3, max_cells=12)
PATHS = [(name, p) for name, g in sorted(FIXTURES.items())
         for k in (1, 2, 3) for p in composable_paths(g, k)]

quick = settings(max_examples=60, deadline=None,
                 suppress_health_check=[HealthCheck.too_slow])

codes = st.sampled_from(CODES)


@quick
@given(st.sampled_from(PATHS))
def test_normal_form_is_normal_and_idempotent(item):
    name, path = item
    g = FIXTURES[name]
    nf = normalize(g, path)
    assert is_normal(g, nf.arrows)
    assert normalize(g, nf.arrows) == nf
    assert nf.arrows in diamond_class(g, path)


@quick
@given(st.sampled_from(PATHS), st.data())
def test_closure_class_normalizes_once(item, data):
    name, path = item
    g = FIXTURES[name]
    other = data.draw(st.sampled_from(sorted(diamond_class(g, path))))
    assert normalize(g, other) == normalize(g, path)


@quick
@given(st.sampled_from([(n, p) for n, p in PATHS if len(p) >= 2]), st.data())
def test_compose_matches_normalize(item, data):
    name, path = item
    g = FIXTURES[name]
    cut = data.draw(st.integers(1, len(path) - 1))
    left, right = normalize(g, path[:cut]), normalize(g, path[cut:])
    assert compose(g, left, right) == normalize(g, path)


@quick
@given(codes)
def test_code_round_trips(code):
    g = decode(code)
    assert encode(g) == code
    assert parse_code(code) == code
    tree = code_tree(code)
    if tree is not None:
        assert parse_tree(render(tree)) == tree
        assert render(pd_to_tree(tree_to_pd(tree))) == render(tree)


@quick
@given(codes, st.randoms(use_true_random=False))
def test_code_ignores_names(code, rnd):
    g = decode(code)
    names = list(g.cells)
    shuffled = names[:]
    rnd.shuffle(shuffled)
    renamed, _ = relabel(g, {c: f"n{shuffled.index(c)}" for c in names},
                         {a: f"e{i}" for i, a in enumerate(g.arrows)})
    assert encode(renamed) == code


@quick
@given(codes)
def test_opetope_round_trips(code):
    x = decode(code)
    assert encode(fill(boundary(x))) == code
    if x.dimension >= 1:
        horn = source_horn(boundary(x))
        assert check_pasting_diagram(horn).all_pass
        assert encode(opetope_of_pd(horn)) == code


@quick
@given(codes)
def test_terminal_and_slices(code):
    g = decode(code)
    top = is_opetope(g)
    assert top is not None
    for z in g.cells:
        assert len(hom(g, z, top)) == 1
        s, proj = slice_with_projection(g, z)
        assert shape_of(g, z) == encode(s)
        for c in s.cells:
            assert shape_of(s, c) == shape_of(g, proj.cell_map[c])


@quick
@given(codes)
def test_document_round_trip(code):
    g = decode(code)
    text = serialize(Document.of(g))
    assert parse(text).payload == g
    assert serialize(parse(text)) == text


@quick
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_random_pd_is_valid(seed, degree):
    p = random_pd(random.Random(seed), degree)
    assert check_pasting_diagram(p).all_pass
    assert pd_code(tree_to_pd(pd_to_tree(p))) == pd_code(p)
    if p.n >= 1:
        assert check_pasting_diagram(source_pd(p)).all_pass


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.sampled_from(sorted(LAWS)), st.integers(0, 10**6), st.integers(1, 2))
def test_calculus_laws(law, seed, degree):
    assert run_law(law, seed, degree) is None


@quick
@given(codes)
def test_slice_of_top_is_whole(code):
    g = decode(code)
    assert encode(slice(g, is_opetope(g))) == code
