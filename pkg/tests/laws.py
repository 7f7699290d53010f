"""Calculus law checks on seeded random instances.

Each check builds both sides, validates them as pasting diagrams and
compares canonical codes.  A check returns None on success or a message.
"""

from __future__ import annotations

import random

from helpers import leaf_in_horn, random_filler, random_pd, random_tree

from opetopic.axioms import check_pasting_diagram
from opetopic.calculus import degen, graft_gluing, shift, source_pd, subst_gluing
from opetopic.codec import Degenerate, Node, encode, parse_tree, pd_code, shape_of, tree_to_pd
from opetopic.constructions import slice
from opetopic.fixtures import arrow, loop, triangle

ARR = encode(arrow())
LOOP = encode(loop())
TRI = {m: encode(triangle(m)) for m in range(4)}


def _same(lhs, rhs, what: str) -> str | None:
    for side, p in (("lhs", lhs), ("rhs", rhs)):
        rep = check_pasting_diagram(p)
        if not rep.all_pass:
            return f"{what}: {side} is not a pasting diagram: {rep.failures()}"
    a, b = pd_code(lhs), pd_code(rhs)
    return None if a == b else f"{what}: {a} != {b}"


def subst_instance(rng: random.Random, degree: int):
    a = random_pd(rng, degree)
    b = {x: random_filler(rng, shape_of(a.graph, x)) for x in a.top_cells}
    return a, b


def graft_instance(rng: random.Random, degree: int, partial: bool = True):
    a = random_pd(rng, degree)
    b = {}
    for x in a.leaves:
        if partial and rng.random() < 0.3:
            continue
        b[x] = tree_to_pd(random_tree(rng, shape_of(a.graph, x), degree, 1))
    return a, b


def subst_assoc(rng: random.Random, degree: int) -> str | None:
    a, b = subst_instance(rng, degree)
    c = {x: {y: random_filler(rng, shape_of(bx.graph, y)) for y in bx.top_cells}
         for x, bx in b.items()}
    lhs = subst_gluing(a, {x: subst_gluing(b[x], c[x]).result for x in b}).result
    mid = subst_gluing(a, b)
    flat = {mid.pieces[x].cell_map[y]: cy for x in b for y, cy in c[x].items()}
    rhs = subst_gluing(mid.result, flat).result
    return _same(lhs, rhs, "subst associativity")


def graft_assoc(rng: random.Random, degree: int) -> str | None:
    a, b = graft_instance(rng, degree)
    c = {}
    for x, bx in b.items():
        c[x] = {y: tree_to_pd(random_tree(rng, shape_of(bx.graph, y), degree, 1))
                for y in bx.leaves if rng.random() < 0.6}
    lhs = graft_gluing(a, {x: graft_gluing(b[x], c[x]).result for x in b}).result
    mid = graft_gluing(a, b)
    flat = {mid.pieces[x].cell_map[y]: cy for x in b for y, cy in c[x].items()}
    rhs = graft_gluing(mid.result, flat).result
    return _same(lhs, rhs, "graft associativity")


def unit_laws(rng: random.Random, degree: int) -> str | None:
    a = random_pd(rng, degree)
    # subst with shifts of the slices gives back a
    msg = _same(subst_gluing(a, {x: shift(slice(a.graph, x)) for x in a.top_cells}).result,
                a, "subst right unit")
    if msg:
        return msg
    # subst into a shift is the assigned diagram
    x = a.top_cells[0]
    sx = shift(slice(a.graph, x))
    b = random_filler(rng, shape_of(a.graph, x))
    msg = _same(subst_gluing(sx, {sx.graph.fiber(sx.n)[0]: b}).result, b, "subst left unit")
    if msg:
        return msg
    # graft with degeneracies at every leaf gives back a
    msg = _same(graft_gluing(a, {y: degen(slice(a.graph, y)) for y in a.leaves}).result,
                a, "graft right unit")
    if msg:
        return msg
    # graft onto a degeneracy is the assigned diagram
    r = a.root
    d = degen(slice(a.graph, r))
    return _same(graft_gluing(d, {d.leaves[0]: a}).result, a, "graft left unit")


def horn_interchange(rng: random.Random, degree: int) -> str | None:
    a, b = graft_instance(rng, degree, partial=False)
    lhs = source_pd(graft_gluing(a, b).result)
    rhs = subst_gluing(source_pd(a), {leaf_in_horn(a, x): source_pd(b[x]) for x in b}).result
    return _same(lhs, rhs, "horn interchange")


LAWS = {
    "subst associativity": subst_assoc,
    "graft associativity": graft_assoc,
    "unit laws": unit_laws,
    "horn interchange": horn_interchange,
}


def run_law(name: str, seed: int, degree: int) -> str | None:
    return LAWS[name](random.Random(seed), degree)


# fiber counts

def subst_counts(a, b, out) -> str | None:
    """Fiber sizes of a substitution against the counting formulas."""
    n = a.n

    def below(p):
        return len(p.graph.fiber(n - 1))

    tops = sum(len(b[x].top_cells) for x in a.top_cells)
    via_roots = len(a.roots) + sum(below(b[x]) - len(b[x].roots) for x in a.top_cells)
    via_leaves = len(a.leaves) + sum(below(b[x]) - len(b[x].leaves) for x in a.top_cells)
    got = (len(out.top_cells), below(out), len(out.leaves), len(out.roots))
    want = (tops, via_roots, len(a.leaves), len(a.roots))
    if via_roots != via_leaves or got != want:
        return f"subst counts {got}, expected {want} (leaf form {via_leaves})"
    return None


def graft_counts(a, b, out) -> str | None:
    """Fiber sizes of a grafting against the counting formulas."""
    n = a.n
    tops = len(a.top_cells) + sum(len(b[x].top_cells) for x in b)
    below = len(a.graph.fiber(n - 1)) + sum(len(b[x].graph.fiber(n - 1)) - 1 for x in b)
    leaves = len(a.leaves) - len(b) + sum(len(b[x].leaves) for x in b)
    got = (len(out.top_cells), len(out.graph.fiber(n - 1)), len(out.leaves), len(out.roots))
    want = (tops, below, leaves, len(a.roots))
    return None if got == want else f"graft counts {got}, expected {want}"


# the two worked figures: substituting into a three-node diagram, and
# grafting onto the three leaves of a single cell

def subst_figure():
    base = tree_to_pd(parse_tree(f"nd({TRI[3]})(lf,nd({TRI[2]})(lf,lf),nd({TRI[1]})(lf))"))
    fillers = {
        TRI[3]: tree_to_pd(Node(TRI[2], (Node(TRI[2], (None, None)), None))),
        TRI[2]: tree_to_pd(Node(TRI[3], (None, Node(LOOP, ()), None))),
        TRI[1]: tree_to_pd(Degenerate(ARR)),
    }
    b = {x: fillers[shape_of(base.graph, x)] for x in base.top_cells}
    return base, b


def graft_figure():
    base = shift(triangle(3))
    b = {"a1": shift(triangle(1)), "a2": degen(arrow()), "a3": shift(triangle(1))}
    return base, b
