"""Shared oracles and generators for the test suite."""

from __future__ import annotations

import random
from collections import deque
from functools import lru_cache

from opetopic.axioms import IllFormed, check_opetopic
from opetopic.codec import (Node, code_degree, code_tree, render, source_shapes, target_shape,
                            tree_to_pd)
from opetopic.constructions import pd_boundary, source_horn
from opetopic.core import Diamond, GenArrow, OpetopicGraph
from opetopic.enumeration import SizeBudget, enumerate_opetopes
from opetopic.fixtures import all_fixtures

FIXTURES = all_fixtures()


@lru_cache(maxsize=None)
def opetope_codes(degree: int, max_cells: int = 12) -> tuple[str, ...]:
    return tuple(enumerate_opetopes(SizeBudget(degree, max_arity=max_cells,
                                               max_total_cells=max_cells)))


def all_codes(max_degree: int = 4, max_cells: int = 12) -> list[str]:
    return [c for d in range(max_degree + 1) for c in opetope_codes(d, max_cells)]


# normalization oracle

def composable_paths(g: OpetopicGraph, length: int) -> list[tuple[str, ...]]:
    """Every domain-first path of ``length`` generators."""
    paths: list[tuple[str, ...]] = [(a,) for a in g.arrows]
    for _ in range(length - 1):
        paths = [p + (b.id,) for p in paths for b in g.arrows_from(g.arrows[p[-1]].cod)]
    return paths


def diamond_class(g: OpetopicGraph, path: tuple[str, ...]) -> frozenset:
    """All paths reachable by replacing one side of a diamond by the other."""
    swaps: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for d in g.diamonds:
        # stored domain-first, i.e. (inner, outer)
        het, hom = (d.het_inner, d.het_outer), (d.hom_inner, d.hom_outer)
        swaps.setdefault(het, []).append(hom)
        swaps.setdefault(hom, []).append(het)
    seen = {path}
    todo = deque([path])
    while todo:
        p = todo.popleft()
        for i in range(len(p) - 1):
            for rep in swaps.get((p[i], p[i + 1]), ()):
                q = p[:i] + rep + p[i + 2:]
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
    return frozenset(seen)


# mutations

def mutations(g: OpetopicGraph) -> list[tuple[str, OpetopicGraph]]:
    """Single-edit corruptions of a presentation, each still well formed."""
    out = []
    arrows = list(g.arrows.values())

    def rebuild(arrs, dias):
        ids = {a.id for a in arrs}
        return OpetopicGraph(dict(g.cells), arrs,
                             [d for d in dias if all(x in ids for x in d.arrows)])

    for a in arrows:
        flipped = GenArrow(a.id, a.dom, a.cod, a.polarity.complement)
        arrs = [flipped if b.id == a.id else b for b in arrows]
        # a flipped arrow can no longer sit in a pair of the same kind
        dias = []
        for d in g.diamonds:
            pols = {x: (flipped.polarity if x == a.id else g.polarity(x)) for x in d.arrows}
            if (pols[d.het_outer] is not pols[d.het_inner]
                    and pols[d.hom_outer] is pols[d.hom_inner]):
                dias.append(d)
        out.append((f"flip {a.id}", rebuild(arrs, dias)))
    for a in arrows:
        out.append((f"drop arrow {a.id}", rebuild([b for b in arrows if b.id != a.id],
                                                   g.diamonds)))
    for d in g.diamonds:
        out.append((f"drop diamond {d.het}", rebuild(arrows, [e for e in g.diamonds if e != d])))
    ds = list(g.diamonds)
    for i, d in enumerate(ds):
        for j in range(i + 1, len(ds)):
            e = ds[j]
            same_ends = (g.arrows[d.het_inner].dom == g.arrows[e.het_inner].dom
                         and g.arrows[d.het_outer].cod == g.arrows[e.het_outer].cod)
            if same_ends and d.hom != e.hom:
                swapped = [x for k, x in enumerate(ds) if k not in (i, j)]
                swapped.append(Diamond(d.het_outer, d.het_inner, e.hom_outer, e.hom_inner))
                swapped.append(Diamond(e.het_outer, e.het_inner, d.hom_outer, d.hom_inner))
                out.append((f"re-pair {d.het} with {e.het}", rebuild(arrows, swapped)))
    return out


def failing_axioms(g: OpetopicGraph) -> list[tuple[str, str]]:
    """(label, witness) of every failed axiom, counting ill-formedness as O1."""
    try:
        rep = check_opetopic(g)
    except IllFormed as exc:
        return [("O1", str(exc))]
    return [(r.label, r.witness) for r in rep.failures()]


# random calculus instances

def unit_code(color: str) -> str:
    """Code of the opetope with a single source shaped ``color``."""
    return "{" + render(Node(color, (None,) * len(source_shapes(color)))) + "}"


@lru_cache(maxsize=None)
def by_target(degree: int, max_cells: int = 12) -> dict[str, list[str]]:
    table: dict[str, list[str]] = {}
    for c in opetope_codes(degree, max_cells):
        if degree >= 1:
            table.setdefault(target_shape(c), []).append(c)
    return table


def random_tree(rng: random.Random, color: str, degree: int, depth: int,
                grow: float = 0.5):
    """Random non-degenerate tree of ``degree``-opetopes rooted at ``color``."""
    choices = sorted(set(by_target(degree).get(color, [])) | {unit_code(color)})
    code = rng.choice(choices)
    ins = []
    for s in source_shapes(code):
        if depth > 0 and rng.random() < grow:
            ins.append(random_tree(rng, s, degree, depth - 1, grow))
        else:
            ins.append(None)
    return Node(code, tuple(ins))


def random_pd(rng: random.Random, degree: int, depth: int = 2):
    """A random pasting diagram of the given degree (>= 1)."""
    colors = sorted(by_target(degree))
    return tree_to_pd(random_tree(rng, rng.choice(colors), degree, depth))


def random_filler(rng: random.Random, shape: str, allow_degenerate: bool = True):
    """A random pasting diagram whose boundary is the boundary of ``shape``."""
    n = code_degree(shape) + 1
    pool = sorted(set(by_target(n).get(shape, [])) | {unit_code(shape)})
    if not allow_degenerate:
        pool = [c for c in pool if not c.startswith("{deg(")]
    return tree_to_pd(code_tree(rng.choice(pool)))


def leaf_in_horn(p, leaf: str) -> str:
    """Name of the top cell of the source horn of ``p`` coming from ``leaf``."""
    bd, proj = pd_boundary(p)
    horn = source_horn(bd)
    hits = [c for c in horn.top_cells if proj.cell_map[c] == leaf]
    assert len(hits) == 1, (leaf, hits)
    return hits[0]

