"""The source tree of a cell and the canonical labelling it induces.

For a cell ``x`` of degree >= 2 the graph built here has the source
generators into ``x`` and the homogeneous 2-step pairs into ``x`` as
vertices.  A source ``f`` points at the pair that ``f . t`` rewrites to, where
``t`` is the target generator into the domain of ``f``; a pair ``(f, s)`` of
source generators points at ``f``.  In an opetopic set this is a tree rooted
at ``(t(x), t(t(x)))``.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Hashable

from .core import (SOURCE, TARGET, GenArrow, Morphism, OpetopeError, OpetopicGraph,
                   relabel, two_step_into)

Vertex = tuple[str, Hashable]


def source_graph(g: OpetopicGraph, x: str) -> tuple[dict[Vertex, list[Vertex]], Vertex | None]:
    """Adjacency of the source tree of ``x`` and its root (None if undefined)."""
    adj: dict[Vertex, list[Vertex]] = {}
    for f in g.arrows_into(x, SOURCE):
        v = ("src", f.id)
        adj[v] = []
        for t in g.arrows_into(f.dom, TARGET):
            for d in g.diamonds_with_het(f.id, t.id):
                adj[v].append(("two", d.hom))
    for pair in two_step_into(g, x):
        v = ("two", pair)
        adj[v] = []
        if g.polarity(pair[0]) is SOURCE:
            adj[v].append(("src", pair[0]))
    ts = g.arrows_into(x, TARGET)
    root = None
    if len(ts) == 1:
        tts = g.arrows_into(ts[0].dom, TARGET)
        if len(tts) == 1:
            root = ("two", (ts[0].id, tts[0].id))
            if root not in adj:
                root = None
    return adj, root


def path_counts(adj: dict[Vertex, list[Vertex]], root: Vertex) -> dict[Vertex, float]:
    """Number of directed paths from each vertex to ``root``; inf on cycles."""
    counts: dict[Vertex, float] = {}
    state: dict[Vertex, int] = {}

    def count(v: Vertex) -> float:
        if v == root:
            return 1
        if v in counts:
            return counts[v]
        if state.get(v) == 1:
            return float("inf")
        state[v] = 1
        total: float = 0
        for w in adj.get(v, []):
            total += count(w)
        state[v] = 2
        counts[v] = total
        return total

    return {v: count(v) for v in adj}


def _node_over(g: OpetopicGraph, pair: tuple[str, str]) -> GenArrow | None:
    """The source generator ``f`` with ``f . t(dom f)`` equal to ``pair``."""
    ds = g.diamonds_with_hom(*pair)
    if len(ds) != 1:
        raise OpetopeError(f"pair {pair} is not in exactly one diamond")
    outer = g.arrows[ds[0].het_outer]
    return outer if outer.polarity is SOURCE else None


def source_order(g: OpetopicGraph, x: str) -> list[GenArrow]:
    """Source generators into ``x`` in canonical (address) order.

    The order is a root-first walk of the source tree where the inputs of a
    source ``f`` are visited in the order of the sources of ``dom f``.
    Requires the diamonds around ``x`` to be those of an opetopic set.
    """
    cache = g.memo.setdefault("source_order", {})
    if x in cache:
        return cache[x]
    d = g.degree(x)
    srcs = g.arrows_into(x, SOURCE)
    if d == 0:
        order: list[GenArrow] = []
    elif d == 1:
        if len(srcs) != 1:
            raise OpetopeError(f"edge {x!r} has {len(srcs)} sources")
        order = srcs
    else:
        t = g.target_arrow(x)
        tt = g.target_arrow(t.dom)
        order = []
        seen: set[str] = set()

        def visit(f: GenArrow) -> None:
            if f.id in seen:
                raise OpetopeError(f"source tree of {x!r} has a cycle")
            seen.add(f.id)
            order.append(f)
            for s in source_order(g, f.dom):
                child = _node_over(g, (f.id, s.id))
                if child is not None:
                    visit(child)

        root = _node_over(g, (t.id, tt.id))
        if root is not None:
            visit(root)
        if len(order) != len(srcs):
            raise OpetopeError(f"source tree of {x!r} misses some sources")
    cache[x] = order
    return order


def top_cell(g: OpetopicGraph) -> str:
    """The unique cell of maximal degree."""
    n = g.dimension
    tops = g.fiber(n)
    if len(tops) != 1:
        raise OpetopeError(f"expected one top cell, found {len(tops)}")
    return tops[0]


def faces(g: OpetopicGraph, x: str) -> list[GenArrow]:
    """Generators into ``x``: the target first, then sources in address order."""
    if g.degree(x) == 0:
        return []
    return [g.target_arrow(x)] + source_order(g, x)


def canonical_names(g: OpetopicGraph) -> tuple[dict[str, str], dict[str, str]]:
    """Structure-only names for the cells and arrows of an opetope.

    Cells are numbered in breadth-first order from the top cell, walking
    faces in canonical order, so isomorphic opetopes get identical names.
    """
    top = top_cell(g)
    cells = {top: "c0"}
    queue = [top]
    arrows: dict[str, str] = {}
    used: dict[str, int] = defaultdict(int)
    while queue:
        w = queue.pop(0)
        for a in faces(g, w):
            if a.dom not in cells:
                cells[a.dom] = f"c{len(cells)}"
                queue.append(a.dom)
    for w in cells:
        for a in faces(g, w):
            base = f"{a.polarity.value}:{cells[a.dom]}:{cells[a.cod]}"
            used[base] += 1
            arrows[a.id] = base if used[base] == 1 else f"{base}#{used[base]}"
    if len(cells) != len(g.cells) or len(arrows) != len(g.arrows):
        raise OpetopeError("opetope is not reachable from its top cell")
    return cells, arrows


def canonical_form(g: OpetopicGraph) -> tuple[OpetopicGraph, Morphism]:
    """Relabel an opetope with its canonical names."""
    cells, arrows = canonical_names(g)
    order = sorted(g.cells, key=lambda c: int(cells[c][1:]))
    ordered = OpetopicGraph([(c, g.degree(c)) for c in order], g.arrows.values(), g.diamonds)
    new, ren = relabel(ordered, cells, arrows)
    new = OpetopicGraph(new.cells, sorted(new.arrows.values(), key=lambda a: a.id),
                        sorted(new.diamonds))
    return new, Morphism(g, new, ren.cell_map, ren.arrow_map)
