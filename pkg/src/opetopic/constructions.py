"""Slices, boundaries, fillers, source horns and pushouts."""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import (SOURCE, TARGET, Diamond, GenArrow, Morphism, NormalForm, OpetopeError,
                   OpetopicGraph, Polarity, identity, normalize, restrict,
                   validate_morphism)
from .ograph import canonical_form, top_cell

DEBUG = os.environ.get("OPETOPE_DEBUG", "") not in ("", "0")


class NotAnOpetope(OpetopeError):
    pass


class MatchingFailure(OpetopeError):
    """A boundary admits no unique pairing of 2-step arrows into the filler."""


class IllformedSpan(OpetopeError):
    pass


class NotAPastingDiagram(OpetopeError):
    pass


@dataclass(frozen=True)
class Boundary:
    """An opetopic set of degree < n whose (n-1)-cells are marked source or target."""

    graph: OpetopicGraph
    n: int
    marking: Mapping[str, Polarity]

    def cells_marked(self, polarity: Polarity) -> list[str]:
        return [c for c in self.graph.fiber(self.n - 1) if self.marking.get(c) is polarity]

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class PastingDiagram:
    """An opetopic set of degree <= n with leaf and root multisets on its (n-1)-cells."""

    graph: OpetopicGraph
    n: int
    leaves: tuple[str, ...]
    roots: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "leaves", tuple(sorted(self.leaves)))
        object.__setattr__(self, "roots", tuple(sorted(self.roots)))

    @property
    def top_cells(self) -> list[str]:
        return self.graph.fiber(self.n)

    @property
    def root(self) -> str:
        if len(self.roots) != 1:
            raise NotAPastingDiagram(f"expected one root, found {len(self.roots)}")
        return self.roots[0]

    __hash__ = None  # type: ignore[assignment]


def _fresh(base: str, taken: Iterable[str] | set[str]) -> str:
    taken = taken if isinstance(taken, set) else set(taken)
    name = base
    while name in taken:
        name += "'"
    return name


def inclusion(small: OpetopicGraph, big: OpetopicGraph) -> Morphism:
    """The morphism sending every id of ``small`` to the same id in ``big``."""
    return Morphism(small, big, {c: c for c in small.cells}, {a: a for a in small.arrows})


def restrict_below(g: OpetopicGraph, n: int) -> OpetopicGraph:
    return restrict(g, [c for c, d in g.cells.items() if d < n])


def fiber(g: OpetopicGraph, n: int) -> list[str]:
    return g.fiber(n)


# slices


def slice_with_projection(g: OpetopicGraph, x: str) -> tuple[OpetopicGraph, Morphism]:
    """The slice over ``x`` (canonically labelled) with its projection to ``g``."""
    cache = g.memo.setdefault("slice", {})
    if x in cache:
        return cache[x]
    order: list[NormalForm] = [identity(x)]
    index = {order[0]: 0}
    lifted: list[tuple[GenArrow, int, int]] = []
    arrow_index: dict[tuple[str, int], int] = {}
    i = 0
    while i < len(order):
        nf = order[i]
        for a in g.arrows_into(nf.dom):
            below = normalize(g, (a.id,) + nf.arrows)
            if below not in index:
                index[below] = len(order)
                order.append(below)
            arrow_index[(a.id, i)] = len(lifted)
            lifted.append((a, index[below], i))
        i += 1
    cells = [(f"n{j}", g.degree(nf.dom)) for j, nf in enumerate(order)]
    arrows = [GenArrow(f"m{k}", f"n{lo}", f"n{hi}", a.polarity) for k, (a, lo, hi) in enumerate(lifted)]
    diamonds = []
    for j, nf in enumerate(order):
        for d in g.diamonds_into(nf.dom):
            f1, g1, f2, g2 = (g.arrows[a] for a in d.arrows)
            lo1 = lifted[arrow_index[(f1.id, j)]][1]
            lo2 = lifted[arrow_index[(f2.id, j)]][1]
            diamonds.append(Diamond(f"m{arrow_index[(f1.id, j)]}", f"m{arrow_index[(g1.id, lo1)]}",
                                    f"m{arrow_index[(f2.id, j)]}", f"m{arrow_index[(g2.id, lo2)]}"))
    raw = OpetopicGraph(cells, arrows, diamonds)
    proj = Morphism(raw, g, {f"n{j}": nf.dom for j, nf in enumerate(order)},
                    {f"m{k}": a.id for k, (a, _, _) in enumerate(lifted)})
    canon, ren = canonical_form(raw)
    inverse = Morphism(canon, raw, {v: k for k, v in ren.cell_map.items()},
                       {v: k for k, v in ren.arrow_map.items()})
    result = (canon, inverse.then(proj))
    cache[x] = result
    return result


def slice(g: OpetopicGraph, x: str) -> OpetopicGraph:
    return slice_with_projection(g, x)[0]


# boundaries and fillers


def boundary(x: OpetopicGraph) -> Boundary:
    """The boundary of an opetope: everything below the top, marked by polarity."""
    if not x.cells:
        raise NotAnOpetope("empty graph")
    try:
        top = top_cell(x)
    except OpetopeError as exc:
        raise NotAnOpetope(str(exc)) from None
    n = x.degree(top)
    marking: dict[str, Polarity] = {}
    for a in x.arrows_into(top):
        if a.dom in marking:
            raise NotAnOpetope(f"cell {a.dom!r} has several arrows to the top")
        marking[a.dom] = a.polarity
    if set(marking) != set(x.fiber(n - 1)):
        raise NotAnOpetope("some cell below the top has no arrow to it")
    return Boundary(restrict_below(x, n), n, marking)


def fill(b: Boundary, top: str | None = None) -> OpetopicGraph:
    """Adjoin a top cell to a boundary, with the diamonds forced by the marking.

    Existing ids are kept; the new cell is called ``top`` unless taken.
    """
    g, n = b.graph, b.n
    if any(d >= n for d in g.cells.values()):
        raise ValueError(f"boundary of degree {n} has cells of degree >= {n}")
    faces = g.fiber(n - 1)
    missing = [c for c in faces if c not in b.marking]
    if missing:
        raise ValueError(f"unmarked cells {missing}")
    top = _fresh(top or "top", set(g.cells))
    taken = set(g.arrows)
    new_arrows: dict[str, GenArrow] = {}
    for c in faces:
        pol = b.marking[c]
        aid = _fresh(f"{pol.value}:{c}:{top}", taken)
        taken.add(aid)
        new_arrows[c] = GenArrow(aid, c, top, pol)
    diamonds = list(g.diamonds)
    for y in g.fiber(n - 2):
        homs, hets = [], []
        for a in g.arrows_from(y):
            up = new_arrows[a.cod]
            (homs if up.polarity is a.polarity else hets).append((up.id, a.id))
        if len(homs) != 1 or len(hets) != 1:
            raise MatchingFailure(f"cell {y!r}: {len(homs)} homogeneous and "
                                  f"{len(hets)} heterogeneous pairs into the filler")
        diamonds.append(Diamond(hets[0][0], hets[0][1], homs[0][0], homs[0][1]))
    return OpetopicGraph(list(g.cells.items()) + [(top, n)],
                         list(g.arrows.values()) + list(new_arrows.values()), diamonds)


def source_horn(b: Boundary) -> PastingDiagram:
    """Drop the target cells of an n-boundary, leaving an (n-1)-prepasting diagram."""
    g, n = b.graph, b.n
    if n < 1:
        raise ValueError("the source horn needs degree >= 1")
    targets = set(b.cells_marked(TARGET))
    kept = restrict(g, [c for c in g.cells if c not in targets])
    leaves: list[str] = []
    roots: list[str] = []
    for y in g.fiber(n - 2):
        for a in g.arrows_from(y):
            if a.cod in targets:
                (leaves if a.polarity is SOURCE else roots).append(y)
    return PastingDiagram(kept, n - 1, tuple(leaves), tuple(roots))


def pd_boundary(p: PastingDiagram) -> tuple[Boundary, Morphism]:
    """Boundary of a pasting diagram with its projection to the diagram.

    Each (n-1)-cell appears once per leaf marking and once per root marking;
    top cells and unmarked (n-1)-cells are dropped.
    """
    g, n = p.graph, p.n
    copies: dict[str, list[tuple[str, Polarity]]] = {}
    for mult, pol in ((Counter(p.leaves), SOURCE), (Counter(p.roots), TARGET)):
        for c, k in mult.items():
            for _ in range(k):
                copies.setdefault(c, []).append(("", pol))
    for c, lst in copies.items():
        if len(lst) == 1:
            lst[0] = (c, lst[0][1])
        else:
            seen: Counter = Counter()
            for i, (_, pol) in enumerate(lst):
                seen[pol] += 1
                lst[i] = (f"{c}@{pol.value}{seen[pol]}", pol)
    cells: list[tuple[str, int]] = []
    cmap: dict[str, str] = {}
    marking: dict[str, Polarity] = {}
    for c, d in g.cells.items():
        if d < n - 1:
            cells.append((c, d))
            cmap[c] = c
        elif d == n - 1:
            for cid, pol in copies.get(c, []):
                cells.append((cid, d))
                cmap[cid] = c
                marking[cid] = pol
    arrows: list[GenArrow] = []
    amap: dict[str, str] = {}
    lifts: dict[str, list[tuple[str, str]]] = {}  # arrow -> [(copy of cod, new id)]
    for a in g.arrows.values():
        d = g.degree(a.cod)
        if d < n - 1:
            arrows.append(a)
            amap[a.id] = a.id
            lifts[a.id] = [(a.cod, a.id)]
        elif d == n - 1:
            lifts[a.id] = []
            for cid, _ in copies.get(a.cod, []):
                aid = a.id if cid == a.cod else f"{a.id}@{cid}"
                arrows.append(GenArrow(aid, a.dom, cid, a.polarity))
                amap[aid] = a.id
                lifts[a.id].append((cid, aid))
    diamonds: list[Diamond] = []
    for dm in g.diamonds:
        outer = g.arrows[dm.het_outer]
        d = g.degree(outer.cod)
        if d < n - 1:
            diamonds.append(dm)
        elif d == n - 1:
            for k, (cid, aid) in enumerate(lifts[dm.het_outer]):
                hom_id = dict(lifts[dm.hom_outer])[cid]
                diamonds.append(Diamond(aid, dm.het_inner, hom_id, dm.hom_inner))
    bg = OpetopicGraph(cells, arrows, diamonds)
    return Boundary(bg, n, marking), Morphism(bg, g, cmap, amap)


def pd_target(p: PastingDiagram) -> OpetopicGraph:
    """The opetope of the root: the slice of the diagram at its root cell."""
    return slice(p.graph, p.root)


# colimits


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the smaller key as representative so results are deterministic
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def coproduct(graphs: Sequence[OpetopicGraph]) -> tuple[OpetopicGraph, list[Morphism]]:
    """Disjoint union; colliding ids get a suffix."""
    taken_c: set[str] = set()
    taken_a: set[str] = set()
    cells, arrows, diamonds = [], [], []
    maps: list[tuple[dict, dict]] = []
    for i, g in enumerate(graphs):
        cm, am = {}, {}
        for c, d in g.cells.items():
            cm[c] = _fresh(c if c not in taken_c else f"{c}@{i}", taken_c)
            taken_c.add(cm[c])
            cells.append((cm[c], d))
        for a in g.arrows.values():
            am[a.id] = _fresh(a.id if a.id not in taken_a else f"{a.id}@{i}", taken_a)
            taken_a.add(am[a.id])
            arrows.append(GenArrow(am[a.id], cm[a.dom], cm[a.cod], a.polarity))
        diamonds.extend(Diamond(*(am[x] for x in d.arrows)) for d in g.diamonds)
        maps.append((cm, am))
    u = OpetopicGraph(cells, arrows, diamonds)
    return u, [Morphism(g, u, cm, am) for g, (cm, am) in zip(graphs, maps)]


def copair(maps: Sequence[Morphism], source: OpetopicGraph, injections: Sequence[Morphism],
           target: OpetopicGraph) -> Morphism:
    """The map out of a coproduct built from one map per summand."""
    cm: dict[str, str] = {}
    am: dict[str, str] = {}
    for inj, m in zip(injections, maps):
        for c, v in inj.cell_map.items():
            cm[v] = m.cell_map[c]
        for a, v in inj.arrow_map.items():
            am[v] = m.arrow_map[a]
    return Morphism(source, target, cm, am)


def pushout(f: Morphism, g: Morphism) -> tuple[OpetopicGraph, Morphism, Morphism]:
    """Pushout of ``A <-f- C -g-> B`` computed degreewise on generators.

    Cells and arrows are identified by union-find, so the legs need not be
    injective.  Diamonds are the images of those of ``A`` and ``B``.
    """
    if f.source is not g.source and f.source != g.source:
        raise IllformedSpan("the two legs have different sources")
    for leg in (f, g):
        problems = validate_morphism(leg)
        if problems:
            raise IllformedSpan(f"leg is not a morphism: {problems[0]}")
    a_graph, b_graph = f.target, g.target
    cu, au = _UnionFind(), _UnionFind()
    for side, gr in ((0, a_graph), (1, b_graph)):
        for i, c in enumerate(gr.cells):
            cu.add((side, i, c))
        for i, x in enumerate(gr.arrows):
            au.add((side, i, x))
    a_cpos = {c: i for i, c in enumerate(a_graph.cells)}
    b_cpos = {c: i for i, c in enumerate(b_graph.cells)}
    a_apos = {x: i for i, x in enumerate(a_graph.arrows)}
    b_apos = {x: i for i, x in enumerate(b_graph.arrows)}
    for c in f.source.cells:
        fc, gc = f.cell_map[c], g.cell_map[c]
        cu.union((0, a_cpos[fc], fc), (1, b_cpos[gc], gc))
    for x in f.source.arrows:
        fx, gx = f.arrow_map[x], g.arrow_map[x]
        au.union((0, a_apos[fx], fx), (1, b_apos[gx], gx))

    cell_name: dict = {}
    taken: set[str] = set()
    cells: list[tuple[str, int]] = []
    for side, gr, pos in ((0, a_graph, a_cpos), (1, b_graph, b_cpos)):
        for c, d in gr.cells.items():
            rep = cu.find((side, pos[c], c))
            if rep not in cell_name:
                cell_name[rep] = _fresh(rep[2], taken)
                taken.add(cell_name[rep])
                cells.append((cell_name[rep], d))
    arrow_name: dict = {}
    taken_a: set[str] = set()
    arrows: list[GenArrow] = []
    for side, gr, cpos, apos in ((0, a_graph, a_cpos, a_apos), (1, b_graph, b_cpos, b_apos)):
        for x, a in gr.arrows.items():
            rep = au.find((side, apos[x], x))
            if rep not in arrow_name:
                arrow_name[rep] = _fresh(rep[2], taken_a)
                taken_a.add(arrow_name[rep])
                arrows.append(GenArrow(arrow_name[rep],
                                       cell_name[cu.find((side, cpos[a.dom], a.dom))],
                                       cell_name[cu.find((side, cpos[a.cod], a.cod))], a.polarity))

    def cmap(side, gr, pos):
        return {c: cell_name[cu.find((side, pos[c], c))] for c in gr.cells}

    def amap(side, gr, pos):
        return {x: arrow_name[au.find((side, pos[x], x))] for x in gr.arrows}

    a_am, b_am = amap(0, a_graph, a_apos), amap(1, b_graph, b_apos)
    diamonds = list(dict.fromkeys(
        [Diamond(*(a_am[x] for x in d.arrows)) for d in a_graph.diamonds]
        + [Diamond(*(b_am[x] for x in d.arrows)) for d in b_graph.diamonds]))
    result = OpetopicGraph(cells, arrows, diamonds)
    for a in arrows:
        if result.degree(a.cod) != result.degree(a.dom) + 1:
            raise IllformedSpan("gluing produced an arrow between non-consecutive degrees")
    ia = Morphism(a_graph, result, cmap(0, a_graph, a_cpos), a_am)
    ib = Morphism(b_graph, result, cmap(1, b_graph, b_cpos), b_am)
    return result, ia, ib


# opetopes from pasting diagrams


def opetope_of_pd(p: PastingDiagram) -> OpetopicGraph:
    """The (n+1)-opetope whose source is the n-pasting diagram ``p``."""
    bd, proj = pd_boundary(p)
    filled = fill(bd)
    glued, into_filled, into_p = pushout(inclusion(bd.graph, filled), proj)
    top_t = filled.fiber(p.n)[0]
    marking = {into_p.cell_map[c]: SOURCE for c in p.top_cells}
    marking[into_filled.cell_map[top_t]] = TARGET
    result = fill(Boundary(glued, p.n + 1, marking))
    canon, _ = canonical_form(result)
    if DEBUG:
        _debug_check(canon)
    return canon


def _debug_check(x: OpetopicGraph) -> None:
    from .axioms import check_opetopic, is_opetope

    report = check_opetopic(x)
    if not report.all_pass or is_opetope(x) is None:
        raise OpetopeError(f"construction produced an invalid opetope: {report}")
