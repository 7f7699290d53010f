"""Opetopic sets as finite presented categories.

A graph holds cells with a degree, 1-step generator arrows carrying a
polarity, and diamonds: relations ``f1 . g1 = f2 . g2`` between a
heterogeneous pair and a homogeneous pair of generators.  Arrows of the
presented category are tuples of composable generators modulo diamonds and
are represented by their normal forms.

Paths are always written domain first: ``(g, f)`` means ``f . g`` where
``g: z -> y`` and ``f: y -> x``.
"""

from __future__ import annotations

import enum
import os
from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence


class OpetopeError(Exception):
    """Base class of every error raised by this package."""


class NormalizationError(OpetopeError):
    """Rewriting a tuple of generators could not reach a normal form."""


class FuelExhausted(NormalizationError):
    pass


class AmbiguousRewrite(NormalizationError):
    pass


class MissingRelation(NormalizationError):
    """A rewrite pattern applies but no diamond provides the replacement."""


class SizeLimit(OpetopeError):
    pass


class ParseError(OpetopeError):
    """Malformed text; ``line`` and ``col`` are 1-based."""

    def __init__(self, message: str, line: int = 1, col: int = 1):
        super().__init__(f"{message} (line {line}, column {col})")
        self.message = message
        self.line = line
        self.col = col


class Polarity(enum.Enum):
    SOURCE = "s"
    TARGET = "t"

    @property
    def complement(self) -> "Polarity":
        return Polarity.TARGET if self is Polarity.SOURCE else Polarity.SOURCE

    def __str__(self) -> str:
        return self.value


SOURCE = Polarity.SOURCE
TARGET = Polarity.TARGET


@dataclass(frozen=True)
class GenArrow:
    id: str
    dom: str
    cod: str
    polarity: Polarity


@dataclass(frozen=True, order=True)
class Diamond:
    """The relation ``het_outer . het_inner = hom_outer . hom_inner``."""

    het_outer: str
    het_inner: str
    hom_outer: str
    hom_inner: str

    @property
    def het(self) -> tuple[str, str]:
        return (self.het_outer, self.het_inner)

    @property
    def hom(self) -> tuple[str, str]:
        return (self.hom_outer, self.hom_inner)

    @property
    def arrows(self) -> tuple[str, str, str, str]:
        return (self.het_outer, self.het_inner, self.hom_outer, self.hom_inner)


class OpetopicGraph:
    """An immutable presentation: cells, generator arrows and diamonds.

    Cells iterate in insertion order.  Equality ignores that order.
    """

    def __init__(
        self,
        cells: Mapping[str, int] | Iterable[tuple[str, int]],
        arrows: Iterable[GenArrow] = (),
        diamonds: Iterable[Diamond] = (),
    ):
        items = cells.items() if isinstance(cells, Mapping) else cells
        cell_dict: dict[str, int] = {}
        for cid, deg in items:
            if cid in cell_dict:
                raise ValueError(f"duplicate cell id {cid!r}")
            if deg < 0:
                raise ValueError(f"negative degree for cell {cid!r}")
            cell_dict[cid] = int(deg)
        arrow_dict: dict[str, GenArrow] = {}
        for a in arrows:
            if a.id in arrow_dict:
                raise ValueError(f"duplicate arrow id {a.id!r}")
            arrow_dict[a.id] = a
        self._cells = MappingProxyType(cell_dict)
        self._arrows = MappingProxyType(arrow_dict)
        self._diamonds = tuple(diamonds)

    @property
    def cells(self) -> Mapping[str, int]:
        return self._cells

    @property
    def arrows(self) -> Mapping[str, GenArrow]:
        return self._arrows

    @property
    def diamonds(self) -> tuple[Diamond, ...]:
        return self._diamonds

    def __len__(self) -> int:
        return len(self._cells)

    def __repr__(self) -> str:
        return (f"OpetopicGraph({len(self._cells)} cells, {len(self._arrows)} arrows, "
                f"{len(self._diamonds)} diamonds)")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OpetopicGraph):
            return NotImplemented
        return (dict(self._cells) == dict(other._cells)
                and dict(self._arrows) == dict(other._arrows)
                and set(self._diamonds) == set(other._diamonds))

    def __hash__(self) -> int:
        return hash((frozenset(self._cells.items()), frozenset(self._arrows.values()),
                     frozenset(self._diamonds)))

    def degree(self, cell: str) -> int:
        return self._cells[cell]

    def polarity(self, arrow: str) -> Polarity:
        return self._arrows[arrow].polarity

    @property
    def dimension(self) -> int:
        """Largest cell degree, or -1 for the empty graph."""
        return max(self._cells.values(), default=-1)

    def fiber(self, n: int) -> list[str]:
        return [c for c, d in self._cells.items() if d == n]

    def profile(self) -> tuple[int, ...]:
        counts = [0] * (self.dimension + 1)
        for d in self._cells.values():
            counts[d] += 1
        return tuple(counts)

    # indices, built lazily

    @cached_property
    def _into(self) -> dict[str, list[GenArrow]]:
        idx: dict[str, list[GenArrow]] = defaultdict(list)
        for a in self._arrows.values():
            idx[a.cod].append(a)
        return idx

    @cached_property
    def _out(self) -> dict[str, list[GenArrow]]:
        idx: dict[str, list[GenArrow]] = defaultdict(list)
        for a in self._arrows.values():
            idx[a.dom].append(a)
        return idx

    @cached_property
    def _by_het(self) -> dict[tuple[str, str], list[Diamond]]:
        idx: dict[tuple[str, str], list[Diamond]] = defaultdict(list)
        for d in self._diamonds:
            idx[d.het].append(d)
        return idx

    @cached_property
    def _by_hom(self) -> dict[tuple[str, str], list[Diamond]]:
        idx: dict[tuple[str, str], list[Diamond]] = defaultdict(list)
        for d in self._diamonds:
            idx[d.hom].append(d)
        return idx

    @cached_property
    def _diamonds_into(self) -> dict[str, list[Diamond]]:
        idx: dict[str, list[Diamond]] = defaultdict(list)
        for d in self._diamonds:
            a = self._arrows.get(d.het_outer)
            if a is not None:
                idx[a.cod].append(d)
        return idx

    @cached_property
    def memo(self) -> dict:
        """Scratch space for derived data cached per graph."""
        return {}

    def diamonds_into(self, cell: str) -> list[Diamond]:
        return list(self._diamonds_into.get(cell, []))

    def arrows_into(self, cell: str, polarity: Polarity | None = None) -> list[GenArrow]:
        arrows = self._into.get(cell, [])
        if polarity is None:
            return list(arrows)
        return [a for a in arrows if a.polarity is polarity]

    def arrows_from(self, cell: str, polarity: Polarity | None = None) -> list[GenArrow]:
        arrows = self._out.get(cell, [])
        if polarity is None:
            return list(arrows)
        return [a for a in arrows if a.polarity is polarity]

    def diamonds_with_het(self, outer: str, inner: str) -> list[Diamond]:
        return list(self._by_het.get((outer, inner), []))

    def diamonds_with_hom(self, outer: str, inner: str) -> list[Diamond]:
        return list(self._by_hom.get((outer, inner), []))

    def target_arrow(self, cell: str) -> GenArrow:
        """The unique target generator into ``cell``."""
        ts = self.arrows_into(cell, TARGET)
        if len(ts) != 1:
            raise OpetopeError(f"cell {cell!r} has {len(ts)} target arrows")
        return ts[0]

    def diamond_cod(self, d: Diamond) -> str:
        return self._arrows[d.het_outer].cod

    def diamond_dom(self, d: Diamond) -> str:
        return self._arrows[d.het_inner].dom


# well-formedness


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    message: str = ""

    def __str__(self) -> str:
        return f"{self.kind}: {', '.join(self.ids)}" + (f" ({self.message})" if self.message else "")


def well_formed(g: OpetopicGraph) -> list[Violation]:
    """Structural problems of a presentation; an empty list means well formed.

    Diamonds that mention an arrow which is already broken are not reported
    again, so each defect shows up once.
    """
    out: list[Violation] = []
    broken: set[str] = set()
    for a in g.arrows.values():
        if a.dom not in g.cells or a.cod not in g.cells:
            out.append(Violation("dangling arrow", (a.id,)))
            broken.add(a.id)
        elif g.degree(a.cod) != g.degree(a.dom) + 1:
            out.append(Violation("non-consecutive degrees", (a.id,),
                                 f"{a.dom}:{g.degree(a.dom)} -> {a.cod}:{g.degree(a.cod)}"))
            broken.add(a.id)
    het_seen: dict[tuple[str, str], int] = defaultdict(int)
    hom_seen: dict[tuple[str, str], int] = defaultdict(int)
    for d in g.diamonds:
        missing = [x for x in d.arrows if x not in g.arrows]
        if missing:
            out.append(Violation("unknown arrow", d.arrows, f"missing {', '.join(missing)}"))
            continue
        if any(x in broken for x in d.arrows):
            continue
        f1, g1, f2, g2 = (g.arrows[x] for x in d.arrows)
        if f1.polarity is g1.polarity or f2.polarity is not g2.polarity:
            out.append(Violation("diamond type", d.arrows))
            continue
        if g1.cod != f1.dom or g2.cod != f2.dom or f1.cod != f2.cod or g1.dom != g2.dom:
            out.append(Violation("diamond endpoint mismatch", d.arrows))
            continue
        het_seen[d.het] += 1
        hom_seen[d.hom] += 1
    for pair, k in het_seen.items():
        if k > 1:
            out.append(Violation("duplicate pairing", pair, "heterogeneous pair in several diamonds"))
    for pair, k in hom_seen.items():
        if k > 1:
            out.append(Violation("duplicate pairing", pair, "homogeneous pair in several diamonds"))
    return out


# normal forms


@dataclass(frozen=True)
class NormalForm:
    """A normal-form arrow ``dom -> cod`` given as a domain-first path.

    Read from the codomain, a normal form of length k >= 3 starts with
    k - 2 target generators and ends with a homogeneous pair.
    """

    dom: str
    cod: str
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def is_identity(self) -> bool:
        return not self.arrows

    @property
    def tail(self) -> tuple[str, ...]:
        """The (at most two) generators at the domain end."""
        return self.arrows[:2]

    @property
    def target_prefix(self) -> tuple[str, ...]:
        """The target generators at the codomain end, outermost first."""
        return tuple(reversed(self.arrows[2:]))


def identity(cell: str) -> NormalForm:
    return NormalForm(cell, cell, ())


def _check_path(g: OpetopicGraph, path: Sequence[str]) -> None:
    for a, b in zip(path, path[1:]):
        if g.arrows[a].cod != g.arrows[b].dom:
            raise ValueError(f"arrows {a!r} and {b!r} are not composable")


def fuel_bound(g: OpetopicGraph, top: str) -> int:
    """Path-length bound for 3-step rewriting into ``top``.

    Sum over source generators f into ``top`` of twice the number of
    generators into the domain of f.
    """
    return sum(2 * len(g.arrows_into(f.dom)) for f in g.arrows_into(top, SOURCE))


def _fuel_override() -> int:
    raw = os.environ.get("OPETOPE_FUEL_OVERRIDE")
    if not raw:
        return 0
    try:
        return int(raw)
    except ValueError:
        return 0


def _unique(cands: list[tuple[str, ...]], what: str) -> tuple[str, ...]:
    distinct = list(dict.fromkeys(cands))
    if not distinct:
        raise MissingRelation(f"no diamond for {what}")
    if len(distinct) > 1:
        raise AmbiguousRewrite(f"{len(distinct)} diamonds match {what}")
    return distinct[0]


def _pair_to_homogeneous(g: OpetopicGraph, outer: str, inner: str) -> tuple[str, str]:
    if g.polarity(outer) is g.polarity(inner):
        return (outer, inner)
    return _unique([d.hom for d in g.diamonds_with_het(outer, inner)], f"pair ({outer}, {inner})")


def rewrite_step(g: OpetopicGraph, p: str, q: str, r: str) -> tuple[str, str, str] | None:
    """One rewriting step on the outer-first triple ``p . q . r``.

    Returns None when the triple is already normal.
    """
    pp, pq, pr = g.polarity(p), g.polarity(q), g.polarity(r)
    if pp is TARGET and pq is pr:
        return None
    cands: list[tuple[str, ...]]
    if pp is SOURCE and pq is not pr:
        cands = [(p,) + d.hom for d in g.diamonds_with_het(q, r)]
    elif pr is SOURCE and pp is pq:
        cands = [d.het + (r,) for d in g.diamonds_with_hom(p, q)]
    else:  # r is a target and (p, q) heterogeneous
        cands = [d.hom + (r,) for d in g.diamonds_with_het(p, q)]
    return _unique(cands, f"triple ({p}, {q}, {r})")  # type: ignore[return-value]


def normalize_triple(g: OpetopicGraph, p: str, q: str, r: str,
                     fuel: int | None = None) -> tuple[tuple[str, str, str], int]:
    """Normalize an outer-first triple; returns the result and the step count."""
    if fuel is None:
        fuel = max(fuel_bound(g, g.arrows[p].cod) + 1, _fuel_override())
    cur = (p, q, r)
    steps = 0
    while True:
        nxt = rewrite_step(g, *cur)
        if nxt is None:
            return cur, steps
        steps += 1
        if steps > fuel:
            raise FuelExhausted(f"triple ({p}, {q}, {r}) not normal after {fuel} steps")
        cur = nxt  # type: ignore[assignment]


def normalize(g: OpetopicGraph, path: Sequence[str], dom: str | None = None) -> NormalForm:
    """Normal form of a domain-first path of generators.

    ``dom`` is only needed for the empty path.
    """
    path = list(path)
    if not path:
        if dom is None:
            raise ValueError("empty path needs an explicit cell")
        return identity(dom)
    _check_path(g, path)
    outer_first = path[::-1]
    done: list[str] = []
    rest = outer_first
    while len(rest) >= 3:
        (a, b, c), _ = normalize_triple(g, rest[0], rest[1], rest[2])
        done.append(a)
        rest = [b, c] + rest[3:]
    if len(rest) == 2:
        rest = list(_pair_to_homogeneous(g, rest[0], rest[1]))
    result = (done + rest)[::-1]
    return NormalForm(g.arrows[path[0]].dom, g.arrows[path[-1]].cod, tuple(result))


def is_normal(g: OpetopicGraph, path: Sequence[str]) -> bool:
    if len(path) <= 1:
        return True
    pols = [g.polarity(a) for a in path]
    return pols[0] is pols[1] and all(p is TARGET for p in pols[2:])


def compose(g: OpetopicGraph, inner: NormalForm, outer: NormalForm) -> NormalForm:
    """Normal form of ``outer . inner``."""
    if inner.cod != outer.dom:
        raise ValueError(f"cannot compose {inner} with {outer}")
    return normalize(g, inner.arrows + outer.arrows, dom=inner.dom)


def hom(g: OpetopicGraph, x: str, y: str) -> list[NormalForm]:
    """All normal forms ``x -> y``."""
    k = g.degree(y) - g.degree(x)
    if k < 0:
        return []
    if k == 0:
        return [identity(x)] if x == y else []
    out: list[NormalForm] = []

    def chains(top: str, depth: int) -> Iterator[list[str]]:
        # target generators going down from top, listed domain first
        if depth == 0:
            yield []
            return
        for t in g.arrows_into(top, TARGET):
            for rest in chains(t.dom, depth - 1):
                yield rest + [t.id]

    for chain in chains(y, max(k - 2, 0)):
        base = g.arrows[chain[0]].dom if chain else y
        if k == 1:
            out.extend(NormalForm(x, y, (a.id,)) for a in g.arrows_into(y) if a.dom == x)
            continue
        for f in g.arrows_into(base):
            for h in g.arrows_into(f.dom, f.polarity):
                if h.dom == x:
                    out.append(NormalForm(x, y, (h.id, f.id) + tuple(chain)))
    return out


def two_step_into(g: OpetopicGraph, x: str) -> list[tuple[str, str]]:
    """Homogeneous pairs ``(outer, inner)`` ending at ``x``."""
    return [(f.id, h.id) for f in g.arrows_into(x) for h in g.arrows_into(f.dom, f.polarity)]


# morphisms


@dataclass(frozen=True, eq=False)
class Morphism:
    source: OpetopicGraph
    target: OpetopicGraph
    cell_map: Mapping[str, str]
    arrow_map: Mapping[str, str]

    def __call__(self, cell: str) -> str:
        return self.cell_map[cell]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Morphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and dict(self.cell_map) == dict(other.cell_map)
                and dict(self.arrow_map) == dict(other.arrow_map))

    __hash__ = None  # type: ignore[assignment]

    def then(self, other: "Morphism") -> "Morphism":
        """``other . self``."""
        return Morphism(self.source, other.target,
                        {c: other.cell_map[v] for c, v in self.cell_map.items()},
                        {a: other.arrow_map[v] for a, v in self.arrow_map.items()})

    def on_normal_form(self, nf: NormalForm) -> NormalForm:
        return NormalForm(self.cell_map[nf.dom], self.cell_map[nf.cod],
                          tuple(self.arrow_map[a] for a in nf.arrows))

    @staticmethod
    def identity(g: OpetopicGraph) -> "Morphism":
        return Morphism(g, g, {c: c for c in g.cells}, {a: a for a in g.arrows})

    @property
    def is_injective(self) -> bool:
        return (len(set(self.cell_map.values())) == len(self.cell_map)
                and len(set(self.arrow_map.values())) == len(self.arrow_map))


def validate_morphism(m: Morphism) -> list[Violation]:
    src, tgt = m.source, m.target
    out: list[Violation] = []
    for c, d in src.cells.items():
        img = m.cell_map.get(c)
        if img is None or img not in tgt.cells:
            out.append(Violation("unmapped cell", (c,)))
        elif tgt.degree(img) != d:
            out.append(Violation("degree not preserved", (c, img)))
    for a in src.arrows.values():
        img = m.arrow_map.get(a.id)
        if img is None or img not in tgt.arrows:
            out.append(Violation("unmapped arrow", (a.id,)))
            continue
        b = tgt.arrows[img]
        if b.polarity is not a.polarity:
            out.append(Violation("polarity not preserved", (a.id, img)))
        if m.cell_map.get(a.dom) != b.dom or m.cell_map.get(a.cod) != b.cod:
            out.append(Violation("endpoints not preserved", (a.id, img)))
    if out:
        return out
    target_diamonds = set(tgt.diamonds)
    for d in src.diamonds:
        img = Diamond(*(m.arrow_map[x] for x in d.arrows))
        if img not in target_diamonds:
            out.append(Violation("diamond not preserved", d.arrows))
    return out


# structure-preserving maps by backtracking


def _cell_order(g: OpetopicGraph) -> list[str]:
    """Cells ordered top-down so each one is adjacent to an earlier one."""
    order: list[str] = []
    seen: set[str] = set()
    for start in sorted(g.cells, key=lambda c: -g.degree(c)):
        if start in seen:
            continue
        seen.add(start)
        queue = [start]
        while queue:
            c = queue.pop(0)
            order.append(c)
            for a in g.arrows_into(c) + g.arrows_from(c):
                other = a.dom if a.cod == c else a.cod
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
    return order


def _signature(g: OpetopicGraph, c: str) -> tuple:
    return (g.degree(c), len(g.arrows_into(c, SOURCE)), len(g.arrows_into(c, TARGET)),
            len(g.arrows_from(c, SOURCE)), len(g.arrows_from(c, TARGET)))


def find_morphisms(g: OpetopicGraph, h: OpetopicGraph, *, partial: Mapping[str, str] | None = None,
                   bijective: bool = False) -> Iterator[Morphism]:
    """Enumerate morphisms ``g -> h`` extending ``partial``.

    With ``bijective`` only isomorphisms are produced.
    """
    order = _cell_order(g)
    partial = dict(partial or {})
    if bijective:
        if len(g.cells) != len(h.cells) or len(g.arrows) != len(h.arrows) \
                or len(g.diamonds) != len(h.diamonds):
            return
        sig_h: dict[tuple, list[str]] = defaultdict(list)
        for c in h.cells:
            sig_h[_signature(h, c)].append(c)
        candidates = {c: sig_h.get(_signature(g, c), []) for c in g.cells}
    else:
        by_deg: dict[int, list[str]] = defaultdict(list)
        for c, d in h.cells.items():
            by_deg[d].append(c)
        candidates = {c: by_deg.get(g.degree(c), []) for c in g.cells}

    def arrow_groups(graph: OpetopicGraph):
        groups: dict[tuple[str, str, Polarity], list[str]] = defaultdict(list)
        for a in graph.arrows.values():
            groups[(a.dom, a.cod, a.polarity)].append(a.id)
        return groups

    g_groups, h_groups = arrow_groups(g), arrow_groups(h)
    # neighbours of each cell already placed earlier in the order
    pos = {c: i for i, c in enumerate(order)}
    checks: dict[str, list[tuple[str, str, Polarity]]] = defaultdict(list)
    for key in g_groups:
        dom, cod, _ = key
        later = dom if pos[dom] > pos[cod] else cod
        checks[later].append(key)

    cmap: dict[str, str] = {}
    used: set[str] = set()
    h_diamonds = set(h.diamonds)

    def consistent(c: str) -> bool:
        for key in checks[c]:
            dom, cod, pol = key
            hk = (cmap[dom], cmap[cod], pol)
            n_g, n_h = len(g_groups[key]), len(h_groups.get(hk, []))
            if n_h == 0 or (bijective and n_g != n_h):
                return False
        return True

    def arrow_maps() -> Iterator[dict[str, str]]:
        keys = list(g_groups)
        amap: dict[str, str] = {}

        def diamonds_ok() -> bool:
            for d in g.diamonds:
                if all(x in amap for x in d.arrows):
                    if Diamond(*(amap[x] for x in d.arrows)) not in h_diamonds:
                        return False
            return True

        def assign(i: int) -> Iterator[dict[str, str]]:
            if i == len(keys):
                yield dict(amap)
                return
            key = keys[i]
            dom, cod, pol = key
            sources = g_groups[key]
            targets = h_groups[(cmap[dom], cmap[cod], pol)]
            yield from place(i, sources, 0, targets, set())

        def place(i, sources, j, targets, taken) -> Iterator[dict[str, str]]:
            if j == len(sources):
                if diamonds_ok():
                    yield from assign(i + 1)
                return
            for t in targets:
                if bijective and t in taken:
                    continue
                amap[sources[j]] = t
                yield from place(i, sources, j + 1, targets, taken | {t})
                del amap[sources[j]]

        yield from assign(0)

    def extend(i: int) -> Iterator[Morphism]:
        if i == len(order):
            for amap in arrow_maps():
                yield Morphism(g, h, dict(cmap), amap)
            return
        c = order[i]
        options = [partial[c]] if c in partial else candidates[c]
        for img in options:
            if img not in h.cells or h.degree(img) != g.degree(c):
                continue
            if bijective and img in used:
                continue
            cmap[c] = img
            used.add(img)
            if consistent(c):
                yield from extend(i + 1)
            used.discard(img)
            del cmap[c]

    yield from extend(0)


def find_isomorphism(g: OpetopicGraph, h: OpetopicGraph, max_cells: int = 64) -> Morphism | None:
    if len(g.cells) > max_cells or len(h.cells) > max_cells:
        raise SizeLimit(f"isomorphism search limited to {max_cells} cells")
    return next(find_morphisms(g, h, bijective=True), None)


def automorphisms(g: OpetopicGraph, max_cells: int = 64) -> list[Morphism]:
    if len(g.cells) > max_cells:
        raise SizeLimit(f"isomorphism search limited to {max_cells} cells")
    return list(find_morphisms(g, g, bijective=True))


# small helpers used across modules


def relabel(g: OpetopicGraph, cell_names: Mapping[str, str],
            arrow_names: Mapping[str, str]) -> tuple[OpetopicGraph, Morphism]:
    """Rename cells and arrows; returns the new graph and the renaming map."""
    cells = [(cell_names[c], d) for c, d in g.cells.items()]
    arrows = [GenArrow(arrow_names[a.id], cell_names[a.dom], cell_names[a.cod], a.polarity)
              for a in g.arrows.values()]
    diamonds = [Diamond(*(arrow_names[x] for x in d.arrows)) for d in g.diamonds]
    new = OpetopicGraph(cells, arrows, diamonds)
    return new, Morphism(g, new, dict(cell_names), dict(arrow_names))


def restrict(g: OpetopicGraph, keep: Iterable[str]) -> OpetopicGraph:
    """Full subgraph on the given cells, with every diamond it contains."""
    keep = set(keep)
    cells = [(c, d) for c, d in g.cells.items() if c in keep]
    arrows = [a for a in g.arrows.values() if a.dom in keep and a.cod in keep]
    ids = {a.id for a in arrows}
    diamonds = [d for d in g.diamonds if all(x in ids for x in d.arrows)]
    return OpetopicGraph(cells, arrows, diamonds)


@dataclass
class GraphBuilder:
    """Incremental construction helper for fixtures and tests."""

    cells: dict[str, int] = field(default_factory=dict)
    arrows: dict[str, GenArrow] = field(default_factory=dict)
    diamonds: list[Diamond] = field(default_factory=list)

    def cell(self, cid: str, degree: int) -> str:
        self.cells[cid] = degree
        return cid

    def arrow(self, dom: str, cod: str, polarity: Polarity | str, aid: str | None = None) -> str:
        pol = Polarity(polarity) if isinstance(polarity, str) else polarity
        aid = aid or f"{pol.value}:{dom}:{cod}"
        self.arrows[aid] = GenArrow(aid, dom, cod, pol)
        return aid

    def diamond(self, het_outer: str, het_inner: str, hom_outer: str, hom_inner: str) -> None:
        self.diamonds.append(Diamond(het_outer, het_inner, hom_outer, hom_inner))

    def build(self) -> OpetopicGraph:
        return OpetopicGraph(self.cells, self.arrows.values(), self.diamonds)
