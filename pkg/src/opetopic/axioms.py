"""Checkers for opetopic sets, boundaries and pasting diagrams.

Each checker returns an ``AxiomReport`` mapping an axiom label to a
result.  A failing result carries a witness: the cell, arrow or pair that
breaks the axiom.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator

from .constructions import Boundary, PastingDiagram, pd_boundary, source_horn
from .core import (SOURCE, TARGET, NormalizationError, OpetopeError, OpetopicGraph, compose,
                   hom, normalize, well_formed)
from .ograph import path_counts, source_graph


class IllFormed(OpetopeError):
    def __init__(self, violations):
        super().__init__("; ".join(str(v) for v in violations))
        self.violations = violations


@dataclass(frozen=True)
class AxiomResult:
    label: str
    status: str           # "pass", "fail" or "skipped"
    witness: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class AxiomReport:
    results: dict[str, AxiomResult] = field(default_factory=dict)

    def ok(self, label: str, note: str = "") -> None:
        self.results[label] = AxiomResult(label, "pass", note)

    def fail(self, label: str, witness: str) -> None:
        self.results[label] = AxiomResult(label, "fail", witness)

    def skip(self, label: str, reason: str) -> None:
        self.results[label] = AxiomResult(label, "skipped", reason)

    def __getitem__(self, label: str) -> AxiomResult:
        return self.results[label]

    def __iter__(self) -> Iterator[AxiomResult]:
        return iter(self.results.values())

    @property
    def all_pass(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> list[AxiomResult]:
        return [r for r in self.results.values() if r.status == "fail"]

    def __str__(self) -> str:
        lines = []
        for r in self.results.values():
            lines.append(f"{r.label}: {r.status}" + (f" ({r.witness})" if r.witness else ""))
        return "\n".join(lines)


# opetopic sets


def pair_classes(g: OpetopicGraph) -> list[list[tuple[str, str]]]:
    """Composable generator pairs grouped into classes linked by diamonds."""
    parent: dict[tuple[str, str], tuple[str, str]] = {}
    for x in g.cells:
        for f in g.arrows_into(x):
            for h in g.arrows_into(f.dom):
                parent[(f.id, h.id)] = (f.id, h.id)

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for d in g.diamonds:
        a, b = find(d.het), find(d.hom)
        if a != b:
            parent[max(a, b)] = min(a, b)
    classes: dict[tuple[str, str], list[tuple[str, str]]] = {}
    for p in parent:
        classes.setdefault(find(p), []).append(p)
    return list(classes.values())


def check_o6_cell(g: OpetopicGraph, x: str, zigzag: bool = False) -> str | None:
    """Witness text when the source tree of ``x`` is not a tree, else None."""
    adj, root = source_graph(g, x)
    if zigzag:
        twos = [v for v in adj if v[0] == "two"]
        for r in adj:
            if all(_reaches(adj, v, r) for v in twos):
                return None
        return f"{x}: no vertex reachable from every 2-step arrow"
    if root is None:
        return f"{x}: source tree has no root"
    counts = path_counts(adj, root)
    for v, k in counts.items():
        if k != 1:
            what = "infinitely many" if k == float("inf") else int(k)
            return f"{x}: vertex {v[1]} has {what} paths to the root"
    return None


def _reaches(adj, start, goal) -> bool:
    seen, stack = {start}, [start]
    while stack:
        v = stack.pop()
        if v == goal:
            return True
        for w in adj.get(v, []):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def check_opetopic(g: OpetopicGraph, zigzag: bool = False) -> AxiomReport:
    """Check O1 to O8 on a well-formed presentation.

    O7 and O8 need normal forms, so they are skipped when O4 or O5 fail.
    ``zigzag`` replaces the tree test of O6 by plain reachability.
    """
    problems = well_formed(g)
    if problems:
        raise IllFormed(problems)
    rep = AxiomReport()
    rep.ok("O1", f"{len(g.cells)} cells, {len(g.arrows)} arrows, {len(g.diamonds)} diamonds")

    bad = next((x for x, d in g.cells.items() if d >= 1 and len(g.arrows_into(x, TARGET)) != 1), None)
    if bad is None:
        rep.ok("O2")
    else:
        rep.fail("O2", f"{bad} has {len(g.arrows_into(bad, TARGET))} target arrows")

    bad = next((x for x, d in g.cells.items() if d == 1 and len(g.arrows_into(x, SOURCE)) != 1), None)
    if bad is None:
        rep.ok("O3")
    else:
        rep.fail("O3", f"{bad} has {len(g.arrows_into(bad, SOURCE))} source arrows")

    o4 = o5 = None
    for cls in pair_classes(g):
        homs = [p for p in cls if g.polarity(p[0]) is g.polarity(p[1])]
        hets = [p for p in cls if g.polarity(p[0]) is not g.polarity(p[1])]
        if o4 is None and len(homs) != 1:
            o4 = f"class of {cls[0]} has {len(homs)} homogeneous pairs"
        if o5 is None and len(hets) != 1:
            o5 = f"class of {cls[0]} has {len(hets)} heterogeneous pairs"
    rep.ok("O4") if o4 is None else rep.fail("O4", o4)
    rep.ok("O5") if o5 is None else rep.fail("O5", o5)

    o6 = None
    for x, d in g.cells.items():
        if d >= 2:
            o6 = check_o6_cell(g, x, zigzag)
            if o6:
                break
    rep.ok("O6") if o6 is None else rep.fail("O6", o6)

    if o4 or o5:
        rep.skip("O7", "needs O4 and O5")
        rep.skip("O8", "needs O4 and O5")
        return rep
    try:
        _check_o7(g, rep)
        _check_o8(g, rep)
    except NormalizationError as exc:
        rep.fail("O4", f"normalization failed: {exc}")
        for label in ("O7", "O8"):
            if label not in rep.results:
                rep.skip(label, "normalization failed")
    return rep


def _check_o7(g: OpetopicGraph, rep: AxiomReport) -> None:
    for f in g.arrows.values():
        if f.polarity is not TARGET:
            continue
        y = f.dom
        for z, dz in g.cells.items():
            if dz > g.degree(y) - 2:
                continue
            images: dict = {}
            for nf in hom(g, z, y):
                img = normalize(g, nf.arrows + (f.id,))
                if img in images:
                    rep.fail("O7", f"{f.id}: {images[img].arrows} and {nf.arrows} from {z} collide")
                    return
                images[img] = nf
    rep.ok("O7")


def _check_o8(g: OpetopicGraph, rep: AxiomReport) -> None:
    for y, dy in g.cells.items():
        for z, dz in g.cells.items():
            if dy - dz < 3:
                continue
            for nf in hom(g, z, y):
                head = normalize(g, nf.arrows[:-1])
                last = normalize(g, nf.arrows[-1:])
                if compose(g, head, last) != nf:
                    rep.fail("O8", f"{nf.arrows} does not factor through its prefix")
                    return
    rep.ok("O8")


def is_opetope(g: OpetopicGraph) -> str | None:
    """The top cell if every cell has exactly one arrow to it, else None."""
    if not g.cells:
        return None
    tops = g.fiber(g.dimension)
    if len(tops) != 1:
        return None
    top = tops[0]
    try:
        for x in g.cells:
            if len(hom(g, x, top)) != 1:
                return None
    except (NormalizationError, OpetopeError):
        return None
    return top


# boundaries and pasting diagrams


def check_boundary(b: Boundary) -> AxiomReport:
    rep = AxiomReport()
    n = b.n
    if n == 0:
        if b.graph.cells:
            rep.fail("Bd1", "a 0-boundary is empty")
        else:
            rep.ok("Bd1")
        rep.ok("Bd2")
        return rep
    targets = b.cells_marked(TARGET)
    if len(targets) == 1:
        rep.ok("Bd1", f"target {targets[0]}")
    else:
        rep.fail("Bd1", f"{len(targets)} target cells")
    horn = source_horn(b)
    sub = check_pasting_diagram(horn)
    if sub.all_pass:
        rep.ok("Bd2")
    else:
        rep.fail("Bd2", "source horn: " + "; ".join(f"{r.label} {r.witness}" for r in sub.failures()))
    return rep


def pd_graph(p: PastingDiagram) -> dict[str, list[str]]:
    """Edges (n-1)-cell -> top cell it is a source of -> its target cell."""
    g, n = p.graph, p.n
    adj: dict[str, list[str]] = {c: [] for c in g.fiber(n - 1) + g.fiber(n)}
    for a in g.arrows.values():
        if g.degree(a.cod) != n:
            continue
        if a.polarity is SOURCE:
            adj[a.dom].append(a.cod)
        else:
            adj[a.cod].append(a.dom)
    return adj


def check_pasting_diagram(p: PastingDiagram) -> AxiomReport:
    """Check PD1 to PD8, plus the tree shape and cell count they imply."""
    g, n = p.graph, p.n
    rep = AxiomReport()
    if any(d > n for d in g.cells.values()):
        raise ValueError(f"diagram of degree {n} has cells above degree {n}")
    rep.ok("PD1", f"{len(g.cells)} cells")
    low = g.fiber(n - 1) if n >= 1 else []
    leaf, root = Counter(p.leaves), Counter(p.roots)

    def out(c, pol):
        return [a for a in g.arrows_from(c, pol) if g.degree(a.cod) == n]

    pd2 = next((f"{c}: leaf {leaf[c]} times, {len(out(c, TARGET))} target arrows out"
                for c in low if leaf[c] > 1 or (leaf[c] == 1) != (not out(c, TARGET))), None)
    stray = [c for c in list(leaf) + list(root) if c not in low]
    if stray:
        pd2 = pd2 or f"{stray[0]} is marked but has degree != {n - 1}"
    rep.ok("PD2") if pd2 is None else rep.fail("PD2", pd2)
    pd3 = next((f"{c}: root {root[c]} times, {len(out(c, SOURCE))} source arrows out"
                for c in low if root[c] > 1 or (root[c] == 1) != (not out(c, SOURCE))), None)
    rep.ok("PD3") if pd3 is None else rep.fail("PD3", pd3)
    if n == 0:
        pts = g.fiber(0)
        rep.ok("PD4") if len(pts) == 1 else rep.fail("PD4", f"{len(pts)} points")
    else:
        rep.ok("PD4")
    pd5 = next((c for c in low if len(out(c, TARGET)) > 1), None)
    rep.ok("PD5") if pd5 is None else rep.fail("PD5", f"{pd5} is the target of several top cells")
    pd6 = next((c for c in low if len(out(c, SOURCE)) > 1), None)
    rep.ok("PD6") if pd6 is None else rep.fail("PD6", f"{pd6} is a source of several top cells")

    if n >= 1:
        adj = pd_graph(p)
        reach_all = [r for r in low if all(_reaches(adj, v, r) for v in adj)]
        if reach_all:
            rep.ok("PD7", f"root {reach_all[0]}")
            counts = path_counts({("v", k): [("v", w) for w in vs] for k, vs in adj.items()},
                                 ("v", reach_all[0]))
            bad = [k for k, c in counts.items() if c != 1]
            rep.ok("PD7-tree") if not bad else rep.fail("PD7-tree", f"{bad[0][1]} has several paths")
            expected = 1 + sum(len(g.arrows_into(v, SOURCE)) for v in g.fiber(n))
            if len(low) == expected:
                rep.ok("PD7-count")
            else:
                rep.fail("PD7-count", f"{len(low)} cells of degree {n - 1}, expected {expected}")
        else:
            rep.fail("PD7", "no cell reachable from every vertex")
    else:
        rep.ok("PD7")

    try:
        bd, _ = pd_boundary(p)
        sub = check_boundary(bd)
    except OpetopeError as exc:
        rep.fail("PD8", f"boundary: {exc}")
        return rep
    if sub.all_pass:
        rep.ok("PD8")
    else:
        rep.fail("PD8", "boundary: " + "; ".join(f"{r.label} {r.witness}" for r in sub.failures()))
    return rep


def is_pasting_diagram(p: PastingDiagram) -> bool:
    return check_pasting_diagram(p).all_pass


def is_boundary(b: Boundary) -> bool:
    return check_boundary(b).all_pass
