"""Decorated trees and the text codes of opetopes.

Grammar (whitespace is ignored)::

    Code  := "o" | "{" Tree "}"
    Tree  := "deg(" Code ")" | "nd(" Code ")(" [Input ("," Input)*] ")"
    Input := "lf" | Tree

A node is decorated by the code of an opetope and has one input per source
of that opetope, in address order.  ``deg(c)`` is the pasting diagram with
no top cells on the opetope ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence, Union

from .core import TARGET, Diamond, OpetopeError, OpetopicGraph, ParseError
from .ograph import _node_over, source_order, top_cell


class ShapeMismatch(OpetopeError):
    pass


@dataclass(frozen=True)
class Node:
    code: str
    inputs: tuple["Tree | None", ...] = ()   # None marks a leaf


@dataclass(frozen=True)
class Degenerate:
    code: str


Tree = Union[Node, Degenerate]

POINT = "o"


# rendering and parsing


def render(tree: Tree) -> str:
    if isinstance(tree, Degenerate):
        return f"deg({tree.code})"
    ins = ",".join("lf" if t is None else render(t) for t in tree.inputs)
    return f"nd({tree.code})({ins})"


def wrap(tree: Tree) -> str:
    """The opetope code whose source diagram is ``tree``."""
    return "{" + render(tree) + "}"


class _Reader:
    def __init__(self, text: str):
        self.chars = [(i, ch) for i, ch in enumerate(text) if not ch.isspace()]
        self.text = text
        self.pos = 0

    def error(self, msg: str) -> ParseError:
        if self.pos < len(self.chars):
            idx = self.chars[self.pos][0]
        else:
            idx = len(self.text)
        before = self.text[:idx]
        line = before.count("\n") + 1
        col = idx - (before.rfind("\n") + 1) + 1
        return ParseError(msg, line, col)

    def peek(self, word: str) -> bool:
        end = self.pos + len(word)
        return "".join(ch for _, ch in self.chars[self.pos:end]) == word

    def expect(self, word: str) -> None:
        if not self.peek(word):
            raise self.error(f"expected {word!r}")
        self.pos += len(word)

    def at_end(self) -> bool:
        return self.pos >= len(self.chars)

    def code(self) -> str:
        if self.peek("o"):
            self.pos += 1
            return POINT
        self.expect("{")
        t = self.tree()
        self.expect("}")
        return wrap(t)

    def tree(self) -> Tree:
        if self.peek("deg("):
            self.pos += 4
            c = self.code()
            self.expect(")")
            return Degenerate(c)
        self.expect("nd(")
        c = self.code()
        self.expect(")(")
        inputs: list[Tree | None] = []
        if not self.peek(")"):
            while True:
                if self.peek("lf"):
                    self.pos += 2
                    inputs.append(None)
                else:
                    inputs.append(self.tree())
                if self.peek(","):
                    self.pos += 1
                    continue
                break
        self.expect(")")
        return Node(c, tuple(inputs))


def parse_code(text: str) -> str:
    """Check the syntax of a code and return it in canonical spacing."""
    r = _Reader(text)
    c = r.code()
    if not r.at_end():
        raise r.error("trailing characters")
    return c


def parse_tree(text: str) -> Tree:
    r = _Reader(text)
    t = r.tree()
    if not r.at_end():
        raise r.error("trailing characters")
    return t


def code_tree(code: str) -> Tree | None:
    """The source diagram tree of a code, or None for the point."""
    code = parse_code(code)
    if code == POINT:
        return None
    return parse_tree(code[1:-1])


def code_degree(code: str) -> int:
    t = code_tree(code)
    return 0 if t is None else tree_degree(t) + 1


def tree_degree(tree: Tree) -> int:
    """Degree of the pasting diagram described by ``tree``."""
    if isinstance(tree, Degenerate):
        return code_degree(tree.code) + 1
    return code_degree(tree.code)


def tree_nodes(tree: Tree) -> int:
    if isinstance(tree, Degenerate):
        return 0
    return 1 + sum(tree_nodes(t) for t in tree.inputs if t is not None)


def tree_leaves(tree: Tree) -> int:
    if isinstance(tree, Degenerate):
        return 1
    return sum(1 if t is None else tree_leaves(t) for t in tree.inputs)


# codes read off graphs


def cell_tree(g: OpetopicGraph, x: str) -> Tree:
    """Tree of the source diagram of the cell ``x`` (degree >= 1)."""
    d = g.degree(x)
    if d == 0:
        raise ValueError("a point has no source diagram")
    if d == 1:
        return Node(POINT, ())
    t = g.target_arrow(x)
    tt = g.target_arrow(t.dom)

    def build(f) -> Node:
        ins = []
        for s in source_order(g, f.dom):
            child = _node_over(g, (f.id, s.id))
            ins.append(None if child is None else build(child))
        return Node(shape_of(g, f.dom), tuple(ins))

    root = _node_over(g, (t.id, tt.id))
    if root is None:
        return Degenerate(shape_of(g, tt.dom))
    return build(root)


def shape_of(g: OpetopicGraph, x: str) -> str:
    """Code of the opetope that the cell ``x`` has as its shape."""
    cache = g.memo.setdefault("shape", {})
    if x not in cache:
        cache[x] = POINT if g.degree(x) == 0 else wrap(cell_tree(g, x))
    return cache[x]


def encode(x: OpetopicGraph) -> str:
    return shape_of(x, top_cell(x))


def pd_to_tree(p) -> Tree:
    """Tree of a pasting diagram (a ``PastingDiagram``)."""
    g, n = p.graph, p.n
    if n == 0:
        pts = g.fiber(0)
        if len(pts) != 1:
            raise ShapeMismatch("a 0-diagram has exactly one point")
        return Node(POINT, ())
    tops = g.fiber(n)
    if not tops:
        below = g.fiber(n - 1)
        if len(below) != 1:
            raise ShapeMismatch("a diagram without top cells has exactly one (n-1)-cell")
        return Degenerate(shape_of(g, below[0]))

    def node_above(c: str):
        ups = [a.cod for a in g.arrows_from(c, TARGET) if g.degree(a.cod) == n]
        if len(ups) > 1:
            raise ShapeMismatch(f"cell {c!r} is the target of several top cells")
        return ups[0] if ups else None

    seen: set[str] = set()

    def build(v: str) -> Node:
        if v in seen:
            raise ShapeMismatch("diagram is not a tree")
        seen.add(v)
        ins = []
        for s in source_order(g, v):
            above = node_above(s.dom)
            ins.append(None if above is None else build(above))
        return Node(shape_of(g, v), tuple(ins))

    root = node_above(p.root)
    if root is None:
        raise ShapeMismatch("no top cell over the root")
    t = build(root)
    if len(seen) != len(tops):
        raise ShapeMismatch("diagram is not connected")
    return t


def pd_code(p) -> str:
    """Code of the opetope with source diagram ``p``; equal codes mean isomorphic diagrams."""
    return wrap(pd_to_tree(p))


# decoding


@lru_cache(maxsize=None)
def decode(code: str) -> OpetopicGraph:
    """The canonically labelled opetope with the given code."""
    from .constructions import opetope_of_pd
    from .fixtures import point
    from .ograph import canonical_form

    tree = code_tree(code)
    if tree is None:
        return canonical_form(point())[0]
    return opetope_of_pd(tree_to_pd(tree))


@lru_cache(maxsize=None)
def source_shapes(code: str) -> tuple[str, ...]:
    """Codes of the sources of an opetope, in address order."""
    if code == POINT:
        return ()
    x = decode(code)
    return tuple(shape_of(x, f.dom) for f in source_order(x, top_cell(x)))


@lru_cache(maxsize=None)
def target_shape(code: str) -> str:
    x = decode(code)
    top = top_cell(x)
    if x.degree(top) == 0:
        raise ValueError("the point has no target")
    return shape_of(x, x.target_arrow(top).dom)


def tree_color(tree: Tree) -> str:
    """Code of the root colour: the shape the diagram's root cell must have."""
    if isinstance(tree, Degenerate):
        return tree.code
    return target_shape(tree.code)


def check_tree(tree: Tree, top_level: bool = True) -> None:
    """Raise ShapeMismatch unless inputs agree with the decorations' sources."""
    if isinstance(tree, Degenerate):
        if not top_level:
            raise ShapeMismatch("deg(...) may only appear at the top")
        return
    srcs = source_shapes(tree.code)
    if len(srcs) != len(tree.inputs):
        raise ShapeMismatch(f"{tree.code} has {len(srcs)} sources but {len(tree.inputs)} inputs")
    for want, child in zip(srcs, tree.inputs):
        if child is None:
            continue
        check_tree(child, top_level=False)
        if tree_color(child) != want:
            raise ShapeMismatch(f"input rooted at {tree_color(child)} plugged into a source {want}")


def tree_to_pd(tree: Tree):
    """Build the pasting diagram described by a tree by grafting its nodes."""
    from .calculus import degen, graft, shift, TargetMismatch

    check_tree(tree)
    if isinstance(tree, Degenerate):
        return degen(decode(tree.code))
    base = shift(decode(tree.code))
    if not tree.inputs:
        return base
    dec = decode(tree.code)
    leaves = [f.dom for f in source_order(dec, top_cell(dec))]
    assignment = {leaf: tree_to_pd(child) for leaf, child in zip(leaves, tree.inputs)
                  if child is not None}
    try:
        return graft(base, assignment)
    except TargetMismatch as exc:
        raise ShapeMismatch(str(exc)) from None


# diamonds and polynomial trees


FAMILIES = {
    ("s", "t", "s", "s"): "Inner",
    ("s", "t", "t", "t"): "Glob1",
    ("t", "s", "s", "s"): "Glob2",
    ("t", "s", "t", "t"): "Degen",
}


def classify_diamond(g: OpetopicGraph, d: Diamond) -> str:
    """Family of a diamond, read off the polarities of its four arrows."""
    key = tuple(g.polarity(a).value for a in d.arrows)
    try:
        return FAMILIES[key]
    except KeyError:
        raise ValueError(f"diamond {d} has polarity pattern {''.join(key)}") from None


@dataclass(frozen=True)
class PolyFragment:
    """Nodes, colours and typing maps of a finite part of the opetope polynomial."""

    colors: frozenset[str]
    nodes: frozenset[str]
    inputs: Mapping[str, tuple[str, ...]]
    target: Mapping[str, str]


def poly_fragment(codes: Sequence[str]) -> PolyFragment:
    codes = [parse_code(c) for c in codes]
    inputs = {c: source_shapes(c) for c in codes}
    target = {c: target_shape(c) for c in codes}
    colors = {s for ins in inputs.values() for s in ins} | set(target.values())
    return PolyFragment(frozenset(colors), frozenset(codes), inputs, target)


def pd_polynomial(p) -> tuple[list[str], list[str], dict[str, list[str]], dict[str, str]]:
    """Colours, nodes, input and target maps of a pasting diagram's tree."""
    g, n = p.graph, p.n
    colors = g.fiber(n - 1)
    nodes = g.fiber(n)
    inputs = {v: [s.dom for s in source_order(g, v)] for v in nodes}
    target = {v: g.target_arrow(v).dom for v in nodes}
    return colors, nodes, inputs, target


def check_polynomial_tree(colors: Sequence[str], nodes: Sequence[str],
                          inputs: Mapping[str, Sequence[str]], target: Mapping[str, str]):
    """Tree axioms for a finite polynomial: finiteness, injectivity, one root."""
    from .axioms import AxiomReport

    rep = AxiomReport()
    rep.ok("PT1", f"{len(colors)} colours, {len(nodes)} nodes")
    used_in = [c for v in nodes for c in inputs[v]]
    dup_in = sorted({c for c in used_in if used_in.count(c) > 1})
    tgts = [target[v] for v in nodes]
    dup_t = sorted({c for c in tgts if tgts.count(c) > 1})
    if dup_in:
        rep.fail("PT2", f"colours used as input twice: {dup_in}")
    elif dup_t:
        rep.fail("PT2", f"colours that are the target of two nodes: {dup_t}")
    else:
        rep.ok("PT2")
    roots = [c for c in colors if c not in set(used_in)]
    if len(roots) != 1:
        rep.fail("PT3", f"{len(roots)} roots: {sorted(roots)}")
        return rep
    # every colour and node must reach the root along input -> node -> target
    nxt: dict[tuple[str, str], tuple[str, str] | None] = {}
    for v in nodes:
        for c in inputs[v]:
            nxt[("c", c)] = ("v", v)
        nxt[("v", v)] = ("c", target[v])
    root = ("c", roots[0])
    for start in [("c", c) for c in colors] + [("v", v) for v in nodes]:
        cur, steps = start, 0
        while cur != root and cur in nxt and steps <= len(nxt) + 1:
            cur, steps = nxt[cur], steps + 1
        if cur != root:
            rep.fail("PT3", f"{start[1]} does not reach the root {roots[0]}")
            return rep
    rep.ok("PT3", f"root {roots[0]}")
    return rep
