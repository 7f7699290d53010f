"""Hand-built opetopes used as fixtures by tests and the command line."""

from __future__ import annotations

from .core import SOURCE, TARGET, GraphBuilder, OpetopicGraph


def point() -> OpetopicGraph:
    b = GraphBuilder()
    b.cell("p", 0)
    return b.build()


def arrow() -> OpetopicGraph:
    b = GraphBuilder()
    b.cell("s", 0)
    b.cell("t", 0)
    b.cell("a", 1)
    b.arrow("s", "a", SOURCE)
    b.arrow("t", "a", TARGET)
    return b.build()


def triangle(m: int) -> OpetopicGraph:
    """The 2-opetope with ``m`` source edges; ``triangle(0)`` is the loop."""
    if m < 0:
        raise ValueError("m must be non-negative")
    if m == 0:
        return loop()
    b = GraphBuilder()
    pts = [b.cell(f"p{i}", 0) for i in range(m + 1)]
    edges = [b.cell(f"a{i}", 1) for i in range(1, m + 1)]
    top_edge = b.cell("b", 1)
    c = b.cell("c", 2)
    for i, a in enumerate(edges, start=1):
        b.arrow(pts[i - 1], a, SOURCE)
        b.arrow(pts[i], a, TARGET)
    b.arrow(pts[0], top_edge, SOURCE)
    b.arrow(pts[m], top_edge, TARGET)
    for a in edges:
        b.arrow(a, c, SOURCE)
    b.arrow(top_edge, c, TARGET)
    # first point: through the target edge vs through the first source edge
    b.diamond(f"t:{top_edge}:c", f"s:p0:{top_edge}", "s:a1:c", "s:p0:a1")
    for i in range(1, m):
        b.diamond(f"s:a{i}:c", f"t:p{i}:a{i}", f"s:a{i + 1}:c", f"s:p{i}:a{i + 1}")
    b.diamond(f"s:a{m}:c", f"t:p{m}:a{m}", f"t:{top_edge}:c", f"t:p{m}:{top_edge}")
    return b.build()


def loop() -> OpetopicGraph:
    b = GraphBuilder()
    b.cell("p", 0)
    b.cell("b", 1)
    b.cell("c", 2)
    b.arrow("p", "b", SOURCE)
    b.arrow("p", "b", TARGET)
    b.arrow("b", "c", TARGET)
    b.diamond("t:b:c", "s:p:b", "t:b:c", "t:p:b")
    return b.build()


def globe3() -> OpetopicGraph:
    """The 3-opetope whose single source and target are both ``triangle(2)``."""
    b = GraphBuilder()
    for i in range(3):
        b.cell(f"p{i}", 0)
    for e in ("a1", "a2", "b"):
        b.cell(e, 1)
    b.cell("c", 2)
    b.cell("d", 2)
    b.cell("e", 3)
    b.arrow("p0", "a1", SOURCE)
    b.arrow("p1", "a1", TARGET)
    b.arrow("p1", "a2", SOURCE)
    b.arrow("p2", "a2", TARGET)
    b.arrow("p0", "b", SOURCE)
    b.arrow("p2", "b", TARGET)
    for two in ("c", "d"):
        b.arrow("a1", two, SOURCE)
        b.arrow("a2", two, SOURCE)
        b.arrow("b", two, TARGET)
        b.diamond(f"t:b:{two}", "s:p0:b", f"s:a1:{two}", "s:p0:a1")
        b.diamond(f"s:a1:{two}", "t:p1:a1", f"s:a2:{two}", "s:p1:a2")
        b.diamond(f"s:a2:{two}", "t:p2:a2", f"t:b:{two}", "t:p2:b")
    b.arrow("c", "e", SOURCE)
    b.arrow("d", "e", TARGET)
    for edge in ("a1", "a2"):
        b.diamond("t:d:e", f"s:{edge}:d", "s:c:e", f"s:{edge}:c")
    b.diamond("s:c:e", "t:b:c", "t:d:e", "t:b:d")
    return b.build()


def all_fixtures() -> dict[str, OpetopicGraph]:
    return {
        "pt": point(),
        "arr": arrow(),
        "loop": loop(),
        "tri1": triangle(1),
        "tri2": triangle(2),
        "tri3": triangle(3),
        "op3": globe3(),
    }
