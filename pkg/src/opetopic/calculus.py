"""Shift, degeneracy, substitution and grafting of pasting diagrams."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .codec import shape_of
from .constructions import (PastingDiagram, coproduct, copair, fill, pd_boundary,
                            pushout, restrict_below, slice_with_projection)
from .core import SOURCE, Morphism, OpetopeError, OpetopicGraph
from .ograph import canonical_names, top_cell


class BoundaryMismatch(OpetopeError):
    pass


class TargetMismatch(OpetopeError):
    pass


def shift(x: OpetopicGraph) -> PastingDiagram:
    """An n-opetope seen as an n-pasting diagram with a single top cell."""
    top = top_cell(x)
    n = x.degree(top)
    if n == 0:
        return PastingDiagram(x, 0, (), ())
    leaves = tuple(a.dom for a in x.arrows_into(top, SOURCE))
    return PastingDiagram(x, n, leaves, (x.target_arrow(top).dom,))


def degen(x: OpetopicGraph) -> PastingDiagram:
    """The (n+1)-pasting diagram with no top cell on an n-opetope."""
    top = top_cell(x)
    return PastingDiagram(x, x.degree(top) + 1, (top,), (top,))


@dataclass
class Gluing:
    """Result of a substitution or grafting with the maps of its pieces into it."""

    result: PastingDiagram
    base: Morphism
    pieces: dict[str, Morphism]


def _boundary_iso(bd_slice: OpetopicGraph, piece: PastingDiagram,
                  expected: str) -> Morphism:
    """Identify the boundary of a slice with the boundary of a pasting diagram."""
    bbd, bproj = pd_boundary(piece)
    try:
        filled = fill(bbd)
        got = shape_of(filled, top_cell(filled))
    except OpetopeError as exc:
        raise BoundaryMismatch(f"piece has no valid boundary: {exc}") from None
    if got != expected:
        raise BoundaryMismatch(f"boundary of {got} does not match {expected}")
    names_c, names_a = canonical_names(filled)
    back_c = {v: k for k, v in names_c.items()}
    back_a = {v: k for k, v in names_a.items()}
    phi = Morphism(bd_slice, bbd.graph, {c: back_c[c] for c in bd_slice.cells},
                   {a: back_a[a] for a in bd_slice.arrows})
    return phi.then(bproj)


def subst_gluing(a: PastingDiagram, b: Mapping[str, PastingDiagram]) -> Gluing:
    """Replace every top cell x of ``a`` by the diagram ``b[x]`` with the same boundary."""
    n = a.n
    tops = a.top_cells
    if set(b) != set(tops):
        raise ValueError("substitution needs exactly one diagram per top cell")
    base = restrict_below(a.graph, n)
    pieces, to_base, to_piece = [], [], []
    for x in tops:
        bx = b[x]
        if bx.n != n:
            raise BoundaryMismatch(f"diagram for {x!r} has degree {bx.n}, expected {n}")
        sx, proj = slice_with_projection(a.graph, x)
        bd = restrict_below(sx, n)
        to_base.append(Morphism(bd, base, {c: proj.cell_map[c] for c in bd.cells},
                                {e: proj.arrow_map[e] for e in bd.arrows}))
        to_piece.append(_boundary_iso(bd, bx, shape_of(a.graph, x)))
        pieces.append(bd)
    glue, glue_inj = coproduct(pieces)
    blocks, block_inj = coproduct([b[x].graph for x in tops])
    f = copair(to_base, glue, glue_inj, base)
    g = copair([m.then(inj) for m, inj in zip(to_piece, block_inj)], glue, glue_inj, blocks)
    result, into_result, from_blocks = pushout(f, g)
    pd = PastingDiagram(result, n, tuple(into_result.cell_map[c] for c in a.leaves),
                        tuple(into_result.cell_map[c] for c in a.roots))
    return Gluing(pd, into_result,
                  {x: inj.then(from_blocks) for x, inj in zip(tops, block_inj)})


def subst(a: PastingDiagram, b: Mapping[str, PastingDiagram]) -> PastingDiagram:
    return subst_gluing(a, b).result


def graft_gluing(a: PastingDiagram, b: Mapping[str, PastingDiagram]) -> Gluing:
    """Plug the root of ``b[x]`` into each leaf x of ``a``.

    Leaves without an entry keep the unit (the degenerate diagram), so a
    partial assignment is accepted.
    """
    unknown = set(b) - set(a.leaves)
    if unknown:
        raise ValueError(f"not leaves: {sorted(unknown)}")
    leaves = [x for x in dict.fromkeys(a.leaves) if x in b]
    slices, to_a, to_piece = [], [], []
    for x in leaves:
        bx = b[x]
        if bx.n != a.n:
            raise TargetMismatch(f"diagram for {x!r} has degree {bx.n}, expected {a.n}")
        sx, proj = slice_with_projection(a.graph, x)
        tx, tproj = slice_with_projection(bx.graph, bx.root)
        want, got = shape_of(a.graph, x), shape_of(bx.graph, bx.root)
        if want != got or sx != tx:
            raise TargetMismatch(f"root {got} does not match leaf {want}")
        slices.append(sx)
        to_a.append(proj)
        to_piece.append(tproj)
    if not leaves:
        return Gluing(a, Morphism.identity(a.graph), {})
    glue, glue_inj = coproduct(slices)
    blocks, block_inj = coproduct([b[x].graph for x in leaves])
    f = copair(to_a, glue, glue_inj, a.graph)
    g = copair([m.then(inj) for m, inj in zip(to_piece, block_inj)], glue, glue_inj, blocks)
    result, into_result, from_blocks = pushout(f, g)
    maps = {x: inj.then(from_blocks) for x, inj in zip(leaves, block_inj)}
    new_leaves = [into_result.cell_map[x] for x in a.leaves if x not in b]
    for x in leaves:
        new_leaves.extend(maps[x].cell_map[c] for c in b[x].leaves)
    pd = PastingDiagram(result, a.n, tuple(new_leaves),
                        tuple(into_result.cell_map[c] for c in a.roots))
    return Gluing(pd, into_result, maps)


def graft(a: PastingDiagram, b: Mapping[str, PastingDiagram]) -> PastingDiagram:
    return graft_gluing(a, b).result


def unit(x: OpetopicGraph) -> PastingDiagram:
    """Unit of the substitution monad: the shift of an opetope."""
    return shift(x)


def source_pd(p: PastingDiagram) -> PastingDiagram:
    """Source horn of the boundary of a pasting diagram."""
    from .constructions import source_horn

    return source_horn(pd_boundary(p)[0])
