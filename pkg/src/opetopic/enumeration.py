"""Listing opetopes: by their source trees, and by brute force from the axioms."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .axioms import check_o6_cell, check_opetopic, is_opetope
from .codec import (POINT, Degenerate, Node, Tree, code_degree, code_tree, decode,
                    source_shapes, target_shape, tree_degree, wrap)
from .core import (SOURCE, TARGET, Diamond, GenArrow, OpetopeError, OpetopicGraph,
                   find_isomorphism)

ARROW = "{nd(o)()}"


class BudgetExceeded(OpetopeError):
    pass


class ProfileTooLarge(OpetopeError):
    pass


@dataclass(frozen=True)
class SizeBudget:
    """Bounds for enumeration.

    ``max_arity`` bounds the number of sources of the result and of every
    decoration inside its code; ``max_top_cells`` bounds the number of nodes
    of the result's source tree (defaults to ``max_arity``).
    """

    degree: int
    max_top_cells: int | None = None
    max_arity: int = 3
    max_total_cells: int | None = None
    max_results: int = 100_000

    @property
    def node_limit(self) -> int:
        return self.max_arity if self.max_top_cells is None else self.max_top_cells


@lru_cache(maxsize=None)
def cell_count(code: str) -> int:
    """Number of cells of the opetope with this code, read off its tree.

    Uses the fiber sizes of an n-opetope X with source tree T (k nodes of
    total arity A, L leaves) and target Y:  |X| = k + 1 + A - L + |Y|, and Y
    has L + 1 faces whose own faces number 1 + (sum of the leaf colours'
    arities); below that Y agrees with the root colour of T.
    """
    tree = code_tree(code)
    if tree is None:
        return 1
    n = tree_degree(tree) + 1
    if n == 1:
        return 3
    if isinstance(tree, Degenerate):
        k, arity, leaf_colors, root = 0, 0, [tree.code], tree.code
    else:
        k, arity, leaf_colors = 0, 0, []
        for node in _walk(tree):
            srcs = source_shapes(node.code)
            k += 1
            arity += len(srcs)
            leaf_colors.extend(c for c, t in zip(srcs, node.inputs) if t is None)
        root = target_shape(tree.code)
    leaves = len(leaf_colors)
    if n == 2:
        target_size = 3
    else:
        z = cell_count(root)
        below = z - 2 - len(source_shapes(root)) if n > 3 else 0
        target_size = 1 + (leaves + 1) + (1 + sum(len(source_shapes(c)) for c in leaf_colors)) + below
    return k + 1 + arity - leaves + target_size


def _walk(tree: Node) -> Iterator[Node]:
    yield tree
    for t in tree.inputs:
        if t is not None:
            yield from _walk(t)


class _Enumerator:
    def __init__(self, max_arity: int, max_cells: int | None, max_results: int):
        self.max_arity = max_arity
        self.max_cells = max_cells
        self.max_results = max_results
        self.produced = 0

    def tick(self, k: int = 1) -> None:
        self.produced += k
        if self.produced > self.max_results:
            raise BudgetExceeded(f"more than {self.max_results} trees generated")

    @lru_cache(maxsize=None)
    def opetopes(self, degree: int) -> tuple[str, ...]:
        """All codes of this degree within the arity and size bounds."""
        if degree == 0:
            return (POINT,)
        if degree == 1:
            return (ARROW,) if self.max_arity >= 1 else ()
        out = []
        for tree in self.trees_any(degree - 1, self.max_arity):
            code = wrap(tree)
            if self.max_cells is not None and cell_count(code) > self.max_cells:
                continue
            out.append(code)
            self.tick()
        return tuple(out)

    def weight_limit(self) -> int:
        # a tree of k nodes with total arity a forces at least 3 + k + a cells
        return 10**9 if self.max_cells is None else self.max_cells - 3

    def trees_any(self, n: int, max_nodes: int) -> list[Tree]:
        """Trees of n-pasting diagrams with at most ``max_nodes`` nodes."""
        if n == 0:
            return [Node(POINT, ())]
        out: list[Tree] = [Degenerate(c) for c in self.opetopes(n - 1)]
        for color in self.opetopes(n - 1):
            out.extend(t for t, _, _ in self.trees(n, color, max_nodes, self.weight_limit()))
        return out

    @lru_cache(maxsize=None)
    def by_target(self, n: int) -> dict[str, list[str]]:
        groups: dict[str, list[str]] = defaultdict(list)
        for d in self.opetopes(n):
            groups[target_shape(d)].append(d)
        return groups

    @lru_cache(maxsize=None)
    def trees(self, n: int, color: str, max_nodes: int,
              max_weight: int) -> tuple[tuple[Node, int, int], ...]:
        """Node trees of n-diagrams whose root has the given colour.

        Entries are (tree, nodes, weight) where the weight of a node is one
        plus its arity.
        """
        if max_nodes < 1:
            return ()
        out: list[tuple[Node, int, int]] = []
        for dec in self.by_target(n).get(color, []):
            srcs = source_shapes(dec)
            w = 1 + len(srcs)
            if w > max_weight:
                continue
            for ins, used, weight in self.inputs(n, srcs, max_nodes - 1, max_weight - w):
                out.append((Node(dec, ins), used + 1, weight + w))
                self.tick()
        return tuple(out)

    def inputs(self, n: int, colors: tuple[str, ...], nodes: int, weight: int):
        if not colors:
            yield (), 0, 0
            return
        head, rest = colors[0], colors[1:]
        options: list[tuple[Node | None, int, int]] = [(None, 0, 0)]
        options.extend(self.trees(n, head, nodes, weight))
        for t, used, w in options:
            for tail, more, w2 in self.inputs(n, rest, nodes - used, weight - w):
                yield (t,) + tail, used + more, w + w2


def enumerate_opetopes(budget: SizeBudget) -> list[str]:
    """Codes of all opetopes of ``budget.degree`` within the budget, sorted."""
    en = _Enumerator(budget.max_arity, budget.max_total_cells, budget.max_results)
    if budget.degree < 2:
        return list(en.opetopes(budget.degree))
    out = []
    for tree in en.trees_any(budget.degree - 1, budget.node_limit):
        code = wrap(tree)
        if budget.max_total_cells is not None and cell_count(code) > budget.max_total_cells:
            continue
        out.append(code)
    return sorted(set(out))


def top_cell_count(code: str) -> int:
    """Number of sources of the opetope (nodes of its source tree)."""
    return len(source_shapes(code))


def count_table(max_degree: int, max_arity: int = 3, max_top_cells: int | None = None,
                max_total_cells: int | None = None,
                oracle_cap: int = 9) -> dict[tuple[int, int], tuple[int, int | None]]:
    """Counts of opetopes keyed by (degree, number of sources).

    Each entry is (tree count, oracle count); the oracle count is None when
    some opetope of that row has more than ``oracle_cap`` cells.
    """
    table: dict[tuple[int, int], tuple[int, int | None]] = {}
    for d in range(max_degree + 1):
        codes = enumerate_opetopes(SizeBudget(d, max_top_cells, max_arity, max_total_cells))
        rows: dict[int, list[str]] = defaultdict(list)
        for c in codes:
            rows[top_cell_count(c)].append(c)
        for k, row in sorted(rows.items()):
            profiles = {decode(c).profile() for c in row}
            oracle: int | None = None
            if all(sum(p) <= oracle_cap for p in profiles):
                oracle = 0
                for prof in profiles:
                    for g in oracle_enumerate(prof, max_cells=oracle_cap):
                        top = is_opetope(g)
                        if len(g.arrows_into(top, SOURCE)) == k:
                            oracle += 1
            table[(d, k)] = (len(row), oracle)
    return table


# brute force from the axioms


def _matchings(groups: dict[str, tuple[list, list]],
               polarity: dict[str, object]) -> Iterator[list[tuple]]:
    """Bijections from heterogeneous to homogeneous pairs, group by group.

    A source generator ``f`` whose pair with the target of its domain is
    matched to a pair starting at ``g`` points at ``g`` in the source tree;
    assignments closing a cycle there are cut off early.
    """
    hets = [(h, y) for y, (hs, _) in groups.items() for h in hs]
    used: set[tuple] = set()
    succ: dict[str, str | None] = {}
    acc: list[tuple] = []

    def closes_cycle(f: str, g: str | None) -> bool:
        while g is not None:
            if g == f:
                return True
            g = succ.get(g)
        return False

    def rec(i: int) -> Iterator[list[tuple]]:
        if i == len(hets):
            yield list(acc)
            return
        het, y = hets[i]
        edge = polarity[het[0]] is SOURCE and polarity[het[1]] is TARGET
        for m in groups[y][1]:
            if m in used:
                continue
            nxt = m[0] if polarity[m[0]] is SOURCE else None
            if edge and closes_cycle(het[0], nxt):
                continue
            used.add(m)
            acc.append((het, m))
            if edge:
                succ[het[0]] = nxt
            yield from rec(i + 1)
            if edge:
                del succ[het[0]]
            acc.pop()
            used.discard(m)

    yield from rec(0)


def oracle_enumerate(profile: tuple[int, ...], max_cells: int = 9) -> list[OpetopicGraph]:
    """Opetopes with the given number of cells in each degree, up to isomorphism.

    Candidates are built degree by degree, pruned by O2, O3 and a local
    tree test on each new cell (cycles are cut while diamonds are matched),
    then filtered by terminality of the top cell and the full axiom check
    and deduplicated by isomorphism.  Between a pair of
    cells at most one generator of each polarity is considered.
    """
    profile = tuple(profile)
    if sum(profile) > max_cells:
        raise ProfileTooLarge(f"profile {profile} has more than {max_cells} cells")
    if not profile or profile[-1] != 1 or any(k == 0 for k in profile):
        return []
    d = len(profile) - 1
    names = [[f"x{k}_{i}" for i in range(profile[k])] for k in range(d + 1)]

    found: list[OpetopicGraph] = []

    def options(k: int, i: int, g_cells, g_arrows, g_diamonds):
        """In-arrow configurations (with diamonds) for the cell names[k][i]."""
        x = names[k][i]
        below = names[k - 1]
        if k == d:
            choices = [(t, tuple(c for c in below if c != t)) for t in below]
        elif k == 1:
            choices = [(t, (s,)) for t in below for s in below]
        else:
            choices = [(t, srcs) for t in below
                       for r in range(len(below) + 1)
                       for srcs in itertools.combinations(below, r)]
        for t, srcs in choices:
            arrows = [GenArrow(f"t:{t}:{x}", t, x, TARGET)]
            arrows += [GenArrow(f"s:{s}:{x}", s, x, SOURCE) for s in srcs]
            if k == 1:
                yield (t, srcs, ()), arrows, []
                continue
            all_arrows = {a.id: a for a in g_arrows}
            all_arrows.update({a.id: a for a in arrows})
            into: dict[str, list[GenArrow]] = defaultdict(list)
            for a in all_arrows.values():
                into[a.cod].append(a)
            per_y: dict[str, tuple[list, list]] = {}
            for y in names[k - 2]:
                per_y[y] = ([], [])
            for f in arrows:
                for h in into[f.dom]:
                    pair = (f.id, h.id)
                    per_y[h.dom][0 if f.polarity is not h.polarity else 1].append(pair)
            if any(len(h) != len(m) for h, m in per_y.values()):
                continue
            groups = {y: pairs for y, pairs in per_y.items() if pairs[0]}
            polarity = {a.id: a.polarity for a in all_arrows.values()}
            for match in _matchings(groups, polarity):
                diamonds = [Diamond(h[0], h[1], m[0], m[1]) for h, m in match]
                trial = OpetopicGraph(list(g_cells) + [(x, k)], list(all_arrows.values()),
                                      list(g_diamonds) + diamonds)
                if check_o6_cell(trial, x) is not None:
                    continue
                key = (t, srcs, tuple(sorted(diamonds)))
                yield key, arrows, diamonds

    def build(k: int, i: int, cells, arrows, diamonds, last_key):
        if k > d:
            g = OpetopicGraph(cells, arrows, diamonds)
            if is_opetope(g) is not None and check_opetopic(g).all_pass:
                found.append(g)
            return
        if i == profile[k]:
            if k >= 1 and not _covered(names[k - 1], arrows):
                return
            build(k + 1, 0, cells, arrows, diamonds, None)
            return
        if k == 0:
            build(0, i + 1, cells + [(names[0][i], 0)], arrows, diamonds, None)
            return
        for key, new_arrows, new_diamonds in options(k, i, cells, arrows, diamonds):
            if last_key is not None and key < last_key:
                continue
            build(k, i + 1, cells + [(names[k][i], k)], arrows + new_arrows,
                  diamonds + new_diamonds, key)

    build(0, 0, [], [], [], None)
    return _dedupe(found)


def _covered(cells: list[str], arrows: list[GenArrow]) -> bool:
    """Every cell of the level below feeds some cell above."""
    used = {a.dom for a in arrows}
    return all(c in used for c in cells)


def _dedupe(graphs: list[OpetopicGraph]) -> list[OpetopicGraph]:
    buckets: dict[tuple, list[OpetopicGraph]] = defaultdict(list)
    for g in graphs:
        sig = tuple(sorted((g.degree(c), len(g.arrows_into(c, SOURCE)), len(g.arrows_from(c)))
                           for c in g.cells))
        bucket = buckets[sig]
        if not any(find_isomorphism(g, h) is not None for h in bucket):
            bucket.append(g)
    return [g for b in buckets.values() for g in b]


def oracle_codes(profile: tuple[int, ...], max_cells: int = 9) -> list[str]:
    from .codec import encode

    return sorted(encode(g) for g in oracle_enumerate(profile, max_cells))


def profiles_up_to(degree: int, max_cells: int) -> Iterator[tuple[int, ...]]:
    """Profiles of the given degree (top count 1) with at most ``max_cells`` cells."""
    def rec(prefix, left, depth):
        if depth == degree:
            if left >= 1:
                yield prefix + (1,)
            return
        for k in range(1, left - (degree - depth) + 1):
            yield from rec(prefix + (k,), left - k, depth + 1)
    yield from rec((), max_cells, 0)


def degree_of(code: str) -> int:
    return code_degree(code)
