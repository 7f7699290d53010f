"""Command line workbench: ``opetope <command> ...``.

Exit status is 0 on success, 1 when the input fails validation (or two
inputs are not isomorphic) and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Callable, Sequence, TextIO

from . import axioms, calculus, codec, constructions, core, enumeration
from .document import Document, VersionError, parse, serialize
from .ograph import source_graph, top_cell


class UsageError(Exception):
    pass


class Failed(Exception):
    """Raised by a command whose input fails validation; carries the report."""

    def __init__(self, text: str, data: Any = None):
        super().__init__(text)
        self.text = text
        self.data = data


# input helpers

def load(arg: str) -> Document:
    """A document from a path, ``-`` for stdin, or an inline opetope code."""
    if arg == "-":
        return parse(sys.stdin.read())
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse(fh.read())
    if arg == codec.POINT or arg.startswith("{"):
        return Document("opetope_code", codec.parse_code(arg))
    raise UsageError(f"no such file: {arg}")


def as_graph(doc: Document) -> core.OpetopicGraph:
    if doc.kind == "opetopic_set":
        return doc.payload
    if doc.kind == "opetope_code":
        return codec.decode(doc.payload)
    raise UsageError(f"expected an opetopic set or opetope code, got {doc.kind}")


def as_pd(doc: Document) -> constructions.PastingDiagram:
    if doc.kind != "pasting_diagram":
        raise UsageError(f"expected a pasting diagram, got {doc.kind}")
    return doc.payload


def as_opetope(doc: Document) -> core.OpetopicGraph:
    g = as_graph(doc)
    if axioms.is_opetope(g) is None:
        raise Failed("input is not an opetope")
    return g


def _cell(g: core.OpetopicGraph, name: str) -> str:
    if name not in g.cells:
        raise UsageError(f"unknown cell {name!r}")
    return name


def _assignments(g_cells: Sequence[str], items: Sequence[str]) -> dict[str, Any]:
    out = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"expected CELL=FILE, got {item!r}")
        cell, path = item.split("=", 1)
        if cell not in g_cells:
            raise UsageError(f"unknown cell {cell!r}")
        out[cell] = as_pd(load(path))
    return out


# commands; each returns (text, json-able data)

def cmd_validate(a) -> tuple[str, Any]:
    doc = load(a.file)
    if doc.kind == "morphism":
        problems = core.validate_morphism(doc.payload)
        data = {"kind": doc.kind, "ok": not problems, "violations": [str(v) for v in problems]}
        text = "\n".join(str(v) for v in problems) or "morphism: pass"
        if problems:
            raise Failed(text, data)
        return text, data
    try:
        if doc.kind == "boundary":
            rep = axioms.check_boundary(doc.payload)
        elif doc.kind == "pasting_diagram":
            rep = axioms.check_pasting_diagram(doc.payload)
        else:
            if doc.kind == "opetope_code":
                codec.check_tree(codec.code_tree(doc.payload) or codec.Degenerate(codec.POINT))
            g = as_graph(doc)
            rep = axioms.check_opetopic(g, zigzag=a.zigzag)
            if a.opetope or doc.kind == "opetope_code":
                top = axioms.is_opetope(g)
                if top is None:
                    rep.fail("terminal", "no cell receives exactly one arrow from every cell")
                else:
                    rep.ok("terminal", top)
    except axioms.IllFormed as exc:
        data = {"kind": doc.kind, "ok": False, "violations": [str(v) for v in exc.violations]}
        raise Failed("ill-formed: " + str(exc), data) from None
    except codec.ShapeMismatch as exc:
        raise Failed(f"code: fail ({exc})", {"kind": doc.kind, "ok": False,
                                             "violations": [str(exc)]}) from None
    data = {"kind": doc.kind, "ok": rep.all_pass,
            "results": [{"label": r.label, "status": r.status, "witness": r.witness}
                        for r in rep]}
    if not rep.all_pass:
        raise Failed(str(rep), data)
    return str(rep), data


def cmd_hom(a):
    g = as_graph(load(a.file))
    forms = core.hom(g, _cell(g, a.x), _cell(g, a.y))
    lines = [" . ".join(reversed(nf.arrows)) if nf.arrows else f"id({nf.dom})" for nf in forms]
    return "\n".join(lines), [list(nf.arrows) for nf in forms]


def _doc(obj) -> tuple[str, Any]:
    text = serialize(Document.of(obj))
    return text.rstrip("\n"), json.loads(text)


def cmd_slice(a):
    g = as_graph(load(a.file))
    return _doc(constructions.slice(g, _cell(g, a.cell)))


def cmd_boundary(a):
    return _doc(constructions.boundary(as_opetope(load(a.file))))


def cmd_fill(a):
    doc = load(a.file)
    if doc.kind != "boundary":
        raise UsageError(f"expected a boundary, got {doc.kind}")
    return _doc(constructions.fill(doc.payload, a.top))


def cmd_horn(a):
    return _doc(constructions.source_horn(constructions.boundary(as_opetope(load(a.file)))))


def cmd_target(a):
    doc = load(a.file)
    if doc.kind == "pasting_diagram":
        return _doc(constructions.pd_target(doc.payload))
    g = as_opetope(doc)
    return _doc(constructions.slice(g, g.target_arrow(top_cell(g)).dom))


def cmd_shift(a):
    return _doc(calculus.shift(as_opetope(load(a.file))))


def cmd_degen(a):
    return _doc(calculus.degen(as_opetope(load(a.file))))


def cmd_subst(a):
    base = as_pd(load(a.file))
    return _doc(calculus.subst(base, _assignments(base.top_cells, a.piece)))


def cmd_graft(a):
    base = as_pd(load(a.file))
    return _doc(calculus.graft(base, _assignments(base.leaves, a.piece)))


def cmd_encode(a):
    doc = load(a.file)
    if doc.kind == "pasting_diagram":
        code = codec.pd_code(doc.payload)
    else:
        code = codec.encode(as_opetope(doc))
    return code, {"code": code}


def cmd_decode(a):
    doc = load(a.code)
    if doc.kind != "opetope_code":
        raise UsageError(f"expected an opetope code, got {doc.kind}")
    return _doc(codec.decode(doc.payload))


def cmd_classify(a):
    g = as_graph(load(a.file))
    rows = sorted((g.arrows[d.het_inner].dom, codec.classify_diamond(g, d), d) for d in g.diamonds)
    text = "\n".join(f"{cell}: {fam}" for cell, fam, _ in rows)
    return text, [{"cell": cell, "family": fam, "het": list(d.het), "hom": list(d.hom)}
                  for cell, fam, d in rows]


def cmd_enumerate(a):
    top = a.nodes if a.nodes is not None else a.max_top_cells
    budget = enumeration.SizeBudget(a.degree, top, a.max_arity, a.max_cells, a.max_results)
    codes = enumeration.enumerate_opetopes(budget)
    if a.nodes is not None:
        codes = [c for c in codes if enumeration.top_cell_count(c) == a.nodes]
    if a.count:
        return str(len(codes)), {"count": len(codes)}
    return "\n".join(codes), {"codes": codes}


def _profile(text: str) -> tuple[int, ...]:
    try:
        prof = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad profile {text!r}; expected e.g. 3,3,1") from None
    if not prof or min(prof) < 0:
        raise UsageError(f"bad profile {text!r}")
    return prof


def cmd_oracle(a):
    codes = enumeration.oracle_codes(_profile(a.profile), a.max_cells)
    if a.count:
        return str(len(codes)), {"count": len(codes)}
    return "\n".join(codes), {"codes": codes}


def cmd_counts(a):
    table = enumeration.count_table(a.max_degree, a.max_arity, a.max_top_cells, a.max_cells,
                                    a.oracle_cap)
    rows, data = ["degree  sources  trees  oracle  match"], []
    for (d, k), (trees, oracle) in sorted(table.items()):
        match = "-" if oracle is None else ("yes" if oracle == trees else "NO")
        rows.append(f"{d:>6}  {k:>7}  {trees:>5}  {'-' if oracle is None else oracle:>6}  {match:>5}")
        data.append({"degree": d, "sources": k, "trees": trees, "oracle": oracle,
                     "match": None if oracle is None else oracle == trees})
    if any(r["match"] is False for r in data):
        raise Failed("\n".join(rows), data)
    return "\n".join(rows), data


def cmd_iso(a):
    g, h = as_graph(load(a.first)), as_graph(load(a.second))
    m = core.find_isomorphism(g, h, max_cells=a.max_cells)
    if m is None:
        raise Failed("not isomorphic", {"isomorphic": False})
    text = "\n".join(f"{c} -> {m.cell_map[c]}" for c in g.cells)
    return text, {"isomorphic": True, "cell_map": dict(m.cell_map),
                  "arrow_map": dict(m.arrow_map)}


def _ascii(tree: codec.Tree, label: str, indent: str, last: bool, out: list[str]) -> None:
    branch = "" if not indent and label == "" else ("`-- " if last else "|-- ")
    if isinstance(tree, codec.Degenerate):
        out.append(f"{indent}{branch}{label}deg {tree.code}")
        return
    out.append(f"{indent}{branch}{label}node {tree.code}")
    child_indent = indent + ("" if not branch else ("    " if last else "|   "))
    srcs = codec.source_shapes(tree.code)
    for i, (child, color) in enumerate(zip(tree.inputs, srcs)):
        end = i == len(tree.inputs) - 1
        if child is None:
            out.append(f"{child_indent}{'`-- ' if end else '|-- '}[{i}] leaf {color}")
        else:
            _ascii(child, f"[{i}] ", child_indent, end, out)


def _dot(g: core.OpetopicGraph, ograph: bool) -> str:
    lines = ["digraph opetope {", "  rankdir=BT;"]
    if ograph:
        adj, root = source_graph(g, top_cell(g))
        names = {v: f"v{i}" for i, v in enumerate(sorted(adj, key=str))}
        for v, n in names.items():
            label = v[1] if v[0] == "src" else " . ".join(v[1])
            shape = "box" if v[0] == "src" else ("doublecircle" if v == root else "ellipse")
            lines.append(f'  {n} [label="{label}", shape={shape}];')
        for v, ws in sorted(adj.items(), key=lambda kv: str(kv[0])):
            for w in ws:
                lines.append(f"  {names[v]} -> {names[w]};")
    else:
        for c, d in sorted(g.cells.items(), key=lambda kv: (kv[1], kv[0])):
            lines.append(f'  "{c}" [label="{c} ({d})"];')
        for e in sorted(g.arrows.values(), key=lambda e: e.id):
            style = "solid" if e.polarity is core.SOURCE else "dashed"
            lines.append(f'  "{e.dom}" -> "{e.cod}" [style={style}, label="{e.polarity}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_render(a):
    doc = load(a.file)
    if doc.kind == "pasting_diagram" and not (a.dot or a.ograph):
        tree = codec.pd_to_tree(doc.payload)
    else:
        g = as_graph(doc) if doc.kind != "pasting_diagram" else doc.payload.graph
        if a.dot or a.ograph:
            text = _dot(g, a.ograph)
            return text, {"dot": text}
        tree = codec.code_tree(codec.encode(as_opetope(doc)))
    if tree is None:
        return "point", {"tree": "point"}
    out: list[str] = []
    _ascii(tree, "", "", True, out)
    return "\n".join(out), {"tree": out}


# parser

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS,
                     help="output format (default text)")
    p = argparse.ArgumentParser(prog="opetope", description="Opetope workbench.",
                                parents=[fmt])
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help: str, *args: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, parents=[fmt])
        for arg in args:
            sp.add_argument(arg)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("validate", cmd_validate, "run the axiom checks", "file")
    sp.add_argument("--opetope", action="store_true", help="also require a terminal cell")
    sp.add_argument("--zigzag", action="store_true", help="O6 by reachability only")
    add("hom", cmd_hom, "normal forms between two cells", "file", "x", "y")
    add("slice", cmd_slice, "the opetope below a cell", "file", "cell")
    add("boundary", cmd_boundary, "boundary of an opetope", "file")
    sp = add("fill", cmd_fill, "add a top cell to a boundary", "file")
    sp.add_argument("--top", default=None, help="name of the new cell")
    add("horn", cmd_horn, "source horn of an opetope", "file")
    add("target", cmd_target, "target opetope of an opetope or pasting diagram", "file")
    add("shift", cmd_shift, "an opetope as a one-cell pasting diagram", "file")
    add("degen", cmd_degen, "the empty pasting diagram on an opetope", "file")
    for name, fn, what in (("subst", cmd_subst, "top cell"), ("graft", cmd_graft, "leaf")):
        sp = add(name, fn, f"{name} pasting diagrams at each {what}", "file")
        sp.add_argument("--piece", action="append", default=[], metavar="CELL=FILE")
    add("encode", cmd_encode, "opetope code of an opetope or pasting diagram", "file")
    add("decode", cmd_decode, "opetope from its code", "code")
    add("classify", cmd_classify, "diamond families", "file")
    sp = add("enumerate", cmd_enumerate, "list opetope codes")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--nodes", type=int, default=None, help="exact number of sources")
    sp.add_argument("--max-arity", type=int, default=3)
    sp.add_argument("--max-top-cells", type=int, default=None)
    sp.add_argument("--max-cells", type=int, default=None)
    sp.add_argument("--max-results", type=int, default=100_000)
    sp.add_argument("--count", action="store_true")
    sp = add("oracle-enumerate", cmd_oracle, "brute-force opetopes of a degree profile")
    sp.add_argument("--profile", required=True, help="cells per degree, e.g. 3,3,1")
    sp.add_argument("--max-cells", type=int, default=9)
    sp.add_argument("--count", action="store_true")
    sp = add("counts", cmd_counts, "count table with oracle cross-check")
    sp.add_argument("--max-degree", type=int, required=True)
    sp.add_argument("--max-arity", type=int, default=3)
    sp.add_argument("--max-top-cells", type=int, default=None)
    sp.add_argument("--max-cells", type=int, default=None)
    sp.add_argument("--oracle-cap", type=int, default=9)
    sp = add("iso", cmd_iso, "isomorphism test", "first", "second")
    sp.add_argument("--max-cells", type=int, default=64)
    sp = add("render", cmd_render, "ASCII tree or DOT graph", "file")
    sp.add_argument("--dot", action="store_true", help="cells and arrows as DOT")
    sp.add_argument("--ograph", action="store_true", help="source tree of the top cell as DOT")
    return p


def _emit(out: TextIO, fmt: str, command: str, status: str, text: str, data: Any) -> None:
    if fmt == "json":
        out.write(json.dumps({"command": command, "status": status, "result": data},
                             sort_keys=True, indent=2) + "\n")
    elif text:
        out.write(text + "\n")


def run(argv: Sequence[str] | None = None, out: TextIO | None = None,
        err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = getattr(a, "format", "text")
    try:
        text, data = a.fn(a)
    except Failed as exc:
        _emit(out, fmt, a.command, "fail", exc.text, exc.data)
        return 1
    except (UsageError, core.ParseError, VersionError, OSError) as exc:
        if fmt == "json":
            _emit(out, fmt, a.command, "error", "", {"error": str(exc)})
        else:
            err.write(f"opetope {a.command}: {exc}\n")
        return 2
    except (core.OpetopeError, ValueError) as exc:
        if fmt == "json":
            _emit(out, fmt, a.command, "fail", "", {"error": f"{type(exc).__name__}: {exc}"})
        else:
            err.write(f"opetope {a.command}: {type(exc).__name__}: {exc}\n")
        return 1
    _emit(out, fmt, a.command, "ok", text, data)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
