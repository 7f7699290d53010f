"""Reading and writing ``.ost`` documents.

A document is JSON with a fixed key order.  Cells are sorted by degree then
id, arrows by id and diamonds by their heterogeneous outer arrow, so that
``serialize(parse(text)) == text`` for any document this module wrote.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Any, Union

from .constructions import Boundary, PastingDiagram
from .core import (Diamond, GenArrow, Morphism, OpetopeError, OpetopicGraph, ParseError,
                   Polarity)

FORMAT_VERSION = "1.0"
KINDS = ("opetopic_set", "boundary", "pasting_diagram", "opetope_code", "morphism")

Payload = Union[OpetopicGraph, Boundary, PastingDiagram, str, Morphism]


class VersionError(OpetopeError):
    pass


@dataclass
class Document:
    kind: str
    payload: Payload
    format_version: str = FORMAT_VERSION

    @classmethod
    def of(cls, obj: Payload) -> "Document":
        """Wrap a payload, inferring its kind."""
        for kind, typ in (("opetopic_set", OpetopicGraph), ("boundary", Boundary),
                          ("pasting_diagram", PastingDiagram), ("morphism", Morphism),
                          ("opetope_code", str)):
            if isinstance(obj, typ):
                return cls(kind, obj)
        raise TypeError(f"cannot store {type(obj).__name__} in a document")


# writing

def _line(obj: Any) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def _block(items: list[str], indent: str) -> str:
    if not items:
        return "[]"
    inner = ",\n".join(indent + "  " + s for s in items)
    return "[\n" + inner + "\n" + indent + "]"


def _mapping(m: dict[str, str], indent: str) -> str:
    if not m:
        return "{}"
    inner = ",\n".join(f"{indent}  {_line(k)}: {_line(v)}" for k, v in sorted(m.items()))
    return "{\n" + inner + "\n" + indent + "}"


def _graph_fields(g: OpetopicGraph, indent: str) -> list[tuple[str, str]]:
    cells = sorted(g.cells.items(), key=lambda kv: (kv[1], kv[0]))
    arrows = sorted(g.arrows.values(), key=lambda a: a.id)
    diamonds = sorted(g.diamonds)
    indent += "  "
    return [
        ("cells", _block([_line({"id": c, "degree": d}) for c, d in cells], indent)),
        ("arrows", _block([_line({"id": a.id, "dom": a.dom, "cod": a.cod,
                                  "polarity": a.polarity.value}) for a in arrows], indent)),
        ("diamonds", _block([_line({"het": list(d.het), "hom": list(d.hom)})
                             for d in diamonds], indent)),
    ]


def _object(fields: list[tuple[str, str]], indent: str) -> str:
    inner = ",\n".join(f"{indent}  {_line(k)}: {v}" for k, v in fields)
    return "{\n" + inner + "\n" + indent + "}"


def serialize(doc: Document) -> str:
    fields = [("format_version", _line(doc.format_version)), ("kind", _line(doc.kind))]
    p = doc.payload
    if doc.kind == "opetopic_set":
        fields += _graph_fields(p, "")
    elif doc.kind == "boundary":
        fields += [("degree", _line(p.n))] + _graph_fields(p.graph, "")
        fields.append(("marking", _mapping({c: pol.value for c, pol in p.marking.items()}, "  ")))
    elif doc.kind == "pasting_diagram":
        fields += [("degree", _line(p.n))] + _graph_fields(p.graph, "")
        fields += [("leaves", _line(list(p.leaves))), ("roots", _line(list(p.roots)))]
    elif doc.kind == "opetope_code":
        fields.append(("code", _line(p)))
    elif doc.kind == "morphism":
        fields += [("source", _object(_graph_fields(p.source, "  "), "  ")),
                   ("target", _object(_graph_fields(p.target, "  "), "  ")),
                   ("cell_map", _mapping(dict(p.cell_map), "  ")),
                   ("arrow_map", _mapping(dict(p.arrow_map), "  "))]
    else:
        raise ValueError(f"unknown kind {doc.kind!r}")
    return _object(fields, "") + "\n"


# reading

def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


class _Locator:
    """Best-effort source positions for errors found after JSON decoding."""

    def __init__(self, text: str):
        self.text = text

    def error(self, message: str, *needles: str, occurrence: int = 1) -> ParseError:
        for needle in needles:
            hits = [m.start() for m in re.finditer(re.escape(needle), self.text)]
            if len(hits) >= occurrence:
                return ParseError(message, *_position(self.text, hits[occurrence - 1]))
        return ParseError(message)


def _no_duplicate_keys(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _expect_keys(obj: Any, required: tuple[str, ...], where: str, loc: _Locator) -> None:
    if not isinstance(obj, dict):
        raise loc.error(f"{where}: expected an object")
    for k in obj:
        if k not in required:
            raise loc.error(f"{where}: unknown field {k!r}", f'"{k}"')
    for k in required:
        if k not in obj:
            raise loc.error(f"{where}: missing field {k!r}")


def _string(v: Any, where: str, loc: _Locator) -> str:
    if not isinstance(v, str):
        raise loc.error(f"{where}: expected a string, got {v!r}")
    return v


def _string_list(v: Any, where: str, loc: _Locator) -> list[str]:
    if not isinstance(v, list):
        raise loc.error(f"{where}: expected a list")
    return [_string(x, where, loc) for x in v]


def _read_graph(obj: dict, loc: _Locator) -> OpetopicGraph:
    cells: dict[str, int] = {}
    for entry in _list(obj["cells"], "cells", loc):
        _expect_keys(entry, ("id", "degree"), "cell", loc)
        cid = _string(entry["id"], "cell id", loc)
        deg = entry["degree"]
        if not isinstance(deg, int) or isinstance(deg, bool) or deg < 0:
            raise loc.error(f"cell {cid!r}: degree must be a non-negative integer",
                            f'"id": "{cid}"')
        if cid in cells:
            raise loc.error(f"duplicate cell id {cid!r}", f'"id": "{cid}"', occurrence=2)
        cells[cid] = deg
    arrows: dict[str, GenArrow] = {}
    for entry in _list(obj["arrows"], "arrows", loc):
        _expect_keys(entry, ("id", "dom", "cod", "polarity"), "arrow", loc)
        aid = _string(entry["id"], "arrow id", loc)
        if aid in arrows:
            raise loc.error(f"duplicate arrow id {aid!r}", f'"id": "{aid}"', occurrence=2)
        ends = []
        for key in ("dom", "cod"):
            c = _string(entry[key], f"arrow {aid!r} {key}", loc)
            if c not in cells:
                raise loc.error(f"arrow {aid!r}: unknown cell {c!r}", f'"id": "{aid}"')
            ends.append(c)
        try:
            pol = Polarity(entry["polarity"])
        except ValueError:
            raise loc.error(f"arrow {aid!r}: polarity must be 's' or 't'",
                            f'"id": "{aid}"') from None
        arrows[aid] = GenArrow(aid, ends[0], ends[1], pol)
    diamonds = []
    seen = set()
    for entry in _list(obj["diamonds"], "diamonds", loc):
        _expect_keys(entry, ("het", "hom"), "diamond", loc)
        het = _string_list(entry["het"], "diamond het", loc)
        hom = _string_list(entry["hom"], "diamond hom", loc)
        if len(het) != 2 or len(hom) != 2:
            raise loc.error("diamond sides must be pairs [outer, inner]", _line(het))
        for a in het + hom:
            if a not in arrows:
                raise loc.error(f"diamond: unknown arrow {a!r}", _line(het))
        d = Diamond(het[0], het[1], hom[0], hom[1])
        if d in seen:
            raise loc.error(f"duplicate diamond {het} = {hom}", _line(het), occurrence=2)
        seen.add(d)
        diamonds.append(d)
    return OpetopicGraph(cells, arrows.values(), diamonds)


def _list(v: Any, where: str, loc: _Locator) -> list:
    if not isinstance(v, list):
        raise loc.error(f"{where}: expected a list", f'"{where}"')
    return v


def _degree(v: Any, loc: _Locator) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise loc.error("degree must be a non-negative integer", '"degree"')
    return v


def _cell_refs(names: list[str], g: OpetopicGraph, where: str, loc: _Locator) -> None:
    for c in names:
        if c not in g.cells:
            raise loc.error(f"{where}: unknown cell {c!r}", f'"{where}"')


GRAPH_KEYS = ("cells", "arrows", "diamonds")
FIELDS = {
    "opetopic_set": GRAPH_KEYS,
    "boundary": ("degree",) + GRAPH_KEYS + ("marking",),
    "pasting_diagram": ("degree",) + GRAPH_KEYS + ("leaves", "roots"),
    "opetope_code": ("code",),
    "morphism": ("source", "target", "cell_map", "arrow_map"),
}


def _check_version(v: Any, loc: _Locator) -> str:
    if not isinstance(v, str) or not re.fullmatch(r"\d+\.\d+", v):
        raise loc.error(f"format_version must look like '1.0', got {v!r}", '"format_version"')
    if v.split(".")[0] != FORMAT_VERSION.split(".")[0]:
        raise VersionError(f"unsupported format_version {v!r}; this reader handles "
                           f"{FORMAT_VERSION.split('.')[0]}.x")
    return v


def parse(text: str) -> Document:
    """Parse document text.  Raises ParseError (with position) or VersionError."""
    try:
        obj = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        m = re.search(r"'(.*)'", str(exc))
        loc = _Locator(text)
        raise loc.error(str(exc), f'"{m.group(1)}"' if m else "", occurrence=2) from None
    loc = _Locator(text)
    if not isinstance(obj, dict):
        raise ParseError("document must be a JSON object")
    for key in ("format_version", "kind"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}")
    version = _check_version(obj["format_version"], loc)
    kind = obj["kind"]
    if kind not in FIELDS:
        raise loc.error(f"unknown kind {kind!r}", '"kind"')
    body = {k: v for k, v in obj.items() if k not in ("format_version", "kind")}
    _expect_keys(body, FIELDS[kind], kind, loc)

    payload: Payload
    if kind == "opetopic_set":
        payload = _read_graph(body, loc)
    elif kind == "boundary":
        g = _read_graph(body, loc)
        marks = body["marking"]
        if not isinstance(marks, dict):
            raise loc.error("marking: expected an object", '"marking"')
        _cell_refs(list(marks), g, "marking", loc)
        try:
            marking = {c: Polarity(v) for c, v in marks.items()}
        except ValueError:
            raise loc.error("marking values must be 's' or 't'", '"marking"') from None
        payload = Boundary(g, _degree(body["degree"], loc), marking)
    elif kind == "pasting_diagram":
        g = _read_graph(body, loc)
        leaves = _string_list(body["leaves"], "leaves", loc)
        roots = _string_list(body["roots"], "roots", loc)
        _cell_refs(leaves, g, "leaves", loc)
        _cell_refs(roots, g, "roots", loc)
        payload = PastingDiagram(g, _degree(body["degree"], loc), tuple(leaves), tuple(roots))
    elif kind == "opetope_code":
        from .codec import parse_code

        code = _string(body["code"], "code", loc)
        try:
            payload = parse_code(code)
        except ParseError as exc:
            line, col = _position(text, text.find(_line(code)) + 1 + exc.col - 1)
            raise ParseError(f"bad opetope code: {exc.message}", line, col) from None
    else:
        graphs = []
        for key in ("source", "target"):
            _expect_keys(body[key], GRAPH_KEYS, key, loc)
            graphs.append(_read_graph(body[key], loc))
        maps = []
        for key in ("cell_map", "arrow_map"):
            m = body[key]
            if not isinstance(m, dict) or not all(isinstance(v, str) for v in m.values()):
                raise loc.error(f"{key}: expected an object of strings", f'"{key}"')
            maps.append(dict(m))
        payload = Morphism(graphs[0], graphs[1], maps[0], maps[1])
    return Document(kind, payload, version)


def read(path: str) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write(path: str, doc: Document) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))
