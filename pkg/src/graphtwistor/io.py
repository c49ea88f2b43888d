"""JSON documents and DOT export.

Complex values are ``[re, im]`` pairs.  Floating values are written with
17 significant digits so that reading a document back gives the same
binary64 numbers; exact values are written as integers or ``"p/q"``
strings, which the readers turn back into Gaussian rationals.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Any

from .calculus import OneForm, VertexFunction
from .dual import DualFunction
from .gaussian import GaussianRational, _exact_real
from .generators import GraphData
from .graph import EdgeColoring, Graph, GraphError, LineGraphCorrespondence, build_graph


class DocumentError(ValueError):
    """Malformed input document; ``where`` names the offending field."""

    def __init__(self, where: str, msg: str):
        self.where = where
        super().__init__(f"{where}: {msg}" if where else msg)


# -- serialization ----------------------------------------------------------------


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    s = "%.17g" % x
    if not any(c in s for c in ".en"):
        s += ".0"
    return s


def _emit(obj, indent: int, level: int, out: list):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, bool):
        out.append(json.dumps(obj))
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        out.append(format_float(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            out.append(pad + json.dumps(str(k), ensure_ascii=False) + ": ")
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        if all(isinstance(v, (int, float, str)) and not isinstance(v, bool) for v in obj):
            out.append("[")
            for i, v in enumerate(obj):
                _emit(v, indent, level, out)
                if i < len(obj) - 1:
                    out.append(", ")
            out.append("]")
            return
        out.append("[\n")
        for i, v in enumerate(obj):
            out.append(pad)
            _emit(v, indent, level + 1, out)
            out.append(",\n" if i < len(obj) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON text: insertion key order, 17-digit floats."""
    out: list[str] = []
    _emit(obj, indent, 0, out)
    return "".join(out) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None


def _real_out(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def encode_value(z) -> list:
    if isinstance(z, GaussianRational):
        return [_real_out(z.re), _real_out(z.im)]
    z = complex(z)
    return [float(z.real), float(z.imag)]


def decode_value(v, where: str, exact: bool | None = None):
    """``[re, im]`` (or a bare real) to ``complex`` or ``GaussianRational``.

    Integers and ``"p/q"`` strings are exact; any float makes the value
    floating unless ``exact=True``, which rejects non-integral floats.
    """
    parts = v if isinstance(v, list) else [v, 0]
    if len(parts) != 2:
        raise DocumentError(where, f"expected [re, im], got {v!r}")
    for p in parts:
        if isinstance(p, bool) or not isinstance(p, (int, float, str)):
            raise DocumentError(where, f"expected numbers, got {v!r}")
    if exact is None:
        exact = not any(isinstance(p, float) for p in parts)
    if exact:
        try:
            return GaussianRational(_exact_real(parts[0]), _exact_real(parts[1]))
        except (ValueError, TypeError) as exc:
            raise DocumentError(where, str(exc)) from None
    try:
        re, im = (float(Fraction(p)) if isinstance(p, str) else float(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(where, f"cannot parse {v!r}: {exc}") from None
    return complex(re, im)


def _decode_mapping(obj, where: str, exact: bool | None) -> dict:
    if not isinstance(obj, dict):
        raise DocumentError(where, "expected an object")
    out = {k: decode_value(v, f"{where}.{k}", True if exact else None) for k, v in obj.items()}
    if not exact and not all(isinstance(v, GaussianRational) for v in out.values()):
        out = {k: complex(v) for k, v in out.items()}
    return out


# -- graph documents -----------------------------------------------------------------


def graph_document(graph: Graph, values: VertexFunction | None = None,
                   coloring: EdgeColoring | None = None) -> dict:
    doc: dict = {"vertices": list(graph.vertices), "edges": []}
    for u, v in graph.edges:
        e: dict = {"u": u, "v": v}
        if coloring is not None:
            e["color"] = coloring.color(u, v)
        doc["edges"].append(e)
    if values is not None:
        doc["values"] = {x: encode_value(values[x]) for x in graph.vertices}
    return doc


def read_graph_document(doc, exact: bool | None = None) -> GraphData:
    if not isinstance(doc, dict):
        raise DocumentError("", "graph document must be a JSON object")
    verts = doc.get("vertices")
    if not isinstance(verts, list) or not all(isinstance(v, str) for v in verts):
        raise DocumentError("vertices", "expected a list of strings")
    edges = doc.get("edges")
    if not isinstance(edges, list):
        raise DocumentError("edges", "expected a list")
    pairs, colors = [], {}
    for i, e in enumerate(edges):
        if not isinstance(e, dict) or not isinstance(e.get("u"), str) or not isinstance(e.get("v"), str):
            raise DocumentError(f"edges[{i}]", 'expected {"u": str, "v": str}')
        pairs.append((e["u"], e["v"]))
        if "color" in e:
            c = e["color"]
            if isinstance(c, bool) or not isinstance(c, int):
                raise DocumentError(f"edges[{i}].color", "expected an integer")
            colors[(e["u"], e["v"])] = c
    try:
        g = build_graph(verts, pairs)
    except GraphError as exc:
        raise DocumentError("edges", str(exc)) from None
    coloring = None
    if colors:
        if len(colors) != len(pairs):
            raise DocumentError("edges", "colours given on some edges only")
        try:
            coloring = EdgeColoring(g, colors)
        except GraphError as exc:
            raise DocumentError("edges", str(exc)) from None
    values = None
    if "values" in doc:
        vals = _decode_mapping(doc["values"], "values", exact)
        try:
            values = VertexFunction(g, vals)
        except ValueError as exc:
            raise DocumentError("values", str(exc)) from None
    return GraphData(g, values, coloring)


# -- 1-forms -----------------------------------------------------------------------


def form_document(omega: OneForm) -> dict:
    return {"form": {f"{u}->{v}": encode_value(w) for (u, v), w in omega.items()}}


def read_form(doc, graph: Graph, exact: bool | None = None) -> OneForm:
    obj = doc.get("form") if isinstance(doc, dict) else None
    if not isinstance(obj, dict):
        raise DocumentError("form", "expected an object of \"u->v\": [re, im]")
    raw = _decode_mapping(obj, "form", exact)
    vals = {}
    for key, w in raw.items():
        if "->" not in key:
            raise DocumentError(f"form.{key}", 'keys must look like "u->v"')
        u, v = key.split("->", 1)
        vals[(u, v)] = w
    try:
        return OneForm.from_directed(graph, vals)
    except ValueError as exc:
        raise DocumentError("form", str(exc)) from None


# -- line graphs and dual functions --------------------------------------------------


def correspondence_document(corr: LineGraphCorrespondence) -> dict:
    return {
        "root": graph_document(corr.root),
        "line": graph_document(corr.line),
        "edge_to_vertex": {f"{u}-{v}": X for (u, v), X in corr.edge_to_vertex.items()},
        "cliques": {x: list(corr.clique_of[x]) for x in corr.root.vertices},
    }


def read_correspondence(doc) -> LineGraphCorrespondence:
    for key in ("root", "line", "edge_to_vertex"):
        if key not in doc:
            raise DocumentError(key, "missing")
    root = read_graph_document(doc["root"]).graph
    line = read_graph_document(doc["line"]).graph
    e2v = {}
    rv = set(root.vertices)
    for key, X in doc["edge_to_vertex"].items():
        # root labels may themselves contain "-"; try every split point
        splits = [(key[:i], key[i + 1:]) for i, c in enumerate(key) if c == "-"]
        ok = [(u, v) for u, v in splits if u in rv and v in rv and root.has_edge(u, v)]
        if len(ok) != 1:
            raise DocumentError(f"edge_to_vertex.{key}", "does not name a root edge")
        if X not in line:
            raise DocumentError(f"edge_to_vertex.{key}", f"{X!r} is not a line vertex")
        e2v[tuple(sorted(ok[0]))] = X
    if len(e2v) != root.m or set(e2v.values()) != set(line.vertices):
        raise DocumentError("edge_to_vertex", "not a bijection between root edges and line vertices")
    cliques = {x: tuple(sorted(e2v[tuple(sorted((x, y)))] for y in root.neighbors(x)))
               for x in root.vertices}
    for x, K in cliques.items():
        for i, a in enumerate(K):
            for b in K[i + 1:]:
                if not line.has_edge(a, b):
                    raise DocumentError("edge_to_vertex", f"clique of {x!r} is not complete in the line graph")
    return LineGraphCorrespondence(root, line, e2v, cliques)


def dual_document(psi: DualFunction) -> dict:
    doc = correspondence_document(psi.correspondence)
    doc["psi"] = {X: encode_value(w) for X, w in psi.items()}
    return doc


def read_dual(doc, exact: bool | None = None) -> DualFunction:
    corr = read_correspondence(doc)
    if "psi" not in doc:
        raise DocumentError("psi", "missing")
    vals = _decode_mapping(doc["psi"], "psi", exact)
    try:
        return DualFunction.from_mapping(corr, vals)
    except ValueError as exc:
        raise DocumentError("psi", str(exc)) from None


# -- DOT ------------------------------------------------------------------------------


def _fmt_label(z) -> str:
    if isinstance(z, GaussianRational):
        return str(z)
    z = complex(z)
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def to_dot(graph: Graph, values: VertexFunction | None = None,
           coloring: EdgeColoring | None = None, name: str = "G") -> str:
    """Undirected DOT text; values become labels, colours edge attributes."""
    lines = [f"graph {_q(name)} {{"]
    for x in graph.vertices:
        label = x if values is None else f"{x}\n{_fmt_label(values[x])}"
        lines.append(f"  {_q(x)} [label={_q(label)}];")
    for u, v in graph.edges:
        attr = ""
        if coloring is not None:
            c = coloring.color(u, v)
            attr = f" [color={c}, colorscheme=set19, label={c}]"
        lines.append(f"  {_q(u)} -- {_q(v)}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
