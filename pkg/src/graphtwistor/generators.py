"""Named graph families, including the worked examples with their data.

``generate("cube")`` carries a holomorphic function on the cube with
sqrt(2) entries and a fixed 3-edge-colouring; ``generate("figure1")`` carries
the exact function on the 8-vertex, 12-edge example graph.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .calculus import VertexFunction
from .gaussian import GaussianRational as Q
from .graph import EdgeColoring, Graph, build_graph

SQRT2 = math.sqrt(2.0)

FAMILIES = ("cube", "cube_table", "hypercube", "cycle", "path", "complete", "claw",
            "figure1", "dodecahedron", "lattice_window")


@dataclass(frozen=True)
class GraphData:
    """A graph with optional vertex values and edge colouring."""

    graph: Graph
    values: VertexFunction | None = None
    coloring: EdgeColoring | None = None


def _names(prefix: str, n: int) -> list[str]:
    width = len(str(max(n - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(n)]


def hypercube(n: int) -> Graph:
    """``n``-cube 1-skeleton on bitstring labels."""
    if n < 1:
        raise ValueError("hypercube dimension must be >= 1")
    verts = ["".join(b) for b in itertools.product("01", repeat=n)]
    edges = []
    for v in verts:
        for k in range(n):
            if v[k] == "0":
                edges.append((v, v[:k] + "1" + v[k + 1:]))
    return build_graph(verts, edges)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle length must be >= 3")
    vs = _names("v", n)
    return build_graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs at least one vertex")
    vs = _names("v", n)
    return build_graph(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs at least one vertex")
    vs = _names("v", n)
    return build_graph(vs, itertools.combinations(vs, 2))


def claw() -> Graph:
    return build_graph(["c", "x", "y", "z"], [("c", "x"), ("c", "y"), ("c", "z")])


def lcf_graph(n: int, shifts: list[int], repeats: int) -> Graph:
    vs = _names("v", n)
    edges = {tuple(sorted((vs[i], vs[(i + 1) % n]))) for i in range(n)}
    for i, s in enumerate(shifts * repeats):
        edges.add(tuple(sorted((vs[i], vs[(i + s) % n]))))
    return build_graph(vs, sorted(edges))


def dodecahedron() -> Graph:
    return lcf_graph(20, [10, 7, 4, -4, -7, 10, -4, 7, -7, 4], 2)


def lattice_window(dims) -> Graph:
    """Finite box ``prod(range(d))`` of the integer lattice.

    Labels are zero-padded comma-joined coordinates, so string order is
    lexicographic coordinate order.
    """
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise ValueError(f"invalid lattice window {dims}")
    width = len(str(max(dims) - 1))
    label = lambda p: ",".join(f"{c:0{width}d}" for c in p)  # noqa: E731
    pts = list(itertools.product(*(range(d) for d in dims)))
    edges = []
    for p in pts:
        for k, d in enumerate(dims):
            if p[k] + 1 < d:
                q = p[:k] + (p[k] + 1,) + p[k + 1:]
                edges.append((label(p), label(q)))
    return build_graph([label(p) for p in pts], edges)


def lattice_label(point, dims) -> str:
    width = len(str(max(dims) - 1))
    return ",".join(f"{c:0{width}d}" for c in point)


# -- worked examples -------------------------------------------------------

# Eight vertices a..h in cyclic order; a, c, e, g have degree 4.
FIGURE1_VALUES = {
    "a": Q(2, 1), "b": Q(2, 2), "c": Q(1, 2), "d": Q(1, 1),
    "e": Q(0, 1), "f": Q(0, 0), "g": Q(1, 0), "h": Q(1, 1),
}
FIGURE1_EDGES = [
    ("a", "c"), ("c", "e"), ("e", "g"), ("g", "a"), ("c", "d"), ("d", "e"),
    ("g", "h"), ("h", "a"), ("e", "f"), ("f", "g"), ("a", "b"), ("b", "c"),
]

# Bitstring labels; "000" is the vertex valued 0, with neighbours valued
# -1, 1 and sqrt(2)i.
CUBE_VALUES = {
    "000": 0, "100": -1, "010": SQRT2 * 1j, "001": 1,
    "110": -1 + SQRT2 * 1j, "101": 0, "011": 1 + SQRT2 * 1j, "111": SQRT2 * 1j,
}

# Colour 2 runs along the sqrt(2)i direction; colours 1 and 3
# alternate around the two remaining faces.
CUBE_COLORS = {
    ("010", "011"): 1, ("010", "110"): 3, ("110", "111"): 1, ("011", "111"): 3,
    ("000", "010"): 2, ("001", "011"): 2, ("100", "110"): 2, ("101", "111"): 2,
    ("000", "001"): 3, ("000", "100"): 1, ("100", "101"): 3, ("001", "101"): 1,
}

# The function whose outward triples form the evolution table's xi column:
# that column has xi_1 = xi_3 at every vertex, which forces
# phi(e) = (e1 xor e3) + sqrt(2) i e2 on the coloured cube.
CUBE_TABLE_VALUES = {
    v: (int(v[0]) ^ int(v[2])) + SQRT2 * 1j * int(v[1])
    for v in ("000", "001", "010", "011", "100", "101", "110", "111")
}


def figure1() -> GraphData:
    g = build_graph(sorted(FIGURE1_VALUES), FIGURE1_EDGES)
    return GraphData(g, VertexFunction(g, FIGURE1_VALUES))


def cube() -> GraphData:
    g = hypercube(3)
    return GraphData(g, VertexFunction(g, CUBE_VALUES), EdgeColoring(g, CUBE_COLORS, 3))


def cube_table() -> GraphData:
    g = hypercube(3)
    return GraphData(g, VertexFunction(g, CUBE_TABLE_VALUES), EdgeColoring(g, CUBE_COLORS, 3))


def generate(family: str, **params) -> GraphData:
    """Build a named family.

    ``hypercube``, ``cycle``, ``path`` and ``complete`` take ``n``;
    ``lattice_window`` takes ``dims``.
    """
    def need(key):
        if key not in params:
            raise ValueError(f"family {family!r} needs parameter {key!r}")
        return params[key]

    if family == "cube":
        return cube()
    if family == "cube_table":
        return cube_table()
    if family == "figure1":
        return figure1()
    if family == "hypercube":
        return GraphData(hypercube(int(need("n"))))
    if family == "cycle":
        return GraphData(cycle(int(need("n"))))
    if family == "path":
        return GraphData(path(int(need("n"))))
    if family == "complete":
        return GraphData(complete(int(need("n"))))
    if family == "claw":
        return GraphData(claw())
    if family == "dodecahedron":
        return GraphData(dodecahedron())
    if family == "lattice_window":
        return GraphData(lattice_window(need("dims")))
    raise ValueError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
