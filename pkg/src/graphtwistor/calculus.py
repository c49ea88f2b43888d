"""Vertex functions, 1-forms and the first-order operators between them.

Conventions:

* ``dphi(x -> y) = phi(y) - phi(x)``
* ``d*omega(x) = -(1/m(x)) * sum_{y ~ x} omega(x -> y)``
* ``Laplacian phi(x) = phi(x) - (1/m(x)) * sum_{y ~ x} phi(y)``, so
  ``d* d = Laplacian`` and the spectrum is nonnegative.

Values are exact Gaussian rationals when every input is, floats otherwise.
"""

from __future__ import annotations

from typing import Callable, Iterable, Mapping

import numpy as np

from .gaussian import GaussianRational, is_zero, magnitude, normalize_mapping
from .graph import Edge, Graph, bfs_forest, canonical_edge, fundamental_cycle

DEFAULT_TOL = 1e-9
TIGHT_TOL = 1e-12


class VertexFunction:
    """Complex value at every vertex of ``graph``."""

    __slots__ = ("graph", "values", "exact")

    def __init__(self, graph: Graph, values: Mapping, exact: bool | None = None):
        missing = [v for v in graph.vertices if v not in values]
        if missing:
            raise ValueError(f"vertex function undefined at {missing[:5]}")
        extra = [v for v in values if v not in graph]
        if extra:
            raise ValueError(f"vertex function has values off the graph: {extra[:5]}")
        vals, flag = normalize_mapping({v: values[v] for v in graph.vertices}, exact)
        self.graph = graph
        self.values: dict = vals
        self.exact: bool = flag

    @classmethod
    def from_array(cls, graph: Graph, arr) -> "VertexFunction":
        return cls(graph, {v: complex(arr[i]) for i, v in enumerate(graph.vertices)}, exact=False)

    @classmethod
    def constant(cls, graph: Graph, c=0) -> "VertexFunction":
        return cls(graph, {v: c for v in graph.vertices})

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"VertexFunction({mode}, {self.values})"

    def __getitem__(self, v):
        return self.values[v]

    def __iter__(self):
        return iter(self.graph.vertices)

    def __len__(self):
        return len(self.values)

    def items(self):
        return ((v, self.values[v]) for v in self.graph.vertices)

    def to_array(self) -> np.ndarray:
        return np.array([complex(self.values[v]) for v in self.graph.vertices], dtype=complex)

    def to_float(self) -> "VertexFunction":
        return VertexFunction(self.graph, self.values, exact=False)

    def map(self, fn: Callable) -> "VertexFunction":
        return VertexFunction(self.graph, {v: fn(x) for v, x in self.items()})

    def affine(self, c, a) -> "VertexFunction":
        """``c * phi + a``."""
        return self.map(lambda x: c * x + a)

    def __sub__(self, other: "VertexFunction") -> "VertexFunction":
        return VertexFunction(self.graph, {v: self[v] - other[v] for v in self.graph.vertices})

    def __add__(self, other: "VertexFunction") -> "VertexFunction":
        return VertexFunction(self.graph, {v: self[v] + other[v] for v in self.graph.vertices})

    def max_abs(self) -> float:
        return max((magnitude(x) for x in self.values.values()), default=0.0)

    def all_zero(self, tol: float = 0.0) -> bool:
        return all(is_zero(x, tol) for x in self.values.values())


class OneForm:
    """Antisymmetric complex function on directed edges.

    Only the canonical direction ``u -> v`` (``u < v``) is stored; the
    reverse direction is the negative, so antisymmetry holds by construction.
    """

    __slots__ = ("graph", "values", "exact")

    def __init__(self, graph: Graph, values: Mapping[Edge, object], exact: bool | None = None):
        canon = {}
        for (u, v), w in values.items():
            e = canonical_edge(u, v)
            if not graph.has_edge(*e):
                raise ValueError(f"1-form value on non-edge {(u, v)}")
            if e in canon:
                raise ValueError(f"1-form given twice on edge {e}")
            canon[e] = w if (u, v) == e else -w
        missing = [e for e in graph.edges if e not in canon]
        if missing:
            raise ValueError(f"1-form undefined on edges {missing[:5]}")
        vals, flag = normalize_mapping({e: canon[e] for e in graph.edges}, exact)
        self.graph = graph
        self.values: dict = vals
        self.exact: bool = flag

    @classmethod
    def from_directed(cls, graph: Graph, values: Mapping[Edge, object],
                      exact: bool | None = None) -> "OneForm":
        """Build from a mapping that may list both directions of an edge.

        Both directions, when present, must be negatives of each other.
        """
        canon: dict[Edge, object] = {}
        for (u, v), w in values.items():
            e = canonical_edge(u, v)
            w = w if (u, v) == e else -w
            if e in canon and canon[e] != w:
                raise ValueError(f"values on {e} are not antisymmetric")
            canon[e] = w
        return cls(graph, canon, exact)

    @classmethod
    def from_array(cls, graph: Graph, arr) -> "OneForm":
        return cls(graph, {e: complex(arr[i]) for i, e in enumerate(graph.edges)}, exact=False)

    def __repr__(self):
        mode = "exact" if self.exact else "float"
        return f"OneForm({mode}, {self.values})"

    def __call__(self, x: str, y: str):
        e = canonical_edge(x, y)
        w = self.values[e]
        return w if (x, y) == e else -w

    at = __call__

    def items(self):
        return ((e, self.values[e]) for e in self.graph.edges)

    def to_array(self) -> np.ndarray:
        return np.array([complex(self.values[e]) for e in self.graph.edges], dtype=complex)

    def scale(self, c) -> "OneForm":
        return OneForm(self.graph, {e: c * w for e, w in self.items()})

    def max_abs(self) -> float:
        return max((magnitude(w) for w in self.values.values()), default=0.0)


class CycleConditionError(ValueError):
    """A 1-form does not sum to zero around some cycle."""

    def __init__(self, cycle: tuple[Edge, ...], total):
        self.cycle = cycle
        self.total = total
        super().__init__(f"1-form is not closed: sum {total} around cycle {list(cycle)}")


def _require_degree(graph: Graph, what: str):
    iso = [v for v in graph.vertices if graph.degree(v) == 0]
    if iso:
        raise ValueError(f"{what} undefined at isolated vertices {iso[:5]}")


def differential(phi: VertexFunction) -> OneForm:
    g = phi.graph
    return OneForm(g, {(u, v): phi[v] - phi[u] for u, v in g.edges}, exact=phi.exact)


def coderivative(omega: OneForm) -> VertexFunction:
    g = omega.graph
    _require_degree(g, "co-derivative")
    out = {}
    for x in g.vertices:
        s = sum((omega(x, y) for y in g.neighbors(x)), _zero(omega.exact))
        out[x] = -s / g.degree(x)
    return VertexFunction(g, out, exact=omega.exact)


def laplacian(phi: VertexFunction) -> VertexFunction:
    g = phi.graph
    _require_degree(g, "Laplacian")
    out = {}
    for x in g.vertices:
        s = sum((phi[y] for y in g.neighbors(x)), _zero(phi.exact))
        out[x] = phi[x] - s / g.degree(x)
    return VertexFunction(g, out, exact=phi.exact)


def laplacian_matrix(graph: Graph) -> np.ndarray:
    """Dense real matrix of the (random-walk normalized) Laplacian."""
    _require_degree(graph, "Laplacian")
    n = graph.n
    A = np.eye(n)
    for x in graph.vertices:
        i = graph.index(x)
        m = graph.degree(x)
        for y in graph.neighbors(x):
            A[i, graph.index(y)] -= 1.0 / m
    return A


def isotropy_residuals(omega: OneForm) -> VertexFunction:
    """``r(x) = sum_{y ~ x} omega(x -> y)**2``; zero everywhere iff isotropic."""
    g = omega.graph
    out = {}
    for x in g.vertices:
        out[x] = sum((omega(x, y) ** 2 for y in g.neighbors(x)), _zero(omega.exact))
    return VertexFunction(g, out, exact=omega.exact)


def is_isotropic(omega: OneForm, tol: float = DEFAULT_TOL) -> bool:
    return isotropy_residuals(omega).all_zero(0.0 if omega.exact else tol)


def cycle_sums(omega: OneForm, cycles: Iterable[tuple[Edge, ...]]) -> list:
    return [sum((omega(x, y) for x, y in c), _zero(omega.exact)) for c in cycles]


def integrate(omega: OneForm, basepoint: str | None = None, value=0, *,
              basepoints: Mapping[str, object] | None = None,
              tol: float | None = None) -> VertexFunction:
    """Recover ``phi`` with ``d phi = omega`` and prescribed base values.

    A connected graph needs one ``basepoint``; otherwise pass ``basepoints``
    naming one vertex per component.  Raises :class:`CycleConditionError`
    naming the worst fundamental cycle when ``omega`` is not closed (exactly
    in exact mode, below ``tol * (1 + max|omega|)`` in floating mode;
    ``tol`` defaults to 1e-9).
    """
    g = omega.graph
    if basepoints is None:
        if basepoint is None:
            basepoint = g.vertices[0] if g.vertices else None
        basepoints = {} if basepoint is None else {basepoint: value}
    for b in basepoints:
        if b not in g:
            raise ValueError(f"basepoint {b!r} is not a vertex")
    forest = bfs_forest(g, roots=sorted(basepoints))
    comps_without = [r for r in forest.roots if r not in basepoints]
    if comps_without:
        raise ValueError(f"no basepoint for the component containing {comps_without[0]!r}")
    for comp in g.components():
        named = [b for b in basepoints if b in comp]
        if len(named) > 1:
            raise ValueError(f"several basepoints in one component: {named}")

    vals: dict = {}
    for x in forest.order:
        p = forest.parent[x]
        vals[x] = basepoints[x] if p is None else vals[p] + omega(p, x)

    thresh = None
    if not omega.exact:
        thresh = (DEFAULT_TOL if tol is None else tol) * (1.0 + omega.max_abs())
    worst, worst_sum, worst_mag = None, None, -1.0
    for u, v in g.edges:
        if (u, v) in forest.tree_edges:
            continue
        s = vals[u] + omega(u, v) - vals[v]
        bad = bool(s) if omega.exact else magnitude(s) >= thresh
        if bad and magnitude(s) > worst_mag:
            worst, worst_sum, worst_mag = (u, v), s, magnitude(s)
    if worst is not None:
        raise CycleConditionError(fundamental_cycle(forest, *worst), worst_sum)
    return VertexFunction(g, vals)


def _zero(exact: bool):
    return GaussianRational(0) if exact else 0j
