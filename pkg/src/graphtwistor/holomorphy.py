"""Holomorphic functions on graphs and holomorphic maps between graphs.

A function is holomorphic at ``x`` when the squared outward differences
``(phi(y) - phi(x))**2`` over the neighbours ``y`` of ``x`` sum to zero.  A
map of graphs is holomorphic (semi-conformal) when each vertex ``x`` sends
the same number of neighbours onto every neighbour of its image.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .calculus import DEFAULT_TOL, TIGHT_TOL, VertexFunction
from .gaussian import GaussianRational, magnitude, normalize_values
from .generators import hypercube, lattice_label, lattice_window
from .graph import Graph


def holomorphy_residuals(phi: VertexFunction) -> VertexFunction:
    g = phi.graph
    zero = GaussianRational(0) if phi.exact else 0j
    out = {}
    for x in g.vertices:
        px = phi[x]
        out[x] = sum(((phi[y] - px) ** 2 for y in g.neighbors(x)), zero)
    return VertexFunction(g, out, exact=phi.exact)


@dataclass(frozen=True)
class HolomorphyCheck:
    ok: bool
    worst_vertex: str | None
    worst_residual: object
    exact: bool

    def __bool__(self):
        return self.ok


def is_holomorphic(phi: VertexFunction, tol: float = DEFAULT_TOL) -> HolomorphyCheck:
    """Holomorphy test with the worst vertex.  Exact inputs ignore ``tol``."""
    res = holomorphy_residuals(phi)
    worst, worst_r, worst_mag = None, 0, -1.0
    for x, r in res.items():
        if magnitude(r) > worst_mag:
            worst, worst_r, worst_mag = x, r, magnitude(r)
    ok = res.all_zero(0.0 if res.exact else tol)
    return HolomorphyCheck(ok, worst, worst_r, res.exact)


# -- maps of graphs ----------------------------------------------------------


class NotAGraphMapError(ValueError):
    pass


class GraphMap:
    """Vertex map sending every edge to an edge or collapsing it to a point."""

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source: Graph, target: Graph, assignment: Mapping[str, str]):
        missing = [x for x in source.vertices if x not in assignment]
        if missing:
            raise NotAGraphMapError(f"map undefined at {missing[:5]}")
        for x in source.vertices:
            if assignment[x] not in target:
                raise NotAGraphMapError(f"{x!r} maps to {assignment[x]!r}, not a target vertex")
        for u, v in source.edges:
            a, b = assignment[u], assignment[v]
            if a != b and not target.has_edge(a, b):
                raise NotAGraphMapError(f"edge {(u, v)} maps to non-edge {(a, b)}")
        self.source = source
        self.target = target
        self.assignment = {x: assignment[x] for x in source.vertices}

    def __call__(self, x: str) -> str:
        return self.assignment[x]

    @classmethod
    def identity(cls, g: Graph) -> "GraphMap":
        return cls(g, g, {x: x for x in g.vertices})

    @classmethod
    def constant(cls, source: Graph, target: Graph, z: str) -> "GraphMap":
        return cls(source, target, {x: z for x in source.vertices})


@dataclass(frozen=True)
class DilationField:
    values: dict

    def __getitem__(self, x):
        return self.values[x]


def fiber_counts(f: GraphMap, x: str) -> dict[str, int]:
    """``lambda(x, z')`` for every neighbour ``z'`` of ``f(x)``."""
    z = f(x)
    counts = {zp: 0 for zp in f.target.neighbors(z)}
    for xp in f.source.neighbors(x):
        if f(xp) != z:
            counts[f(xp)] += 1
    return counts


def dilation_witness(f: GraphMap) -> tuple[str, str, str] | None:
    """First ``(x, z1, z2)`` with ``lambda(x, z1) != lambda(x, z2)``, if any."""
    for x in f.source.vertices:
        counts = fiber_counts(f, x)
        if all(f(xp) == f(x) for xp in f.source.neighbors(x)):
            continue
        items = sorted(counts.items())
        for (z1, c1), (z2, c2) in itertools.combinations(items, 2):
            if c1 != c2:
                return (x, z1, z2)
    return None


def map_dilation(f: GraphMap) -> DilationField | None:
    """Dilation of a holomorphic map, or ``None`` if ``f`` is not holomorphic.

    Vertices whose whole neighbourhood collapses onto their image get
    dilation 0.  Use :func:`dilation_witness` to see why a map fails.
    """
    if dilation_witness(f) is not None:
        return None
    lam = {}
    for x in f.source.vertices:
        if all(f(xp) == f(x) for xp in f.source.neighbors(x)):
            lam[x] = 0
        else:
            lam[x] = next(iter(fiber_counts(f, x).values()))
    return DilationField(lam)


def pullback(f: GraphMap, g: VertexFunction) -> VertexFunction:
    if g.graph != f.target:
        raise ValueError("function is not defined on the map's target graph")
    return VertexFunction(f.source, {x: g[f(x)] for x in f.source.vertices}, exact=g.exact)


def converse_test_function(f: GraphMap, witness: tuple[str, str, str]) -> VertexFunction:
    """Function holomorphic at ``f(x)`` whose pullback fails at ``x``.

    Values: ``i`` at ``z1``, ``1`` at ``z2``, ``0`` elsewhere, so the pullback
    residual at ``x`` is ``lambda(x, z2) - lambda(x, z1)``.
    """
    _, z1, z2 = witness
    vals = {y: GaussianRational(0) for y in f.target.vertices}
    vals[z1] = GaussianRational(0, 1)
    vals[z2] = GaussianRational(1)
    return VertexFunction(f.target, vals)


# -- axonometry ----------------------------------------------------------------


class IsotropyError(ValueError):
    pass


def hypercube_projection(z: Sequence, tol: float = TIGHT_TOL) -> VertexFunction:
    """``phi(e) = sum_k e_k z_k`` on the ``n``-cube, for isotropic ``z``.

    Vertex ``e`` is the bitstring label ``e_1 e_2 ... e_n``.
    """
    vals, exact = normalize_values(z)
    sq = sum((w * w for w in vals), GaussianRational(0) if exact else 0j)
    if (exact and sq) or (not exact and abs(sq) >= tol):
        raise IsotropyError(f"sum of squares is {sq}, not zero")
    n = len(vals)
    g = hypercube(n)
    zero = GaussianRational(0) if exact else 0j
    phi = {v: sum((vals[k] for k in range(n) if v[k] == "1"), zero) for v in g.vertices}
    return VertexFunction(g, phi, exact=exact)


def random_isotropic_tuple(n: int, rng: np.random.Generator) -> np.ndarray:
    """Images of the standard basis under a random orthogonal projection to C.

    The first two rows of a Haar-random rotation are read as real and
    imaginary parts; orthonormality of those rows gives ``sum z_k**2 = 0``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    A = rng.normal(size=(n, n))
    Qm, R = np.linalg.qr(A)
    Qm = Qm * np.sign(np.diag(R))
    return Qm[0] + 1j * Qm[1]


def simplex_projection_residual(z: Sequence):
    """``(sum z)**2 - (n + 1) * sum z**2``."""
    vals, exact = normalize_values(z)
    zero = GaussianRational(0) if exact else 0j
    s = sum(vals, zero)
    s2 = sum((w * w for w in vals), zero)
    return s * s - (len(vals) + 1) * s2


# -- lattice initial-value problem ---------------------------------------------------


class LatticeOverflowError(ArithmeticError):
    def __init__(self, site):
        self.site = site
        super().__init__(f"non-finite value produced at lattice site {site}")


def lattice_interior(dims) -> list[str]:
    """Labels of window vertices with all ``2N`` lattice neighbours inside."""
    dims = tuple(dims)
    ranges = [range(1, d - 1) for d in dims]
    return [lattice_label(p, dims) for p in itertools.product(*ranges)]


def lattice_extend(g0, g1, dims, branches: Sequence[int] | None = None) -> VertexFunction:
    """Fill a lattice window row by row from its first two rows.

    ``dims`` is the window shape; the last axis indexes rows.  ``g0`` and
    ``g1`` are arrays of shape ``dims[:-1]`` giving rows 0 and 1.  Each new
    value solves the vertex equation at the site below it,

        sum over in-window row neighbours y of (phi(y) - phi(x))**2
        + (phi(x - e_N) - phi(x))**2 + (phi(x + e_N) - phi(x))**2 = 0,

    whose two roots differ in sign.  ``branches=None`` takes the principal
    square root; otherwise one bit per filled site, in fill order (row by
    row, sites in C order), with 1 choosing the negated root.
    """
    dims = tuple(int(d) for d in dims)
    if len(dims) < 2:
        raise ValueError("lattice window needs at least two axes")
    if dims[-1] < 3:
        raise ValueError(f"window too small: {dims[-1]} rows, need at least 3")
    row_shape = dims[:-1]
    rows = np.empty(dims, dtype=complex)
    for r, g in ((0, g0), (1, g1)):
        arr = np.asarray(g, dtype=complex)
        if arr.shape != row_shape:
            raise ValueError(f"row {r} has shape {arr.shape}, expected {row_shape}")
        rows[..., r] = arr
    sites = list(itertools.product(*(range(d) for d in row_shape)))
    nfill = len(sites) * (dims[-1] - 2)
    if branches is not None:
        branches = [int(b) for b in branches]
        if len(branches) < nfill:
            raise ValueError(f"need {nfill} branch bits, got {len(branches)}")
    # overflow shows up as a non-finite value and is reported with its site
    with np.errstate(over="ignore", invalid="ignore"):
        step = 0
        for n in range(1, dims[-1] - 1):
            cur = rows[..., n]
            prev = rows[..., n - 1]
            for p in sites:
                c = cur[p]
                s = (prev[p] - c) ** 2
                for k in range(len(row_shape)):
                    for dk in (-1, 1):
                        q = list(p)
                        q[k] += dk
                        if 0 <= q[k] < row_shape[k]:
                            s += (cur[tuple(q)] - c) ** 2
                root = cmath.sqrt(-s)
                if branches is not None and branches[step]:
                    root = -root
                val = c + root
                if not (math.isfinite(val.real) and math.isfinite(val.imag)):
                    raise LatticeOverflowError(p + (n + 1,))
                rows[p + (n + 1,)] = val
                step += 1
    g = lattice_window(dims)
    vals = {lattice_label(p, dims): complex(rows[p]) for p in itertools.product(*(range(d) for d in dims))}
    return VertexFunction(g, vals, exact=False)
