"""Spinors and direction fields on 3-edge-coloured cubic graphs.

At a vertex ``x`` with colour-``k`` neighbour ``y_k`` an isotropic 1-form
gives the null triple ``xi = (omega(x -> y_1), omega(x -> y_2), omega(x -> y_3))``.
The symmetric matrix

    Omega = [[-xi2 - i xi3, xi1],
             [xi1,          xi2 - i xi3]]

has determinant ``-(xi1**2 + xi2**2 + xi3**2) = 0`` and factors as
``mu mu^T``.  Inverse stereographic projection of ``mu0/mu1`` gives a unit
vector ``U`` in the colour frame, and the evolution equation
``d phi_next(U) = -Laplacian(phi)`` is a linear system for the next
function, solved here in least squares.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import DEFAULT_TOL, OneForm, VertexFunction, is_isotropic, laplacian
from .graph import EdgeColoring, Graph
from .holomorphy import holomorphy_residuals

COLORS = (1, 2, 3)


class DegenerateVertexError(ValueError):
    """``xi = 0`` at a vertex: no spinor and no direction."""


def _require_cubic_coloring(graph: Graph, coloring: EdgeColoring):
    if coloring.graph != graph:
        raise ValueError("colouring belongs to a different graph")
    if not graph.is_regular(3):
        raise ValueError("graph is not cubic")
    if coloring.m != 3:
        raise ValueError(f"need a colouring with colours 1..3, got 1..{coloring.m}")


@dataclass(frozen=True)
class XiField:
    graph: Graph
    coloring: EdgeColoring
    values: dict

    def __getitem__(self, x):
        return self.values[x]

    def items(self):
        return ((x, self.values[x]) for x in self.graph.vertices)

    def null_residuals(self) -> dict:
        return {x: sum(c * c for c in xi) for x, xi in self.items()}


def xi_field(omega: OneForm, coloring: EdgeColoring, tol: float = DEFAULT_TOL) -> XiField:
    """Outward triples ``xi_k(x) = omega(x -> colour-k neighbour)``."""
    g = omega.graph
    _require_cubic_coloring(g, coloring)
    if not is_isotropic(omega, tol):
        raise ValueError("1-form is not isotropic")
    vals = {x: tuple(omega(x, coloring.neighbor(x, k)) for k in COLORS) for x in g.vertices}
    return XiField(g, coloring, vals)


def omega_matrix(xi) -> np.ndarray:
    x1, x2, x3 = (complex(c) for c in xi)
    return np.array([[-x2 - 1j * x3, x1], [x1, x2 - 1j * x3]], dtype=complex)


def _normalize_sign(mu0: complex, mu1: complex) -> tuple[complex, complex]:
    # first component of largest modulus gets argument in [0, pi)
    lead = mu0 if abs(mu0) >= abs(mu1) else mu1
    if lead.imag < 0 or (lead.imag == 0 and lead.real < 0):
        return -mu0, -mu1
    return mu0, mu1


def spinor_from_xi(xi) -> tuple[complex, complex]:
    """Factor ``Omega = mu mu^T``; ``mu`` is sign-normalized."""
    x1 = complex(xi[0])
    M = omega_matrix(xi)
    a, b = M[0, 0], M[1, 1]
    if a == 0 and b == 0 and x1 == 0:
        raise DegenerateVertexError("xi = 0 has no spinor")
    if abs(a) >= abs(b):
        mu0 = cmath.sqrt(a)
        mu1 = x1 / mu0 if mu0 != 0 else 0j
    else:
        mu1 = cmath.sqrt(b)
        mu0 = x1 / mu1
    return _normalize_sign(complex(mu0), complex(mu1))


def spinor_field(xis: XiField) -> dict:
    return {x: spinor_from_xi(xi) for x, xi in xis.items()}


def u_field(xi) -> np.ndarray:
    """Unit direction ``U`` in the colour frame.

    ``U = (|w|^2 - |xi1|^2, -2 Re(conj(xi1) w), -2 Im(conj(xi1) w)) / (|xi1|^2 + |w|^2)``
    with ``w = xi2 + i xi3``.  The denominator vanishes only where
    ``Omega[0, 0] = 0`` and ``xi1 = 0``, the pole ``U = (-1, 0, 0)``.
    """
    x1, x2, x3 = (complex(c) for c in xi)
    if x1 == 0 and x2 == 0 and x3 == 0:
        raise DegenerateVertexError("xi = 0 has no direction")
    w = x2 + 1j * x3
    den = abs(x1) ** 2 + abs(w) ** 2
    if den == 0:
        return np.array([-1.0, 0.0, 0.0])
    p = x1.conjugate() * w
    U = np.array([abs(w) ** 2 - abs(x1) ** 2, -2 * p.real, -2 * p.imag]) / den
    return U


@dataclass(frozen=True)
class DirectionField:
    """Unit vectors per vertex plus an optional sign choice ``eps``."""

    graph: Graph
    values: dict
    signs: dict | None = None

    def __getitem__(self, x):
        return self.values[x]

    def sign(self, x) -> int:
        return 1 if self.signs is None else self.signs[x]

    def signed(self, x) -> np.ndarray:
        return self.sign(x) * self.values[x]

    def with_signs(self, eps) -> "DirectionField":
        return DirectionField(self.graph, self.values, _sign_dict(self.graph, eps))


def _sign_dict(graph: Graph, eps) -> dict | None:
    if eps is None:
        return None
    if isinstance(eps, dict):
        out = {x: int(eps[x]) for x in graph.vertices}
    else:
        eps = list(eps)
        if len(eps) != graph.n:
            raise ValueError(f"need {graph.n} signs, got {len(eps)}")
        out = {x: int(s) for x, s in zip(graph.vertices, eps)}
    if any(s not in (1, -1) for s in out.values()):
        raise ValueError("signs must be +1 or -1")
    return out


def direction_field(xis: XiField, eps=None) -> DirectionField:
    return DirectionField(xis.graph, {x: u_field(xi) for x, xi in xis.items()},
                          _sign_dict(xis.graph, eps))


def pairing_matrix(U: DirectionField, coloring: EdgeColoring) -> np.ndarray:
    """Matrix of ``phi -> eps(x) * sum_k u_k(x) (phi(y_k) - phi(x))``."""
    g = U.graph
    M = np.zeros((g.n, g.n))
    for x in g.vertices:
        i = g.index(x)
        u = U.signed(x)
        for k in COLORS:
            M[i, g.index(coloring.neighbor(x, k))] += u[k - 1]
            M[i, i] -= u[k - 1]
    return M


def directional_pairing(phi: VertexFunction, U: DirectionField,
                        coloring: EdgeColoring) -> VertexFunction:
    g = phi.graph
    if U.graph != g:
        raise ValueError("direction field lives on a different graph")
    vals = {}
    for x in g.vertices:
        u = U.signed(x)
        px = complex(phi[x])
        vals[x] = sum(u[k - 1] * (complex(phi[coloring.neighbor(x, k)]) - px) for k in COLORS)
    return VertexFunction(g, vals, exact=False)


@dataclass
class EvolveResult:
    values: VertexFunction
    residual: float
    consistent: bool
    rank: int
    kernel_dim: int
    holomorphic_residual: float
    gauge: str

    @property
    def rank_deficient(self) -> bool:
        """Kernel larger than the constants."""
        return self.kernel_dim > 1


def _holomorphic_member(g: Graph, base: np.ndarray, K: np.ndarray, restarts: int, seed: int):
    """Point of ``base + K c`` minimizing the holomorphy residual.

    Starts from ``c = 0`` and then seeded random ``c``; the first start to
    reach residual 1e-12 wins, otherwise the best one.
    """
    from .solver import SolveConfig, _realify, levenberg, restart_rng

    src, dst = [], []
    for u, v in g.edges:
        a, b = g.index(u), g.index(v)
        src += [a, b]
        dst += [b, a]
    src, dst = np.array(src), np.array(dst)
    k = K.shape[1]

    def fun(x):
        phi = base + K @ (x[:k] + 1j * x[k:])
        d = phi[dst] - phi[src]
        r = np.zeros(g.n, dtype=complex)
        np.add.at(r, src, d * d)
        # d r(x) / d phi(v), then chain through K
        Jp = np.zeros((g.n, g.n), dtype=complex)
        np.add.at(Jp, (src, dst), 2 * d)
        np.add.at(Jp, (src, src), -2 * d)
        return np.concatenate([r.real, r.imag]), _realify(Jp @ K)

    cfg = SolveConfig(seed=seed, max_iter=200, target=1e-12)

    def res(x):
        r, _ = fun(x)
        return float(np.abs(r[:g.n] + 1j * r[g.n:]).max())

    best, best_res = np.zeros(2 * k), math.inf
    for i in range(restarts + 1):
        x0 = np.zeros(2 * k) if i == 0 else restart_rng(seed, i).uniform(-2, 2, 2 * k)
        x, _ = levenberg(fun, x0, cfg, lambda r: np.abs(r[:g.n] + 1j * r[g.n:]).max() < 1e-12)
        rx = res(x)
        if rx < best_res:
            best, best_res = x, rx
        if best_res < 1e-12:
            break
    return base + K @ (best[:k] + 1j * best[k:])


def evolve_step(phi: VertexFunction, U: DirectionField, coloring: EdgeColoring,
                gauge: str | None = None, *, tol: float = DEFAULT_TOL,
                holomorphic: bool = True, restarts: int = 20, seed: int = 0) -> EvolveResult:
    """Solve ``d phi_next(U) = -Laplacian(phi)`` with ``phi_next(gauge) = 0``.

    The system always has the constants in its kernel.  When the kernel is
    larger, least squares alone does not pick a solution; with
    ``holomorphic=True`` the member of the solution space closest to
    holomorphic is returned (seeded, deterministic), otherwise the
    minimum-norm one.
    """
    g = phi.graph
    _require_cubic_coloring(g, coloring)
    gauge = g.vertices[0] if gauge is None else gauge
    gi = g.index(gauge)
    M = pairing_matrix(U, coloring)
    rhs = -laplacian(phi).to_array()
    keep = [j for j in range(g.n) if j != gi]
    A = M[:, keep]
    sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    residual = float(np.linalg.norm(A @ sol - rhs))
    rank = int(np.linalg.matrix_rank(M))
    kernel_dim = g.n - rank
    vec = np.zeros(g.n, dtype=complex)
    vec[keep] = sol
    if holomorphic and kernel_dim > 1 and residual < tol:
        # null space of the gauged system, a basis of the extra freedom
        _, s, Vt = np.linalg.svd(A)
        null = Vt[np.sum(s > 1e-10 * max(s.max(), 1.0)):].conj().T
        K = np.zeros((g.n, null.shape[1]), dtype=complex)
        K[keep] = null
        vec = _holomorphic_member(g, vec, K, restarts, seed)
        vec = vec - vec[gi]
        residual = float(np.linalg.norm(M @ vec - rhs))
    out = VertexFunction.from_array(g, vec)
    hres = holomorphy_residuals(out).max_abs()
    return EvolveResult(out, residual, residual < tol, rank, kernel_dim, hres, gauge)


def evolve(phi: VertexFunction, coloring: EdgeColoring, steps: int, *,
           tol: float = DEFAULT_TOL, seed: int = 0) -> list[dict]:
    """Iterate: xi from d phi, sign search, evolve.  Returns the trace."""
    from .calculus import differential

    trace = [dict(step=0, values=phi, eps=None, residual=0.0)]
    cur = phi
    for n in range(1, steps + 1):
        xis = xi_field(differential(cur), coloring, tol)
        U = direction_field(xis)
        found = sign_search(cur, U, coloring, tol=tol, seed=seed)
        cur = found.result.values
        trace.append(dict(step=n, values=cur, eps=found.eps, residual=found.result.residual))
    return trace


# -- sign search -----------------------------------------------------------------


@dataclass
class SignSearchResult:
    eps: dict
    result: EvolveResult
    exhaustive: bool
    evaluated: int
    consistent_count: int
    budget_exhausted: bool = False
    ranking: list = field(default_factory=list)


def _sign_key(res: EvolveResult, eps: tuple, tol: float):
    # consistent systems tie on residual; then closest to holomorphic, then
    # plain tuple order on the signs (-1 before +1)
    resid = 0.0 if res.residual < tol else res.residual
    hol = 0.0 if res.holomorphic_residual < tol else res.holomorphic_residual
    return (resid, hol, tuple(eps))


def sign_search(phi: VertexFunction, U: DirectionField, coloring: EdgeColoring, *,
                tol: float = DEFAULT_TOL, budget: int = 2000, seed: int = 0,
                exhaustive_limit: int = 20) -> SignSearchResult:
    """Choose ``eps`` making the evolution system consistent.

    Up to ``exhaustive_limit`` vertices every ``eps`` with ``eps(first) = +1``
    is tried (``eps`` and ``-eps`` give the same system up to the sign of the
    solution).  Larger graphs use seeded single-flip hill climbing with
    random restarts, at most ``budget`` evaluations.
    """
    g = phi.graph
    n = g.n

    def run(eps):
        return evolve_step(phi, U.with_signs(eps), coloring, tol=tol, seed=seed)

    ranking = []
    if n <= exhaustive_limit:
        for tail in itertools.product((1, -1), repeat=n - 1):
            eps = (1,) + tail
            res = run(eps)
            ranking.append((_sign_key(res, eps, tol), eps, res))
        ranking.sort(key=lambda t: t[0])
        key, eps, res = ranking[0]
        nc = sum(1 for t in ranking if t[2].consistent)
        return SignSearchResult(dict(zip(g.vertices, eps)), res, True, len(ranking), nc,
                                ranking=[(e, r.residual, r.holomorphic_residual) for _, e, r in ranking])

    from .solver import restart_rng

    evaluated = 0
    best = None
    restart = 0
    seen_consistent = 0
    while evaluated < budget:
        rng = restart_rng(seed, restart)
        restart += 1
        eps = tuple(int(s) for s in rng.choice([1, -1], size=n))
        eps = eps if eps[0] == 1 else tuple(-s for s in eps)
        res = run(eps)
        evaluated += 1
        cur = (_sign_key(res, eps, tol), eps, res)
        improved = True
        while improved and evaluated < budget:
            improved = False
            for j in range(1, n):
                trial = cur[1][:j] + (-cur[1][j],) + cur[1][j + 1:]
                r = run(trial)
                evaluated += 1
                cand = (_sign_key(r, trial, tol), trial, r)
                if cand[0] < cur[0]:
                    cur, improved = cand, True
                    break
                if evaluated >= budget:
                    break
        if cur[2].consistent:
            seen_consistent += 1
        if best is None or cur[0] < best[0]:
            best = cur
        if best[2].consistent and best[2].holomorphic_residual < tol:
            break
    key, eps, res = best
    return SignSearchResult(dict(zip(g.vertices, eps)), res, False, evaluated, seen_consistent,
                            budget_exhausted=not res.consistent)


# -- the evolution table for the cube --------------------------------------------------

_R2 = math.sqrt(2.0)
_UP = np.array([1.0, 0.0, -1.0]) / _R2

# rows 1..8: xi, U, the pair (a, b) of the pairing column
# (phi_next(a) - phi_next(b)) / sqrt(2), Laplacian, phi_next
TABLE_ROWS = (
    ((1, _R2 * 1j, 1), _UP, (2, 7), -_R2 / 3 * (_R2 + 1j), 2 * _R2 / 3),
    ((-1, _R2 * 1j, -1), _UP, (1, 8), _R2 / 3 * (_R2 - 1j), 2 * (_R2 + 1j) / 3),
    ((1, -_R2 * 1j, 1), _UP, (5, 4), -_R2 / 3 * (_R2 - 1j), 2 * (_R2 + 1j) / 3),
    ((-1, -_R2 * 1j, -1), -_UP, (3, 6), _R2 / 3 * (_R2 + 1j), 2 * _R2 / 3),
    ((-1, -_R2 * 1j, -1), -_UP, (3, 6), _R2 / 3 * (_R2 + 1j), 2j / 3),
    ((1, -_R2 * 1j, 1), -_UP, (5, 4), -_R2 / 3 * (_R2 - 1j), 0),
    ((-1, _R2 * 1j, -1), -_UP, (1, 8), _R2 / 3 * (_R2 - 1j), 0),
    ((1, _R2 * 1j, 1), -_UP, (2, 7), -_R2 / 3 * (_R2 + 1j), 2j / 3),
)


@dataclass(frozen=True)
class TableMatch:
    rows: dict          # row number (1..8) -> vertex
    pairing_agreement: int

    def vertex(self, row: int) -> str:
        return self.rows[row]


def _pairing_agrees(row: int, x: str, inv: dict, coloring: EdgeColoring) -> bool:
    # with U = s (1, 0, -1)/sqrt(2) the pairing is s (phi(y1) - phi(y3))/sqrt(2)
    _, U, (a, b), _, _ = TABLE_ROWS[row - 1]
    c1, c3 = inv[coloring.neighbor(x, 1)], inv[coloring.neighbor(x, 3)]
    return (c1, c3) == ((a, b) if U[0] > 0 else (b, a))


def match_table(xis: XiField, coloring: EdgeColoring, tol: float = 1e-12) -> list[TableMatch]:
    """Row-to-vertex assignments agreeing with the table's xi column.

    Every assignment matching all eight triples within ``tol`` is returned,
    ranked by how many rows also agree with the pairing column (which
    neighbour enters with which sign), then by vertex order.
    """
    g = xis.graph
    cands = []
    for xi, *_rest in TABLE_ROWS:
        cands.append([x for x in g.vertices
                      if max(abs(complex(a) - b) for a, b in zip(xis[x], xi)) < tol])
    out = []
    for choice in itertools.product(*cands):
        if len(set(choice)) != len(choice):
            continue
        rows = dict(enumerate(choice, start=1))
        inv = {x: r for r, x in rows.items()}
        agree = sum(_pairing_agrees(r, rows[r], inv, coloring) for r in rows)
        out.append(TableMatch(rows, agree))
    out.sort(key=lambda m: (-m.pairing_agreement, [m.rows[r] for r in range(1, 9)]))
    return out
