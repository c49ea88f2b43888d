"""Numerical search for holomorphic functions and isotropic 1-forms.

Both searches split the per-vertex quadratic equations into real and
imaginary parts and run damped Gauss-Newton (Levenberg) iterations from
seeded random starts.  Every candidate is re-checked with the residual
evaluators in :mod:`graphtwistor.holomorphy` / :mod:`graphtwistor.calculus`
before it is reported, and reported solutions are deduplicated modulo the
gauge freedom of the problem (affine maps for functions, complex scale for
forms).

An empty solution list means nothing was found within the budget.  It is
never evidence of nonexistence.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .calculus import OneForm, VertexFunction, isotropy_residuals
from .graph import Graph
from .holomorphy import holomorphy_residuals

NONE_FOUND = "none found within budget"


@dataclass(frozen=True)
class SolveConfig:
    seed: int = 0
    restarts: int = 200
    max_iter: int = 500
    target: float = 1e-9
    damping_init: float = 1e-3
    damping_up: float = 10.0
    damping_down: float = 3.0
    damping_max: float = 1e16
    nondegenerate: bool = True
    dedup_tol: float = 1e-6
    start_range: float = 2.0
    polish: int = 30
    max_solutions: int | None = None
    workers: int = 1

    def __post_init__(self):
        if not self.target > 0:
            raise ValueError("residual target must be positive")
        if self.restarts < 1:
            raise ValueError("need at least one restart")
        if self.max_iter < 1:
            raise ValueError("need at least one iteration")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "SolveConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown solver options: {sorted(unknown)}")
        return cls(**d)


@dataclass
class Solution:
    value: VertexFunction | OneForm
    residual: float
    restart: int


@dataclass
class SolveReport:
    kind: str
    config: SolveConfig
    solutions: list[Solution] = field(default_factory=list)
    statuses: list[str] = field(default_factory=list)
    classes: list[list[int]] = field(default_factory=list)
    wall_clock: float = 0.0

    @property
    def found(self) -> bool:
        return bool(self.solutions)

    @property
    def message(self) -> str:
        if not self.solutions:
            return NONE_FOUND
        return f"{len(self.solutions)} solution(s) found"


def restart_rng(seed: int, index: int) -> np.random.Generator:
    """Counter-based stream keyed by ``(seed, restart index)``."""
    key = np.array([seed, index], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def levenberg(fun, x0: np.ndarray, cfg: SolveConfig, done) -> tuple[np.ndarray, str]:
    """Damped Gauss-Newton on ``||r(x)||^2``.

    ``fun(x)`` returns ``(r, J)``; ``done(r)`` decides convergence.  The
    damping starts at ``cfg.damping_init``, is multiplied by
    ``cfg.damping_up`` after a rejected step and divided by
    ``cfg.damping_down`` after an accepted one.  Once converged, up to
    ``cfg.polish`` further accepted steps tighten the point (near singular
    solution sets convergence is only linear, and deduplication at 1e-6
    needs more than a 1e-9 residual).
    """
    x = x0.copy()
    r, J = fun(x)
    cost = float(r @ r)
    lam = cfg.damping_init
    eye = np.eye(x.size)
    polishing = 0
    for _ in range(cfg.max_iter + cfg.polish):
        if done(r):
            if polishing >= cfg.polish or cost < 1e-30:
                return x, "converged"
            polishing += 1
        g = J.T @ r
        A = J.T @ J
        try:
            dx = np.linalg.solve(A + lam * eye, -g)
        except np.linalg.LinAlgError:
            lam *= cfg.damping_up
            if lam > cfg.damping_max:
                return x, "stalled"
            continue
        x_new = x + dx
        r_new, J_new = fun(x_new)
        cost_new = float(r_new @ r_new)
        if not np.isfinite(cost_new) or np.abs(x_new).max() > 1e8:
            return x_new, "diverged"
        if cost_new < cost:
            x, r, J, cost = x_new, r_new, J_new, cost_new
            lam /= cfg.damping_down
        else:
            if polishing:
                return x, "converged"
            lam *= cfg.damping_up
            if lam > cfg.damping_max:
                return x, "stalled"
    return x, ("converged" if done(r) else "stalled")


def _realify(Jc: np.ndarray) -> np.ndarray:
    return np.block([[Jc.real, -Jc.imag], [Jc.imag, Jc.real]])


# -- holomorphic functions ------------------------------------------------------


def gauge_vertices(graph: Graph) -> tuple[str, str]:
    """Pinned vertices: the first vertex and, when possible, its first neighbour."""
    x0 = graph.vertices[0]
    ns = graph.neighbors(x0)
    x1 = ns[0] if ns else graph.vertices[1]
    return x0, x1


class _HoloSystem:
    def __init__(self, graph: Graph):
        self.graph = graph
        n = graph.n
        self.x0, self.x1 = gauge_vertices(graph)
        i0, i1 = graph.index(self.x0), graph.index(self.x1)
        self.free = np.array([i for i in range(n) if i not in (i0, i1)], dtype=int)
        self.pinned = np.zeros(n, dtype=complex)
        self.pinned[i1] = 1.0
        src, dst = [], []
        for u, v in graph.edges:
            a, b = graph.index(u), graph.index(v)
            src += [a, b]
            dst += [b, a]
        self.src = np.array(src, dtype=int)
        self.dst = np.array(dst, dtype=int)
        self.n = n

    def full(self, x: np.ndarray) -> np.ndarray:
        k = self.free.size
        phi = self.pinned.copy()
        phi[self.free] = x[:k] + 1j * x[k:]
        return phi

    def __call__(self, x: np.ndarray):
        phi = self.full(x)
        d = phi[self.dst] - phi[self.src]
        r = np.zeros(self.n, dtype=complex)
        np.add.at(r, self.src, d * d)
        Jc = np.zeros((self.n, self.n), dtype=complex)
        np.add.at(Jc, (self.src, self.dst), 2 * d)
        np.add.at(Jc, (self.src, self.src), -2 * d)
        Jc = Jc[:, self.free]
        return np.concatenate([r.real, r.imag]), _realify(Jc)


def affine_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max-norm distance from ``b`` to the best affine image ``c*a + t``."""
    A = np.column_stack([a, np.ones_like(a)])
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    return float(np.abs(A @ coef - b).max())


def scale_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Max-norm distance from ``b`` to the best complex multiple of ``a``."""
    den = np.vdot(a, a)
    c = np.vdot(a, b) / den if den else 0.0
    return float(np.abs(c * a - b).max())


def _run(kind: str, graph: Graph, cfg: SolveConfig, one_restart, dist) -> SolveReport:
    t0 = time.perf_counter()
    report = SolveReport(kind, cfg)
    idx = range(cfg.restarts)
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            results = list(pool.map(one_restart, idx))
    else:
        results = []
        for i in idx:
            results.append(one_restart(i))
            distinct = sum(1 for r in results if r[1] is not None)
            if cfg.max_solutions is not None and distinct >= cfg.max_solutions:
                break
    for i, (status, sol) in enumerate(results):
        report.statuses.append(status)
        if sol is None:
            continue
        arr = sol.value.to_array()
        for k, s in enumerate(report.solutions):
            if dist(s.value.to_array(), arr) < cfg.dedup_tol:
                report.classes[k].append(i)
                break
        else:
            report.solutions.append(sol)
            report.classes.append([i])
        if cfg.max_solutions is not None and len(report.solutions) >= cfg.max_solutions:
            break
    report.wall_clock = time.perf_counter() - t0
    return report


def solve_holomorphic(graph: Graph, config: SolveConfig | None = None) -> SolveReport:
    """Search for holomorphic functions with ``phi(x0) = 0``, ``phi(x1) = 1``.

    ``(x0, x1)`` comes from :func:`gauge_vertices`; pinning two values uses
    up the ``c*phi + a`` freedom and excludes constants.
    """
    cfg = config or SolveConfig()
    if graph.n < 2 or not graph.is_connected():
        raise ValueError("solve_holomorphic needs a connected graph with at least 2 vertices")
    system = _HoloSystem(graph)
    k = system.free.size

    def done(r):
        return np.abs(r[:graph.n] + 1j * r[graph.n:]).max() < cfg.target

    def one(i):
        rng = restart_rng(cfg.seed, i)
        x0 = rng.uniform(-cfg.start_range, cfg.start_range, size=2 * k)
        x, status = levenberg(system, x0, cfg, done)
        if status != "converged":
            return status, None
        phi = VertexFunction.from_array(graph, system.full(x))
        res = holomorphy_residuals(phi).max_abs()
        if not res < cfg.target:
            return "rejected", None
        return status, Solution(phi, res, i)

    return _run("holomorphic", graph, cfg, one, affine_distance)


# -- isotropic 1-forms ----------------------------------------------------------------


class _FormSystem:
    def __init__(self, graph: Graph, nondegenerate: bool):
        self.graph = graph
        self.m = graph.m
        self.n = graph.n
        self.ends = np.array([[graph.index(u), graph.index(v)] for u, v in graph.edges],
                             dtype=int).reshape(-1, 2)
        self.nondegenerate = nondegenerate

    def __call__(self, x: np.ndarray):
        m = self.m
        w = x[:m] + 1j * x[m:]
        r = np.zeros(self.n, dtype=complex)
        np.add.at(r, self.ends[:, 0], w * w)
        np.add.at(r, self.ends[:, 1], w * w)
        Jc = np.zeros((self.n, m), dtype=complex)
        cols = np.arange(m)
        np.add.at(Jc, (self.ends[:, 0], cols), 2 * w)
        np.add.at(Jc, (self.ends[:, 1], cols), 2 * w)
        R = np.concatenate([r.real, r.imag])
        J = _realify(Jc)
        if self.nondegenerate:
            p = float(np.sum(np.abs(w) ** 2) - m)
            R = np.append(R, p)
            J = np.vstack([J, 2 * x])
        return R, J


def nondegeneracy_defect(omega: OneForm) -> float:
    """``|sum |omega(e)|^2 - |E||``; the normalization the isotropic search enforces."""
    return abs(float(np.sum(np.abs(omega.to_array()) ** 2)) - omega.graph.m)


def solve_isotropic(graph: Graph, config: SolveConfig | None = None) -> SolveReport:
    """Search for isotropic 1-forms normalized by ``sum |omega|^2 = |E|``."""
    cfg = config or SolveConfig()
    if not graph.is_connected() or graph.m == 0:
        raise ValueError("solve_isotropic needs a connected graph with at least one edge")
    system = _FormSystem(graph, cfg.nondegenerate)
    n, m = graph.n, graph.m
    ndtol = 1e-6 * m

    def done(r):
        ok = np.abs(r[:n] + 1j * r[n:2 * n]).max() < cfg.target
        if cfg.nondegenerate:
            ok = ok and abs(r[2 * n]) < ndtol
        return ok

    def one(i):
        rng = restart_rng(cfg.seed, i)
        x0 = rng.uniform(-cfg.start_range, cfg.start_range, size=2 * m)
        x, status = levenberg(system, x0, cfg, done)
        if status != "converged":
            return status, None
        omega = OneForm.from_array(graph, x[:m] + 1j * x[m:])
        res = isotropy_residuals(omega).max_abs()
        if not res < cfg.target:
            return "rejected", None
        if cfg.nondegenerate and not nondegeneracy_defect(omega) < ndtol:
            return "rejected", None
        return status, Solution(omega, res, i)

    return _run("isotropic", graph, cfg, one, scale_distance)
