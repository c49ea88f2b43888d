"""Dual functions on the line graph and the inverse construction.

A 1-form on ``G`` becomes a function ``psi`` on the vertices of the line
graph by evaluating it on each edge in its canonical direction (smaller
endpoint first).  The form is isotropic exactly when, for every vertex
``x`` of ``G``, the squares of ``psi`` over the clique ``C_x`` sum to zero.
Going back needs the root graph and correspondence explicitly: for a
triangle the root is ambiguous (K3 or the claw).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .calculus import DEFAULT_TOL, OneForm
from .gaussian import GaussianRational, is_zero, magnitude, normalize_mapping
from .graph import LineGraphCorrespondence


@dataclass(frozen=True)
class DualFunction:
    correspondence: LineGraphCorrespondence
    values: dict
    exact: bool

    @classmethod
    def from_mapping(cls, corr: LineGraphCorrespondence, values: Mapping,
                     exact: bool | None = None) -> "DualFunction":
        line = corr.line
        missing = [X for X in line.vertices if X not in values]
        if missing:
            raise ValueError(f"dual function undefined at {missing[:5]}")
        extra = [X for X in values if X not in line]
        if extra:
            raise ValueError(f"dual function has values off the line graph: {extra[:5]}")
        vals, flag = normalize_mapping({X: values[X] for X in line.vertices}, exact)
        return cls(corr, vals, flag)

    def __getitem__(self, X):
        return self.values[X]

    def items(self):
        return ((X, self.values[X]) for X in self.correspondence.line.vertices)

    def flipped(self, vertices: Iterable[str]) -> "DualFunction":
        """Same data read with the opposite direction on the given edges."""
        flip = set(vertices)
        vals = {X: (-w if X in flip else w) for X, w in self.items()}
        return DualFunction(self.correspondence, vals, self.exact)


def dual_function(omega: OneForm, corr: LineGraphCorrespondence) -> DualFunction:
    """``psi(X) = omega(u -> v)`` for ``X`` the line vertex of edge ``u < v``."""
    if omega.graph != corr.root:
        raise ValueError("1-form is not defined on the correspondence's root graph")
    vals = {corr.edge_to_vertex[e]: w for e, w in omega.items()}
    return DualFunction(corr, vals, omega.exact)


@dataclass(frozen=True)
class CliqueReport:
    residuals: dict
    ok: bool
    failing: tuple
    exact: bool

    def __bool__(self):
        return self.ok

    def max_abs(self) -> float:
        return max((magnitude(r) for r in self.residuals.values()), default=0.0)


def clique_residuals(psi: DualFunction) -> dict:
    zero = GaussianRational(0) if psi.exact else 0j
    corr = psi.correspondence
    return {x: sum((psi[X] ** 2 for X in corr.clique_of[x]), zero) for x in corr.root.vertices}


def verify_clique_condition(psi: DualFunction, tol: float = DEFAULT_TOL) -> CliqueReport:
    """Sum of ``psi**2`` over each clique ``C_x``; exact inputs ignore ``tol``."""
    res = clique_residuals(psi)
    t = 0.0 if psi.exact else tol
    failing = tuple(x for x, r in res.items() if not is_zero(r, t))
    return CliqueReport(res, not failing, failing, psi.exact)


class CliqueConditionError(ValueError):
    def __init__(self, report: CliqueReport):
        self.report = report
        super().__init__(f"clique condition fails at root vertices {list(report.failing)[:5]}")


def pull_back_dual(psi: DualFunction, tol: float = DEFAULT_TOL) -> OneForm:
    """Isotropic 1-form on the root with ``omega(u -> v) = psi(uv)`` for ``u < v``."""
    report = verify_clique_condition(psi, tol)
    if not report.ok:
        raise CliqueConditionError(report)
    corr = psi.correspondence
    vals = {e: psi[X] for e, X in corr.edge_to_vertex.items()}
    return OneForm(corr.root, vals, exact=psi.exact)
