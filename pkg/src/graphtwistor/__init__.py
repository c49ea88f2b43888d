"""Discrete twistor theory on finite graphs.

Holomorphic functions and isotropic 1-forms on graphs, the discrete
calculus around them, spinor and direction fields on edge-coloured cubic
graphs, and the line graph as a twistor dual.
"""

from .calculus import (CycleConditionError, OneForm, VertexFunction, coderivative, differential,
                       integrate, is_isotropic, isotropy_residuals, laplacian)
from .dual import DualFunction, dual_function, pull_back_dual, verify_clique_condition
from .gaussian import GaussianRational
from .generators import GraphData, generate
from .graph import (EdgeColoring, Graph, build_graph, cycle_basis, line_graph,
                    proper_edge_coloring, recognize_line_graph)
from .holomorphy import (GraphMap, holomorphy_residuals, hypercube_projection, is_holomorphic,
                         lattice_extend, map_dilation, pullback, simplex_projection_residual)
from .solver import SolveConfig, SolveReport, solve_holomorphic, solve_isotropic
from .spinor import (direction_field, directional_pairing, evolve_step, sign_search,
                     spinor_from_xi, u_field, xi_field)

__version__ = "0.1.0"

__all__ = [
    "CycleConditionError", "DualFunction", "EdgeColoring", "GaussianRational", "Graph",
    "GraphData", "GraphMap", "OneForm", "SolveConfig", "SolveReport", "VertexFunction",
    "build_graph", "coderivative", "cycle_basis", "differential", "direction_field",
    "directional_pairing", "dual_function", "evolve_step", "generate", "holomorphy_residuals",
    "hypercube_projection", "integrate", "is_holomorphic", "is_isotropic", "isotropy_residuals",
    "lattice_extend", "laplacian", "line_graph", "map_dilation", "proper_edge_coloring",
    "pull_back_dual", "pullback", "recognize_line_graph", "sign_search", "simplex_projection_residual",
    "solve_holomorphic", "solve_isotropic", "spinor_from_xi", "u_field", "verify_clique_condition",
    "xi_field",
]
