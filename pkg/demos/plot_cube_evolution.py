"""
Direction fields and one evolution step on the cube
===================================================

On a 3-edge-coloured cubic graph the differential of a function gives a
triple xi(x) per vertex, one entry per colour.  When the function is
holomorphic xi is null, factors through a spinor mu, and defines a unit
vector U(x).  The evolution equation then asks for a new function whose
pairing with eps*U equals the Laplacian of the old one.
"""

import numpy as np

from graphtwistor import generators
from graphtwistor.calculus import differential, laplacian
from graphtwistor.holomorphy import holomorphy_residuals
from graphtwistor.spinor import (TABLE_ROWS, direction_field, match_table, sign_search,
                                 spinor_field, xi_field)

data = generators.cube_table()
xis = xi_field(differential(data.values), data.coloring)
mus = spinor_field(xis)
U = direction_field(xis)

###############################################################################
# Per-vertex data.

np.set_printoptions(precision=4, suppress=True)
for x in data.graph.vertices:
    print(x, np.array(xis[x]), np.array(mus[x]), U[x])

###############################################################################
# Sign choices: with 8 vertices there are 2**7 choices up to a global sign.
# Each one gives a linear system; we keep those that are solvable.

found = sign_search(data.values, U, data.coloring)
print(f"{found.consistent_count} of {found.evaluated} sign choices are consistent")
print("chosen:", found.eps)
nxt = found.result
print("rank", nxt.rank, "kernel", nxt.kernel_dim,
      "holomorphic residual", f"{holomorphy_residuals(nxt.values).max_abs():.1e}")

###############################################################################
# Compare with the reference table.  Rows are matched to vertices by
# their xi triples; the Laplacian and the next function agree, the
# signed directions only in part.

match = match_table(xis, data.coloring)[0]
lap = laplacian(data.values)
shift = nxt.values[match.rows[1]] - TABLE_ROWS[0][4]
for r, row in enumerate(TABLE_ROWS, 1):
    x = match.rows[r]
    print(f"row {r} -> {x}: dLap {abs(lap[x] - row[3]):.0e}  "
          f"dphi {abs(nxt.values[x] - shift - row[4]):.0e}  "
          f"eps*U {found.eps[x] * U[x]}  table U {row[1]}")
