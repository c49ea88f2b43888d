"""
Holomorphic functions on small graphs
=====================================

A function on the vertices of a graph is holomorphic when, at every
vertex, the squared differences to the neighbours add up to zero.  This
script checks the two built-in examples and a few axonometric
projections of hypercubes.
"""

import numpy as np

from graphtwistor import generators
from graphtwistor.calculus import differential, isotropy_residuals
from graphtwistor.holomorphy import (holomorphy_residuals, hypercube_projection,
                                     random_isotropic_tuple)

###############################################################################
# The eight-vertex example carries Gaussian-rational values, so the
# residuals are computed exactly and come out as the integer zero.

fig1 = generators.figure1()
res = holomorphy_residuals(fig1.values)
for x, r in res.items():
    print(f"{x}: value {fig1.values[x]!s:>8}  residual {r}")

###############################################################################
# The cube example uses sqrt(2), so it lives in floating point.

cube = generators.cube()
print("cube, worst residual:", holomorphy_residuals(cube.values).max_abs())

###############################################################################
# The residual of phi is the isotropy residual of d(phi), vertex by vertex.

same = isotropy_residuals(differential(fig1.values)).values == res.values
print("residual(phi) == isotropy(d phi):", same)

###############################################################################
# Any tuple (z_1, ..., z_n) with sum z_k**2 = 0 gives a holomorphic
# function on the n-cube, phi(e) = sum e_k z_k.  Random orthogonal
# projections of R^n onto C supply such tuples.

rng = np.random.default_rng(1)
for n in range(2, 7):
    z = random_isotropic_tuple(n, rng)
    phi = hypercube_projection(z)
    print(f"n={n}: {phi.graph.n:3d} vertices, worst residual "
          f"{holomorphy_residuals(phi).max_abs():.1e}")

###############################################################################
# The same with exact input: (1, i) is isotropic, and so is (3, 4, 5i).

print(holomorphy_residuals(hypercube_projection([3, 4, 5j])).all_zero())
