"""
Searching for holomorphic functions and isotropic forms
=======================================================

The vertex equations are quadratic, so solutions are found numerically:
seeded random starts, a damped Gauss-Newton iteration, and deduplication
up to affine maps.  Each restart draws from its own Philox stream, so a
run is reproducible from the seed alone.
"""

import numpy as np

from graphtwistor import generators
from graphtwistor.graph import automorphisms
from graphtwistor.solver import (SolveConfig, affine_distance, solve_holomorphic,
                                 solve_isotropic)

###############################################################################
# The 4-cycle.  After pinning phi(x0) = 0, phi(x1) = 1 every solution is
# a relabelling of the square 0, 1, 1+i, i.

c4 = generators.cycle(4)
rep = solve_holomorphic(c4, SolveConfig(seed=0))
print(rep.message, f"in {rep.wall_clock:.2f} s")
for s in rep.solutions:
    print({x: complex(np.round(v, 12)) for x, v in s.value.items()})

###############################################################################
# The cube has a continuous family of solutions modulo affine maps,
# namely the projections sum e_k z_k with sum z_k**2 = 0.  The search
# samples that family, so the built-in example is generally not among the
# representatives it returns.

cube = generators.cube()
rep = solve_holomorphic(cube.graph)
auts = automorphisms(cube.graph)
best = min(affine_distance(np.array([s.value[a[x]] for x in cube.graph.vertices]),
                           cube.values.to_array())
           for s in rep.solutions for a in auts)
print(f"cube: {len(rep.solutions)} classes, distance to the built-in example {best:.3f}")

###############################################################################
# On the dodecahedron no restart converges.  That says nothing about
# existence; isotropic 1-forms, which need not be exact, do turn up.

dodec = generators.dodecahedron()
holo = solve_holomorphic(dodec)
iso = solve_isotropic(dodec)
print("holomorphic:", holo.message, "| statuses:", sorted(set(holo.statuses)))
print("isotropic:", iso.message, "| residual", iso.solutions[0].residual)
