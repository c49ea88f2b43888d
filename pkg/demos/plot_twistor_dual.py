"""
Line graphs and dual functions
==============================

Edges of G are vertices of its line graph L(G).  A 1-form on G read off
edge by edge is a function psi on L(G), and the form is isotropic
exactly when the squares of psi sum to zero over every clique C_x of
edges meeting at x.
"""

from graphtwistor import generators
from graphtwistor.calculus import differential, integrate
from graphtwistor.dual import dual_function, pull_back_dual, verify_clique_condition
from graphtwistor.graph import is_isomorphic, line_graph, recognize_line_graph

fig1 = generators.figure1()
line, corr = line_graph(fig1.graph)
print(f"L(G): {line.n} vertices, {line.m} edges")
for x in fig1.graph.vertices:
    print(x, "->", corr.clique_of[x])

###############################################################################
# The dual of d(phi) satisfies the clique condition exactly.

psi = dual_function(differential(fig1.values), corr)
print(verify_clique_condition(psi).residuals)

###############################################################################
# Going back: recover the 1-form, then integrate it to the original values.

omega = pull_back_dual(psi)
phi = integrate(omega, "a", fig1.values["a"])
print("recovered:", phi.values == fig1.values.values)

###############################################################################
# The root graph can also be recovered from L(G) alone, up to isomorphism.
# The triangle is the exception: it is the line graph of itself and of
# the claw, and the recognizer answers with the triangle.

root, _ = recognize_line_graph(line)
print("root isomorphic to G:", is_isomorphic(root, fig1.graph))
print("claw is a line graph:", recognize_line_graph(generators.claw()) is not None)
