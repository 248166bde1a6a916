"""
The two-dimensional module of U_q(gl_2)
=======================================

A first look at a Gelfand-Tsetlin module: the tableaux, the action of the
generators and the matrices they produce.
"""

# The standard relation set of gl_2 says that the single bottom entry sits
# between the two top entries.  ``standard_module`` builds the module with
# highest weight lambda from that set.
from qgt import standard_module, character

spec = standard_module((1, 0))
print(spec)

# Top rows are shifted by -j, so lambda = (1, 0) becomes (0, -2).
basis = spec.enumerate_basis(3)
print([t.label() for t in basis], "complete:", basis.complete)

# e_1 raises the bottom entry, f_1 lowers it.  Coefficients are exact
# rational functions of q.
low = basis[1]
print("e1 ->", spec.act("e1", low).to_json())
print("f1 ->", spec.act("f1", basis[0]).to_json())
print("qeps1 ->", spec.act("qeps1", basis[0]).to_json())

# Each basis vector is an eigenvector of the Gelfand-Tsetlin subalgebra.
# The eigenvalues gamma_mk tell the tableaux apart.
for t in basis:
    print(t.label(), {"%d%d" % k: str(v) for k, v in character(t).items()})

# Matrices come out sparse and exact; scipy takes over once q is a number.
for g in spec.generators():
    print(g)
    print(spec.matrix(g, basis).to_scipy(q0=2.0).toarray().real)
