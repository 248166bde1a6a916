"""
Adjoint representation of U_q(gl_3)
====================================

Build the eight-dimensional module with highest weight (2, 1, 0), turn the
generators into matrices at q = 1.7 and check a commutator with numpy.
"""

import numpy as np

from qgt import standard_module, weyl_dimension

spec = standard_module((2, 1, 0))
basis = spec.enumerate_basis(4)
print(len(basis), "tableaux, Weyl dimension", weyl_dimension((2, 1, 0)))

q0 = 1.7
M = {g: spec.matrix(g, basis).to_scipy(q0=q0).toarray() for g in spec.generators()}

# [e_1, f_1] should equal (K_1 K_2^{-1} - K_2 K_1^{-1}) / (q - q^{-1})
K1, K2 = M["qeps1"], M["qeps2"]
H = (K1 @ np.linalg.inv(K2) - K2 @ np.linalg.inv(K1)) / (q0 - 1 / q0)
lhs = M["e1"] @ M["f1"] - M["f1"] @ M["e1"]
print("commutator error:", np.abs(lhs - H).max())

# Serre relation between e_1 and e_2
e1, e2 = M["e1"], M["e2"]
serre = e1 @ e1 @ e2 - (q0 + 1 / q0) * e1 @ e2 @ e1 + e2 @ e1 @ e1
print("Serre error:", np.abs(serre).max())

# The weights of the basis, read off the diagonal of the qeps matrices.
logs = np.round(np.log(np.abs(np.diag(M["qeps1"]))) / np.log(q0)).astype(int)
print("weights in direction eps_1:", logs)
