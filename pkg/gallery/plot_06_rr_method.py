"""
Removing relations one vertex at a time
=======================================

Starting from the standard gl_3 set, drop every relation touching one
position.  Some of the results stay admissible and still give modules;
the others break the algebra relations when forced.
"""

import warnings
from fractions import Fraction

import numpy as np

from qgt import (Entry, ModuleSpec, Tableau, check_defining_relations, is_admissible, rr_remove,
                 standard_set)
from qgt.relations import indecomposable_components
from qgt.tableaux import positions

S = standard_set(3)
base = Tableau.parse("T(2,-1,-3;1,-2;0)")

def offset_seed(C, step=7):
    # give each component its own non-integral offset
    shift = {}
    comps = indecomposable_components(C)
    for c, comp in enumerate(comps):
        shift.update({p: Fraction(c, step) for p in comp})
    free = iter(range(len(comps), step))
    for p in positions(3):
        shift.setdefault(p, Fraction(next(free), step))
    return Tableau([[Entry(base[k, j].r + shift[(k, j)]) for j in range(1, k + 1)]
                    for k in range(3, 0, -1)])

for v in positions(3):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        C = rr_remove(S, v)
    ok = bool(is_admissible(C))
    spec = ModuleSpec(C, offset_seed(C), unchecked=not ok)
    print(v, len(C), "admissible" if ok else "not admissible",
          "relations hold" if check_defining_relations(spec, 2).ok else "relations fail")

# Two removals empty the set completely.
print(len(rr_remove(rr_remove(S, (2, 1)), (2, 2))))

# A scipy check on one admissible reduction: [e_2, f_2] against the Cartan part.
C = rr_remove(S, (2, 1))
spec = ModuleSpec(C, offset_seed(C))
b = spec.enumerate_basis(2)
q0 = 1.9
with warnings.catch_warnings():
    # e_2 and f_2 leave the window at its edge; those rows are dropped below
    warnings.simplefilter("ignore", UserWarning)
    E, F, K2, K3 = (spec.matrix(g, b).to_scipy(q0=q0).toarray()
                    for g in ("e2", "f2", "qeps2", "qeps3"))
H = (K2 @ np.linalg.inv(K3) - K3 @ np.linalg.inv(K2)) / (q0 - 1 / q0)
inner = [i for i, t in enumerate(b)
         if all(u in b.index() for g in ("e2", "f2") for u in spec.act(g, t).terms)]
print("interior commutator error:", np.abs((E @ F - F @ E - H)[np.ix_(inner, inner)]).max())
