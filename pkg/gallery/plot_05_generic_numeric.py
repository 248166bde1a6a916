"""
Generic modules, checked numerically
====================================

With no relations and generic entries every tableau in the lattice belongs
to the module.  Entries carry symbolic offsets, so the checks run in numeric
mode: each offset and q are sampled, and the relations are tested per sample.
"""

from fractions import Fraction

from qgt import ModuleSpec, RelationSet, Tableau, Entry, check_defining_relations

def generic_seed(n):
    return Tableau([[Entry(Fraction(0), 0, "x%d%d" % (k, j)) for j in range(1, k + 1)]
                    for k in range(n, 0, -1)])

for n in (2, 3):
    spec = ModuleSpec(RelationSet([], n), generic_seed(n), mode="numeric")
    rep = check_defining_relations(spec, 2)
    print("gl_%d" % n, rep.summary(), "max residual %.2e" % rep.max_residual)

# Samples are reproducible: the default rng seed is 42.
print(spec.field.q_values)
