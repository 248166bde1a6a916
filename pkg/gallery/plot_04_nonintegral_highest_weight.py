"""
An infinite-dimensional highest weight module
=============================================

With a non-integral top row the maximal relation set of the seed is a
single relation, and the module it generates never closes.
"""

from fractions import Fraction

from qgt import (ModuleSpec, Tableau, check_defining_relations, check_gamma_separation,
                 is_highest_weight_vector, is_irreducible, maximal_set)

seed = Tableau([[Fraction(-2, 3), -2], [Fraction(-2, 3)]])
C = maximal_set(seed)
print("relations:", [str(r) for r in C])
spec = ModuleSpec(C, seed)
print("highest weight vector:", is_highest_weight_vector(spec, seed))

for radius in (2, 4, 6):
    b = spec.enumerate_basis(radius)
    print(radius, len(b), "complete" if b.complete else "still growing")

print(check_defining_relations(spec, 6).to_text())
print("gamma separated:", check_gamma_separation(spec, 6).ok)
print("irreducible:", bool(is_irreducible(spec)))
