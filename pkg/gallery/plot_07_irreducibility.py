"""
Irreducibility from the maximal set
===================================

A module is irreducible when its relation set already implies every
relation the seed satisfies.  Dropping one relation from the maximal set
loses that.
"""

from qgt import ModuleSpec, RelationSet, Relation, Tableau, is_irreducible, maximal_set

seed = Tableau.parse("T(0,-2;0)")
M = maximal_set(seed)
print([str(r) for r in M])
print("maximal:", bool(is_irreducible(ModuleSpec(M, seed))))

weaker = ModuleSpec(RelationSet([Relation.parse("(2,1)>=(1,1)")], 2), seed, unchecked=True)
res = is_irreducible(weaker)
print("one relation:", bool(res), res.to_json())
