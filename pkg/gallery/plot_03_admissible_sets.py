"""
Which relation sets are admissible?
===================================

Admissibility is a combinatorial test on a set of relations between
tableau positions.  It fails for sets that contain a cross inside one
component or that miss a required link between neighbouring rows.
"""

from qgt import RelationSet, Relation, is_admissible, standard_set

def rels(n, *texts):
    return RelationSet([Relation.parse(t) for t in texts], n)

for n in range(2, 6):
    print(n, bool(is_admissible(RelationSet([], n))), bool(is_admissible(standard_set(n))))

# A set whose relations force the two sides of a cross into one component.
cross = rels(3, "(3,1)>=(2,2)", "(2,1)>(3,2)", "(3,1)>=(2,1)")
report = is_admissible(cross)
print(report.admissible, "condition", report.condition, "witness", report.witness)

# The same cross split into two unlinked components is fine.
split = rels(3, "(3,1)>=(2,2)", "(2,1)>(3,2)")
print("split cross:", bool(is_admissible(split)))

# A weak and a strict relation going opposite ways is an order violation.
order = rels(2, "(2,2)>=(1,1)", "(1,1)>(2,1)")
print(is_admissible(order).condition)

# Count admissible subsets of the gl_3 standard set.
from itertools import combinations

S = sorted(standard_set(3))
count = sum(bool(is_admissible(RelationSet(list(c), 3)))
            for r in range(len(S) + 1) for c in combinations(S, r))
print(count, "of", 2 ** len(S), "subsets are admissible")
