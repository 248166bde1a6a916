import itertools
import warnings

import pytest

from builders import BASE3, component_offset_seed, generic_seed
from qgt.gtmodule import ModuleSpec
from qgt.relations import (NotAdmissibleWarning, RelationInputError, RelationSet, closure,
                           has_cross, implication_gap, implies, indecomposable_components,
                           is_admissible, maximal_set, rr_applicable, rr_remove, standard_set)
from qgt.tableaux import Relation, Tableau, iter_repertoire, satisfies_set
from qgt.verify import check_defining_relations


def R(n, *texts):
    return RelationSet([Relation.parse(t) for t in texts], n)


CROSS_CONNECTED = ("(3,1)>=(2,2)", "(2,1)>(3,2)", "(3,1)>=(2,1)")


def test_relation_set_validates_repertoire():
    with pytest.raises(RelationInputError):
        R(2, "(1,1)>=(2,1)")
    with pytest.raises(RelationInputError):
        R(2, "(3,1)>=(2,1)")


def test_json_roundtrip():
    for C in (standard_set(3), R(3), R(3, *CROSS_CONNECTED)):
        assert RelationSet.from_json(C.to_json()) == C


def test_components_examples():
    assert len(indecomposable_components(R(3, "(2,1)>=(1,1)", "(3,1)>=(2,2)"))) == 2
    comps = indecomposable_components(standard_set(3))
    assert len(comps) == 1 and len(comps[0]) == 6
    assert indecomposable_components(R(3)) == ()


def test_closure_examples():
    cl = closure(standard_set(2))
    assert cl.gt((2, 1), (2, 2))
    assert closure(R(2)).weak == frozenset() and closure(R(2)).strict == frozenset()
    cl = closure(R(2, "(2,1)>=(1,1)"))
    assert cl.geq((2, 1), (1, 1)) and not cl.gt((2, 1), (1, 1))


def test_implies_examples():
    assert implies(standard_set(2), R(2, "(2,1)>=(2,2)"))
    assert implies(R(2), R(2))
    assert not implies(standard_set(2), R(2, "(1,1)>(2,1)"))
    weak, strict = implication_gap(R(2, "(2,1)>=(1,1)"), maximal_set(Tableau.parse("T(0,-2;0)")))
    assert strict and ((1, 1), (2, 2)) in strict


def test_closure_is_monotone():
    rep = list(iter_repertoire(3))
    import random
    rng = random.Random(3)
    for _ in range(50):
        a = set(rng.sample(rep, 5))
        b = a | set(rng.sample(rep, 3))
        ca, cb = closure(RelationSet(a, 3)), closure(RelationSet(b, 3))
        assert ca.weak <= cb.weak and ca.strict <= cb.strict


def test_cross_detection():
    assert has_cross(R(3, *CROSS_CONNECTED))
    assert not has_cross(standard_set(4))
    assert not has_cross(R(3))
    # the two relations alone lie in different components, so they do not form a cross
    assert not has_cross(R(3, "(3,1)>=(2,2)", "(2,1)>(3,2)"))


def test_admissible_examples():
    assert is_admissible(R(3))
    for n in range(2, 7):
        assert is_admissible(standard_set(n))
    bad = is_admissible(R(2, "(2,2)>=(1,1)", "(1,1)>(2,1)"))
    assert not bad and bad.condition == "i"
    bad = is_admissible(R(3, *CROSS_CONNECTED))
    assert not bad and bad.condition == "iii"
    bad = is_admissible(R(2, "(2,2)>=(2,1)"))
    assert not bad and bad.condition == "ii"


def test_disconnected_pair_is_realizable():
    C = R(3, "(3,1)>=(2,2)", "(2,1)>(3,2)")
    assert is_admissible(C)
    seed = component_offset_seed(BASE3, C)
    assert check_defining_relations(ModuleSpec(C, seed), 2).ok


def test_standard_set_examples():
    assert standard_set(2) == R(2, "(2,1)>=(1,1)", "(1,1)>(2,2)")
    assert len(standard_set(3)) == 6


def test_maximal_set_examples():
    M = maximal_set(Tableau.parse("T(0,-2;0)"))
    assert M == R(2, "(2,1)>=(1,1)", "(1,1)>(2,2)", "(2,1)>=(2,2)")
    assert maximal_set(Tableau.parse("T(0,-2;-1)")) == M
    assert len(maximal_set(generic_seed(3))) == 0


def test_maximal_set_is_satisfied_and_implies_all_satisfied():
    t = Tableau.parse("T(2,0,-3;1,-1;0)")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotAdmissibleWarning)
        M = maximal_set(t)
    assert satisfies_set(t, M)
    for r in iter_repertoire(3):
        if satisfies_set(t, RelationSet([r], 3)) or r in M:
            assert implies(M, RelationSet([r], 3))


def test_rr_remove_examples():
    S3 = standard_set(3)
    assert rr_remove(S3, (1, 1)) == S3 - R(3, "(2,1)>=(1,1)", "(1,1)>(2,2)")
    with pytest.warns(UserWarning):
        assert rr_remove(R(2, "(2,1)>=(1,1)"), (2, 2)) == R(2, "(2,1)>=(1,1)")
    C = S3
    for v in [(1, 1), (2, 1), (2, 2), (3, 1), (3, 2), (3, 3)]:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            C = rr_remove(C, v)
    assert len(C) == 0


def test_rr_applicable_examples():
    half_open = Tableau.parse("T(-2/3,-2;-2/3)")
    assert rr_applicable(R(2, "(2,1)>=(1,1)"), half_open, (1, 1)) == "yes"
    assert rr_applicable(standard_set(2), Tableau.parse("T(0,-2;0)"), (1, 1)) == "no"
    # the integral seed is not a realization of the single relation
    assert rr_applicable(R(2, "(2,1)>=(1,1)"), Tableau.parse("T(0,-2;0)"), (1, 1)) == "unknown"
    with pytest.raises(ValueError):
        rr_applicable(R(2), half_open, (1, 1))
    with pytest.raises(ValueError):
        rr_applicable(standard_set(2), Tableau.parse("T(0,-2;0)"), (2, 1))


def test_admissibility_matches_realizability_on_subsets_of_S3():
    """Every subset of S(3): admissible iff all relations hold on a radius-2 window."""
    S = list(standard_set(3))
    mismatches = []
    for r in range(len(S) + 1):
        for sub in itertools.combinations(S, r):
            C = RelationSet(sub, 3)
            seed = component_offset_seed(BASE3, C)
            assert satisfies_set(seed, C)
            works = check_defining_relations(ModuleSpec(C, seed, unchecked=True), 2).ok
            if works != bool(is_admissible(C)):
                mismatches.append([str(x) for x in sub])
    assert mismatches == []


def test_maximal_set_warns_when_not_admissible():
    # a standard tableau whose satisfied relations contain a connected cross
    t = Tableau.parse("T(2,0,-3;1,-1;0)")
    with pytest.warns(NotAdmissibleWarning):
        M = maximal_set(t)
    assert is_admissible(M).condition == "iii"
    # the standard set still implies it, which is all irreducibility needs
    assert implies(standard_set(3), M)
