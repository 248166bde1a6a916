"""Combinatorics of relation sets between tableau positions."""
from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

import networkx as nx

from .tableaux import (Position, Relation, Tableau, delta, iter_repertoire,
                       satisfies_relation, satisfies_set, shift)

__all__ = [
    "RelationSet",
    "ClosureRelation",
    "AdmissibilityReport",
    "RelationInputError",
    "NotAdmissibleWarning",
    "indecomposable_components",
    "closure",
    "implies",
    "has_cross",
    "is_admissible",
    "standard_set",
    "maximal_set",
    "rr_remove",
    "rr_applicable",
]


class RelationInputError(ValueError):
    """A relation outside the repertoire for the given height."""


class NotAdmissibleWarning(UserWarning):
    pass


class RelationSet:
    """Finite set of repertoire relations for tableaux of height ``n``.

    Iteration is in sorted order; instances are immutable and hashable.
    """

    __slots__ = ("n", "relations", "_hash")

    def __init__(self, relations: Iterable[Relation] = (), n: int = 2):
        rels = frozenset(r if isinstance(r, Relation) else Relation.parse(r)
                         for r in relations)
        bad = sorted(r for r in rels if not r.in_repertoire(n))
        if bad:
            raise RelationInputError(
                "relations not allowed for height %d: %s" % (n, ", ".join(map(str, bad))))
        self.n = n
        self.relations = rels
        self._hash = None

    def __iter__(self):
        return iter(sorted(self.relations))

    def __len__(self):
        return len(self.relations)

    def __contains__(self, rel):
        return rel in self.relations

    def __eq__(self, other):
        return (isinstance(other, RelationSet) and self.n == other.n
                and self.relations == other.relations)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.relations))
        return self._hash

    def __repr__(self):
        return "RelationSet(n=%d, {%s})" % (self.n, ", ".join(map(str, self)))

    def __or__(self, other):
        return RelationSet(self.relations | set(other), self.n)

    def __sub__(self, other):
        return RelationSet(self.relations - set(other), self.n)

    @property
    def vertices(self) -> frozenset[Position]:
        """Positions appearing as an endpoint of some relation."""
        return frozenset(p for r in self.relations for p in r.endpoints())

    def to_json(self) -> dict:
        return {"n": self.n, "relations": [r.to_json() for r in self]}

    @classmethod
    def from_json(cls, obj) -> "RelationSet":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls((Relation.from_json(r) for r in obj["relations"]), int(obj["n"]))


# ---------------------------------------------------------------------------
# Decomposition and closure
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def indecomposable_components(C: RelationSet) -> tuple[tuple[Position, ...], ...]:
    """Partition of the vertex set into connected pieces, each sorted.

    Components are ordered by their smallest position.
    """
    g = nx.Graph()
    g.add_edges_from(r.endpoints() for r in C.relations)
    comps = [tuple(sorted(c)) for c in nx.connected_components(g)]
    return tuple(sorted(comps))


@lru_cache(maxsize=4096)
def component_index(C: RelationSet) -> dict[Position, int]:
    return {p: i for i, comp in enumerate(indecomposable_components(C)) for p in comp}


def component_relations(C: RelationSet) -> list[RelationSet]:
    """The indecomposable subsets of ``C``, aligned with the component order."""
    idx = component_index(C)
    buckets: list[list[Relation]] = [[] for _ in indecomposable_components(C)]
    for r in C.relations:
        buckets[idx[r.left]].append(r)
    return [RelationSet(b, C.n) for b in buckets]


@dataclass(frozen=True)
class ClosureRelation:
    """Chain reachability: ``weak`` holds pairs ``a ⪰ b``, ``strict`` pairs ``a ≻ b``."""

    weak: frozenset[tuple[Position, Position]]
    strict: frozenset[tuple[Position, Position]]

    def geq(self, a: Position, b: Position) -> bool:
        return (a, b) in self.weak

    def gt(self, a: Position, b: Position) -> bool:
        return (a, b) in self.strict


@lru_cache(maxsize=4096)
def closure(C: RelationSet) -> ClosureRelation:
    """Weak and strict chain closure of ``C``.

    A strict relation also counts as a weak link; a pair is strict when some
    chain between its ends uses at least one strict relation.
    """
    # states (v, s): s = 1 once a strict link has been used
    g = nx.DiGraph()
    for r in C.relations:
        a, b = r.left, r.right
        if r.strict:
            g.add_edge((a, 0), (b, 1))
        else:
            g.add_edge((a, 0), (b, 0))
        g.add_edge((a, 1), (b, 1))
    weak, strict = set(), set()
    for v in C.vertices:
        if (v, 0) not in g:
            continue
        for w, s in nx.descendants(g, (v, 0)):
            weak.add((v, w))
            if s:
                strict.add((v, w))
    return ClosureRelation(frozenset(weak), frozenset(strict))


def implies(C: RelationSet, Cp: RelationSet) -> bool:
    """Whether every chain inequality of ``Cp`` is also one of ``C``."""
    a, b = closure(C), closure(Cp)
    return b.weak <= a.weak and b.strict <= a.strict


def implication_gap(C: RelationSet, Cp: RelationSet) -> tuple[list, list]:
    """Weak and strict closure pairs of ``Cp`` missing from the closure of ``C``."""
    a, b = closure(C), closure(Cp)
    return sorted(b.weak - a.weak), sorted(b.strict - a.strict)


def _find_cross(rels: Iterable[Relation]):
    rels = list(rels)
    downs = [r for r in rels if not r.strict and r.left[0] == r.right[0] + 1]
    ups = [r for r in rels if r.strict]
    for w in downs:
        (k, i), (_, t) = w.left, w.right
        for s_rel in ups:
            (km1, s), (k2, j) = s_rel.left, s_rel.right
            if km1 == k - 1 and k2 == k and i < j and s < t:
                return w, s_rel
    return None


def has_cross(C: RelationSet) -> bool:
    """Whether some indecomposable component contains a cross.

    A cross is ``{(k,i) >= (k-1,t), (k-1,s) > (k,j)}`` with ``i < j`` and
    ``s < t``.
    """
    return any(_find_cross(part) for part in component_relations(C))


# ---------------------------------------------------------------------------
# Admissibility
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    """Verdict of :func:`is_admissible`; ``condition`` names the first failure."""

    admissible: bool
    condition: str | None = None
    witness: str | None = None
    component: tuple[Position, ...] | None = None

    def __bool__(self):
        return self.admissible

    def to_json(self) -> dict:
        return {"admissible": self.admissible, "condition": self.condition,
                "witness": self.witness,
                "component": [list(p) for p in self.component] if self.component else None}

    def __str__(self):
        if self.admissible:
            return "admissible"
        return "not admissible: condition (%s) fails: %s" % (self.condition, self.witness)


def _row_separated(part: RelationSet, k: int, i: int, j: int) -> bool:
    # Condition (iv) for the ordered pair (k,i), (k,j), i < j.
    rels = part.relations
    n = part.n
    above = range(1, k + 2) if k + 1 <= n else range(0)
    below = range(1, k) if k >= 2 else range(0)
    # first disjunct: chains through row k+1 and row k-1
    through_above = [s for s in above
                     if Relation((k, i), True, (k + 1, s)) in rels
                     and Relation((k + 1, s), False, (k, j)) in rels]
    through_below = [t for t in below
                     if Relation((k, i), False, (k - 1, t)) in rels
                     and Relation((k - 1, t), True, (k, j)) in rels]
    if through_above and through_below:
        return True
    # second disjunct: (k,i) > (k+1,s) and (k+1,t) >= (k,j) with s < t, which
    # forces l_ki - l_kj >= 2 so the missing row k-1 chain is never needed
    ss = [s for s in above if Relation((k, i), True, (k + 1, s)) in rels]
    ts = [t for t in above if Relation((k + 1, t), False, (k, j)) in rels]
    return bool(ss and ts and min(ss) < max(ts))


def _check_component(part: RelationSet, comp: tuple[Position, ...]) -> AdmissibilityReport | None:
    n = part.n
    cl = closure(part)
    for a, b in sorted(cl.strict):
        if a[0] == b[0] and not a[1] < b[1]:
            return AdmissibilityReport(False, "i", "%s ≻ %s" % (a, b), comp)
    for a, b in sorted(cl.weak):
        if a[0] == b[0] == n and not a[1] < b[1]:
            return AdmissibilityReport(False, "ii", "%s ⪰ %s" % (a, b), comp)
    cross = _find_cross(part)
    if cross:
        return AdmissibilityReport(False, "iii", "cross {%s, %s}" % cross, comp)
    rows: dict[int, list[int]] = {}
    for k, i in comp:
        rows.setdefault(k, []).append(i)
    for k in sorted(rows):
        if k >= n:
            continue
        idx = sorted(rows[k])
        for a in range(len(idx)):
            for b in range(a + 1, len(idx)):
                if not _row_separated(part, k, idx[a], idx[b]):
                    return AdmissibilityReport(
                        False, "iv", "no separating relations for (%d,%d), (%d,%d)"
                        % (k, idx[a], k, idx[b]), comp)
    return None


@lru_cache(maxsize=4096)
def is_admissible(C: RelationSet) -> AdmissibilityReport:
    """Check order, top-row order, no-cross and row-separation per component.

    Row separation for ``(k,i), (k,j)`` with ``i < j`` in one component is met
    by ``(k,i) > (k+1,s) >= (k,j)`` together with ``(k,i) >= (k-1,t) > (k,j)``,
    or by ``(k,i) > (k+1,s)`` and ``(k+1,t) >= (k,j)`` with ``s < t``.
    """
    if not isinstance(C, RelationSet):
        raise RelationInputError("expected a RelationSet")
    for part, comp in zip(component_relations(C), indecomposable_components(C)):
        bad = _check_component(part, comp)
        if bad is not None:
            return bad
    return AdmissibilityReport(True)


def standard_set(n: int) -> RelationSet:
    """``{(i+1,j) >= (i,j) > (i+1,j+1) : 1 <= j <= i <= n-1}``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    rels = []
    for i in range(1, n):
        for j in range(1, i + 1):
            rels.append(Relation((i + 1, j), False, (i, j)))
            rels.append(Relation((i, j), True, (i + 1, j + 1)))
    return RelationSet(rels, n)


def maximal_set(t: Tableau) -> RelationSet:
    """All repertoire relations satisfied by ``t``.

    Emits :class:`NotAdmissibleWarning` when the result is not admissible.
    """
    C = RelationSet((r for r in iter_repertoire(t.n) if satisfies_relation(t, r)), t.n)
    report = is_admissible(C)
    if not report:
        warnings.warn("maximal set of %s is not admissible: %s" % (t.label(), report),
                      NotAdmissibleWarning, stacklevel=2)
    return C


# ---------------------------------------------------------------------------
# Relation removal
# ---------------------------------------------------------------------------

def rr_remove(C: RelationSet, v: Position) -> RelationSet:
    """Drop every relation with ``v`` as an endpoint."""
    v = tuple(v)
    if v not in C.vertices:
        warnings.warn("%s is not a vertex of the relation set; nothing removed" % (v,),
                      stacklevel=2)
        return C
    return RelationSet((r for r in C.relations if v not in r.endpoints()), C.n)


def rr_applicable(C: RelationSet, t: Tableau, v: Position, m_range: int = 10) -> str:
    """Heuristic test that ``t + m*delta^v`` realizes ``C`` for infinitely many m.

    Returns ``"yes"`` when the realizing shifts run contiguously from 0 to an
    end of ``[-m_range, m_range]``, ``"no"`` when they stay strictly inside
    it, and ``"unknown"`` otherwise.
    """
    v = tuple(v)
    if v not in C.vertices:
        raise ValueError("%s is not a vertex of the relation set" % (v,))
    if v[0] >= t.n:
        raise ValueError("top-row position %s cannot be shifted" % (v,))
    hits = [m for m in range(-m_range, m_range + 1)
            if satisfies_set(shift(t, delta(*v, m)), C)]
    if not hits or 0 not in hits:
        return "unknown"
    if hits != list(range(hits[0], hits[-1] + 1)):
        return "unknown"
    if hits[0] == -m_range or hits[-1] == m_range:
        return "yes"
    return "no"
