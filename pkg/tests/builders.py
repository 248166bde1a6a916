"""Seed builders shared by several test modules."""
from __future__ import annotations

from fractions import Fraction

from qgt.relations import indecomposable_components
from qgt.tableaux import Entry, Tableau, positions


def component_offset_seed(base: Tableau, C, step: int = 7) -> Tableau:
    """Shift ``base`` so that only entries sharing a component of ``C`` differ by integers.

    Each component gets its own offset ``c/step``; positions outside every
    component get a fresh offset each.  Relations inside a component survive,
    integral differences across components disappear.
    """
    offset = {}
    comps = indecomposable_components(C)
    for c, comp in enumerate(comps):
        for p in comp:
            offset[p] = Fraction(c, step)
    fresh = len(comps)
    for p in positions(base.n):
        if p not in offset:
            offset[p] = Fraction(fresh, step)
            fresh += 1
    if fresh > step:
        raise ValueError("too many components for step %d" % step)
    rows = [[Entry(base[k, j].r + offset[(k, j)]) for j in range(1, k + 1)]
            for k in range(base.n, 0, -1)]
    return Tableau(rows)


def generic_seed(n: int, values=None) -> Tableau:
    """Every entry in its own generic block; ``values`` gives rational parts."""
    rows = []
    for k in range(n, 0, -1):
        rows.append([Entry(Fraction(values[(k, j)]) if values else Fraction(0), 0, "x%d%d" % (k, j))
                     for j in range(1, k + 1)])
    return Tableau(rows)


# a standard gl_3 tableau with every betweenness inequality strict
BASE3 = Tableau.parse("T(2,-1,-3;1,-2;0)")
