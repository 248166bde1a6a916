"""Gelfand-Tsetlin tableaux, relations between positions, and satisfaction."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .qcoeff import ExtendedExponent, root_degree_of

__all__ = [
    "Entry",
    "Tableau",
    "Relation",
    "positions",
    "delta",
    "shift",
    "satisfies_relation",
    "satisfies_set",
    "is_standard",
    "integrally_comparable",
]

Position = tuple[int, int]


@dataclass(frozen=True, slots=True)
class Entry:
    """Tableau entry ``r + h*w/2`` plus an optional generic offset ``block``."""

    r: Fraction
    h: int = 0
    block: str | None = None

    def __post_init__(self):
        if not isinstance(self.r, Fraction):
            if isinstance(self.r, float):
                raise TypeError("entry rational part must be exact, got %r" % self.r)
            object.__setattr__(self, "r", Fraction(self.r))

    @property
    def exponent(self) -> ExtendedExponent:
        return ExtendedExponent(self.r, self.h, ((self.block, 1),) if self.block else ())

    def __sub__(self, other: "Entry") -> ExtendedExponent:
        blocks: tuple = ()
        if self.block != other.block:
            blocks = tuple(sorted(
                [(b, c) for b, c in ((self.block, 1), (other.block, -1)) if b]))
        return ExtendedExponent(self.r - other.r, self.h - other.h, blocks)

    def shifted(self, m: int) -> "Entry":
        return Entry(self.r + m, self.h, self.block) if m else self

    def label(self) -> str:
        s = str(self.r)
        if self.block:
            s = "%s%s%s" % (self.block, "" if s.startswith("-") else "+", s)
        if self.h:
            s += "@%d" % self.h
        return s

    def to_json(self) -> dict:
        out = {"r": str(self.r), "h": self.h}
        if self.block:
            out["block"] = self.block
        return out

    @classmethod
    def from_json(cls, obj) -> "Entry":
        if isinstance(obj, (int, str)):
            return cls(Fraction(obj))
        unknown = set(obj) - {"r", "h", "block"}
        if unknown:
            raise ValueError("unknown entry fields: %s" % ", ".join(sorted(unknown)))
        r = obj["r"]
        if isinstance(r, float):
            raise ValueError("entry rational part must be a string or integer, got %r" % r)
        return cls(Fraction(r), int(obj.get("h", 0)), obj.get("block"))


def integrally_comparable(a: Entry, b: Entry) -> bool:
    """Same generic block and integral difference of rational parts."""
    return a.block == b.block and (a.r - b.r).denominator == 1


def positions(n: int, top: bool = True) -> list[Position]:
    """Positions ``(k, j)``, row by row from the bottom; ``top=False`` drops row n."""
    last = n if top else n - 1
    return [(k, j) for k in range(1, last + 1) for j in range(1, k + 1)]


def _index(k: int, j: int) -> int:
    return k * (k - 1) // 2 + j - 1


class Tableau:
    """Triangular array of :class:`Entry`, row ``k`` holding ``l_k1 .. l_kk``.

    Indexing is 1-based: ``t[k, j]``.  Instances are immutable and hashable.
    """

    __slots__ = ("n", "entries", "_hash", "_key")

    def __init__(self, rows: Iterable[Iterable], n: int | None = None):
        """Build from rows listed top row first (length n) down to length 1.

        Entries may be :class:`Entry` objects or anything ``Fraction`` accepts.
        """
        rows = [list(r) for r in rows]
        n = len(rows) if n is None else n
        if n < 1 or len(rows) != n:
            raise ValueError("expected %d rows" % n)
        flat: list[Entry] = []
        for k in range(1, n + 1):
            row = rows[n - k]
            if len(row) != k:
                raise ValueError("row %d must have %d entries, got %d" % (k, k, len(row)))
            flat.extend(e if isinstance(e, Entry) else Entry(Fraction(e)) for e in row)
        self.n = n
        self.entries = tuple(flat)
        self._hash = self._key = None

    @classmethod
    def _from_flat(cls, n: int, entries: tuple) -> "Tableau":
        t = cls.__new__(cls)
        t.n, t.entries, t._hash, t._key = n, entries, None, None
        return t

    @classmethod
    def from_top(cls, top: Iterable, fill: Mapping[Position, object]) -> "Tableau":
        """Tableau with top row ``top`` and lower entries taken from ``fill``."""
        top = [e if isinstance(e, Entry) else Entry(Fraction(e)) for e in top]
        n = len(top)
        rows = [top] + [[fill[k, j] for j in range(1, k + 1)] for k in range(n - 1, 0, -1)]
        return cls(rows)

    def __getitem__(self, pos: Position) -> Entry:
        k, j = pos
        if not (1 <= j <= k <= self.n):
            raise IndexError("no position %r in a tableau of height %d" % (pos, self.n))
        return self.entries[_index(k, j)]

    def row(self, k: int) -> tuple[Entry, ...]:
        i = _index(k, 1)
        return self.entries[i:i + k]

    @property
    def rows(self) -> list[tuple[Entry, ...]]:
        """Rows top first, as printed."""
        return [self.row(k) for k in range(self.n, 0, -1)]

    @property
    def top(self) -> tuple[Entry, ...]:
        return self.row(self.n)

    def _cmp_key(self) -> tuple:
        # plain ints compare much faster than Fractions inside dataclasses
        if self._key is None:
            self._key = tuple(x for e in self.entries
                              for x in (e.r.numerator, e.r.denominator, e.h, e.block))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tableau) or hash(self) != hash(other):
            return False
        return self._cmp_key() == other._cmp_key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._cmp_key())
        return self._hash

    def __repr__(self):
        return self.label()

    def label(self) -> str:
        """Compact name such as ``T(0,-2;-1)``: rows top first, ``;``-separated."""
        return "T(%s)" % ";".join(",".join(e.label() for e in row) for row in self.rows)

    @property
    def root_degree(self) -> int:
        return root_degree_of(e.r for e in self.entries)

    @property
    def blocks(self) -> set[str]:
        return {e.block for e in self.entries if e.block}

    def shift_from(self, other: "Tableau") -> dict[Position, int] | None:
        """Integer shift ``z`` with ``other + z == self``, or None if there is none."""
        if other.n != self.n or self.top != other.top:
            return None
        z = {}
        for (k, j), a, b in zip(positions(self.n, top=False), self.entries, other.entries):
            if a.block != b.block or a.h != b.h:
                return None
            d = a.r - b.r
            if d.denominator != 1:
                return None
            if d:
                z[k, j] = int(d)
        return z

    def to_json(self) -> dict:
        return {"n": self.n, "root_degree": self.root_degree,
                "rows": [[e.to_json() for e in row] for row in self.rows]}

    @classmethod
    def from_json(cls, obj) -> "Tableau":
        if isinstance(obj, str):
            obj = json.loads(obj)
        rows = [[Entry.from_json(e) for e in row] for row in obj["rows"]]
        n = obj.get("n", len(rows))
        t = cls(rows, n)
        declared = obj.get("root_degree")
        if declared is not None and int(declared) % t.root_degree:
            raise ValueError("root_degree %s is not a multiple of the entries' lcm %d"
                             % (declared, t.root_degree))
        return t

    @classmethod
    def parse(cls, label: str) -> "Tableau":
        """Inverse of :meth:`label`."""
        m = re.fullmatch(r"\s*T\((.*)\)\s*", label)
        if not m:
            raise ValueError("not a tableau label: %r" % label)
        rows = []
        for row in m.group(1).split(";"):
            rows.append([_parse_entry(tok) for tok in row.split(",")])
        return cls(rows)


_ENTRY = re.compile(r"(?:([A-Za-z_]\w*)(?=[+-]))?([+-]?\d+(?:/\d+)?)(?:@(-?\d+))?")


def _parse_entry(tok: str) -> Entry:
    m = _ENTRY.fullmatch(tok.strip())
    if not m:
        raise ValueError("bad entry %r" % tok)
    r = m.group(2).lstrip("+")
    return Entry(Fraction(r), int(m.group(3) or 0), m.group(1))


def delta(k: int, j: int, m: int = 1) -> dict[Position, int]:
    """``m`` times the unit shift vector at ``(k, j)``."""
    return {(k, j): m}


def shift(t: Tableau, z: Mapping[Position, int]) -> Tableau:
    """``T(L + z)``; the top row never moves."""
    if not z:
        return t
    entries = list(t.entries)
    for (k, j), m in z.items():
        if not m:
            continue
        if k >= t.n or not (1 <= j <= k):
            raise ValueError("shift position %r is outside rows 1..%d" % ((k, j), t.n - 1))
        i = _index(k, j)
        entries[i] = entries[i].shifted(int(m))
    return Tableau._from_flat(t.n, tuple(entries))


@dataclass(frozen=True, slots=True, order=True)
class Relation:
    """``left >= right`` (``strict=False``) or ``left > right``."""

    left: Position
    strict: bool
    right: Position

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))

    @property
    def op(self) -> str:
        return ">" if self.strict else ">="

    def __str__(self):
        return "(%d,%d)%s(%d,%d)" % (*self.left, self.op, *self.right)

    __repr__ = __str__

    def endpoints(self) -> tuple[Position, Position]:
        return self.left, self.right

    def in_repertoire(self, n: int) -> bool:
        """Membership in the allowed repertoire of relations for height ``n``."""
        (i, j), (r, s) = self.left, self.right
        if not (1 <= j <= i <= n and 1 <= s <= r <= n):
            return False
        if self.strict:
            return r == i + 1
        return r == i - 1 or (i == r == n and j != s)

    def to_json(self) -> dict:
        return {"left": list(self.left), "op": self.op, "right": list(self.right)}

    @classmethod
    def from_json(cls, obj) -> "Relation":
        op = obj["op"]
        if op not in (">=", ">"):
            raise ValueError("relation op must be '>=' or '>', got %r" % op)
        return cls(tuple(obj["left"]), op == ">", tuple(obj["right"]))

    @classmethod
    def parse(cls, text: str) -> "Relation":
        m = re.fullmatch(r"\s*\((\d+),(\d+)\)\s*(>=|>)\s*\((\d+),(\d+)\)\s*", text)
        if not m:
            raise ValueError("bad relation %r" % text)
        return cls((int(m[1]), int(m[2])), m[3] == ">", (int(m[4]), int(m[5])))


def satisfies_relation(t: Tableau, rel: Relation) -> bool:
    """Whether ``l_left - l_right`` lies in Z>=0 (or Z>0) up to half periods."""
    a, b = t[rel.left], t[rel.right]
    if not integrally_comparable(a, b):
        return False
    d = a.r - b.r
    return d > 0 if rel.strict else d >= 0


def satisfies_set(t: Tableau, relations) -> bool:
    """Whether ``t`` is a realization of the relation set.

    All relations must hold, and integrally comparable entries of one row must
    sit in the same indecomposable component of the set's vertices.
    """
    from .relations import RelationSet, component_index

    if not isinstance(relations, RelationSet):
        relations = RelationSet(relations, t.n)
    if not all(satisfies_relation(t, rel) for rel in relations):
        return False
    comp = component_index(relations)
    for k in range(1, t.n + 1):
        row = t.row(k)
        for i in range(k):
            for j in range(i + 1, k):
                if integrally_comparable(row[i], row[j]):
                    ci = comp.get((k, i + 1))
                    if ci is None or ci != comp.get((k, j + 1)):
                        return False
    return True


def is_standard(t: Tableau) -> bool:
    """Betweenness: ``l_ki - l_{k-1,i}`` in Z>=0 and ``l_{k-1,i} - l_{k,i+1}`` in Z>0."""
    for k in range(2, t.n + 1):
        for i in range(1, k):
            upper, lower, right = t[k, i], t[k - 1, i], t[k, i + 1]
            if not (integrally_comparable(upper, lower) and upper.r - lower.r >= 0):
                return False
            if not (integrally_comparable(lower, right) and lower.r - right.r > 0):
                return False
    return True


def iter_repertoire(n: int) -> Iterator[Relation]:
    """Every relation in the repertoire for height ``n``, in sorted order."""
    out = []
    for i in range(2, n + 1):
        for j in range(1, i + 1):
            for jp in range(1, i):
                out.append(Relation((i, j), False, (i - 1, jp)))
                out.append(Relation((i - 1, jp), True, (i, j)))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j:
                out.append(Relation((n, i), False, (n, j)))
    return iter(sorted(out))
