"""Tableau modules: bases, generator actions, weights and GT eigenvalues."""
from __future__ import annotations

import itertools
import json
import re
import warnings
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .qcoeff import (ExactField, ExtendedExponent, NumericConfig, NumericField,
                     parse_scalar)
from .relations import RelationSet, is_admissible, standard_set
from .tableaux import Entry, Tableau, positions, satisfies_set

__all__ = [
    "ModuleSpec",
    "LinearCombination",
    "Basis",
    "SparseMatrix",
    "ModuleError",
    "NotRealizationError",
    "NotInLatticeError",
    "DegenerateModuleError",
    "weight",
    "gamma",
    "character",
    "highest_weight_tableau",
    "standard_module",
    "parse_generator",
]


class ModuleError(ValueError):
    pass


class NotRealizationError(ModuleError):
    """The seed does not satisfy the relation set."""


class NotInLatticeError(ModuleError):
    """A tableau is not an integer shift of the seed."""


class DegenerateModuleError(ArithmeticError):
    """Two entries of one row collide, so a GT denominator vanishes."""


def _field_for(t: Tableau, field=None):
    if field is not None:
        return field
    if t.blocks:
        raise ValueError("tableau has generic blocks; pass a numeric field")
    return ExactField(t.root_degree)


def weight(t: Tableau) -> tuple[ExtendedExponent, ...]:
    """Exponents ``a_k = sum_i l_ki - sum_i l_{k-1,i} + k`` for k = 1..n."""
    sums = [ExtendedExponent(Fraction(0))]
    for k in range(1, t.n + 1):
        s = ExtendedExponent(Fraction(0))
        for e in t.row(k):
            s = s + e.exponent
        sums.append(s)
    return tuple(sums[k] - sums[k - 1] + k for k in range(1, t.n + 1))


def gamma(t: Tableau, m: int, k: int, field=None):
    """Eigenvalue of the GT generator ``c_mk`` on ``t``.

    ``(k)! (m-k)! q^(k(k+1) + m(m-3)/2) * sum over shuffles`` with factorials
    in base ``q^-2``; the sum runs over k-subsets ``A`` of row m of
    ``q^(sum_A l - sum_rest l)``.
    """
    if not 1 <= k <= m <= t.n:
        raise ValueError("need 1 <= k <= m <= n")
    fld = _field_for(t, field)
    row = [e.exponent for e in t.row(m)]
    total = fld.zero
    for chosen in itertools.combinations(range(m), k):
        e = ExtendedExponent(Fraction(0))
        for i in range(m):
            e = e + row[i] if i in chosen else e - row[i]
        total = total + fld.q_pow(e)
    pre = fld.q_pow(ExtendedExponent(Fraction(k * (k + 1) + m * (m - 3) // 2)))
    return fld.q_paren_factorial(k) * fld.q_paren_factorial(m - k) * pre * total


def character(t: Tableau, field=None) -> dict[tuple[int, int], object]:
    """All ``gamma(t, m, k)``, keyed by ``(m, k)``."""
    fld = _field_for(t, field)
    return {(m, k): gamma(t, m, k, fld)
            for m in range(1, t.n + 1) for k in range(1, m + 1)}


_GEN = re.compile(r"^(?:(e|f)(\d+)|qeps(-?)(\d+))$")


@lru_cache(maxsize=256)
def parse_generator(name: str) -> tuple[str, int, int]:
    """``'e2' -> ('e', 2, 1)``, ``'qeps-3' -> ('qeps', 3, -1)``."""
    m = _GEN.match(name.strip())
    if not m:
        raise ValueError("unknown generator %r (expected e<k>, f<k>, qeps<k> or qeps-<k>)"
                         % name)
    if m.group(1):
        return m.group(1), int(m.group(2)), 1
    return "qeps", int(m.group(4)), -1 if m.group(3) else 1


class LinearCombination:
    """Finite formal sum of tableaux with coefficients from a field.

    Zero coefficients are never stored.
    """

    __slots__ = ("terms", "field")

    def __init__(self, terms: Mapping[Tableau, object] | None = None, field=None):
        self.field = field
        self.terms: dict[Tableau, object] = {}
        if terms:
            for t, c in terms.items():
                if not field.is_zero(c):
                    self.terms[t] = c

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, t: Tableau):
        return self.terms.get(t, self.field.zero)

    def _combine(self, other: "LinearCombination", sign: int) -> "LinearCombination":
        out = dict(self.terms)
        for t, c in other.terms.items():
            if t in out:
                out[t] = out[t] + c if sign > 0 else out[t] - c
            else:
                out[t] = c if sign > 0 else -c
        return LinearCombination(out, self.field)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "LinearCombination":
        return LinearCombination({t: c * v for t, v in self.terms.items()}, self.field)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return "LinearCombination(%s)" % json.dumps(self.to_json(), sort_keys=True)

    def to_json(self) -> dict[str, str]:
        return {t.label(): self.field.format(c) for t, c in self.terms.items()}


@dataclass
class Basis:
    """Windowed enumeration result: tableaux in basis order."""

    tableaux: list[Tableau]
    radius: int
    complete: bool

    def __len__(self):
        return len(self.tableaux)

    def __iter__(self):
        return iter(self.tableaux)

    def __getitem__(self, i):
        return self.tableaux[i]

    def index(self) -> dict[Tableau, int]:
        return {t: i for i, t in enumerate(self.tableaux)}


@dataclass
class SparseMatrix:
    """Operator matrix in coordinate form; ``entries[(i, j)]`` is 0-based."""

    shape: tuple[int, int]
    entries: dict[tuple[int, int], object]
    field: object
    leaks: list[str] = field(default_factory=list)

    @property
    def nnz(self) -> int:
        return len(self.entries)

    def to_text(self) -> str:
        """``qgt-matrix <D> <rows> <cols> <nnz>`` then ``i j value`` lines, 1-based."""
        root = getattr(self.field, "root", 0)
        lines = ["qgt-matrix %d %d %d %d" % (root, self.shape[0], self.shape[1], self.nnz)]
        for (i, j) in sorted(self.entries):
            lines.append("%d %d %s" % (i + 1, j + 1, self.field.format(self.entries[i, j])))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "SparseMatrix":
        """Parse an exact-mode matrix file."""
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "qgt-matrix" or len(head) != 5:
            raise ValueError("bad matrix header %r" % lines[0])
        root, rows, cols, nnz = map(int, head[1:])
        fld = ExactField(root)
        entries = {}
        for ln in lines[1:]:
            i, j, val = ln.split(None, 2)
            entries[int(i) - 1, int(j) - 1] = parse_scalar(val, root)
        if len(entries) != nnz:
            raise ValueError("header promises %d entries, found %d" % (nnz, len(entries)))
        return cls((rows, cols), entries, fld)

    def to_scipy(self, q0: float | None = None, sample: int = 0):
        """Complex ``scipy.sparse.csr_matrix``; exact entries are evaluated at ``q0``."""
        import scipy.sparse as sp

        from .qcoeff import evaluate

        rows, cols, vals = [], [], []
        for (i, j), v in sorted(self.entries.items()):
            rows.append(i)
            cols.append(j)
            if isinstance(self.field, ExactField):
                if q0 is None:
                    raise ValueError("q0 is required to evaluate exact entries")
                vals.append(evaluate(v, q0).value)
            else:
                vals.append(complex(np.atleast_1d(v)[sample]))
        return sp.csr_matrix((np.asarray(vals, dtype=complex), (rows, cols)),
                             shape=self.shape)


class ModuleSpec:
    """The module spanned by all integer shifts of ``seed`` realizing ``C``.

    Parameters
    ----------
    C : RelationSet
        Relation set; checked for admissibility unless ``unchecked``.
    seed : Tableau
        A realization of ``C``; checked unless ``unchecked``.
    mode : {"exact", "numeric"}
        Coefficient backend.  Seeds with generic blocks require ``"numeric"``.
    numeric : NumericConfig, optional
        Sampling setup for the numeric backend.
    unchecked : bool
        Skip both validity checks, for negative experiments.
    """

    def __init__(self, C: RelationSet, seed: Tableau, mode: str = "exact",
                 numeric: NumericConfig | None = None, unchecked: bool = False):
        if C.n != seed.n:
            raise ModuleError("relation set height %d differs from seed height %d"
                              % (C.n, seed.n))
        if mode not in ("exact", "numeric"):
            raise ModuleError("mode must be 'exact' or 'numeric', got %r" % mode)
        if mode == "exact" and seed.blocks:
            raise ModuleError("seed has generic blocks %s; use numeric mode"
                              % sorted(seed.blocks))
        self.C = C
        self.seed = seed
        self.n = seed.n
        self.mode = mode
        self.numeric = numeric or NumericConfig()
        self.unchecked = unchecked
        if not unchecked:
            report = is_admissible(C)
            if not report:
                raise ModuleError("relation set is not admissible: %s" % report)
            if not satisfies_set(seed, C):
                raise NotRealizationError("seed %s does not satisfy %r" % (seed.label(), C))
        if mode == "exact":
            self.field = ExactField(seed.root_degree)
        else:
            self.field = NumericField.sample(self.numeric, sorted(seed.blocks))
        self._member: dict[Tableau, bool] = {}
        self._act: dict[tuple, LinearCombination] = {}

    def __repr__(self):
        return "ModuleSpec(C=%r, seed=%s, mode=%s)" % (self.C, self.seed.label(), self.mode)

    # membership -------------------------------------------------------------
    def shift_of(self, t: Tableau) -> dict:
        z = t.shift_from(self.seed)
        if z is None:
            raise NotInLatticeError("%s is not an integer shift of the seed %s"
                                    % (t.label(), self.seed.label()))
        return z

    def member(self, t: Tableau) -> bool:
        """Whether ``t`` belongs to the tableau basis."""
        hit = self._member.get(t)
        if hit is None:
            self.shift_of(t)
            hit = self._member[t] = satisfies_set(t, self.C)
        return hit

    def _member_fast(self, t: Tableau) -> bool:
        # for tableaux built by unit shifts from members
        hit = self._member.get(t)
        if hit is None:
            hit = self._member[t] = satisfies_set(t, self.C)
        return hit

    def enumerate_basis(self, radius: int) -> Basis:
        """Breadth-first search of members with shift max-norm at most ``radius``.

        ``complete`` is set when no member on the window boundary has a
        member neighbour outside it; the basis is then finite and fully
        listed (members form a unit-step connected set).
        """
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        pos = positions(self.n, top=False)
        seen = {self.seed}
        queue = deque([(self.seed, (0,) * len(pos))])
        found = []
        complete = True
        while queue:
            t, z = queue.popleft()
            found.append((t, z))
            for idx, p in enumerate(pos):
                for step in (1, -1):
                    zz = list(z)
                    zz[idx] += step
                    u = _unit_shift(t, p, step)
                    if abs(zz[idx]) > radius:
                        # a member just outside the window means the basis leaks
                        if complete and self._member_fast(u):
                            complete = False
                        continue
                    if u in seen:
                        continue
                    seen.add(u)
                    if self._member_fast(u):
                        queue.append((u, tuple(zz)))
        order = _order_key(self.n)
        found.sort(key=lambda tz: order(tz[1]), reverse=True)
        return Basis([t for t, _ in found], radius, complete)

    # generator actions ------------------------------------------------------
    def _check(self, t: Tableau):
        if not self.member(t):
            raise ModuleError("%s is not in the module basis" % t.label())

    def _denominator(self, t: Tableau, k: int, j: int):
        fld = self.field
        row = t.row(k)
        den = fld.one
        for i in range(k):
            if i == j - 1:
                continue
            d = fld.q_number(row[i] - row[j - 1])
            if fld.is_zero(d):
                raise DegenerateModuleError(
                    "entries (%d,%d) and (%d,%d) of %s collide"
                    % (k, i + 1, k, j, t.label()))
            den = den * d
        return den

    def act_e(self, k: int, t: Tableau) -> LinearCombination:
        """``e_k`` applied to the basis tableau ``t``; targets outside the basis are dropped."""
        key = ("e", k, 1, t)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        if not 1 <= k <= self.n - 1:
            raise ValueError("e_k needs 1 <= k <= n-1")
        self._check(t)
        fld = self.field
        upper = t.row(k + 1)
        row = t.row(k)
        terms = {}
        for j in range(1, k + 1):
            target = _unit_shift(t, (k, j), 1)
            if not self._member_fast(target):
                continue
            num = fld.one
            for e in upper:
                num = num * fld.q_number(e - row[j - 1])
            if fld.is_zero(num):
                continue
            terms[target] = -(num / self._denominator(t, k, j))
        out = self._act[key] = LinearCombination(terms, fld)
        return out

    def act_f(self, k: int, t: Tableau) -> LinearCombination:
        """``f_k`` applied to the basis tableau ``t``."""
        key = ("f", k, 1, t)
        hit = self._act.get(key)
        if hit is not None:
            return hit
        if not 1 <= k <= self.n - 1:
            raise ValueError("f_k needs 1 <= k <= n-1")
        self._check(t)
        fld = self.field
        lower = t.row(k - 1) if k > 1 else ()
        row = t.row(k)
        terms = {}
        for j in range(1, k + 1):
            target = _unit_shift(t, (k, j), -1)
            if not self._member_fast(target):
                continue
            num = fld.one
            for e in lower:
                num = num * fld.q_number(e - row[j - 1])
            if fld.is_zero(num):
                continue
            terms[target] = num / self._denominator(t, k, j)
        out = self._act[key] = LinearCombination(terms, fld)
        return out

    def act_qeps(self, k: int, t: Tableau, sign: int = 1) -> LinearCombination:
        """``q^(sign * eps_k)`` applied to ``t``."""
        if not 1 <= k <= self.n:
            raise ValueError("q^eps_k needs 1 <= k <= n")
        key = ("qeps", k, sign, t)
        hit = self._act.get(key)
        if hit is None:
            self._check(t)
            a = weight(t)[k - 1]
            hit = self._act[key] = LinearCombination(
                {t: self.field.q_pow(a if sign > 0 else -a)}, self.field)
        return hit

    def act(self, generator: str | tuple, t: Tableau) -> LinearCombination:
        kind, k, sign = parse_generator(generator) if isinstance(generator, str) else generator
        if kind == "e":
            return self.act_e(k, t)
        if kind == "f":
            return self.act_f(k, t)
        return self.act_qeps(k, t, sign)

    def apply(self, generator, vec: LinearCombination | Tableau) -> LinearCombination:
        """Linear extension of :meth:`act` to linear combinations."""
        if isinstance(vec, Tableau):
            return self.act(generator, vec)
        out: dict[Tableau, object] = {}
        for t, c in vec.terms.items():
            for u, d in self.act(generator, t).terms.items():
                v = c * d
                out[u] = out[u] + v if u in out else v
        return LinearCombination(out, self.field)

    def apply_word(self, word: Iterable, t: Tableau) -> LinearCombination:
        """Apply generators right to left: ``word = ("e1", "f2")`` gives ``e1 f2 t``."""
        vec = LinearCombination({t: self.field.one}, self.field)
        for g in reversed(list(word)):
            vec = self.apply(g, vec)
        return vec

    def vector(self, t: Tableau) -> LinearCombination:
        return LinearCombination({t: self.field.one}, self.field)

    # GT subalgebra ----------------------------------------------------------
    def gamma(self, t: Tableau, m: int, k: int):
        return gamma(t, m, k, self.field)

    def character(self, t: Tableau) -> dict:
        return character(t, self.field)

    # matrices ---------------------------------------------------------------
    def matrix(self, generator: str, basis: Basis | list[Tableau]) -> SparseMatrix:
        """Matrix of ``generator`` on ``basis`` (column ``j`` = image of tableau ``j``).

        Images outside the listed basis are recorded in ``leaks``; that only
        happens for incomplete windows.
        """
        tabs = list(basis)
        index = {t: i for i, t in enumerate(tabs)}
        entries = {}
        leaks = []
        for j, t in enumerate(tabs):
            for u, c in self.act(generator, t).terms.items():
                i = index.get(u)
                if i is None:
                    leaks.append("%s -> %s" % (t.label(), u.label()))
                    continue
                entries[i, j] = c
        if leaks:
            warnings.warn("%s leaves the enumerated window on %d tableaux"
                          % (generator, len(leaks)), stacklevel=2)
        return SparseMatrix((len(tabs), len(tabs)), entries, self.field, leaks)

    def generators(self) -> list[str]:
        gens = ["e%d" % k for k in range(1, self.n)] + ["f%d" % k for k in range(1, self.n)]
        return gens + ["qeps%d" % k for k in range(1, self.n + 1)]

    # serialization ----------------------------------------------------------
    def to_json(self) -> dict:
        out = {"relations": self.C.to_json(), "seed": self.seed.to_json(),
               "mode": self.mode, "numeric": self.numeric.to_json()}
        if self.unchecked:
            out["unchecked"] = True
        return out

    @classmethod
    def from_json(cls, obj, mode: str | None = None, seed: int | None = None) -> "ModuleSpec":
        """Build from the module JSON schema; ``mode``/``seed`` override defaults."""
        if isinstance(obj, str):
            obj = json.loads(obj)
        unknown = set(obj) - {"relations", "seed", "mode", "numeric", "unchecked"}
        if unknown:
            raise ValueError("unknown module fields: %s" % ", ".join(sorted(unknown)))
        C = RelationSet.from_json(obj["relations"])
        t = Tableau.from_json(obj["seed"])
        numeric = NumericConfig.from_json(obj.get("numeric"))
        if seed is not None:
            numeric = NumericConfig(numeric.samples, numeric.tolerance, seed, numeric.q_range)
        chosen = obj.get("mode") or mode or ("numeric" if t.blocks else "exact")
        return cls(C, t, chosen, numeric, bool(obj.get("unchecked", False)))


def _unit_shift(t: Tableau, p, step: int) -> Tableau:
    k, j = p
    i = k * (k - 1) // 2 + j - 1
    entries = list(t.entries)
    entries[i] = entries[i].shifted(step)
    return Tableau._from_flat(t.n, tuple(entries))


def _order_key(n: int):
    # shift vectors are stored bottom row first; compare in printed order
    pos = positions(n, top=False)
    perm = sorted(range(len(pos)), key=lambda i: (-pos[i][0], pos[i][1]))
    return lambda z: tuple(z[i] for i in perm)


def highest_weight_tableau(lam) -> Tableau:
    """Tableau with ``l_kj = lambda_j - j`` in every row."""
    lam = [Fraction(x) for x in lam]
    n = len(lam)
    rows = [[lam[j] - (j + 1) for j in range(k)] for k in range(n, 0, -1)]
    return Tableau(rows)


def standard_module(lam, mode: str = "exact") -> ModuleSpec:
    """Finite-dimensional module of highest weight ``lam``: standard relations, top row ``lam_j - j``."""
    t = highest_weight_tableau(lam)
    return ModuleSpec(standard_set(len(lam)), t, mode)
