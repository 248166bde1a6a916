"""Coefficient arithmetic for Gelfand-Tsetlin formulas.

Exact scalars live in the field Q(u) with ``u = q**(1/(2D))`` where ``D`` is
the root degree of the computation (the lcm of denominators of all entry
rational parts).  Numeric scalars are complex values obtained by sampling
``q`` (and generic block offsets) at pseudo-random points.

Exponents are :class:`ExtendedExponent` values ``r + h*w/2 + sum(c_b)`` where
``w`` generates the period lattice ``1(q)``, so ``q**(w/2) == -1``, and the
``c_b`` are symbolic generic offsets that only the numeric backend can
evaluate.
"""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np
from flint import fmpq, fmpq_poly

__all__ = [
    "ExtendedExponent",
    "ExactScalar",
    "ExactField",
    "NumericScalar",
    "NumericField",
    "NumericConfig",
    "RootDegreeError",
    "PoleError",
    "q_number",
    "q_paren_factorial",
    "evaluate",
    "root_degree_of",
    "format_scalar",
    "parse_scalar",
]


class RootDegreeError(ValueError):
    """An exponent needs a finer root of q than the context provides."""


class PoleError(ArithmeticError):
    """A scalar was evaluated at a pole, or divided by zero."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("rational parts must be exact; got float %r" % x)
    return Fraction(x)


@dataclass(frozen=True, slots=True)
class ExtendedExponent:
    """Exponent ``r + h*w/2 + sum(count * c_block)``.

    ``blocks`` is a sorted tuple of ``(name, count)`` pairs with nonzero
    counts; it is empty for every exponent the exact backend can handle.
    """

    r: Fraction
    h: int = 0
    blocks: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        if not isinstance(self.r, Fraction):
            object.__setattr__(self, "r", _frac(self.r))

    @classmethod
    def coerce(cls, x) -> "ExtendedExponent":
        if isinstance(x, ExtendedExponent):
            return x
        if isinstance(x, tuple):
            return cls(_frac(x[0]), int(x[1]))
        return cls(_frac(x))

    @property
    def is_lattice(self) -> bool:
        """True when no generic offset is involved."""
        return not self.blocks

    @property
    def is_integral(self) -> bool:
        """True when the exponent lies in Z + 1(q)/2."""
        return not self.blocks and self.r.denominator == 1

    def __add__(self, other):
        other = ExtendedExponent.coerce(other)
        return ExtendedExponent(self.r + other.r, self.h + other.h,
                                _merge_blocks(self.blocks, other.blocks, 1))

    __radd__ = __add__

    def __neg__(self):
        return ExtendedExponent(-self.r, -self.h,
                                tuple((b, -c) for b, c in self.blocks))

    def __sub__(self, other):
        other = ExtendedExponent.coerce(other)
        return ExtendedExponent(self.r - other.r, self.h - other.h,
                                _merge_blocks(self.blocks, other.blocks, -1))

    def __rsub__(self, other):
        return ExtendedExponent.coerce(other) - self

    def __mul__(self, k: int):
        k = int(k)
        if k == 0:
            return ExtendedExponent(Fraction(0))
        return ExtendedExponent(self.r * k, self.h * k,
                                tuple((b, c * k) for b, c in self.blocks))

    __rmul__ = __mul__

    def __str__(self):
        parts = [str(self.r)]
        if self.h:
            parts.append("%+dw/2" % self.h)
        for b, c in self.blocks:
            parts.append("%+d*%s" % (c, b) if c not in (1, -1)
                         else ("+" if c > 0 else "-") + b)
        return "".join(parts)


def _merge_blocks(a, b, sign):
    if not b:
        return a
    acc = dict(a)
    for name, c in b:
        acc[name] = acc.get(name, 0) + sign * c
    return tuple(sorted((k, v) for k, v in acc.items() if v))


def root_degree_of(exponents) -> int:
    """Smallest root degree ``D`` for which every rational part is in Z/D."""
    d = 1
    for x in exponents:
        d = math.lcm(d, ExtendedExponent.coerce(x).r.denominator)
    return d


# ---------------------------------------------------------------------------
# Exact scalars
# ---------------------------------------------------------------------------

_ONE_POLY = fmpq_poly([1])
_ZERO_POLY = fmpq_poly([])


def _low_order(p: fmpq_poly) -> int:
    """Multiplicity of u as a factor of the nonzero polynomial ``p``."""
    for i, c in enumerate(p.coeffs()):
        if c != 0:
            return i
    raise ValueError("zero polynomial")


class ExactScalar:
    """Element ``u**shift * num(u) / den(u)`` of Q(u), in canonical form.

    Canonical form: ``num`` and ``den`` are coprime, both have a nonzero
    constant term, and ``den(0) == 1``.  Zero is ``0/1`` with shift 0.  Two
    scalars are equal as field elements iff their canonical data agree, so
    ``==`` and ``hash`` are structural.
    """

    __slots__ = ("num", "den", "shift", "root", "_hash")

    def __init__(self, num, den=None, shift: int = 0, root: int = 1):
        num = num if isinstance(num, fmpq_poly) else fmpq_poly(num)
        den = _ONE_POLY if den is None else (
            den if isinstance(den, fmpq_poly) else fmpq_poly(den))
        if den.is_zero():
            raise PoleError("division by zero")
        self.root = root
        self._hash = None
        if num.is_zero():
            self.num, self.den, self.shift = _ZERO_POLY, _ONE_POLY, 0
            return
        a, b = _low_order(num), _low_order(den)
        if a:
            num = num.right_shift(a)
        if b:
            den = den.right_shift(b)
        shift += a - b
        if den.degree() > 0 and num.degree() >= 0:
            g = num.gcd(den)
            if g.degree() > 0:
                num = divmod(num, g)[0]
                den = divmod(den, g)[0]
        c = den.coeffs()[0]
        if c != 1:
            num = num / c
            den = den / c
        self.num, self.den, self.shift = num, den, shift

    # construction helpers -------------------------------------------------
    @classmethod
    def _raw(cls, num, den, shift, root):
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj.num, obj.den, obj.shift, obj.root, obj._hash = num, den, shift, root, None
        return obj

    @classmethod
    def from_int(cls, k, root: int = 1) -> "ExactScalar":
        k = Fraction(k)
        if k == 0:
            return cls._raw(_ZERO_POLY, _ONE_POLY, 0, root)
        return cls._raw(fmpq_poly([fmpq(k.numerator, k.denominator)]), _ONE_POLY, 0, root)

    @classmethod
    def monomial(cls, power: int, sign: int = 1, root: int = 1) -> "ExactScalar":
        """``sign * u**power``."""
        return cls._raw(fmpq_poly([sign]), _ONE_POLY, power, root)

    # predicates -------------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.shift == 0 and self.den.is_one() and self.num.is_one()

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar.from_int(other, self.root)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return (self.shift == other.shift and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.shift, tuple(self.num.coeffs()),
                               tuple(self.den.coeffs())))
        return self._hash

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            if other.root != self.root:
                raise RootDegreeError(
                    "mixing root degrees %d and %d" % (self.root, other.root))
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar.from_int(other, self.root)
        return NotImplemented

    def __neg__(self):
        return ExactScalar._raw(-self.num, self.den, self.shift, self.root)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        s = min(self.shift, other.shift)
        a = self.num.left_shift(self.shift - s) if self.shift > s else self.num
        b = other.num.left_shift(other.shift - s) if other.shift > s else other.num
        if self.den == other.den:
            return ExactScalar(a + b, self.den, s, self.root)
        return ExactScalar(a * other.den + b * self.den, self.den * other.den, s, self.root)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ExactScalar.from_int(0, self.root)
        if other.den.is_one() and other.num.degree() == 0:
            return ExactScalar._raw(self.num * other.num, self.den,
                                    self.shift + other.shift, self.root)
        if self.den.is_one() and self.num.degree() == 0:
            return ExactScalar._raw(self.num * other.num, other.den,
                                    self.shift + other.shift, self.root)
        return ExactScalar(self.num * other.num, self.den * other.den,
                           self.shift + other.shift, self.root)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise PoleError("division by zero")
        return ExactScalar(self.den, self.num, -self.shift, self.root)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactScalar.from_int(1, self.root)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # presentation -----------------------------------------------------------
    def integer_form(self) -> tuple[list[int], list[int]]:
        """Return integer coefficient lists (ascending) of ``N`` and ``Dn``.

        The pair is the unique representation ``N/Dn`` with the u-power folded
        into whichever polynomial keeps exponents nonnegative, integer
        coefficients with gcd 1, and a positive lowest coefficient in ``Dn``.
        """
        if self.is_zero():
            return [0], [1]
        nums = [Fraction(int(c.p), int(c.q)) for c in self.num.coeffs()]
        dens = [Fraction(int(c.p), int(c.q)) for c in self.den.coeffs()]
        if self.shift > 0:
            nums = [Fraction(0)] * self.shift + nums
        elif self.shift < 0:
            dens = [Fraction(0)] * (-self.shift) + dens
        lcm = 1
        for c in nums + dens:
            lcm = math.lcm(lcm, c.denominator)
        ni = [int(c * lcm) for c in nums]
        di = [int(c * lcm) for c in dens]
        g = 0
        for c in ni + di:
            g = math.gcd(g, c)
        ni = [c // g for c in ni]
        di = [c // g for c in di]
        return ni, di

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return "ExactScalar(%r, D=%d)" % (str(self), self.root)

    @classmethod
    def parse(cls, text: str, root: int = 1) -> "ExactScalar":
        return parse_scalar(text, root)


def _poly_str(coeffs: Sequence[int], var: str, step: int) -> str:
    terms = []
    for e, c in enumerate(coeffs):
        if c == 0:
            continue
        e //= step
        if e == 0:
            body = str(abs(c))
        else:
            mono = var if e == 1 else "%s^%d" % (var, e)
            body = mono if abs(c) == 1 else "%d*%s" % (abs(c), mono)
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return out


def _single_term(coeffs) -> bool:
    return sum(1 for c in coeffs if c) == 1


def format_scalar(a: ExactScalar) -> str:
    """Canonical text form; uses ``q`` when every exponent is a multiple of 2D."""
    ni, di = a.integer_form()
    step = 2 * a.root
    powers = [e for e, c in enumerate(ni) if c] + [e for e, c in enumerate(di) if c]
    if all(e % step == 0 for e in powers):
        var = "q"
    else:
        var, step = "u", 1
    n = _poly_str(ni, var, step)
    if len(di) == 1 and di[0] == 1:
        return n
    d = _poly_str(di, var, step)
    return "(%s)/(%s)" % (n, d)


_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*\*?\s*(?:([qu])(?:\^(-?\d+))?)?")


def _parse_poly(text: str, root: int) -> dict[int, int]:
    out: dict[int, int] = {}
    text = text.replace(" ", "")
    pos = 0
    if not text:
        raise ValueError("empty polynomial")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise ValueError("cannot parse polynomial %r at offset %d" % (text, pos))
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            e = int(m.group(4)) if m.group(4) else 1
            if m.group(3) == "q":
                e *= 2 * root
        else:
            e = 0
        out[e] = out.get(e, 0) + sign * coeff
        pos = m.end()
    return out


def _laurent(terms: dict[int, int], root: int) -> ExactScalar:
    low = min(terms)
    coeffs = [0] * (max(terms) - low + 1)
    for e, c in terms.items():
        coeffs[e - low] += c
    return ExactScalar(fmpq_poly(coeffs), None, low, root)


def parse_scalar(text: str, root: int = 1) -> ExactScalar:
    """Inverse of :func:`format_scalar` (also accepts negative exponents)."""
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
    if m:
        return _laurent(_parse_poly(m.group(1), root), root) / \
            _laurent(_parse_poly(m.group(2), root), root)
    return _laurent(_parse_poly(text, root), root)


# ---------------------------------------------------------------------------
# Fields
# ---------------------------------------------------------------------------

class ExactField:
    """Exact coefficient field Q(u), ``u = q**(1/(2*root))``."""

    mode = "exact"

    def __init__(self, root: int = 1):
        if root < 1:
            raise ValueError("root degree must be >= 1")
        self.root = root
        self.zero = ExactScalar.from_int(0, root)
        self.one = ExactScalar.from_int(1, root)
        self._pow = lru_cache(maxsize=None)(self._q_pow)
        self._qnum = lru_cache(maxsize=None)(self._q_number)
        q = self.q_pow(ExtendedExponent(Fraction(1)))
        self._qdiff = q - q.inverse()

    def __repr__(self):
        return "ExactField(root=%d)" % self.root

    def from_int(self, k) -> ExactScalar:
        return ExactScalar.from_int(k, self.root)

    def _u_power(self, r: Fraction) -> int:
        e = r * 2 * self.root
        if e.denominator != 1:
            raise RootDegreeError(
                "exponent %s needs root degree %d, context has %d"
                % (r, math.lcm(self.root, r.denominator), self.root))
        return int(e)

    def q_pow(self, x) -> ExactScalar:
        """``q**x`` for an exponent without generic offsets."""
        x = ExtendedExponent.coerce(x)
        if x.blocks:
            raise ValueError("generic offsets %r need the numeric backend" % (x.blocks,))
        return self._pow(x.r, x.h & 1)

    def _q_pow(self, r: Fraction, parity: int) -> ExactScalar:
        return ExactScalar.monomial(self._u_power(r), -1 if parity else 1, self.root)

    def q_number(self, x) -> ExactScalar:
        """``[x]_q = (q**x - q**-x) / (q - q**-1)``."""
        x = ExtendedExponent.coerce(x)
        if x.blocks:
            raise ValueError("generic offsets %r need the numeric backend" % (x.blocks,))
        return self._qnum(x.r, x.h & 1)

    def _q_number(self, r: Fraction, parity: int) -> ExactScalar:
        if r == 0:
            return self.zero
        m = self._u_power(r)
        val = (ExactScalar.monomial(m, 1, self.root)
               - ExactScalar.monomial(-m, 1, self.root)) / self._qdiff
        return -val if parity else val

    def q_paren_factorial(self, k: int) -> ExactScalar:
        """``(k)_{q^-2}! = prod_{j<=k} (q^-2j - 1)/(q^-2 - 1)``."""
        return _paren_factorial(self, k)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def format(self, a) -> str:
        return format_scalar(a)

    def residual(self, lhs, rhs) -> float:
        return 0.0 if lhs == rhs else math.inf


def _paren_factorial(fld, k: int):
    if k < 0:
        raise ValueError("k must be nonnegative")
    b = fld.q_pow(ExtendedExponent(Fraction(-2)))
    out = fld.one
    for j in range(1, k + 1):
        out = out * ((fld.q_pow(ExtendedExponent(Fraction(-2 * j))) - fld.one) / (b - fld.one))
    return out


@dataclass(frozen=True)
class NumericConfig:
    """Sampling setup of the numeric backend."""

    samples: int = 5
    tolerance: float = 1e-9
    seed: int = 42
    q_range: tuple[float, float] = (1.1, 3.0)

    @classmethod
    def from_json(cls, obj: Mapping | None) -> "NumericConfig":
        obj = dict(obj or {})
        q_range = tuple(obj.pop("q_range", (1.1, 3.0)))
        unknown = set(obj) - {"samples", "tolerance", "seed"}
        if unknown:
            raise ValueError("unknown numeric options: %s" % ", ".join(sorted(unknown)))
        return cls(samples=int(obj.get("samples", 5)),
                   tolerance=float(obj.get("tolerance", 1e-9)),
                   seed=int(obj.get("seed", 42)), q_range=q_range)

    def to_json(self) -> dict:
        return {"samples": self.samples, "tolerance": self.tolerance, "seed": self.seed}


class NumericField:
    """Vectorised numeric backend: every scalar is an array over samples.

    Sample ``s`` evaluates ``q`` at ``q_values[s]`` (real, > 1) and each
    generic block symbol at ``offsets[name][s]``.
    """

    mode = "numeric"

    def __init__(self, q_values, offsets: Mapping[str, Sequence[float]] | None = None,
                 tolerance: float = 1e-9):
        self.q_values = np.asarray(q_values, dtype=complex)
        if np.any(np.abs(np.abs(self.q_values) - 1.0) < 1e-6):
            raise ValueError("q must stay away from the unit circle")
        self.log_q = np.log(self.q_values)
        self.offsets = {k: np.asarray(v, dtype=complex) for k, v in (offsets or {}).items()}
        self.tolerance = tolerance
        self.samples = len(self.q_values)
        self.zero = np.zeros(self.samples, dtype=complex)
        self.one = np.ones(self.samples, dtype=complex)
        self._qdiff = self.q_values - 1.0 / self.q_values

    @classmethod
    def sample(cls, config: NumericConfig, blocks: Sequence[str] = ()) -> "NumericField":
        """Draw ``config.samples`` points: q uniform in ``q_range``, offsets in (0, 1)."""
        rng = np.random.default_rng(config.seed)
        lo, hi = config.q_range
        qs = rng.uniform(lo, hi, size=config.samples)
        offsets = {b: rng.uniform(0.05, 0.95, size=config.samples) for b in sorted(blocks)}
        return cls(qs, offsets, config.tolerance)

    def __repr__(self):
        return "NumericField(samples=%d, blocks=%s)" % (self.samples, sorted(self.offsets))

    def from_int(self, k):
        return np.full(self.samples, complex(k))

    def q_pow(self, x):
        x = ExtendedExponent.coerce(x)
        e = np.full(self.samples, float(x.r), dtype=complex)
        for b, c in x.blocks:
            if b not in self.offsets:
                raise KeyError("no sampled offset for block %r" % b)
            e = e + c * self.offsets[b]
        val = np.exp(e * self.log_q)
        return -val if x.h & 1 else val

    def q_number(self, x):
        x = ExtendedExponent.coerce(x)
        if x.is_lattice and x.r == 0:
            return self.zero.copy()
        return (self.q_pow(x) - self.q_pow(-x)) / self._qdiff

    def q_paren_factorial(self, k: int):
        return _paren_factorial(self, k)

    def is_zero(self, a) -> bool:
        return bool(np.all(np.abs(a) <= self.tolerance))

    def format(self, a) -> str:
        return ";".join("%.17g%+.17gj" % (v.real, v.imag) for v in np.atleast_1d(a))

    def residual(self, lhs, rhs) -> float:
        """Max over samples of ``|lhs - rhs| / max(1, |lhs|)``."""
        lhs = np.asarray(lhs)
        return float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(lhs))))


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _exact_field(root: int) -> ExactField:
    return ExactField(root)


def q_number(x, root: int | None = None) -> ExactScalar:
    """Exact ``[x]_q`` in the field of root degree ``root``.

    ``x`` may be an :class:`ExtendedExponent`, an ``(r, h)`` pair or a rational.
    The default root degree is the denominator of ``r``.
    """
    x = ExtendedExponent.coerce(x)
    if root is None:
        root = x.r.denominator
    return _exact_field(root).q_number(x)


def q_paren_factorial(k: int, root: int = 1) -> ExactScalar:
    return _exact_field(root).q_paren_factorial(k)


@dataclass(frozen=True)
class NumericScalar:
    value: complex
    sample_id: int = 0


def evaluate(a: ExactScalar, q0: complex, sample_id: int = 0,
             tolerance: float = 1e-12) -> NumericScalar:
    """Evaluate ``a`` at ``u = q0**(1/(2D))`` (principal branch)."""
    q0 = complex(q0)
    if q0 == 0:
        raise ValueError("q0 must be nonzero")
    if abs(abs(q0) - 1.0) < 1e-9:
        turns = cmath.phase(q0) / (2 * math.pi)
        if abs(turns - float(Fraction(turns).limit_denominator(10_000))) < 1e-9:
            raise ValueError("q0 = %r is a root of unity" % q0)
    if a.is_zero():
        return NumericScalar(0j, sample_id)
    u0 = q0 ** (1.0 / (2 * a.root))

    def ev(p):
        cs = [float(c) for c in p.coeffs()]
        return complex(np.polyval(cs[::-1], u0))

    den = ev(a.den)
    scale = sum(abs(float(c)) * abs(u0) ** i for i, c in enumerate(a.den.coeffs()))
    if abs(den) <= tolerance * max(scale, 1.0):
        raise PoleError("denominator vanishes at q0 = %r" % q0)
    return NumericScalar(u0 ** a.shift * ev(a.num) / den, sample_id)
