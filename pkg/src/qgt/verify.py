"""Checks of the algebra relations, GT eigenvalue separation and irreducibility."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .gtmodule import Basis, LinearCombination, ModuleSpec, character, standard_module, weight
from .qcoeff import ExactField, ExtendedExponent
from .relations import RelationSet, implication_gap, implies, is_admissible, maximal_set
from .tableaux import Tableau

__all__ = [
    "CheckResult",
    "VerificationReport",
    "IrreducibilityResult",
    "check_defining_relations",
    "check_gamma_separation",
    "is_irreducible",
    "is_highest_weight_vector",
    "weyl_dimension",
    "count_standard_tableaux",
]


@dataclass(frozen=True)
class CheckResult:
    relation: str
    tableau: str
    status: str
    residual: float | None = None
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"relation": self.relation, "tableau": self.tableau, "status": self.status}
        if self.residual is not None:
            out["residual"] = self.residual
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationReport:
    """Outcome of a batch of per-tableau checks."""

    name: str
    checks: list[CheckResult]
    mode: str
    metadata: dict = field(default_factory=dict)

    @property
    def passed(self) -> int:
        return sum(c.passed for c in self.checks)

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def __bool__(self):
        return self.ok

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    @property
    def max_residual(self) -> float | None:
        vals = [c.residual for c in self.checks if c.residual is not None]
        return max(vals) if vals else None

    def summary(self) -> dict:
        return {"passed": self.passed, "failed": self.failed, "total": len(self.checks)}

    def to_json(self) -> dict:
        out = {"report": self.name, "mode": self.mode, "ok": self.ok,
               "summary": self.summary(), "metadata": self.metadata,
               "checks": [c.to_json() for c in self.checks]}
        if self.max_residual is not None:
            out["max_residual"] = self.max_residual
        return out

    def to_text(self, max_failures: int = 20) -> str:
        lines = ["%s [%s]: %d passed, %d failed" % (self.name, self.mode, self.passed, self.failed)]
        for k in sorted(self.metadata):
            lines.append("  %s: %s" % (k, self.metadata[k]))
        if self.max_residual is not None:
            lines.append("  max relative residual: %.3e" % self.max_residual)
        for c in self.failures()[:max_failures]:
            lines.append("FAIL %s at %s: %s" % (c.relation, c.tableau, c.witness))
        if self.failed > max_failures:
            lines.append("... %d more failures" % (self.failed - max_failures))
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines)


def _metadata(spec: ModuleSpec, basis: Basis) -> dict:
    meta = {"n": spec.n, "seed": spec.seed.label(), "relations": [str(r) for r in spec.C],
            "radius": basis.radius, "basis_size": len(basis), "complete": basis.complete}
    if spec.mode == "exact":
        meta["root_degree"] = spec.field.root
    else:
        meta.update(spec.numeric.to_json())
    return meta


def _compare(spec: ModuleSpec, lhs: LinearCombination, rhs: LinearCombination):
    fld = spec.field
    if isinstance(fld, ExactField):
        diff = lhs - rhs
        if diff.is_zero():
            return True, None, None
        return False, None, "lhs - rhs = %s" % json.dumps(diff.to_json(), sort_keys=True)
    worst, where = 0.0, None
    for t in set(lhs.terms) | set(rhs.terms):
        r = fld.residual(lhs.coefficient(t), rhs.coefficient(t))
        if r > worst:
            worst, where = r, t
    if worst < fld.tolerance:
        return True, worst, None
    return False, worst, "relative residual %.3e on %s" % (worst, where.label())


def _relation_instances(spec: ModuleSpec, t: Tableau):
    """Yield ``(relation id, lhs, rhs)`` for every defining relation at ``t``."""
    n, fld = spec.n, spec.field
    vec = spec.vector(t)
    memo: dict[tuple, LinearCombination] = {(): vec}

    def word(w: tuple) -> LinearCombination:
        # right-to-left application; words sharing a suffix share the work
        hit = memo.get(w)
        if hit is None:
            hit = memo[w] = spec.apply(w[0], word(w[1:]))
        return hit

    a = weight(t)
    q = fld.q_pow(ExtendedExponent(Fraction(1)))
    qsum = q + fld.q_pow(ExtendedExponent(Fraction(-1)))
    zero = LinearCombination({}, fld)
    for k in range(1, n + 1):
        yield ("R1 qeps%d*qeps-%d" % (k, k),
               word(("qeps%d" % k, "qeps-%d" % k)), vec)
    for k in range(1, n + 1):
        for i in range(1, n):
            pair = (k == i) - (k == i + 1)
            c = fld.q_pow(ExtendedExponent(Fraction(pair)))
            cinv = fld.q_pow(ExtendedExponent(Fraction(-pair)))
            yield ("R2 eps%d,e%d" % (k, i),
                   word(("qeps%d" % k, "e%d" % i, "qeps-%d" % k)),
                   word(("e%d" % i,)).scale(c))
            yield ("R3 eps%d,f%d" % (k, i),
                   word(("qeps%d" % k, "f%d" % i, "qeps-%d" % k)),
                   word(("f%d" % i,)).scale(cinv))
    for i in range(1, n):
        for j in range(1, n):
            lhs = word(("e%d" % i, "f%d" % j)) - word(("f%d" % j, "e%d" % i))
            rhs = vec.scale(fld.q_number(a[i - 1] - a[i])) if i == j else zero
            yield ("R4 e%d,f%d" % (i, j), lhs, rhs)
    for x in ("e", "f"):
        tag = "R5" if x == "e" else "R6"
        for i in range(1, n):
            for j in (i - 1, i + 1):
                if not 1 <= j <= n - 1:
                    continue
                gi, gj = "%s%d" % (x, i), "%s%d" % (x, j)
                lhs = word((gi, gi, gj)) + word((gj, gi, gi))
                rhs = word((gi, gj, gi)).scale(qsum)
                yield ("%s %s,%s" % (tag, gi, gj), lhs, rhs)
        for i in range(1, n):
            for j in range(i + 2, n):
                gi, gj = "%s%d" % (x, i), "%s%d" % (x, j)
                yield ("R7 %s,%s" % (gi, gj), word((gi, gj)), word((gj, gi)))


def check_defining_relations(spec: ModuleSpec, radius: int,
                             basis: Basis | None = None) -> VerificationReport:
    """Verify every defining relation as an identity on each windowed basis tableau.

    Membership is intrinsic, so verdicts are exact per tableau even when the
    window does not contain the whole basis.
    """
    basis = basis if basis is not None else spec.enumerate_basis(radius)
    checks = []
    for t in basis:
        label = t.label()
        for rid, lhs, rhs in _relation_instances(spec, t):
            ok, res, witness = _compare(spec, lhs, rhs)
            checks.append(CheckResult(rid, label, "pass" if ok else "fail", res, witness))
    return VerificationReport("defining relations", checks, spec.mode, _metadata(spec, basis))


def check_gamma_separation(spec: ModuleSpec, radius: int,
                           basis: Basis | None = None) -> VerificationReport:
    """Pairwise distinctness of GT characters over the windowed basis.

    Numeric mode requires the characters to differ at every sample.
    """
    basis = basis if basis is not None else spec.enumerate_basis(radius)
    tabs = list(basis)
    keys = [(m, k) for m in range(1, spec.n + 1) for k in range(1, m + 1)]
    clash: dict[int, int] = {}
    if spec.mode == "exact":
        seen: dict[tuple, int] = {}
        for idx, t in enumerate(tabs):
            ch = character(t, spec.field)
            sig = tuple(ch[key] for key in keys)
            if sig in seen:
                clash[idx] = seen[sig]
            else:
                seen[sig] = idx
    else:
        fld = spec.field
        vals = np.array([[character(t, fld)[key] for key in keys] for t in tabs])
        # shape (N, chars, samples)
        for idx in range(1, len(tabs)):
            a = vals[idx]
            rel = np.abs(vals[:idx] - a) / np.maximum(1.0, np.abs(a))
            same = np.all(rel < fld.tolerance, axis=1)  # (idx, samples)
            hit = np.nonzero(np.any(same, axis=1))[0]
            if hit.size:
                clash[idx] = int(hit[0])
    checks = []
    for idx, t in enumerate(tabs):
        if idx in clash:
            checks.append(CheckResult("gamma-separation", t.label(), "fail",
                                      witness="same character as %s" % tabs[clash[idx]].label()))
        else:
            checks.append(CheckResult("gamma-separation", t.label(), "pass"))
    return VerificationReport("gamma separation", checks, spec.mode, _metadata(spec, basis))


@dataclass(frozen=True)
class IrreducibilityResult:
    irreducible: bool
    maximal: RelationSet
    maximal_admissible: bool
    missing_weak: tuple = ()
    missing_strict: tuple = ()

    def __bool__(self):
        return self.irreducible

    def to_json(self) -> dict:
        fmt = lambda pairs: ["(%d,%d)>=(%d,%d)" % (*a, *b) for a, b in pairs]
        return {"irreducible": self.irreducible, "maximal": self.maximal.to_json(),
                "maximal_admissible": self.maximal_admissible,
                "missing_weak": fmt(self.missing_weak),
                "missing_strict": [s.replace(">=", ">") for s in fmt(self.missing_strict)]}


def is_irreducible(spec: ModuleSpec) -> IrreducibilityResult:
    """Irreducible iff the relation set implies the seed's maximal set."""
    import warnings

    from .relations import NotAdmissibleWarning

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NotAdmissibleWarning)
        M = maximal_set(spec.seed)
    weak, strict = implication_gap(spec.C, M)
    return IrreducibilityResult(implies(spec.C, M), M, bool(is_admissible(M)),
                                tuple(weak), tuple(strict))


def is_highest_weight_vector(spec: ModuleSpec, t: Tableau) -> bool:
    """True iff every ``e_k`` kills ``t``."""
    return all(spec.act_e(k, t).is_zero() for k in range(1, spec.n))


def _dominant(lam) -> list[Fraction]:
    lam = [Fraction(x) for x in lam]
    for a, b in zip(lam, lam[1:]):
        d = a - b
        if d.denominator != 1 or d < 0:
            raise ValueError("weight %s is not dominant integral" % [str(x) for x in lam])
    return lam


def weyl_dimension(lam, n: int | None = None) -> int:
    """``prod_{i<j} (lam_i - lam_j + j - i) / (j - i)``."""
    lam = _dominant(lam)
    if n is not None and n != len(lam):
        raise ValueError("weight has %d parts, expected %d" % (len(lam), n))
    out = Fraction(1)
    for i in range(len(lam)):
        for j in range(i + 1, len(lam)):
            out *= Fraction(lam[i] - lam[j] + j - i, j - i)
    if out.denominator != 1:
        raise ArithmeticError("non-integral dimension %s" % out)
    return int(out)


def count_standard_tableaux(lam) -> int:
    """Size of the enumerated standard basis with top row ``lam_j - j``."""
    lam = _dominant(lam)
    spec = standard_module(lam)
    basis = spec.enumerate_basis(int(lam[0] - lam[-1]) + 1)
    if not basis.complete:
        raise ArithmeticError("standard basis did not close inside the window")
    return len(basis)
