"""Command-line front end: ``qgt <verb> ...``.

Exit status: 0 success or true verdict, 1 false verdict or failed checks,
2 malformed or invalid input, 3 mathematical failure (pole, degenerate module).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .gtmodule import DegenerateModuleError, ModuleError, ModuleSpec, parse_generator
from .qcoeff import PoleError, RootDegreeError
from .relations import RelationInputError, RelationSet, is_admissible, maximal_set, rr_applicable, rr_remove
from .tableaux import Tableau
from .verify import (check_defining_relations, check_gamma_separation, count_standard_tableaux,
                     is_irreducible, weyl_dimension)

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_MATH = 0, 1, 2, 3


class InputError(Exception):
    """Raised for unreadable or schema-violating input; carries a location."""


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def _load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError("%s: %s" % (path, exc.strerror or exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s:%d:%d: %s" % (path, exc.lineno, exc.colno, exc.msg)) from None


def _schema(path: str, build):
    obj = _load_json(path)
    try:
        return build(obj)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        if isinstance(exc, ModuleError):
            raise
        raise InputError("%s: %s: %s" % (path, type(exc).__name__, exc)) from None


def _load_tableau(path: str) -> Tableau:
    def build(obj):
        return Tableau.parse(obj) if isinstance(obj, str) else Tableau.from_json(obj)
    return _schema(path, build)


def _load_module(args) -> ModuleSpec:
    def build(obj):
        if args.mode:
            obj = dict(obj, mode=args.mode)
        return ModuleSpec.from_json(obj, mode=os.environ.get("QGT_MODE") or None, seed=args.seed)
    return _schema(args.module, build)


def _vertex(text: str):
    try:
        k, i = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError("--vertex: expected 'k,i', got %r" % text) from None
    return (k, i)


def _weight(text: str):
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except ValueError:
        raise InputError("--hw: expected comma-separated rationals, got %r" % text) from None


# verbs ------------------------------------------------------------------------

def cmd_admissible(args, out) -> int:
    C = _schema(args.relations, RelationSet.from_json)
    report = is_admissible(C)
    out.write((_dump(report.to_json()) if args.json else str(report)) + "\n")
    return EXIT_OK if report else EXIT_FALSE


def cmd_basis(args, out) -> int:
    spec = _load_module(args)
    basis = spec.enumerate_basis(args.radius)
    if args.json:
        out.write(_dump({"radius": basis.radius, "complete": basis.complete, "size": len(basis),
                         "tableaux": [t.label() for t in basis]}) + "\n")
    else:
        for t in basis:
            out.write(t.label() + "\n")
        out.write("# %d tableaux, radius %d, %s\n" % (
            len(basis), basis.radius, "complete" if basis.complete else "incomplete"))
    return EXIT_OK


def cmd_act(args, out) -> int:
    spec = _load_module(args)
    t = _load_tableau(args.tableau)
    try:
        parse_generator(args.gen)
    except ValueError as exc:
        raise InputError("--gen: %s" % exc) from None
    spec.shift_of(t)
    out.write(json.dumps(spec.act(args.gen, t).to_json(), sort_keys=True) + "\n")
    return EXIT_OK


def cmd_matrices(args, out) -> int:
    spec = _load_module(args)
    basis = spec.enumerate_basis(args.radius)
    target = Path(args.out)
    target.mkdir(parents=True, exist_ok=True)
    (target / "basis.txt").write_text("".join(t.label() + "\n" for t in basis))
    for g in spec.generators():
        (target / ("%s.txt" % g)).write_text(spec.matrix(g, basis).to_text())
    out.write("wrote %d matrices of size %d to %s (%s, rng seed %d)\n" % (
        len(spec.generators()), len(basis), target,
        "complete" if basis.complete else "incomplete", spec.numeric.seed))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    spec = _load_module(args)
    basis = spec.enumerate_basis(args.radius)
    reports = [check_defining_relations(spec, args.radius, basis)]
    if args.gamma:
        reports.append(check_gamma_separation(spec, args.radius, basis))
    if args.json:
        out.write(_dump({"rng_seed": spec.numeric.seed,
                         "reports": [r.to_json() for r in reports]}) + "\n")
    else:
        out.write("rng seed: %d\n" % spec.numeric.seed)
        for r in reports:
            out.write(r.to_text() + "\n")
    return EXIT_OK if all(reports) else EXIT_FALSE


def cmd_gamma(args, out) -> int:
    spec = _load_module(args)
    t = _load_tableau(args.tableau)
    spec.shift_of(t)
    ch = spec.character(t)
    table = {"gamma_%d%d" % key: spec.field.format(val) for key, val in sorted(ch.items())}
    if args.json:
        out.write(_dump({"tableau": t.label(), "gamma": table}) + "\n")
    else:
        for key, val in table.items():
            out.write("%s = %s\n" % (key, val))
    return EXIT_OK


def cmd_irreducible(args, out) -> int:
    spec = _load_module(args)
    res = is_irreducible(spec)
    if args.json:
        out.write(_dump(res.to_json()) + "\n")
    else:
        out.write(("irreducible" if res else "not irreducible") + "\n")
        if not res:
            body = res.to_json()
            out.write("maximal set: %s\n" % ", ".join(str(r) for r in res.maximal))
            for rel in body["missing_weak"] + body["missing_strict"]:
                out.write("not implied: %s\n" % rel)
    return EXIT_OK if res else EXIT_FALSE


def cmd_maximal(args, out) -> int:
    import warnings

    t = _load_tableau(args.tableau)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        M = maximal_set(t)
    out.write(_dump(M.to_json()) + "\n")
    return EXIT_OK


def cmd_rr(args, out) -> int:
    import warnings

    C = _schema(args.relations, RelationSet.from_json)
    v = _vertex(args.vertex)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        reduced = rr_remove(C, v)
    verdict = None
    if args.witness:
        try:
            verdict = rr_applicable(C, _load_tableau(args.witness), v, args.mrange)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    body = {"reduced": reduced.to_json(), "applicable": verdict,
            "admissible": bool(is_admissible(reduced))}
    out.write(_dump(body) + "\n")
    return EXIT_OK


def cmd_dim(args, out) -> int:
    lam = _weight(args.hw)
    try:
        d = weyl_dimension(lam)
    except ValueError as exc:
        raise InputError("--hw: %s" % exc) from None
    if args.count:
        out.write("%d %d\n" % (d, count_standard_tableaux(lam)))
    else:
        out.write("%d\n" % d)
    return EXIT_OK


# parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qgt", description="Explicit U_q(gl_n) Gelfand-Tsetlin modules.")
    sub = p.add_subparsers(dest="verb", required=True)

    def module_cmd(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--module", required=True, help="module JSON file")
        sp.add_argument("--mode", choices=("exact", "numeric"),
                        help="coefficient backend (default: file, then $QGT_MODE)")
        sp.add_argument("--seed", type=int, default=42, help="RNG seed for numeric sampling")
        sp.set_defaults(func=fn)
        return sp

    sp = sub.add_parser("admissible", help="check a relation set")
    sp.add_argument("relations")
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_admissible)

    sp = module_cmd("basis", cmd_basis, "enumerate basis tableaux in a window")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--json", action="store_true")

    sp = module_cmd("act", cmd_act, "apply one generator to a tableau")
    sp.add_argument("--gen", required=True)
    sp.add_argument("--tableau", required=True)

    sp = module_cmd("matrices", cmd_matrices, "write generator matrices")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--out", required=True)

    sp = module_cmd("verify", cmd_verify, "check the defining relations")
    sp.add_argument("--radius", type=int, required=True)
    sp.add_argument("--gamma", action="store_true", help="also check GT eigenvalue separation")
    sp.add_argument("--json", action="store_true")

    sp = module_cmd("gamma", cmd_gamma, "GT eigenvalue table of a tableau")
    sp.add_argument("--tableau", required=True)
    sp.add_argument("--json", action="store_true")

    sp = module_cmd("irreducible", cmd_irreducible, "irreducibility via the maximal set")
    sp.add_argument("--json", action="store_true")

    sp = sub.add_parser("maximal", help="maximal relation set of a tableau")
    sp.add_argument("--tableau", required=True)
    sp.set_defaults(func=cmd_maximal)

    sp = sub.add_parser("rr", help="remove all relations at a vertex")
    sp.add_argument("--relations", required=True)
    sp.add_argument("--vertex", required=True, help="position as k,i")
    sp.add_argument("--witness", help="tableau JSON for the applicability test")
    sp.add_argument("--mrange", type=int, default=10)
    sp.set_defaults(func=cmd_rr)

    sp = sub.add_parser("dim", help="Weyl dimension of a dominant integral weight")
    sp.add_argument("--hw", required=True, help='e.g. "2,1,0"')
    sp.add_argument("--count", action="store_true", help="also count standard tableaux")
    sp.set_defaults(func=cmd_dim)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except (DegenerateModuleError, PoleError, ZeroDivisionError) as exc:
        err.write("qgt: mathematical failure: %s\n" % exc)
        return EXIT_MATH
    except (InputError, ModuleError, RelationInputError, RootDegreeError) as exc:
        err.write("qgt: invalid input: %s\n" % exc)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
