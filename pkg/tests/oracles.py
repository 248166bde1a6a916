"""Reference implementations that share no code with the package."""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy

Q = sympy.Symbol("q")


def sym_q_number(x: int):
    """[x]_q as a sympy rational function, straight from the definition."""
    return sympy.cancel((Q**x - Q**(-x)) / (Q - 1 / Q))


def sym_paren_factorial(k: int):
    out = sympy.Integer(1)
    for j in range(1, k + 1):
        out *= (Q**(-2 * j) - 1) / (Q**(-2) - 1)
    return sympy.cancel(out)


def gt_patterns(top):
    """All integer GT patterns under ``top`` by brute-force interlacing."""
    top = tuple(int(x) for x in top)
    if len(top) == 1:
        return [[top]]
    out = []
    ranges = [range(top[i + 1], top[i] + 1) for i in range(len(top) - 1)]
    for row in itertools.product(*ranges):
        for rest in gt_patterns(row):
            out.append([top] + rest)
    return out


def brute_force_dimension(lam) -> int:
    """Number of GT patterns with top row ``lam`` (classical interlacing form)."""
    return len(gt_patterns(lam))


def dominant_weights(n: int, spread: int):
    """Dominant integral weights with last part 0 and first part at most ``spread``."""
    for parts in itertools.combinations_with_replacement(range(spread, -1, -1), n - 1):
        yield tuple(parts) + (0,)


def sym_gamma(rows_top_first, m: int, k: int):
    """GT eigenvalue on an integer tableau, from the closed formula, in sympy."""
    n = len(rows_top_first)
    row = [int(x) for x in rows_top_first[n - m]]
    total = sum(Q**(sum(row[i] if i in A else -row[i] for i in range(m)))
                for A in itertools.combinations(range(m), k))
    pre = Q**(k * (k + 1) + m * (m - 3) // 2)
    return sympy.cancel(sym_paren_factorial(k) * sym_paren_factorial(m - k) * pre * total)


def to_sympy(scalar_text: str):
    """Parse the package's q- or u-string into sympy (u = q**(1/(2D)) with D = 1)."""
    u = sympy.Symbol("u")
    expr = sympy.sympify(scalar_text.replace("^", "**"), locals={"q": Q, "u": u})
    return sympy.cancel(expr.subs(u, sympy.sqrt(Q)))
