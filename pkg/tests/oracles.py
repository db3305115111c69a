"""Independent symbolic oracle for operator identities.

Realizes every operator word as a differential operator acting on a
sympy test function of a positive symbol x (p acts as -i hbar d/dx) and
compares both sides by symbolic expansion.  This shares no code with
the rewrite engine, so agreement is a genuine cross-check.
"""

import sympy

from qorder.operators import BaseKind
from qorder.scalars import sympy_symbol

X = sympy.Symbol("x", positive=True)
HBAR = sympy_symbol("hbar")


def exponent_to_sympy(e):
    total = sympy.Rational(e.const.numerator, e.const.denominator)
    for name, coeff in e.linear:
        total += (sympy.Rational(coeff.numerator, coeff.denominator)
                  * sympy_symbol(name))
    return total


def _apply_factor(f, expr):
    if f.kind is BaseKind.P:
        n = f.exponent.as_int()
        assert n is not None and n >= 0, "oracle needs integer p powers"
        for _ in range(n):
            expr = -sympy.I * HBAR * sympy.diff(expr, X)
        return expr
    if f.kind is BaseKind.X:
        return X ** exponent_to_sympy(f.exponent) * expr
    base = sympy.Function(f.name)(X)
    if f.deriv:
        base = sympy.diff(base, X, f.deriv)
    return base ** exponent_to_sympy(f.exponent) * expr


def apply_operator(e, phi):
    """Apply an OperatorExpr to a sympy expression in X."""
    total = sympy.Integer(0)
    for word in e.words:
        expr = phi
        for f in reversed(word.factors):
            expr = _apply_factor(f, expr)
        total += word.coefficient.expr * expr
    return sympy.expand(total)


def oracle_equal(a, b, phi):
    """Both operators act identically on the test function phi."""
    diff = apply_operator(a, phi) - apply_operator(b, phi)
    diff = sympy.powsimp(sympy.expand(diff), force=True)
    return sympy.simplify(diff) == 0
