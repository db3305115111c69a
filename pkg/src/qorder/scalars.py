"""Exact scalar coefficients: rational functions of real parameters.

Coefficients live in the field QQ(i)(params): multivariate rational
functions with Gaussian-rational coefficients.  All parameters are
declared real (``hbar`` additionally positive), so conjugation fixes
them and maps i to -i.  sympy provides the polynomial arithmetic and
gcd cancellation behind this wrapper; the wrapper enforces the
restricted fragment (no transcendental functions, integer powers only)
and the canonical-form equality contract.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import sympy

_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")

_SYMBOLS: dict[str, sympy.Symbol] = {}


class ScalarError(ValueError):
    """Raised on invalid scalar construction or evaluation."""


def sympy_symbol(name: str) -> sympy.Symbol:
    """Shared real sympy symbol for a parameter name (hbar is positive)."""
    try:
        return _SYMBOLS[name]
    except KeyError:
        pass
    if name == "hbar":
        sym = sympy.Symbol("hbar", positive=True)
    else:
        sym = sympy.Symbol(name, real=True)
    _SYMBOLS[name] = sym
    return sym


@dataclass(frozen=True)
class ParamSymbol:
    """A named real parameter (alpha, gamma, E, hbar, ...)."""

    name: str

    def __post_init__(self):
        if not _IDENT_RE.match(self.name):
            raise ScalarError(f"invalid parameter name {self.name!r}")
        if self.name == "i":
            raise ScalarError('"i" is reserved for the imaginary unit')

    @property
    def sympy(self) -> sympy.Symbol:
        return sympy_symbol(self.name)

    def __str__(self):
        return self.name


def _param_name(p) -> str:
    if isinstance(p, ParamSymbol):
        return p.name
    if isinstance(p, str):
        return ParamSymbol(p).name
    raise ScalarError(f"not a parameter: {p!r}")


def _check_fragment(expr: sympy.Expr) -> None:
    for node in sympy.preorder_traversal(expr):
        if isinstance(node, (sympy.Add, sympy.Mul, sympy.Symbol,
                             sympy.Rational)):
            continue
        if node is sympy.I:
            continue
        if isinstance(node, sympy.Pow):
            if not (node.exp.is_Integer):
                raise ScalarError(
                    f"non-integer power in scalar: {node}")
            continue
        raise ScalarError(f"unsupported scalar subexpression: {node!r}")


class ScalarExpr:
    """Immutable exact scalar; canonicalized rational function."""

    __slots__ = ("_expr",)

    def __init__(self, value=0):
        if isinstance(value, ScalarExpr):
            expr = value._expr
        elif isinstance(value, sympy.Expr):
            expr = sympy.cancel(sympy.together(value))
            _check_fragment(expr)
        elif isinstance(value, bool):
            raise ScalarError("bool is not a scalar")
        elif isinstance(value, int):
            expr = sympy.Integer(value)
        elif isinstance(value, (Fraction, Rational)):
            expr = sympy.Rational(value.numerator, value.denominator)
        elif isinstance(value, ParamSymbol):
            expr = value.sympy
        else:
            raise ScalarError(f"cannot build scalar from {value!r}")
        object.__setattr__(self, "_expr", expr)

    # -- constructors ---------------------------------------------------
    @classmethod
    def number(cls, num, den=1) -> "ScalarExpr":
        return cls(Fraction(num, den))

    @classmethod
    def param(cls, name) -> "ScalarExpr":
        return cls(sympy_symbol(_param_name(name)))

    @classmethod
    def i(cls) -> "ScalarExpr":
        return cls(sympy.I)

    @classmethod
    def hbar(cls) -> "ScalarExpr":
        return cls(sympy_symbol("hbar"))

    # -- basic queries --------------------------------------------------
    @property
    def expr(self) -> sympy.Expr:
        """Canonical sympy form (read-only)."""
        return self._expr

    @property
    def is_zero(self) -> bool:
        return self._expr.is_zero is True

    @property
    def is_one(self) -> bool:
        return self._expr == sympy.Integer(1)

    def free_params(self) -> set[str]:
        return {s.name for s in self._expr.free_symbols}

    def depends_on(self, param) -> bool:
        return _param_name(param) in self.free_params()

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other) -> "ScalarExpr":
        if isinstance(other, ScalarExpr):
            return other
        return ScalarExpr(other)

    def __add__(self, other):
        return ScalarExpr(self._expr + self._coerce(other)._expr)

    __radd__ = __add__

    def __sub__(self, other):
        return ScalarExpr(self._expr - self._coerce(other)._expr)

    def __rsub__(self, other):
        return ScalarExpr(self._coerce(other)._expr - self._expr)

    def __mul__(self, other):
        return ScalarExpr(self._expr * self._coerce(other)._expr)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ScalarError("zero denominator")
        return ScalarExpr(self._expr / other._expr)

    def __rtruediv__(self, other):
        if self.is_zero:
            raise ScalarError("zero denominator")
        return ScalarExpr(self._coerce(other)._expr / self._expr)

    def __neg__(self):
        return ScalarExpr(-self._expr)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise ScalarError("scalar powers must be integers")
        if n < 0 and self.is_zero:
            raise ScalarError("zero denominator")
        return ScalarExpr(self._expr ** n)

    def conj(self) -> "ScalarExpr":
        """Complex conjugation: i -> -i, parameters fixed (declared real)."""
        return ScalarExpr(sympy.conjugate(self._expr))

    def diff(self, param) -> "ScalarExpr":
        return ScalarExpr(sympy.diff(self._expr, sympy_symbol(_param_name(param))))

    def subs_param(self, param, value) -> "ScalarExpr":
        """Exact substitution of a parameter by a rational or scalar."""
        return ScalarExpr(self._expr.subs(
            sympy_symbol(_param_name(param)), self._coerce(value)._expr))

    def eval(self, bindings: dict) -> complex:
        """Numeric evaluation with every free parameter bound."""
        sub = {}
        for key, val in bindings.items():
            sub[sympy_symbol(_param_name(key))] = sympy.sympify(val)
        missing = {s.name for s in self._expr.free_symbols
                   if s not in sub}
        if missing:
            raise ScalarError(
                "unbound parameter: " + ", ".join(sorted(missing)))
        num, den = sympy.fraction(self._expr)
        den_val = complex(den.subs(sub).evalf())
        if den_val == 0:
            raise ScalarError("pole at binding")
        num_val = complex(num.subs(sub).evalf())
        return num_val / den_val

    # -- equality -------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, (ScalarExpr, int, Fraction)):
            return NotImplemented
        diff = sympy.cancel(self._expr - self._coerce(other)._expr)
        return diff.is_zero is True

    __hash__ = None  # canonical equality is semantic; no stable hash

    def __repr__(self):
        return f"ScalarExpr({self._expr})"

    def __str__(self):
        return str(self._expr)


ZERO = ScalarExpr(0)
ONE = ScalarExpr(1)
I = ScalarExpr.i()
HBAR = ScalarExpr.hbar()
