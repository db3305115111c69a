"""Recursive-descent parser and pretty printer for the operator grammar.

Grammar (stable public contract)::

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' exponent)?
    base     := 'x' | 'p' | 'i' | 'hbar' | NUMBER | IDENT
              | IDENT "'"* '(' 'x' ')' | '(' expr ')'
    exponent := ['-'] (NUMBER | IDENT) | '(' affine ')'
    NUMBER   := decimal integer, optionally followed by '/' integer

Multiplication requires an explicit '*' (no juxtaposition) and is
noncommutative and order-preserving for operator factors; i, hbar,
numbers and bare identifiers are scalars and fold into the word
coefficient.  ``f'(x)`` with k apostrophes denotes the k-th formal
derivative of the abstract function f.  Exponents must be affine
combinations of numbers and parameter identifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from .exponents import ExponentExpr
from .operators import (BaseKind, Factor, OperatorExpr, OperatorWord,
                        func_power, p_power, x_power)
from .scalars import ScalarExpr, ScalarError

_KEYWORDS = {"x", "p", "i", "hbar"}


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise ValueError("span start after end")


@dataclass
class ParseError(ValueError):
    message: str
    span: SourceSpan
    expected: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.message:
            raise ValueError("empty parse error message")

    def __str__(self):
        loc = f"at {self.span.start}..{self.span.end}"
        if self.expected:
            return f"{self.message} {loc} (expected {', '.join(self.expected)})"
        return f"{self.message} {loc}"


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str          # IDENT, INT, op chars, EOF
    text: str
    span: SourceSpan


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("INT", text[i:j], SourceSpan(i, j)))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("IDENT", text[i:j], SourceSpan(i, j)))
            i = j
            continue
        if ch in "+-*/^()'":
            tokens.append(_Token(ch, ch, SourceSpan(i, i + 1)))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", SourceSpan(i, i + 1),
                         ["operator", "identifier", "number"])
    tokens.append(_Token("EOF", "", SourceSpan(n, n)))
    return tokens


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> _Token:
        if self.cur.kind != kind:
            raise ParseError(f"unexpected token {self.cur.text or 'end of input'!r}",
                             self.cur.span, [what or kind])
        return self.advance()

    # -- numbers --------------------------------------------------------
    def number(self) -> Fraction:
        tok = self.expect("INT", "number")
        value = Fraction(int(tok.text))
        if self.cur.kind == "/" and self.tokens[self.pos + 1].kind == "INT":
            self.advance()
            den = int(self.advance().text)
            if den == 0:
                raise ParseError("zero denominator in ratio", tok.span,
                                 ["nonzero integer"])
            value /= den
        return value

    # -- exponents ------------------------------------------------------
    def exponent(self) -> ExponentExpr:
        if self.cur.kind == "(":
            self.advance()
            e = self.affine_expr()
            self.expect(")", "')'")
            return e
        neg = False
        if self.cur.kind == "-":
            self.advance()
            neg = True
        if self.cur.kind == "INT":
            e = ExponentExpr.number(self.number())
        elif self.cur.kind == "IDENT":
            e = self.affine_ident()
        else:
            raise ParseError("invalid exponent", self.cur.span,
                             ["number", "identifier", "'('"])
        return -e if neg else e

    def affine_ident(self) -> ExponentExpr:
        tok = self.expect("IDENT", "identifier")
        if tok.text in ("x", "p"):
            raise ParseError("operator-valued exponent unsupported", tok.span,
                             ["parameter identifier"])
        if tok.text in ("i", "hbar"):
            raise ParseError(f"{tok.text!r} not allowed in exponents", tok.span,
                             ["parameter identifier"])
        return ExponentExpr.param(tok.text)

    def affine_expr(self) -> ExponentExpr:
        total = self.affine_term(allow_leading_minus=True)
        while self.cur.kind in ("+", "-"):
            op = self.advance().kind
            term = self.affine_term()
            total = total + term if op == "+" else total - term
        return total

    def affine_term(self, allow_leading_minus: bool = False) -> ExponentExpr:
        sign = 1
        if allow_leading_minus and self.cur.kind == "-":
            self.advance()
            sign = -1
        value = self.affine_atom()
        while self.cur.kind in ("*", "/"):
            op = self.advance()
            rhs = self.affine_atom()
            if op.kind == "*":
                if not (value.is_constant or rhs.is_constant):
                    raise ParseError("nonlinear exponent unsupported", op.span,
                                     ["affine combination"])
                value = (rhs.scale(value.const) if value.is_constant
                         else value.scale(rhs.const))
            else:
                if not rhs.is_constant:
                    raise ParseError("division by non-number in exponent",
                                     op.span, ["number"])
                if rhs.const == 0:
                    raise ParseError("division by zero in exponent", op.span,
                                     ["nonzero number"])
                value = value.scale(Fraction(1) / rhs.const)
        return value.scale(sign) if sign == -1 else value

    def affine_atom(self) -> ExponentExpr:
        if self.cur.kind == "INT":
            return ExponentExpr.number(self.number())
        if self.cur.kind == "IDENT":
            return self.affine_ident()
        if self.cur.kind == "(":
            self.advance()
            e = self.affine_expr()
            self.expect(")", "')'")
            return e
        raise ParseError("invalid exponent", self.cur.span,
                         ["number", "identifier", "'('"])

    # -- expressions ----------------------------------------------------
    def expr(self) -> OperatorExpr:
        negate = False
        if self.cur.kind == "-":
            self.advance()
            negate = True
        total = self.term()
        if negate:
            total = -total
        while self.cur.kind in ("+", "-"):
            op = self.advance().kind
            term = self.term()
            total = total + term if op == "+" else total - term
        return total

    def term(self) -> OperatorExpr:
        product = self.factor()
        while self.cur.kind == "*":
            self.advance()
            product = product * self.factor()
        return product

    def factor(self) -> OperatorExpr:
        base, base_span = self.base()
        if self.cur.kind != "^":
            return base
        caret = self.advance()
        exp = self.exponent()
        return self._apply_exponent(base, exp, base_span, caret.span)

    def _apply_exponent(self, base: OperatorExpr, exp: ExponentExpr,
                        base_span: SourceSpan,
                        caret_span: SourceSpan) -> OperatorExpr:
        single = base.single_factor()
        if single is not None and single[0].is_one:
            factor = single[1]
            new_exp = (exp if factor.exponent == ExponentExpr.number(1)
                       else factor.exponent if exp == ExponentExpr.number(1)
                       else None)
            if new_exp is None:
                # (x^a)^b with both nontrivial: only constant outer powers
                n = exp.as_int()
                if n is None or n < 0:
                    raise ParseError("unsupported exponent on compound expression",
                                     caret_span, ["nonnegative integer"])
                return base.pow(n)
            return OperatorExpr.from_factors(factor.with_exponent(new_exp))
        if base.is_scalar:
            n = exp.as_int()
            if n is None:
                raise ParseError("scalar base requires an integer exponent",
                                 caret_span, ["integer"])
            try:
                return OperatorExpr.identity(base.scalar_value() ** n)
            except ScalarError as err:
                raise ParseError(str(err), base_span, []) from None
        n = exp.as_int()
        if n is None or n < 0:
            raise ParseError("unsupported exponent on compound expression",
                             caret_span, ["nonnegative integer"])
        return base.pow(n)

    def base(self) -> tuple[OperatorExpr, SourceSpan]:
        tok = self.cur
        if tok.kind == "(":
            self.advance()
            inner = self.expr()
            close = self.expect(")", "')'")
            return inner, SourceSpan(tok.span.start, close.span.end)
        if tok.kind == "INT":
            start = tok.span
            value = self.number()
            return OperatorExpr.identity(ScalarExpr(value)), start
        if tok.kind == "IDENT":
            self.advance()
            name = tok.text
            if name == "x":
                return OperatorExpr.from_factors(x_power(1)), tok.span
            if name == "p":
                return OperatorExpr.from_factors(p_power(1)), tok.span
            if name == "i":
                return OperatorExpr.identity(ScalarExpr.i()), tok.span
            if name == "hbar":
                return OperatorExpr.identity(ScalarExpr.hbar()), tok.span
            deriv = 0
            while self.cur.kind == "'":
                self.advance()
                deriv += 1
            if self.cur.kind == "(":
                self.advance()
                arg = self.expect("IDENT", "'x'")
                if arg.text != "x":
                    raise ParseError("abstract functions take the argument x",
                                     arg.span, ["'x'"])
                self.expect(")", "')'")
                return (OperatorExpr.from_factors(func_power(name, 1, deriv)),
                        tok.span)
            if deriv:
                raise ParseError("derivative mark requires a function application",
                                 self.cur.span, ["'('"])
            return OperatorExpr.identity(ScalarExpr.param(name)), tok.span
        raise ParseError(f"unexpected token {tok.text or 'end of input'!r}",
                         tok.span,
                         ["'x'", "'p'", "'i'", "'hbar'", "number",
                          "identifier", "'('"])

    def parse(self) -> OperatorExpr:
        result = self.expr()
        if self.cur.kind != "EOF":
            raise ParseError(f"trailing input {self.cur.text!r}", self.cur.span,
                             ["end of input", "'+'", "'-'", "'*'"])
        return result


def parse_operator(text: str) -> OperatorExpr:
    """Parse the operator grammar into an :class:`OperatorExpr`."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printer
# ---------------------------------------------------------------------------

def _fraction_text(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _exponent_text(e: ExponentExpr) -> str:
    if e.is_constant:
        if e.const.denominator == 1:
            return str(e.const.numerator)
        return f"({_fraction_text(e.const)})"
    if e.const == 0 and len(e.linear) == 1 and e.linear[0][1] == 1:
        return e.linear[0][0]
    parts = []
    if e.const:
        parts.append(_fraction_text(e.const))
    for name, coeff in e.linear:
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if mag == 1:
            piece = name
        elif mag.denominator == 1:
            piece = f"{mag.numerator}*{name}"
        else:
            piece = f"{mag.numerator}*{name}/{mag.denominator}"
        if not parts:
            parts.append(piece if sign == "+" else f"-{piece}")
        else:
            parts.append(f"{sign} {piece}")
    return "(" + " ".join(parts) + ")"


def _factor_text(f: Factor) -> str:
    if f.kind is BaseKind.X:
        base = "x"
    elif f.kind is BaseKind.P:
        base = "p"
    else:
        base = f.name + "'" * f.deriv + "(x)"
    if f.exponent == ExponentExpr.number(1):
        return base
    return f"{base}^{_exponent_text(f.exponent)}"


def _monomial_pieces(rational: Fraction, has_i: bool, powers: dict) -> list[str]:
    pieces = []
    if abs(rational) != 1 or (not powers and not has_i):
        pieces.append(_fraction_text(abs(rational)))
    if has_i:
        pieces.append("i")
    for sym in sorted(powers, key=lambda s: str(s)):
        k = powers[sym]
        pieces.append(str(sym) if k == 1 else f"{sym}^{k}")
    return pieces


def _scalar_terms(expr: sympy.Expr) -> list[tuple[int, list[str]]]:
    """Decompose a polynomial sympy expression into signed monomial pieces."""
    terms = []
    for term in sympy.Add.make_args(sympy.expand(expr)):
        coeff, rest = term.as_coeff_Mul()
        if not coeff.is_Rational:
            raise ScalarError(f"cannot print coefficient term {term}")
        has_i = False
        powers = {}
        if rest != 1:
            for base, k in rest.as_powers_dict().items():
                if base is sympy.S.NegativeOne and k == sympy.Rational(1, 2):
                    has_i = True
                elif base is sympy.I:
                    has_i = bool(int(k) % 2)  # I^2 folds into the rational
                elif base.is_Symbol:
                    powers[base] = int(k)
                else:
                    raise ScalarError(f"cannot print coefficient term {term}")
        sign = -1 if coeff < 0 else 1
        rational = Fraction(int(coeff.p), int(coeff.q))
        terms.append((sign, _monomial_pieces(rational, has_i, powers)))
    return terms


def _coefficient_text(s: ScalarExpr) -> tuple[int, str]:
    """(sign, text) for a coefficient; multi-term coefficients get parens."""
    num, den = sympy.fraction(s.expr)
    if den.is_Rational and den != 1:
        num, den = num / den, sympy.Integer(1)
    if not den.free_symbols and not den.is_Rational:
        # e.g. a Gaussian-rational denominator: clear it
        num, den = sympy.expand(num * sympy.conjugate(den)), sympy.Abs(den) ** 2
        num, den = sympy.cancel(num / den), sympy.Integer(1)
        num, den = sympy.fraction(num)
    num_terms = _scalar_terms(num)
    if len(num_terms) == 1:
        sign, pieces = num_terms[0]
        text = " * ".join(pieces) if pieces else "1"
    else:
        sign = 1
        body = ""
        for i, (tsign, pieces) in enumerate(num_terms):
            chunk = " * ".join(pieces) if pieces else "1"
            if i == 0:
                body = ("-" if tsign < 0 else "") + chunk
            else:
                body += (" - " if tsign < 0 else " + ") + chunk
        text = f"({body})"
    if den != 1:
        den_terms = _scalar_terms(den)
        if len(den_terms) == 1 and den_terms[0][0] > 0:
            den_text = " * ".join(den_terms[0][1]) or "1"
            if len(den_terms[0][1]) > 1:
                den_text = f"({den_text})"
        else:
            body = ""
            for i, (tsign, pieces) in enumerate(den_terms):
                chunk = " * ".join(pieces) if pieces else "1"
                if i == 0:
                    body = ("-" if tsign < 0 else "") + chunk
                else:
                    body += (" - " if tsign < 0 else " + ") + chunk
            den_text = f"({body})"
        text = f"{text} * {den_text}^-1" if text != "1" else f"{den_text}^-1"
    return sign, text


_GENERIC_POINT: dict[str, float] = {}


def _generic_value(name: str) -> float:
    # fixed pseudo-random irrational-ish assignment; deterministic per name
    try:
        return _GENERIC_POINT[name]
    except KeyError:
        h = 0
        for ch in name:
            h = (h * 131 + ord(ch)) % 100003
        val = 0.1 + (h / 100003.0) * 0.7
        _GENERIC_POINT[name] = val
        return val


def _word_sort_key(word: OperatorWord):
    p_degree = 0.0
    carrier_degree = 0.0
    sig_parts = []
    for f in word.factors:
        e = f.exponent
        val = float(e.const) + sum(float(c) * _generic_value(n)
                                   for n, c in e.linear)
        if f.kind is BaseKind.P:
            p_degree += val
        else:
            carrier_degree += val
        sig_parts.append(_factor_text(f))
    return (-p_degree, -carrier_degree, " ".join(sig_parts))


def print_operator(e: OperatorExpr) -> str:
    """Deterministic textual form; re-parses to the same normal form."""
    if not e.words:
        return "0"
    chunks = []
    for word in sorted(e.words, key=_word_sort_key):
        sign, coeff_text = _coefficient_text(word.coefficient)
        pieces = []
        if coeff_text != "1" or not word.factors:
            pieces.append(coeff_text)
        pieces.extend(_factor_text(f) for f in word.factors)
        body = " * ".join(pieces)
        if not chunks:
            chunks.append(("-" if sign < 0 else "") + body)
        else:
            chunks.append(("- " if sign < 0 else "+ ") + body)
    return " ".join(chunks)
