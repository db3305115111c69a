"""Exact scalar field: arithmetic, conjugation, evaluation, errors."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qorder.scalars import (HBAR, I, ONE, ZERO, ParamSymbol, ScalarError,
                            ScalarExpr)


def test_constructors():
    assert ScalarExpr(3) == 3
    assert ScalarExpr(Fraction(2, 4)) == Fraction(1, 2)
    assert ScalarExpr.number(2, 6) == Fraction(1, 3)
    assert ScalarExpr.param("alpha").depends_on("alpha")
    with pytest.raises(ScalarError):
        ScalarExpr(True)
    with pytest.raises(ScalarError):
        ScalarExpr(1.5)
    with pytest.raises(ScalarError):
        ParamSymbol("i")
    with pytest.raises(ScalarError):
        ParamSymbol("2bad")


def test_field_axioms():
    a = ScalarExpr.param("alpha")
    b = ScalarExpr.param("beta")
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + ONE) == a * b + a
    assert (a - a).is_zero
    assert a / a == ONE
    assert (a + b) - b == a
    assert I * I == -1


def test_rational_function_cancellation():
    a = ScalarExpr.param("alpha")
    num = a * a - ONE
    den = a - ONE
    assert num / den == a + ONE


def test_division_errors():
    with pytest.raises(ScalarError, match="zero denominator"):
        ONE / ZERO
    a = ScalarExpr.param("alpha")
    with pytest.raises(ScalarError, match="zero denominator"):
        a / (a - a)


def test_conjugation():
    a = ScalarExpr.param("alpha")
    z = a + I * HBAR
    assert z.conj() == a - I * HBAR
    assert z.conj().conj() == z
    w = ScalarExpr.param("beta") * I
    assert (z * w).conj() == z.conj() * w.conj()
    assert (z + w).conj() == z.conj() + w.conj()


def test_eval_binds_parameters():
    a = ScalarExpr.param("alpha")
    z = (a * a + ONE) / (a - ScalarExpr(2))
    val = z.eval({"alpha": 3})
    assert abs(val - 10.0) < 1e-12
    with pytest.raises(ScalarError, match="unbound parameter: alpha"):
        z.eval({})
    with pytest.raises(ScalarError, match="pole at binding"):
        z.eval({"alpha": 2})


def test_eval_imaginary():
    z = I * HBAR
    assert z.eval({"hbar": 2}) == 2j


def test_diff_and_subs():
    a = ScalarExpr.param("alpha")
    g = ScalarExpr.param("gamma")
    f = a * g + a
    assert f.diff("alpha") == g + ONE
    assert f.subs_param("gamma", 0) == a
    assert not f.subs_param("alpha", 0).depends_on("alpha")


def test_fragment_restrictions():
    import sympy
    with pytest.raises(ScalarError):
        ScalarExpr(sympy.sin(sympy.Symbol("t")))
    with pytest.raises(ScalarError):
        ScalarExpr(sympy.Symbol("t") ** sympy.Rational(1, 2))


def test_no_hashing():
    with pytest.raises(TypeError):
        hash(ScalarExpr(1))


_rationals = st.builds(
    Fraction, st.integers(-30, 30),
    st.integers(1, 12)).map(lambda f: ScalarExpr(f))


@st.composite
def _scalars(draw):
    base = draw(_rationals)
    if draw(st.booleans()):
        base = base * ScalarExpr.param(draw(st.sampled_from(["alpha", "beta"])))
    if draw(st.booleans()):
        base = base + draw(_rationals) * I
    return base


_small = st.builds(Fraction, st.integers(-7, 7), st.integers(1, 5))


@settings(max_examples=60, deadline=None)
@given(_scalars(), _scalars(), _small, _small)
def test_eval_is_ring_homomorphism(a, b, va, vb):
    """eval commutes with + and * up to a few ulps."""
    env = {"alpha": va, "beta": vb}
    s = (a + b).eval(env)
    p = (a * b).eval(env)
    ea, eb = a.eval(env), b.eval(env)
    assert math.isclose(abs(s - (ea + eb)), 0.0, abs_tol=1e-9 * (1 + abs(s)))
    assert math.isclose(abs(p - ea * eb), 0.0, abs_tol=1e-9 * (1 + abs(p)))


@settings(max_examples=60, deadline=None)
@given(_scalars(), _scalars(), _scalars())
def test_equality_is_congruence(a, b, c):
    """a == b implies a + c == b + c and a * c == b * c."""
    if a == b:
        assert a + c == b + c
        assert a * c == b * c
    assert a == a
    assert a + c - c == a
