"""Bessel J: exact-rational series oracle, zeros, ODE and recurrence checks."""

import math
from fractions import Fraction

import pytest

from qorder.bessel import (BesselDomainError, bessel_first_zero, bessel_j,
                           bessel_j_derivatives)


def _j_integer_oracle(n: int, z: Fraction, terms: int = 40) -> Fraction:
    """Exact partial sum of the integer-order power series in Fraction
    arithmetic; independent of the production kernel."""
    x = z / 2
    fact = 1
    for k in range(1, n + 1):
        fact *= k
    term = x ** n / fact
    total = term
    for k in range(1, terms):
        term *= -x * x / (k * (k + n))
        total += term
    return total


def test_j0_at_two_against_exact_series():
    oracle = _j_integer_oracle(0, Fraction(2))
    got = bessel_j(0.0, 2.0)
    assert abs(got.value - float(oracle)) <= 1e-10
    assert abs(got.value - 0.2238907791) <= 1e-10


def test_integer_orders_match_exact_series():
    for n in (0, 1, 2, 5):
        for z in (Fraction(1, 2), Fraction(1), Fraction(5), Fraction(10)):
            oracle = float(_j_integer_oracle(n, z, terms=60))
            got = bessel_j(float(n), float(z))
            assert abs(got.value - oracle) <= max(1e-14, got.abs_error_bound)


def test_half_integer_closed_form():
    """J_{1/2}(z) = sqrt(2/(pi z)) sin z."""
    z = 0.1
    while z <= 20.0:
        expected = math.sqrt(2.0 / (math.pi * z)) * math.sin(z)
        got = bessel_j(0.5, z)
        assert abs(got.value - expected) <= 1e-10
        z += 0.1


def test_error_bounds_are_honest():
    """The reported bound dominates the defect against the exact series."""
    for n in (0, 1, 3):
        for z in (Fraction(2), Fraction(15), Fraction(29)):
            oracle = float(_j_integer_oracle(n, z, terms=80))
            got = bessel_j(float(n), float(z))
            assert abs(got.value - oracle) <= got.abs_error_bound
            assert got.abs_error_bound <= 1e-10


def test_large_argument_matches_series_extension():
    """Asymptotic branch agrees with a long exact series at the switch."""
    oracle = float(_j_integer_oracle(0, Fraction(31), terms=120))
    got = bessel_j(0.0, 31.0)
    assert abs(got.value - oracle) <= 1e-9


def test_first_zeros():
    assert abs(bessel_first_zero(0.0) - 2.4048255577) <= 1e-9
    assert abs(bessel_first_zero(1.0) - 3.8317059702) <= 1e-9
    assert abs(bessel_first_zero(0.5) - math.pi) <= 1e-9


def test_zero_argument():
    assert bessel_j(0.0, 0.0).value == 1.0
    assert bessel_j(1.5, 0.0).value == 0.0


def test_ode_residual():
    """z^2 J'' + z J' + (z^2 - nu^2) J = 0 to 1e-9; J'' comes from the
    recurrence, not from the ODE, so this is a real consistency check."""
    for nu in (0.0, 0.25, 0.5, 1.0):
        z = 0.05
        while z <= 20.0:
            j, jp, jpp = bessel_j_derivatives(nu, z)
            residual = z * z * jpp + z * jp + (z * z - nu * nu) * j
            assert abs(residual) <= 1e-9 * max(1.0, z * z)
            z += 0.05


def test_recurrence_consistency():
    """J_{nu-1}(z) + J_{nu+1}(z) = (2 nu / z) J_nu(z) to 1e-9."""
    for nu in (0.0, 0.25, 0.5, 1.0):
        z = 0.05
        while z <= 20.0:
            jm = bessel_j(abs(nu - 1.0), z).value
            if nu - 1.0 < 0 and nu != 0.0:
                # negative non-integer order via the kernel's direct series
                from qorder.bessel import _j_any
                jm = _j_any(nu - 1.0, z)[0]
            elif nu == 0.0:
                jm = -bessel_j(1.0, z).value
            jp = bessel_j(nu + 1.0, z).value
            j = bessel_j(nu, z).value
            assert abs(jm + jp - 2.0 * nu / z * j) <= 1e-9
            z += 0.05


def test_derivative_against_finite_difference():
    h = 1e-6
    for nu in (0.0, 0.5, 1.0):
        for z in (1.0, 5.0, 12.0):
            _, jp, _ = bessel_j_derivatives(nu, z)
            fd = (bessel_j(nu, z + h).value - bessel_j(nu, z - h).value) / (2 * h)
            assert abs(jp - fd) <= 1e-8


def test_domain_errors():
    with pytest.raises(BesselDomainError, match="domain error"):
        bessel_j(-0.5, 1.0)
    with pytest.raises(BesselDomainError, match="domain error"):
        bessel_j(0.0, -1.0)
    with pytest.raises(BesselDomainError, match="domain error"):
        bessel_j(0.0, 2e4)
    with pytest.raises(BesselDomainError, match="domain error"):
        bessel_j_derivatives(0.5, 0.0)
    with pytest.raises(BesselDomainError, match="domain error"):
        bessel_first_zero(2.5)
