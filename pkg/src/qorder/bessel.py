"""Bessel functions of the first kind, self-contained.

Power series (double-double accumulation) for z <= 30, Hankel
asymptotic expansion beyond; every value carries a rigorous absolute
error bound from the truncation analysis in :mod:`qorder._kernels`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._kernels import _j_asymptotic, _j_series

_SERIES_ASYMPTOTIC_SWITCH = 30.0
_Z_MAX = 1.0e4


class BesselDomainError(ValueError):
    pass


@dataclass(frozen=True)
class BesselEval:
    order: float
    argument: float
    value: float
    abs_error_bound: float


def _j_any(nu: float, z: float) -> tuple[float, float]:
    """(value, bound) for any real order; negative integer orders via
    the symmetry J_{-n} = (-1)^n J_n."""
    if z == 0.0:
        if nu == 0.0:
            return 1.0, 0.0
        if nu > 0.0:
            return 0.0, 0.0
        if nu == round(nu):
            return (1.0, 0.0) if nu % 2 == 0 else (0.0, 0.0)
        raise BesselDomainError("domain error")
    if z > _SERIES_ASYMPTOTIC_SWITCH:
        return _j_asymptotic(nu, z)
    if nu < 0.0 and nu == round(nu):
        n = int(round(-nu))
        value, bound = _j_series(float(n), z)
        return ((-1.0) ** n) * value, bound
    return _j_series(nu, z)


def bessel_j(nu: float, z: float) -> BesselEval:
    """J_nu(z) for nu >= 0, 0 <= z <= 1e4, with an absolute error bound."""
    if nu < 0.0 or z < 0.0 or z > _Z_MAX or not (math.isfinite(nu)
                                                 and math.isfinite(z)):
        raise BesselDomainError("domain error")
    value, bound = _j_any(nu, z)
    return BesselEval(nu, z, value, bound)


def bessel_j_derivatives(nu: float, z: float) -> tuple[float, float, float]:
    """(J_nu, J_nu', J_nu'') via the two-sided recurrences.

    J' = (J_{nu-1} - J_{nu+1}) / 2 and J'' = (J_{nu-2} - 2 J_nu
    + J_{nu+2}) / 4, so the second derivative is independent of the
    Bessel ODE and the ODE residual is a genuine consistency check.
    """
    if nu < 0.0 or z < 0.0 or z > _Z_MAX:
        raise BesselDomainError("domain error")
    if z == 0.0 and 0.0 < nu < 2.0:
        raise BesselDomainError("domain error")
    j = _j_any(nu, z)[0]
    jm = _j_any(nu - 1.0, z)[0]
    jp = _j_any(nu + 1.0, z)[0]
    jmm = _j_any(nu - 2.0, z)[0]
    jpp = _j_any(nu + 2.0, z)[0]
    return j, 0.5 * (jm - jp), 0.25 * (jmm - 2.0 * j + jpp)


def bessel_first_zero(nu: float) -> float:
    """Smallest positive zero of J_nu for 0 <= nu <= 2, by bisection."""
    if not 0.0 <= nu <= 2.0:
        raise BesselDomainError("domain error")
    lo = 1e-6
    hi = lo
    step = 0.1
    flo = _j_any(nu, lo)[0]
    while True:
        hi += step
        fhi = _j_any(nu, hi)[0]
        if flo * fhi <= 0.0:
            break
        lo, flo = hi, fhi
        if hi > 30.0:
            raise BesselDomainError("no sign change found")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if hi - lo < 1e-13:
            break
        fm = _j_any(nu, mid)[0]
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)
