"""Hot numeric kernels: compensated Bessel series and oscillatory lobes.

Kernels are compiled with numba's @njit by default; setting the
environment variable QORDER_DISABLE_NUMBA=1 before import selects the
identical pure-Python path (same code, no JIT), which is what
benchmarks/bench_kernels.py compares.

The Bessel power series is accumulated in double-double arithmetic
(error-free transforms, Dekker splitting) so that the reported absolute
error bound stays below 1e-10 through the series/asymptotic switch at
z = 30 despite the alternating-term cancellation.
"""

from __future__ import annotations

import math
import os

import numpy as np

USE_NUMBA = os.environ.get("QORDER_DISABLE_NUMBA", "0") != "1"

if USE_NUMBA:
    try:
        from numba import njit as _njit

        def jit(func):
            return _njit(cache=True, fastmath=False)(func)
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USE_NUMBA = False

if not USE_NUMBA:
    def jit(func):
        return func


# ---------------------------------------------------------------------------
# double-double building blocks
# ---------------------------------------------------------------------------

@jit
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@jit
def _two_prod(a, b):
    p = a * b
    t = 134217729.0 * a
    ah = t - (t - a)
    al = a - ah
    t = 134217729.0 * b
    bh = t - (t - b)
    bl = b - bh
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


@jit
def _dd_add(xh, xl, yh, yl):
    s, e = _two_sum(xh, yh)
    e += xl + yl
    hi = s + e
    return hi, e - (hi - s)


@jit
def _dd_mul(xh, xl, yh, yl):
    p, e = _two_prod(xh, yh)
    e += xh * yl + xl * yh
    hi = p + e
    return hi, e - (hi - p)


@jit
def _dd_div(xh, xl, yh, yl):
    q1 = xh / yh
    ph, pl = _dd_mul(q1, 0.0, yh, yl)
    rh, rl = _dd_add(xh, xl, -ph, -pl)
    q2 = (rh + rl) / yh
    hi = q1 + q2
    return hi, q2 - (hi - q1)


# ---------------------------------------------------------------------------
# gamma function (Lanczos, g = 7, 9 coefficients)
# ---------------------------------------------------------------------------

_LANCZOS = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])


@jit
def _gamma_pos(x):
    # Lanczos approximation, valid for x >= 0.5
    x -= 1.0
    acc = _LANCZOS[0]
    for k in range(1, 9):
        acc += _LANCZOS[k] / (x + k)
    t = x + 7.5
    return math.sqrt(2.0 * math.pi) * t ** (x + 0.5) * math.exp(-t) * acc


@jit
def _gamma(x):
    if x >= 0.5:
        return _gamma_pos(x)
    # reflection; sin(pi x) via exact integer folding so that relative
    # accuracy survives near the zero crossings (x near an integer)
    n = math.floor(x + 0.5)
    r = x - n  # exact; |r| <= 0.5
    s = math.sin(math.pi * r)
    if n % 2 != 0:
        s = -s
    if s == 0.0:
        return math.inf  # pole at a nonpositive integer
    return math.pi / (s * _gamma_pos(1.0 - x))


# ---------------------------------------------------------------------------
# Bessel J: power series (z <= 30) and Hankel asymptotics (z > 30)
# ---------------------------------------------------------------------------

@jit
def _j_series(nu, z):
    """(value, rigorous abs error bound); requires k + nu + 1 > 0 for all k."""
    x = 0.5 * z
    g = _gamma(nu + 1.0)
    if g == math.inf:
        return 0.0, 0.0
    t0 = x ** nu / g
    sh, sl = t0, 0.0
    th, tl = t0, 0.0
    x2h, x2l = _two_prod(x, x)
    max_term = abs(t0)
    trunc = abs(t0)
    k = 0
    while k < 2000:
        dh, dl = _two_sum(k + 1.0, nu)  # k + 1 + nu
        dh, dl = _dd_mul(dh, dl, k + 1.0, 0.0)
        th, tl = _dd_mul(th, tl, -x2h, -x2l)
        th, tl = _dd_div(th, tl, dh, dl)
        sh, sl = _dd_add(sh, sl, th, tl)
        if abs(sh) > max_term:
            max_term = abs(sh)
        if abs(th) > max_term:
            max_term = abs(th)
        trunc = abs(th)
        k += 1
        if k > x and trunc < 1e-17 * (abs(sh) + 1e-300) and trunc < 1e-25:
            break
    value = sh + sl
    # truncation (geometric tail, ratio < 1/2 once k > x), double-double
    # rounding, and the relative error of t0 (float pow + Lanczos gamma)
    bound = 2.0 * trunc + k * 1e-31 * max_term + 5e-15 * abs(value) + 1e-300
    return value, bound


@jit
def _j_asymptotic(nu, z):
    """Hankel expansion for large z: (value, abs error bound)."""
    mu = 4.0 * nu * nu
    p = 1.0
    q = 0.0
    term = 1.0
    sign = 1.0
    last = abs(term)
    bound_term = 0.0
    k = 0
    while k < 60:
        term = term * (mu - (2.0 * k + 1.0) ** 2) / (8.0 * z * (k + 1.0))
        k += 1
        if abs(term) >= last and k > 2:
            bound_term = abs(term)
            break
        last = abs(term)
        if k % 2 == 1:
            q += sign * term
        else:
            sign = -sign
            p += sign * term
        if abs(term) < 1e-18:
            bound_term = abs(term)
            break
        bound_term = abs(term)
    omega = z - (0.5 * nu + 0.25) * math.pi
    amp = math.sqrt(2.0 / (math.pi * z))
    value = amp * (p * math.cos(omega) - q * math.sin(omega))
    bound = amp * (bound_term + (abs(z) + abs(nu) + 1.0) * 4e-16) + 1e-300
    return value, bound


# ---------------------------------------------------------------------------
# oscillatory tail integrals
# ---------------------------------------------------------------------------
# mode 0: sin(t + q/t) / t          lobes between zeros of sin(t + q/t)
# mode 1: sin(a t) cos(q / t) / t   lobes between zeros of sin(a t)
# mode 2: cos(a t) sin(q / t) / t   lobes between zeros of cos(a t)

@jit
def _osc_integrand(t, a, q, mode):
    if mode == 0:
        return math.sin(t + q / t) / t
    if mode == 1:
        return math.sin(a * t) * math.cos(q / t) / t
    return math.cos(a * t) * math.sin(q / t) / t


@jit
def _lobe_boundary(k, a, q, mode):
    if mode == 0:
        kpi = k * math.pi
        disc = kpi * kpi - 4.0 * q
        if disc < 0.0:
            return -1.0
        return 0.5 * (kpi + math.sqrt(disc))
    if mode == 1:
        return k * math.pi / a
    return (k + 0.5) * math.pi / a


@jit
def _segment(lo, hi, a, q, mode, nodes, weights):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    acc = 0.0
    for i in range(nodes.shape[0]):
        t = mid + half * nodes[i]
        acc += weights[i] * _osc_integrand(t, a, q, mode)
    return acc * half


@jit
def _osc_tail(c, a, q, mode, nodes, weights, max_lobes, tol):
    """integral of the mode integrand over [c, inf).

    Returns (value, error_estimate, converged_flag, lobes_used).
    Head lobes (where the slow cos(q/t)/sin(q/t) factor still changes
    sign) are summed directly; beyond them the alternating lobe sums are
    accelerated with an iterated-averaging Euler transform.
    """
    # first lobe boundary at or beyond c
    k = 0
    while True:
        t = _lobe_boundary(k, a, q, mode)
        if t > c and t > 0.0:
            break
        k += 1
        if k > 10_000_000:
            return 0.0, 1.0, 0, 0
    total = 0.0
    if t > c:
        total += _segment(c, t, a, q, mode, nodes, weights)
    # direct summation while the slow factor may change sign
    slow_limit = 2.0 * q / math.pi if mode != 0 else 0.0
    prev = t
    while prev < slow_limit:
        k += 1
        t = _lobe_boundary(k, a, q, mode)
        total += _segment(prev, t, a, q, mode, nodes, weights)
        prev = t
    # a few safety lobes so the tail is cleanly alternating
    for _ in range(4):
        k += 1
        t = _lobe_boundary(k, a, q, mode)
        total += _segment(prev, t, a, q, mode, nodes, weights)
        prev = t
    # accelerated alternating tail
    partials = np.empty(max_lobes + 1, dtype=np.float64)
    work = np.empty(max_lobes + 1, dtype=np.float64)
    n = 0
    estimate = total
    err = 1e308
    lobes = 0
    while lobes < max_lobes:
        k += 1
        t = _lobe_boundary(k, a, q, mode)
        total += _segment(prev, t, a, q, mode, nodes, weights)
        prev = t
        partials[n] = total
        n += 1
        lobes += 1
        if n >= 6:
            m = min(n, 40)
            for i in range(m):
                work[i] = partials[n - m + i]
            width = m
            prev_est = work[width - 1]
            while width > 1:
                for i in range(width - 1):
                    work[i] = 0.5 * (work[i] + work[i + 1])
                width -= 1
                prev_est = work[0] if width == 1 else prev_est
            new_est = work[0]
            err = abs(new_est - estimate)
            estimate = new_est
            if err < tol:
                return estimate, err + 1e-15 * (abs(estimate) + 1.0), 1, lobes
    return estimate, err, 0, lobes


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(24)
_GL_NODES = np.ascontiguousarray(_GL_NODES)
_GL_WEIGHTS = np.ascontiguousarray(_GL_WEIGHTS)


def osc_tail(c, a, q, mode, max_lobes=2000, tol=1e-12):
    """Python-facing wrapper around the jitted lobe kernel."""
    return _osc_tail(float(c), float(a), float(q), mode,
                     _GL_NODES, _GL_WEIGHTS, int(max_lobes), float(tol))
