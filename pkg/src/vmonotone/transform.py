"""Analytic extension ``T`` of ``T0``, its inverse, and the transforms F and G.

The chain evaluated for ``z`` in the closed upper half-plane is::

    z --W--> w in D --T^{-1}--> u in closure(Delta) --> F(z) = z u,  G = 1/F

``T^{-1}`` is taken from ``t0_inv`` on the ray ``L = (-inf, sqrt(3) pi/9]``
and otherwise from ``g o H^{-1}`` where ``H = T o g`` is known in closed
form on the parameter set ``Theta``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from ._numerics import ConvergenceError, DomainError, PoleError, arg, cexpm1, solve_decreasing
from .geometry import (
    TWO_PI,
    U0,
    ParamPoint,
    g_inv_sigma,
    in_D,
    in_L,
    in_theta,
    log_abs_offset,
    offset,
    offset_dlog,
    point,
)
from .real import EDGE, SQRT3, T_MAX, t0, t0_inv, t0_prime

SQRT2 = math.sqrt(2.0)
_SQRT3_I = complex(0.0, SQRT3)

G_AT_ZERO = complex(0.0, -0.5 * SQRT2 * math.exp(T_MAX))
G_AT_SQRT2 = complex(SQRT2, -math.sqrt(6.0)) / 4.0
F_AT_SQRT2 = SQRT2 * U0

# |w - T_MAX| below which T^{-1} is summed from its branch-point series;
# root finding there loses about eps/|w - T_MAX| relative accuracy
BRANCH_WINDOW = 1e-4
# u = sum c_k eps^k solves T(u) = T_MAX + eps^2/2 (series reversion, exact rationals)
_BRANCH_COEFFS = (
    0.0,
    1j,
    1.0 / 3.0,
    -5j / 18.0,
    -13.0 / 135.0,
    61j / 1080.0,
    4.0 / 243.0,
    -781j / 97200.0,
    -29.0 / 14580.0,
    3751j / 4199040.0,
)


# below this |Im| the coordinates (eta, sigma) approach the subnormal range and lose bits;
# T is expanded to first order off the real line instead (the next term is O(Im^2))
_NEAR_AXIS = 1e-150


class OnRayL(DomainError):
    """``w`` lies on ``L``; invert with :func:`vmonotone.real.t0_inv` instead."""


# -- H = T o g ------------------------------------------------------------------

def _re_h(eta: float, sigma: float) -> tuple[float, float]:
    """``Re H`` and ``d Re H / d xi`` at ``(eta, sigma - eta)``."""
    xi = sigma - eta
    a = -SQRT3 * sigma
    # R e^{i xi} - 1, or a positive multiple of it when R is large
    if a <= 1.0:
        n = cexpm1(complex(a, xi))
    else:
        n = cmath.exp(1j * xi) - math.exp(-a)
    d = offset(sigma, xi)
    d_bar = d + _SQRT3_I  # u - conj(u0)
    ceil_term = TWO_PI * math.ceil((xi - math.pi) / TWO_PI)
    angle = arg(n) - arg(d_bar) + ceil_term + math.pi / 6.0
    log_mod = log_abs_offset(sigma, xi) + math.log(abs(d_bar))
    value = -(SQRT3 / 6.0) * angle - 0.5 * log_mod
    # T'(u) = -u / ((u - u0)(u - conj u0)), du/dxi = d * dlog
    slope = (-(d + U0) * offset_dlog(sigma, xi) / d_bar).real
    return value, slope


def H_exact(p: ParamPoint) -> complex:
    """Closed form of ``H(eta, xi) = T(g(eta, xi))`` on ``Theta``."""
    p = ParamPoint(*p)
    if not in_theta(p):
        raise DomainError(f"H_exact: {tuple(p)} is outside Theta")
    re, _ = _re_h(p.eta, p.eta + p.xi)
    return complex(re, 0.5 * p.eta)


def _check_D(w: complex, name: str) -> None:
    if not in_D(w):
        raise DomainError(f"{name}: {w} is outside the strip -pi/2 <= Im w <= 0")


def _solve_sigma(w: complex) -> tuple[float, float]:
    """``(eta, sigma)`` with ``H(eta, sigma - eta) = w`` for ``w`` in ``D \\ L``."""
    _check_D(w, "H_inv")
    if in_L(w):
        raise OnRayL(f"H_inv: {w} lies on L; use t0_inv")
    eta = 2.0 * w.imag
    target = w.real

    def f(sigma: float) -> tuple[float, float]:
        v, dv = _re_h(eta, sigma)
        return v - target, dv

    # Re H -> +inf as sigma -> -inf and -> -inf (or T_MAX when eta = 0) as sigma -> 0-
    hi = -1.0
    f_hi = f(hi)[0]
    while f_hi >= 0.0:
        hi *= 0.5
        if hi == 0.0:
            raise ConvergenceError(f"H_inv: no upper bracket for {w}")
        f_hi = f(hi)[0]
    lo = -1.0
    f_lo = f(lo)[0]
    while f_lo <= 0.0:
        lo *= 2.0
        if lo < -1e300:
            raise ConvergenceError(f"H_inv: no lower bracket for {w}")
        f_lo = f(lo)[0]
    if lo == hi:
        lo, f_lo = -1.0, f(-1.0)[0]
    sigma = solve_decreasing(f, lo, hi, f_lo=f_lo, f_hi=f_hi)
    return eta, sigma


def H_inv(w: complex) -> ParamPoint:
    """Point of ``Theta`` mapped by ``H`` to ``w`` in ``D \\ L``.

    ``eta = 2 Im w`` and the remaining coordinate is found by safeguarded
    Newton on ``sigma = eta + xi`` (``Re H`` is strictly decreasing along each
    level curve).

    Raises
    ------
    OnRayL
        If ``w`` lies on the ray ``L``.
    DomainError
        If ``w`` is outside the strip ``D``.
    """
    eta, sigma = _solve_sigma(complex(w))
    xi = sigma - eta
    # sigma < 0 can round to xi == -eta when |eta| >> |sigma|
    if not xi < -eta:
        xi = math.nextafter(-eta, -math.inf)
    return ParamPoint(eta, xi)


# -- T and its inverse ------------------------------------------------------------

def T_of(u: complex) -> complex:
    """Continuous extension of ``T0`` to ``closure(Delta) \\ {u0}``."""
    u = complex(u)
    if u.imag == 0.0:
        if u.real < 0.0:
            raise DomainError(f"T_of: negative real {u.real} is outside closure(Delta)")
        return complex(t0(u.real), 0.0)
    if u == U0:
        raise DomainError("T_of: u0 is excluded")
    if 0.0 < u.imag < _NEAR_AXIS and u.real > 0.0:
        return complex(t0(u.real), t0_prime(u.real) * u.imag)
    eta, sigma = g_inv_sigma(u)
    return complex(_re_h(eta, sigma)[0], 0.5 * eta)


def _branch_series(delta: complex) -> complex:
    # principal root: Im delta <= 0 puts i*eps in the closed first quadrant
    eps = cmath.sqrt(2.0 * delta)
    acc = 0j
    for c in reversed(_BRANCH_COEFFS):
        acc = acc * eps + c
    return acc


def t_inv(w: complex) -> complex:
    """Inverse of :func:`T_of` on the strip ``D``."""
    w = complex(w)
    _check_D(w, "t_inv")
    if in_L(w):
        return complex(t0_inv(w.real), 0.0)
    delta = w - T_MAX
    if abs(delta) < BRANCH_WINDOW:
        return _branch_series(delta)
    if w.real < T_MAX and -_NEAR_AXIS < w.imag:
        s = t0_inv(w.real)
        return complex(s, w.imag / t0_prime(s))
    eta, sigma = _solve_sigma(w)
    return point(sigma, sigma - eta)


# -- W and its inverse ------------------------------------------------------------

def _clog1p(q: complex) -> complex:
    re = 0.5 * math.log1p(2.0 * q.real + q.real * q.real + q.imag * q.imag)
    return complex(re, math.atan2(q.imag, 1.0 + q.real))


def w_complex(z: complex) -> complex:
    """``W(z) = Log(1 + 2/(z^2 - 2)) / 2`` continued to the real axis.

    On ``(0, sqrt(2))`` the value is the limit from above,
    ``ln(x^2/(2 - x^2))/2 - i pi/2``; on ``(-sqrt(2), 0)`` it is ``+ i pi/2``.
    """
    z = complex(z)
    if z.imag < 0.0:
        raise DomainError(f"w_complex: need Im z >= 0, got {z}")
    if z.imag == 0.0:
        x = z.real
        if x == 0.0 or abs(x) == SQRT2:
            raise PoleError(f"w_complex: {x} is a singular point")
        x2 = x * x
        if x2 < 2.0:
            re = math.log(abs(x)) - 0.5 * math.log(2.0 - x2)
            return complex(re, -0.5 * math.pi if x > 0.0 else 0.5 * math.pi)
        return complex(0.5 * math.log1p(2.0 / (x2 - 2.0)), 0.0)
    z2 = z * z
    q = 2.0 / (z2 - 2.0)
    if abs(q) < 0.5:
        w = 0.5 * _clog1p(q)
    else:
        w = 0.5 * cmath.log(z2 / (z2 - 2.0))
    # W maps the closed upper half-plane into D; strip rounding noise
    im = min(w.imag, 0.0) if z.real >= 0.0 else w.imag
    return complex(w.real, im)


def branch_sqrt(v: complex) -> complex:
    """Square root with the argument of ``v`` taken in ``(-pi/2, 3pi/2]``."""
    v = complex(v)
    if v == 0:
        return 0j
    phi = arg(v)
    if phi <= -0.5 * math.pi:
        phi += TWO_PI
    return cmath.rect(math.sqrt(abs(v)), 0.5 * phi)


def w1_inv(w: complex) -> complex:
    """``e^w * branch_sqrt(2 / (e^{2w} - 1))``, the inverse of ``W`` on ``closure(Q)``.

    Evaluated in log form so that large ``Re w`` (``z`` near ``sqrt(2)``)
    cannot overflow.
    """
    w = complex(w)
    if w == 0:
        raise PoleError("w1_inv: w = 0 corresponds to z = infinity")
    if w.real <= 0.0:
        den = cexpm1(2.0 * w)
        log_abs_v = math.log(2.0) - math.log(abs(den))
        phi = -arg(den)
    else:
        # e^{2w} - 1 = e^{2w} (1 - e^{-2w})
        tail = -cexpm1(-2.0 * w)
        log_abs_v = math.log(2.0) - 2.0 * w.real - math.log(abs(tail))
        phi = -(2.0 * w.imag + arg(tail))
    # bring the argument of 2/(e^{2w}-1) into (-pi/2, 3pi/2]
    phi = math.remainder(phi, TWO_PI)
    if phi <= -0.5 * math.pi:
        phi += TWO_PI
    return cmath.exp(complex(w.real + 0.5 * log_abs_v, w.imag + 0.5 * phi))


# -- F and G ------------------------------------------------------------------------

def _check_upper(z: complex, name: str) -> None:
    if z.imag < 0.0 or math.isnan(z.real) or math.isnan(z.imag):
        raise DomainError(f"{name}: need Im z >= 0, got {z}")


def F_mu(z: complex) -> complex:
    """Reciprocal Cauchy transform ``F(z) = z T^{-1}(W(z))`` on the closed upper half-plane.

    ``F(sqrt(2)) = sqrt(2) u0``; ``F`` vanishes at ``+-edge``. For
    ``Re z < 0`` the value comes from ``F(z) = -conj F(-conj z)``.
    """
    z = complex(z)
    _check_upper(z, "F_mu")
    if z == 0:
        raise PoleError("F_mu: F(0) = 0 is not reachable through W; use G_mu(0)")
    if z.real < 0.0:
        return -F_mu(complex(-z.real, z.imag)).conjugate()
    if z.imag == 0.0:
        if z.real == SQRT2:
            return F_AT_SQRT2
        # W(EDGE) lands ulps below T_MAX and the square-root branch inflates that to ~1e-8
        if z.real == EDGE:
            return 0j
    return z * t_inv(w_complex(z))


def G_mu(z: complex) -> complex:
    """Cauchy transform ``G = 1/F`` with its boundary values at ``0`` and ``+-sqrt(2)``."""
    z = complex(z)
    _check_upper(z, "G_mu")
    if z == 0:
        return G_AT_ZERO
    if z.real < 0.0:
        return -G_mu(complex(-z.real, z.imag)).conjugate()
    if z.imag == 0.0 and z.real == SQRT2:
        return G_AT_SQRT2
    f = F_mu(z)
    if f == 0:
        raise PoleError(f"G_mu: {z} is a pole (support edge)")
    return 1.0 / f


@dataclass(frozen=True)
class TransformValue:
    z: complex
    w: complex
    u: complex
    F: complex
    G: complex


def evaluate(z: complex) -> TransformValue:
    """Every stage of the chain for ``z`` with ``Re z >= 0`` off the singular points."""
    z = complex(z)
    _check_upper(z, "evaluate")
    if z.real < 0.0:
        raise DomainError("evaluate: use the reflection for Re z < 0")
    w = w_complex(z)
    u = t_inv(w)
    f = z * u
    if f == 0:
        raise PoleError(f"evaluate: {z} is a pole of G")
    return TransformValue(z=z, w=w, u=u, F=f, G=1.0 / f)

