"""Coordinates on the upper half-plane built from the curves ``Gamma_eta``.

A point ``u`` of ``C+ \\ {u0}`` is written ``u = g(eta, xi) = f0(h(eta, xi))``
with

* ``h(eta, xi) = exp(-sqrt(3) (eta + xi) + i xi)``, mapping the strip-like
  set ``Xi`` onto the exterior of the unit disc, and
* ``f0(v) = sqrt(3) i (v - 1) / (1 - |v|^2) + u0``, mapping that exterior
  onto ``C+ \\ {u0}``.

Along ``Gamma_eta = {g(eta, xi) : xi < -eta}`` the imaginary part of the
analytic extension of ``T0`` is constant.  The parameter trapezoid
``Theta`` (``-pi <= eta <= 0``) is mapped into the first quadrant.

Internally everything is evaluated from ``sigma = eta + xi < 0`` and ``xi``
so that neither ``R = exp(-sqrt(3) sigma)`` nor ``R**2`` is ever formed.
"""

from __future__ import annotations

import cmath
import enum
import math
from typing import Iterable, List, NamedTuple

from ._numerics import DomainError, arg, cexpm1
from .real import SQRT3, T_MAX, U0

U0_BAR = U0.conjugate()
_SQRT3_I = complex(0.0, SQRT3)
TWO_PI = 2.0 * math.pi

# slack used when a computed preimage lands a rounding error outside Theta;
# grows like eps/|u - u0| because u carries |u - u0| only to absolute precision
_THETA_SNAP = 1e-12
_EPS = 2.220446049250313e-16


class Region(enum.Enum):
    THETA_INT = "theta_int"
    THETA_BDRY = "theta_bdry"
    XI = "xi"
    DELTA = "delta"
    D_STRIP = "d_strip"
    L_RAY = "l_ray"
    Q_QUAD = "q_quad"
    OUTSIDE = "outside"


class ParamPoint(NamedTuple):
    eta: float
    xi: float

    @property
    def region(self) -> Region:
        """One of THETA_INT, THETA_BDRY (eta = 0 or eta = -pi), XI or OUTSIDE."""
        if in_theta(self):
            if self.eta == 0.0 or self.eta == -math.pi:
                return Region.THETA_BDRY
            return Region.THETA_INT
        if in_xi(self):
            return Region.XI
        return Region.OUTSIDE


# -- region predicates (exact IEEE comparisons) ------------------------------

def in_xi(p: ParamPoint) -> bool:
    eta, xi = p
    return -1.5 * math.pi < eta <= 0.5 * math.pi and xi < -eta


def in_theta(p: ParamPoint) -> bool:
    eta, xi = p
    return -math.pi <= eta <= 0.0 and xi < -eta


def in_D(w: complex) -> bool:
    """Closed strip ``-pi/2 <= Im w <= 0``."""
    return -0.5 * math.pi <= w.imag <= 0.0


def in_L(w: complex) -> bool:
    """Ray ``(-inf, sqrt(3) pi / 9]`` on the real axis."""
    return w.imag == 0.0 and w.real <= T_MAX


def in_Q(z: complex) -> bool:
    """Open first quadrant."""
    return z.real > 0.0 and z.imag > 0.0


# -- f0 and its inverse -------------------------------------------------------

def f0(v: complex) -> complex:
    """``sqrt(3) i (v - 1) / (1 - |v|^2) + u0`` for ``|v| > 1``."""
    v = complex(v)
    r2 = v.real * v.real + v.imag * v.imag
    if not r2 > 1.0:
        raise DomainError(f"f0: need |v| > 1, got |v| = {math.sqrt(r2)}")
    return _SQRT3_I * (v - 1.0) / (1.0 - r2) + U0


def f0_inv(u: complex) -> complex:
    """``(u - conj(u0)) / (conj(u) - conj(u0))``; the result has modulus > 1."""
    u = complex(u)
    if not u.imag > 0.0:
        raise DomainError(f"f0_inv: need Im u > 0, got {u}")
    if u == U0:
        raise DomainError("f0_inv: u0 has no preimage")
    return (u - U0_BAR) / (u.conjugate() - U0_BAR)


def _log_abs_f0_inv(u: complex) -> float:
    # ln|v| = ln(|u - conj u0| / |u - u0|), via |u-conj u0|^2 - |u-u0|^2 = 2 sqrt(3) Im u
    d = u - U0
    return 0.5 * math.log1p(2.0 * SQRT3 * u.imag / (d.real * d.real + d.imag * d.imag))


# -- h and its inverse --------------------------------------------------------

def h_map(p: ParamPoint) -> complex:
    """``exp(-sqrt(3)(eta + xi) + i xi)`` on ``Xi``."""
    if not in_xi(ParamPoint(*p)):
        raise DomainError(f"h_map: {p} is outside Xi")
    eta, xi = p
    return cmath.exp(complex(-SQRT3 * (eta + xi), xi))


def _h_inv_parts(log_abs_v: float, arg_v: float) -> ParamPoint:
    eta0 = -log_abs_v / SQRT3 - arg_v
    k = math.ceil(eta0 / TWO_PI - 0.25)
    eta = eta0 - TWO_PI * k
    # a true eta = pi/2 can round onto the excluded edge -3pi/2; keep the included side
    if eta <= -1.5 * math.pi + 8.0 * _EPS * (1.0 + abs(eta0)):
        k -= 1
        eta = eta0 - TWO_PI * k
    return ParamPoint(eta, arg_v + TWO_PI * k)


def h_inv(v: complex) -> ParamPoint:
    """The unique ``(eta, xi)`` in ``Xi`` with ``h(eta, xi) = v``."""
    v = complex(v)
    r = abs(v)
    if not r > 1.0:
        raise DomainError(f"h_inv: need |v| > 1, got {r}")
    return _h_inv_parts(math.log(r), arg(v))


# -- g = f0 o h ---------------------------------------------------------------

def offset(sigma: float, xi: float) -> complex:
    """``g - u0`` as a function of ``sigma = eta + xi < 0`` and ``xi``.

    Uses ``expm1`` for small ``-sqrt(3) sigma`` and the form divided through
    by ``R`` otherwise, so there is neither cancellation near the diagonal
    nor overflow for very negative ``xi``.
    """
    a = -SQRT3 * sigma
    if a <= 1.0:
        return _SQRT3_I * cexpm1(complex(a, xi)) / -math.expm1(2.0 * a)
    q = math.exp(-a)
    return -_SQRT3_I * (cmath.exp(1j * xi) - q) * (q / -math.expm1(-2.0 * a))


def log_abs_offset(sigma: float, xi: float) -> float:
    """``ln|g - u0|`` that stays finite when ``|g - u0|`` underflows."""
    a = -SQRT3 * sigma
    if a <= 1.0:
        return math.log(abs(offset(sigma, xi)))
    return (
        0.5 * math.log(3.0)
        + math.log(abs(cmath.exp(1j * xi) - math.exp(-a)))
        - a
        - math.log1p(-math.exp(-2.0 * a))
    )


def offset_dlog(sigma: float, xi: float) -> complex:
    """``d/dxi ln(g - u0)`` at fixed ``eta``."""
    a = -SQRT3 * sigma
    slope = complex(-SQRT3, 1.0)
    if a <= 1.0:
        vm1 = cexpm1(complex(a, xi))
        v = vm1 + 1.0
        # d/dxi of 1 - R^2 is 2 sqrt(3) R^2
        return v * slope / vm1 - 2.0 * SQRT3 * math.exp(2.0 * a) / -math.expm1(2.0 * a)
    e = cmath.exp(1j * xi)
    q = math.exp(-a)
    coth = (1.0 + math.exp(-2.0 * a)) / -math.expm1(-2.0 * a)
    return (1j * e - SQRT3 * q) / (e - q) + SQRT3 * coth


def point(sigma: float, xi: float) -> complex:
    """``g`` from ``(sigma, xi)`` with ``Im g`` free of cancellation.

    For ``R <= e`` the sum ``u0 + offset`` can lose ``Im u`` next to the real
    axis, so there ``2 sqrt(3) Im u = |u - u0|^2 (R^2 - 1)`` is used instead.
    Beyond that ``Im u > 0.4`` and the plain sum is exact enough.
    """
    d = offset(sigma, xi)
    a = -SQRT3 * sigma
    if a > 1.0:
        return d + U0
    im = (d.real * d.real + d.imag * d.imag) * math.expm1(2.0 * a) / (2.0 * SQRT3)
    return complex(U0.real + d.real, im)


def _check_xi_range(p: ParamPoint, name: str) -> None:
    if not in_theta(p):
        raise DomainError(f"{name}: {tuple(p)} is outside Theta")


def g_map(p: ParamPoint) -> complex:
    """``g(eta, xi) = f0(h(eta, xi))`` on ``Theta``; lands in the open first quadrant."""
    p = ParamPoint(*p)
    _check_xi_range(p, "g_map")
    return point(p.eta + p.xi, p.xi)


def g_map_xi(p: ParamPoint) -> complex:
    """``g`` on the larger set ``Xi`` (no Theta restriction)."""
    p = ParamPoint(*p)
    if not in_xi(p):
        raise DomainError(f"g_map_xi: {tuple(p)} is outside Xi")
    return point(p.eta + p.xi, p.xi)


def g_inv_sigma(u: complex) -> tuple[float, float]:
    """``(eta, sigma)`` of the ``Theta`` preimage, with ``sigma = eta + xi``.

    ``sigma = -ln|f0^{-1}(u)| / sqrt(3)`` is obtained directly, so it keeps
    full relative accuracy even when ``u`` hugs the real axis and
    ``xi ~ -eta``.
    """
    u = complex(u)
    if not u.imag > 0.0:
        raise DomainError(f"g_inv: need Im u > 0, got {u}")
    if u == U0:
        raise DomainError("g_inv: u0 is not in the image of Theta")
    log_r = _log_abs_f0_inv(u)
    # v - 1 = 2i Im u / (conj(u) - conj(u0)); forming v directly drops Im u near the real axis
    vm1 = 2j * u.imag / (u.conjugate() - U0_BAR)
    base = _h_inv_parts(log_r, math.atan2(vm1.imag, 1.0 + vm1.real))
    sigma = -log_r / SQRT3
    snap = _THETA_SNAP + 16.0 * _EPS * (1.0 + abs(u)) / abs(u - U0)
    for k in (0, -1, 1):
        eta = base.eta - TWO_PI * k
        if -math.pi - snap <= eta <= snap:
            return min(max(eta, -math.pi), 0.0), sigma
    raise DomainError(f"g_inv: {u} lies outside closure(Delta)")


def g_inv(u: complex) -> ParamPoint:
    """Preimage in ``Theta`` of a point of ``closure(Delta)`` off the real axis.

    ``u`` is pulled back through ``f0`` and ``h``; the ``Xi`` representative
    is then shifted by ``2 k pi`` (``k`` in -1, 0, 1) to put ``eta`` in
    ``[-pi, 0]``.  A preimage missing ``[-pi, 0]`` by less than the
    rounding error of the pull-back is snapped onto the boundary curve.
    """
    eta, sigma = g_inv_sigma(u)
    xi = sigma - eta
    # sigma < 0 can round away when |eta| >> |sigma|
    if not xi < -eta:
        xi = math.nextafter(-eta, -math.inf)
    return ParamPoint(eta, xi)


def in_delta(u: complex) -> bool:
    """Membership in the open set ``Delta = g(interior Theta)``."""
    try:
        p = g_inv(u)
    except DomainError:
        return False
    return -math.pi < p.eta < 0.0


def gamma_curve(eta: float, xi_grid: Iterable[float]) -> List[complex]:
    """Samples ``g(eta, xi)`` of the level curve ``Gamma_eta``."""
    if not -math.pi <= eta <= 0.0:
        raise DomainError(f"gamma_curve: eta={eta} outside [-pi, 0]")
    out = []
    for xi in xi_grid:
        if not xi < -eta:
            raise DomainError(f"gamma_curve: xi={xi} must be < -eta={-eta}")
        out.append(point(eta + xi, xi))
    return out


def positivity_margin(p: ParamPoint) -> float:
    """``e^{-sqrt(3)(eta+xi)} - (sqrt(3 sin^2 xi + 1) - sqrt(3) sin xi)``, positive on Theta."""
    eta, xi = p
    sx = math.sin(xi)
    return math.exp(-SQRT3 * (eta + xi)) - (math.sqrt(3.0 * sx * sx + 1.0) - SQRT3 * sx)
