"""The real function T0, its inverse, the real W and the named constants.

``T0(s) = int_s^1 t / (t^2 - t + 1) dt`` is strictly decreasing on
``[0, inf)`` with maximum ``T0(0) = sqrt(3) pi / 9`` and ``T0'(0) = 0``,
so its inverse has a square-root branch point at the top of its range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._numerics import DomainError, solve_decreasing

SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class Constants:
    t_max: float
    gamma0: float
    edge: float
    u0: complex
    alpha: float
    beta: complex


def _make_constants() -> Constants:
    t_max = SQRT3 * math.pi / 9.0
    gamma0 = 2.0 / math.expm1(2.0 * t_max)
    return Constants(
        t_max=t_max,
        gamma0=gamma0,
        edge=math.sqrt(2.0 + gamma0),
        u0=complex(0.5, SQRT3 / 2.0),
        alpha=-t_max,
        beta=complex(0.5, -SQRT3 / 6.0),
    )


CONSTANTS = _make_constants()
T_MAX = CONSTANTS.t_max
GAMMA0 = CONSTANTS.gamma0
EDGE = CONSTANTS.edge
U0 = CONSTANTS.u0

# below this distance from T_MAX the inverse starts from sqrt(2 delta)
_BRANCH_SERIES_WINDOW = 1e-4
_ULP_SLACK = 8.0 * 2.220446049250313e-16 * T_MAX


def _check_s(s: float, name: str) -> None:
    if not s >= 0.0:
        raise DomainError(f"{name}: s must be >= 0, got {s}")


def t0(s: float) -> float:
    """Closed form of ``T0(s)`` for ``s >= 0``."""
    _check_s(s, "t0")
    if s < 0.5:
        # exact T_MAX at s = 0, so t0_inv(t0(s)) does not pick up sqrt(ulp) errors
        return T_MAX - t0_drop(s)
    return -(SQRT3 / 3.0) * (math.atan((2.0 * s - 1.0) / SQRT3) - math.pi / 6.0) - 0.5 * math.log(s * s - s + 1.0)


def t0_drop(s: float) -> float:
    """``T0(0) - T0(s)``, accurate for small ``s`` where it behaves like ``s^2/2``."""
    _check_s(s, "t0_drop")
    if s < 2.0:
        # arctan difference folded into one arctan; log1p for the quadratic
        return (SQRT3 / 3.0) * math.atan(SQRT3 * s / (2.0 - s)) + 0.5 * math.log1p(s * (s - 1.0))
    return T_MAX - t0(s)


def t0_prime(s: float) -> float:
    return -s / (s * s - s + 1.0)


def t0_integral(s: float, npoints: int = 64) -> float:
    """``T0(s)`` by Gauss-Legendre quadrature of ``t/(t^2-t+1)`` over ``[s, 1]``.

    Independent of :func:`t0`; the interval is cut into unit-length panels so
    the pole pair at ``(1 +- i sqrt(3))/2`` stays well outside each panel's
    convergence ellipse.
    """
    _check_s(s, "t0_integral")
    if s == 1.0:
        return 0.0
    a, b, sign = (s, 1.0, 1.0) if s < 1.0 else (1.0, s, -1.0)
    x, w = np.polynomial.legendre.leggauss(npoints)
    npanels = max(1, int(math.ceil(b - a)))
    edges = np.linspace(a, b, npanels + 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        t = 0.5 * (hi - lo) * x + 0.5 * (hi + lo)
        total += 0.5 * (hi - lo) * float(np.dot(w, t / (t * t - t + 1.0)))
    return sign * total


def t0_inv(w: float) -> float:
    """Unique ``s >= 0`` with ``T0(s) = w``, for ``w <= sqrt(3) pi / 9``.

    Safeguarded Newton on a bracket ``[0, right]`` where ``right`` doubles
    from 2 until ``T0(right) < w``. Close to the branch point the iteration
    is carried out on ``T0(0) - T0(s) = T0(0) - w`` and started from
    ``sqrt(2 delta)``.
    """
    if math.isnan(w):
        raise DomainError("t0_inv: w is NaN")
    delta = T_MAX - w
    if delta <= 0.0:
        # t0(0) itself may round a few ulps above T_MAX
        if delta >= -_ULP_SLACK:
            return 0.0
        raise DomainError(f"t0_inv: w={w!r} exceeds T0(0)={T_MAX!r}")
    if delta < 1.0:
        # T0(0) - T0(s) is increasing; solve delta - drop(s) = 0 (decreasing in s)
        def f(s: float):
            return delta - t0_drop(s), t0_prime(s)

        hi = 2.0
        x0 = math.sqrt(2.0 * delta) if delta < _BRANCH_SERIES_WINDOW else None
        return solve_decreasing(f, 0.0, hi, f_lo=delta, x0=x0, xtol=1e-300)

    def g(s: float):
        return t0(s) - w, t0_prime(s)

    hi = 2.0
    while t0(hi) >= w:
        hi *= 2.0
    return solve_decreasing(g, 0.0, hi, f_lo=delta, xtol=1e-300)


def w_real(x: float) -> float:
    """``W(x) = ln(1 + 2/(x^2 - 2)) / 2`` for ``|x| > sqrt(2)``."""
    d = x * x - 2.0
    if not d > 0.0:
        raise DomainError(f"w_real: need |x| > sqrt(2), got {x}")
    return 0.5 * math.log1p(2.0 / d)


def mgf_closed(x: float) -> float:
    """Moment generating function from the identity ``1/M(x) = T0^{-1}(ln(1/(1-2x^2))/2)``."""
    if not abs(x) < 1.0 / EDGE:
        raise DomainError(f"mgf_closed: need |x| < 1/edge = {1.0 / EDGE}, got {x}")
    return 1.0 / t0_inv(-0.5 * math.log1p(-2.0 * x * x))
