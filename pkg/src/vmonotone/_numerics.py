"""Small numerical kernels shared by the transform modules."""

from __future__ import annotations

import cmath
import math
from typing import Callable, Tuple


class DomainError(ValueError):
    """Argument outside the domain of a map."""


class PoleError(DomainError):
    """Argument sits on a pole or branch point where the value is infinite."""


class ConvergenceError(RuntimeError):
    pass


def cexpm1(z: complex) -> complex:
    """``exp(z) - 1`` without cancellation when ``z`` is close to 0."""
    a, b = z.real, z.imag
    em1 = math.expm1(a)
    half = math.sin(0.5 * b)
    re = em1 * math.cos(b) - 2.0 * half * half
    im = math.exp(a) * math.sin(b)
    return complex(re, im)


def arg(z: complex) -> float:
    """Principal argument in (-pi, pi]."""
    if z.imag == 0.0 and z.real < 0.0:
        return math.pi
    return cmath.phase(z)


def _midpoint(lo: float, hi: float) -> float:
    # geometric mean when the bracket spans orders of magnitude on one side of 0
    # compare signs, not the product, which underflows for tiny brackets
    if (lo > 0.0 and hi > 0.0) or (lo < 0.0 and hi < 0.0):
        a, b = abs(lo), abs(hi)
        if max(a, b) > 4.0 * min(a, b):
            return math.copysign(math.sqrt(a) * math.sqrt(b), lo)
    return 0.5 * (lo + hi)


def solve_decreasing(
    f: Callable[[float], Tuple[float, float]],
    lo: float,
    hi: float,
    f_lo: float | None = None,
    f_hi: float | None = None,
    x0: float | None = None,
    xtol: float = 0.0,
    rtol: float = 4.0 * 2.220446049250313e-16,
    maxiter: int = 200,
) -> float:
    """Root of a strictly decreasing function on a bracket ``[lo, hi]``.

    ``f(x)`` returns ``(value, derivative)``. Newton steps are taken when they
    stay inside the current bracket and otherwise the bracket is bisected, so
    the iteration can never leave ``[lo, hi]``. Bisection is geometric while
    the bracket spans more than a factor 4 on one side of zero.

    Parameters
    ----------
    f : callable
        ``x -> (f(x), f'(x))`` with ``f`` strictly decreasing.
    lo, hi : float
        Bracket with ``f(lo) >= 0 >= f(hi)``.
    x0 : float, optional
        Starting point, defaults to the bracket midpoint.
    xtol, rtol : float
        Stop once the step (or bracket) is below ``xtol + rtol * |x|``.
    """
    if f_lo is None:
        f_lo = f(lo)[0]
    if f_hi is None:
        f_hi = f(hi)[0]
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if not (f_lo > 0.0 > f_hi):
        raise ConvergenceError(f"bracket [{lo}, {hi}] does not straddle a root ({f_lo}, {f_hi})")

    x = _midpoint(lo, hi) if x0 is None or not (lo < x0 < hi) else x0
    for _ in range(maxiter):
        fx, dfx = f(x)
        if fx == 0.0:
            return x
        if fx > 0.0:
            lo = x
        else:
            hi = x
        tol = xtol + rtol * abs(x)
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        step = fx / dfx if dfx != 0.0 and math.isfinite(dfx) else math.nan
        x_new = x - step
        if not (lo < x_new < hi) or not math.isfinite(x_new):
            x_new = _midpoint(lo, hi)
            if x_new == lo or x_new == hi:
                return x_new
        elif abs(step) <= tol:
            return x_new
        x = x_new
    raise ConvergenceError(f"no convergence after {maxiter} iterations in [{lo}, {hi}]")
