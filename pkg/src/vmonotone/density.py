"""Density of the V-monotone Gaussian law and quadrature checks against it.

The density is recovered from the boundary values of ``F = 1/G`` on the
real axis, ``rho(x) = Im F(x) / (pi |F(x)|^2)``, and is even, supported on
``[-edge, edge]`` with ``edge = sqrt(2 + gamma0)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ._numerics import ConvergenceError, DomainError
from .geometry import ParamPoint, g_map
from .real import EDGE, T_MAX
from .transform import SQRT2, G_mu, H_exact, t_inv, w1_inv, w_complex

RHO_AT_ZERO = SQRT2 / (2.0 * math.pi) * math.exp(T_MAX)
RHO_AT_SQRT2 = math.sqrt(6.0) / (4.0 * math.pi)

# |x - sqrt(2)| below which the limit value is returned (Re W diverges there)
SQRT2_WINDOW = 1e-10
# rho(x) - rho(0) = O(x^2) is below one ulp here; the root finder loses sigma ~ x
TINY_X = 1e-100
MAX_QUAD_ORDER = 12


class Method(enum.Enum):
    DIRECT = "direct"
    PARAMETRIC = "parametric"
    SPECIAL = "special"


class Branch(enum.Enum):
    INNER = "inner"  # eta = -pi, x in (0, sqrt(2))
    OUTER = "outer"  # eta = 0, x in (sqrt(2), edge)

    @property
    def eta(self) -> float:
        return -math.pi if self is Branch.INNER else 0.0


@dataclass(frozen=True)
class DensitySample:
    x: float
    rho: float
    method: Method


@dataclass(frozen=True)
class SupportInfo:
    edge: float = EDGE
    special_points: Tuple[float, ...] = field(default=(-EDGE, -SQRT2, 0.0, SQRT2, EDGE))


SUPPORT = SupportInfo()


def _rho_from_F(F: complex) -> float:
    return F.imag / (math.pi * (F.real * F.real + F.imag * F.imag))


def rho_direct(x: float) -> DensitySample:
    """Density at ``x`` from the boundary value of ``F``.

    Closed-form values are used for ``|x| < 1e-100``, within ``1e-10`` of ``+-sqrt(2)``
    and outside ``(-edge, edge)``; evenness holds bit-for-bit because only
    ``|x|`` enters the computation.
    """
    x = float(x)
    if math.isnan(x):
        raise DomainError("rho_direct: x is NaN")
    ax = abs(x)
    if ax < TINY_X:
        return DensitySample(x, RHO_AT_ZERO, Method.SPECIAL)
    if ax >= EDGE:
        return DensitySample(x, 0.0, Method.SPECIAL)
    if abs(ax - SQRT2) <= SQRT2_WINDOW:
        return DensitySample(x, RHO_AT_SQRT2, Method.SPECIAL)
    F = ax * t_inv(w_complex(ax))
    return DensitySample(x, max(_rho_from_F(F), 0.0), Method.DIRECT)


def rho_parametric(branch: Branch | str, xi_grid: Iterable[float]) -> List[DensitySample]:
    """Density sampled along the level curve ``eta = -pi`` (INNER) or ``eta = 0`` (OUTER).

    For each ``xi`` the point ``x = W1^{-1}(H(eta, xi))`` is real and
    ``F(x) = x g(eta, xi)``, so no root finding is involved.
    """
    branch = Branch(branch)
    eta = branch.eta
    out = []
    for xi in xi_grid:
        xi = float(xi)
        if not xi < -eta:
            raise DomainError(f"rho_parametric: need xi < {-eta} on the {branch.value} branch, got {xi}")
        p = ParamPoint(eta, xi)
        z = w1_inv(H_exact(p))
        if abs(z.imag) > 1e-8 * (1.0 + abs(z.real)):
            raise ConvergenceError(f"rho_parametric: W1^-1 returned non-real {z} at xi={xi}")
        x = z.real
        out.append(DensitySample(x, _rho_from_F(x * g_map(p)), Method.PARAMETRIC))
    return out


def stieltjes_check(x: float, eps: float) -> float:
    """``-Im G(x + i eps) / pi``, which tends to ``rho(x)`` as ``eps -> 0+``."""
    if not eps > 0.0:
        raise DomainError(f"stieltjes_check: eps must be > 0, got {eps}")
    return -G_mu(complex(x, eps)).imag / math.pi


def edge_ratio(delta_list: Sequence[float]) -> List[float]:
    """``rho(edge - d) sqrt(edge^2 - (edge - d)^2)`` for each ``d`` in ``(0, 0.1)``."""
    out = []
    for d in delta_list:
        if not 0.0 < d < 0.1:
            raise DomainError(f"edge_ratio: delta must be in (0, 0.1), got {d}")
        x = EDGE - d
        out.append(rho_direct(x).rho * math.sqrt(d * (2.0 * EDGE - d)))
    return out


def quad_moment(k: int, npanels: int = 64, nodes: int = 32) -> float:
    """``int x^k rho(x) dx`` over the support by composite Gauss-Legendre.

    With ``x = edge sin(theta)`` the inverse-square-root growth at the edge
    is cancelled by ``dx = edge cos(theta) d theta``.  The theta range is cut
    at ``asin(sqrt(2)/edge)``, where rho is only continuous; panels are
    shared evenly between the two pieces.
    """
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)):
        raise TypeError(f"quad_moment: k must be an integer, got {k!r}")
    if k % 2 or not 0 <= k <= MAX_QUAD_ORDER:
        raise DomainError(f"quad_moment: k must be even in [0, {MAX_QUAD_ORDER}], got {k}")
    return quad_moments([k], npanels=npanels, nodes=nodes)[0]


def quad_moments(ks: Sequence[int], npanels: int = 64, nodes: int = 32) -> List[float]:
    """Several even moments from a single sweep of density evaluations."""
    if npanels < 2 or nodes < 1:
        raise DomainError("quad_moments: need npanels >= 2 and nodes >= 1")
    t, wt = np.polynomial.legendre.leggauss(nodes)
    split = math.asin(SQRT2 / EDGE)
    n_in = npanels // 2
    edges = np.concatenate([
        np.linspace(0.0, split, n_in + 1),
        np.linspace(split, 0.5 * math.pi, npanels - n_in + 1)[1:],
    ])
    xs: List[float] = []
    weights: List[float] = []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        for ti, wi in zip(t, wt):
            theta = half * ti + 0.5 * (a + b)
            xs.append(EDGE * math.sin(theta))
            weights.append(half * wi * EDGE * math.cos(theta))
    base = [w * rho_direct(x).rho for x, w in zip(xs, weights)]
    # factor 2 for the mirrored half; fsum is order-independent
    return [2.0 * math.fsum(b * x ** k for b, x in zip(base, xs)) for k in ks]
