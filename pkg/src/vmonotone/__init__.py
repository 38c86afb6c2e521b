"""Moments, Cauchy transform and density of the standard V-monotone Gaussian law."""

from __future__ import annotations

__version__ = "0.1.0"

from ._numerics import ConvergenceError, DomainError, PoleError
from .density import DensitySample, Method, SupportInfo, quad_moment, rho_direct, rho_parametric
from .geometry import ParamPoint, Region, f0, f0_inv, g_inv, g_map, gamma_curve, h_inv, h_map
from .moments import MomentTable, RationalPoly, catalan, hankel, mgf_partial, moments, p_polynomials
from .real import CONSTANTS, EDGE, GAMMA0, T_MAX, mgf_closed, t0, t0_inv, w_real
from .transform import (
    F_mu,
    G_mu,
    H_exact,
    H_inv,
    OnRayL,
    T_of,
    TransformValue,
    branch_sqrt,
    t_inv,
    w1_inv,
    w_complex,
)

__all__ = [
    "CONSTANTS", "EDGE", "GAMMA0", "T_MAX",
    "ConvergenceError", "DomainError", "PoleError", "OnRayL",
    "RationalPoly", "MomentTable", "catalan", "p_polynomials", "moments", "mgf_partial", "hankel",
    "t0", "t0_inv", "w_real", "mgf_closed",
    "ParamPoint", "Region", "f0", "f0_inv", "h_map", "h_inv", "g_map", "g_inv", "gamma_curve",
    "H_exact", "H_inv", "T_of", "t_inv", "w_complex", "branch_sqrt", "w1_inv", "F_mu", "G_mu",
    "TransformValue",
    "DensitySample", "Method", "SupportInfo", "rho_direct", "rho_parametric", "quad_moment",
]
