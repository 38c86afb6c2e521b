"""Registry of numerical acceptance checks.

Each group returns :class:`CheckResult` rows; a row passes when
``error <= tolerance``.  Reference decimals were evaluated once at 40
digits and are stored to double precision.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Union

import numpy as np

from .config import Config
from .density import (
    RHO_AT_SQRT2,
    RHO_AT_ZERO,
    Branch,
    edge_ratio,
    quad_moments,
    rho_direct,
    rho_parametric,
)
from .geometry import ParamPoint, g_map
from .moments import _p_table, catalan, mgf_partial, moments
from .real import EDGE, GAMMA0, T_MAX, mgf_closed, t0
from .transform import G_mu, H_exact, T_of, t_inv, w1_inv, w_complex

# 40-digit references (independent evaluation of the closed forms)
EDGE_REF = 1.688423423005195277957696380203006721131
G_ZERO_REF = -1.294372727895453187146334735198546750159

# decimals quoted in the acceptance criteria, checked verbatim
EDGE_PRINTED = 1.6884221
G_ZERO_PRINTED = -1.2943951
G_SQRT2_PRINTED = complex(0.3535534, -0.6123724)

Number = Union[float, int, str]


@dataclass(frozen=True)
class CheckResult:
    name: str
    group: str
    value: Number
    target: Number
    error: float
    tolerance: float
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


class _Recorder:
    def __init__(self, group: str, override: Optional[float]):
        self.group = group
        self.override = override
        self.rows: List[CheckResult] = []

    def add(self, name: str, value: Number, target: Number, error: float, tolerance: float, note: str = "") -> None:
        tol = self.override if self.override is not None else tolerance
        err = float(error)
        self.rows.append(
            CheckResult(
                name=f"{self.group}.{name}",
                group=self.group,
                value=value,
                target=target,
                error=err,
                tolerance=tol,
                passed=bool(err <= tol),
                note=note,
            )
        )


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _cplx(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


# -- groups ------------------------------------------------------------------------


def check_moments(rec: _Recorder, cfg: Config) -> None:
    _p_table.cache_clear()
    t_start = time.perf_counter()
    table = moments(40)
    elapsed = time.perf_counter() - t_start
    for n, expected in ((2, Fraction(1)), (4, Fraction(2)), (6, Fraction(14, 3))):
        m = table[n]
        rec.add(f"m{n}", _frac(m), _frac(expected), abs(m - expected), 0.0, "exact rational")
    odd_nonzero = sum(1 for n in range(1, 41, 2) if table[n] != 0)
    rec.add("odd_vanish", odd_nonzero, 0, odd_nonzero, 0.0, "count of nonzero odd moments up to 40")
    above = sum(1 for k in range(21) if table[2 * k] > catalan(k))
    rec.add("catalan_bound", above, 0, above, 0.0, "count of k <= 20 with m_2k > C_k")
    rec.add("runtime_s", elapsed, 0.0, elapsed, 1.0, "moments up to order 40 from a cold cache")


def check_mgf(rec: _Recorder, cfg: Config) -> None:
    worst = 0.0
    for x in (0.1, 0.2, 0.3, 0.4):
        worst = max(worst, abs(mgf_partial(x, cfg.series_order) - mgf_closed(x)))
    rec.add("series_vs_closed", worst, 0.0, worst, 1e-8, f"truncation order {cfg.series_order}")


def check_constants(rec: _Recorder, cfg: Config) -> None:
    ident = 0.5 * math.log1p(2.0 / GAMMA0)
    rec.add("gamma0_identity", ident, T_MAX, abs(ident - T_MAX), 1e-15)
    rec.add("edge_printed", EDGE, EDGE_PRINTED, abs(EDGE - EDGE_PRINTED), 1e-6, "printed decimal")
    rec.add("edge_reference", EDGE, EDGE_REF, abs(EDGE - EDGE_REF), 1e-14, "40-digit reference")


def _d_grid() -> List[complex]:
    pts = []
    for re in np.linspace(-3.0, 6.0, 10):
        for im in np.linspace(-0.5 * math.pi, 0.0, 10):
            pts.append(complex(re, im))
    return pts


def _theta_grid(n: int, xi_min: float) -> List[ParamPoint]:
    out = []
    for eta in np.linspace(-math.pi, 0.0, n):
        for xi in np.linspace(xi_min, -eta, n + 1)[:-1]:
            out.append(ParamPoint(float(eta), float(xi)))
    return out


def check_roundtrips(rec: _Recorder, cfg: Config) -> None:
    pts = _d_grid()
    err = max(abs(T_of(t_inv(w)) - w) for w in pts)
    rec.add("T_of_t_inv", err, 0.0, err, 1e-10, f"{len(pts)} points of D, both branches")

    err_theta = max(abs(t_inv(T_of(u)) - u) for u in (g_map(p) for p in _theta_grid(20, -10.0)))
    err_real = max(abs(t_inv(T_of(complex(s))) - s) for s in np.linspace(0.0, 5.0, 51))
    err = max(err_theta, err_real)
    rec.add("t_inv_T_of", err, 0.0, err, 1e-9, "20x20 Theta-image grid and 51 reals in [0, 5]")

    rng = np.random.default_rng(cfg.seed)
    zs = [complex(a, b) for a, b in rng.uniform(0.01, 3.0, size=(80, 2))]
    zs += [complex(x) for x in np.linspace(0.05, 3.0, 11) if abs(x - math.sqrt(2.0)) > 1e-3][:10]
    zs += [complex(0.0, y) for y in np.linspace(0.05, 3.0, 10)]
    err = max(abs(w1_inv(w_complex(z)) - z) for z in zs)
    rec.add("w1_inv_w", err, 0.0, err, 1e-10, f"{len(zs)} points of closure(Q)")


def check_level_sets(rec: _Recorder, cfg: Config) -> None:
    err = 0.0
    for eta in np.linspace(-math.pi, 0.0, 60):
        for xi in np.linspace(-20.0, -eta, 61)[:-1]:
            err = max(err, abs(H_exact(ParamPoint(eta, xi)).imag - 0.5 * eta))
    rec.add("im_H", err, 0.0, err, 1e-12, "60x60 grid")
    bad = 0
    for eta in (0.0, -0.25 * math.pi, -0.5 * math.pi, -0.75 * math.pi, -math.pi):
        xs = np.linspace(-20.0, -eta, 201)[:-1]
        vals = [H_exact(ParamPoint(eta, float(x))).real for x in xs]
        bad += sum(1 for a, b in zip(vals, vals[1:]) if not a > b)
    rec.add("re_H_decreasing", bad, 0, bad, 0.0, "non-decreasing steps over 5 level curves")


def branch_limit_errors(s: float, ratio: Callable[[float], float], steps: Sequence[float]) -> List[float]:
    """``|H(eta, ratio(s) eta) - T0(s)|`` for ``eta = -step``."""
    out = []
    for step in steps:
        eta = -step
        out.append(abs(H_exact(ParamPoint(eta, ratio(s) * eta)) - t0(s)))
    return out


def check_branch_limit(rec: _Recorder, cfg: Config) -> None:
    steps = (1e-2, 1e-3, 1e-4)
    cases = (
        ("printed_ratio", lambda s: 1.0 / s - 1.0, "xi/eta = 1/s - 1 as printed"),
        ("corrected_ratio", lambda s: 0.5 / s - 1.0, "xi/eta = 1/(2s) - 1"),
    )
    for label, ratio, note in cases:
        for s in (0.5, 1.0, 2.0):
            errs = branch_limit_errors(s, ratio, steps)
            rec.add(f"{label}.s{s:g}.finest", errs[-1], 0.0, errs[-1], 1e-3, note)
            increases = sum(1 for a, b in zip(errs, errs[1:]) if not b < a)
            rec.add(f"{label}.s{s:g}.decreasing", increases, 0, increases, 0.0, note)


def check_quadrature(rec: _Recorder, cfg: Config) -> None:
    t_start = time.perf_counter()
    vals = quad_moments([0, 2, 4, 6], npanels=cfg.quad_panels, nodes=cfg.quad_nodes)
    elapsed = time.perf_counter() - t_start
    for k, v, target, tol in zip((0, 2, 4, 6), vals, (1.0, 1.0, 2.0, 14.0 / 3.0), (1e-6, 1e-6, 1e-5, 1e-4)):
        rec.add(f"k{k}", v, target, abs(v - target), tol)
    rec.add("runtime_s", elapsed, 0.0, elapsed, 30.0)


def check_boundary_values(rec: _Recorder, cfg: Config) -> None:
    g0 = G_mu(0)
    rec.add("G0_printed", _cplx(g0), _cplx(complex(0, G_ZERO_PRINTED)), abs(g0 - complex(0, G_ZERO_PRINTED)), 1e-6,
            "printed decimal")
    rec.add("G0_reference", _cplx(g0), _cplx(complex(0, G_ZERO_REF)), abs(g0 - complex(0, G_ZERO_REF)), 1e-6,
            "40-digit reference")
    g_approach = G_mu(complex(0.0, 1e-9))
    rec.add("G0_limit", _cplx(g_approach), _cplx(complex(0, G_ZERO_REF)), abs(g_approach - complex(0, G_ZERO_REF)),
            1e-6, "G(1e-9 i)")
    gs = G_mu(math.sqrt(2.0))
    rec.add("Gsqrt2_printed", _cplx(gs), _cplx(G_SQRT2_PRINTED), abs(gs - G_SQRT2_PRINTED), 1e-6)


def check_stieltjes(rec: _Recorder, cfg: Config) -> None:
    err = 0.0
    for x in np.linspace(-1.65, 1.65, 50):
        err = max(err, abs(rho_direct(x).rho + G_mu(complex(x, 1e-7)).imag / math.pi))
    rec.add("rho_vs_G", err, 0.0, err, 1e-4, "50 points, eps = 1e-7")


def check_density(rec: _Recorder, cfg: Config) -> None:
    r0 = rho_direct(0.0).rho
    rec.add("rho0", r0, RHO_AT_ZERO, abs(r0 - RHO_AT_ZERO), 1e-12)
    rs = rho_direct(math.sqrt(2.0)).rho
    rec.add("rho_sqrt2", rs, RHO_AT_SQRT2, abs(rs - RHO_AT_SQRT2), 1e-12)
    worst = 0.0
    grids = (
        (Branch.INNER, np.linspace(-20.0, 3.1, 200)),
        (Branch.OUTER, -np.logspace(-3.0, math.log10(20.0), 200)),
    )
    for branch, grid in grids:
        for smp in rho_parametric(branch, grid):
            worst = max(worst, abs(rho_direct(smp.x).rho - smp.rho) / (1.0 + smp.rho))
    rec.add("parametric_vs_direct", worst, 0.0, worst, 1e-8, "relative to 1 + rho")
    xs = np.linspace(-EDGE, EDGE, 2002)[1:-1]
    asym = max(abs(rho_direct(x).rho - rho_direct(-x).rho) for x in xs)
    rec.add("evenness", asym, 0.0, asym, 0.0)
    neg = max(0.0, -min(rho_direct(x).rho for x in xs))
    rec.add("nonnegative", neg, 0.0, neg, 0.0, f"{len(xs)} interior points")


def check_transform(rec: _Recorder, cfg: Config) -> None:
    rng = np.random.default_rng(cfg.seed + 1)
    zs = [complex(a, b) for a, b in zip(rng.uniform(-4.0, 4.0, 200), rng.uniform(1e-3, 4.0, 200))]
    bad = sum(1 for z in zs if not G_mu(z).imag < 0.0)
    rec.add("nevanlinna", bad, 0, bad, 0.0, "count of Im G >= 0 over 200 points of C+")
    z = complex(0.0, 100.0)
    val = abs(z * G_mu(z) - 1.0)
    rec.add("large_z", val, 0.0, val, 2e-4, "|100i G(100i) - 1|")
    sym = max(abs(G_mu(complex(-z.real, z.imag)) + G_mu(z).conjugate()) for z in zs[:50])
    rec.add("symmetry", sym, 0.0, sym, 1e-12)


def check_edge(rec: _Recorder, cfg: Config) -> None:
    r = edge_ratio([1e-4, 5e-5, 2.5e-5])
    var = max(abs(b / a - 1.0) for a, b in zip(r, r[1:]))
    rec.add("stabilization", var, 0.0, var, 0.05, "relative change of rho*sqrt(edge^2-x^2)")


GROUPS: Dict[str, Callable[[_Recorder, Config], None]] = {
    "moments": check_moments,
    "mgf": check_mgf,
    "constants": check_constants,
    "roundtrips": check_roundtrips,
    "level_sets": check_level_sets,
    "branch_limit": check_branch_limit,
    "quadrature": check_quadrature,
    "boundary_values": check_boundary_values,
    "stieltjes": check_stieltjes,
    "density": check_density,
    "transform": check_transform,
    "edge": check_edge,
}


def run_checks(cfg: Config = Config(), only: Iterable[str] = ()) -> List[CheckResult]:
    """Run the selected groups (all by default) in registry order."""
    selected = list(only) or list(cfg.only) or list(GROUPS)
    unknown = [g for g in selected if g not in GROUPS]
    if unknown:
        raise KeyError(f"unknown check group(s): {', '.join(unknown)}")
    rows: List[CheckResult] = []
    for name in GROUPS:
        if name in selected:
            rec = _Recorder(name, cfg.tolerance)
            GROUPS[name](rec, cfg)
            rows.extend(rec.rows)
    return rows


def report(rows: Sequence[CheckResult]) -> dict:
    return {
        "passed": all(r.passed for r in rows),
        "n_checks": len(rows),
        "n_failed": sum(1 for r in rows if not r.passed),
        "checks": [r.as_dict() for r in rows],
    }
