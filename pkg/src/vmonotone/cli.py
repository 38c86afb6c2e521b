"""Command-line front end: ``constants``, ``moments``, ``density``, ``curve``, ``transform``, ``verify``.

Exit codes: 0 success, 1 verification or evaluation failure, 2 usage error.
Floating-point CSV fields carry 17 significant digits.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import math
import os
import sys
from typing import Iterator, List, Optional, Sequence, TextIO

import numpy as np

from . import __version__
from ._numerics import DomainError, PoleError
from .config import Config
from .density import Branch, rho_direct, rho_parametric
from .geometry import gamma_curve
from .moments import MAX_SERIES_ORDER, moments
from .real import EDGE, GAMMA0, T_MAX
from .transform import SQRT2, F_mu, G_mu
from .verify import GROUPS, report, run_checks

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    """Locale-independent, 17 significant digits, no negative zero."""
    return format(float(x) + 0.0, ".17g")


@contextlib.contextmanager
def _open_out(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="ascii") as fh:
            yield fh


def _emit(lines: Sequence[str], path: Optional[str]) -> None:
    with _open_out(path) as fh:
        for line in lines:
            fh.write(line + "\n")


# -- argument types -------------------------------------------------------------------

def _order(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= n <= MAX_SERIES_ORDER:
        raise argparse.ArgumentTypeError(f"N must be in [0, {MAX_SERIES_ORDER}], got {n}")
    return n


def _count(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"grid count must be >= 2, got {n}")
    return n


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not v > 0.0:
        raise argparse.ArgumentTypeError(f"must be > 0, got {text}")
    return v


# -- subcommands --------------------------------------------------------------------------

def cmd_constants(args) -> int:
    values = (("gamma0", GAMMA0), ("t_max", T_MAX), ("edge", EDGE))
    if args.format == "json":
        _emit([json.dumps({k: format(v, "#.15g") for k, v in values})], args.output)
    else:
        _emit([f"{k},{v:#.15g}" for k, v in values], args.output)
    return EXIT_OK


def cmd_moments(args) -> int:
    table = moments(args.N)
    strings = table.as_strings()
    if args.format == "json":
        _emit([json.dumps({"max_order": args.N, "moments": strings})], args.output)
    else:
        _emit([f"{n},{s}" for n, s in enumerate(strings)], args.output)
    return EXIT_OK


def density_grid(points: int, lo: float, hi: float, sqrt2_refine: int = 0, log_grid: bool = False) -> List[float]:
    """Grid over ``[lo, hi]`` (``(-edge, edge)`` by default, endpoints excluded).

    The default grid is exactly antisymmetric and contains 0. ``sqrt2_refine``
    adds that many points on each side of ``+-sqrt(2)`` at log-spaced
    distances in ``[1e-9, 1e-1]``.
    """
    if log_grid:
        if lo <= 0.0:
            raise UsageError("a log grid needs a positive range")
        xs = list(np.geomspace(lo, hi, points))
    elif lo == -hi:
        half = points - 1
        xs = [hi * (2 * i - half) / (half + 2) for i in range(points)]
    else:
        xs = list(np.linspace(lo, hi, points))
    if sqrt2_refine:
        dist = np.geomspace(1e-9, 1e-1, sqrt2_refine)
        for c in (-SQRT2, SQRT2):
            xs.extend(x for x in np.concatenate([c - dist, c + dist]) if lo <= x <= hi)
    return sorted(set(float(x) for x in xs))


def cmd_density(args) -> int:
    if args.parametric:
        branch = Branch(args.parametric)
        xi_hi = 3.1 if branch is Branch.INNER else -1e-3
        # below xi = -10 both branches sit within rounding of sqrt(2)
        lo, hi = args.xi_range if args.xi_range else (-10.0, xi_hi)
        if not lo < hi or not hi < -branch.eta:
            raise UsageError(f"xi range must satisfy xi_min < xi_max < {-branch.eta}")
        samples = rho_parametric(branch, np.linspace(lo, hi, args.points))
    else:
        lo, hi = args.range if args.range else (-EDGE, EDGE)
        if not lo < hi:
            raise UsageError(f"empty range [{lo}, {hi}]")
        xs = density_grid(args.points, lo, hi, args.sqrt2_refine, args.log)
        samples = [rho_direct(x) for x in xs]
    lines = ["x,rho,method"] + [f"{fmt(s.x)},{fmt(s.rho)},{s.method.value}" for s in samples]
    _emit(lines, args.output)
    return EXIT_OK


def cmd_curve(args) -> int:
    eta = args.eta
    if not -math.pi <= eta <= 0.0:
        raise UsageError(f"eta must be in [-pi, 0], got {eta}")
    lo = args.xi_min
    hi = args.xi_max if args.xi_max is not None else -eta - 1e-3
    if not lo < hi < -eta:
        raise UsageError(f"need xi_min < xi_max < -eta = {-eta}")
    xis = np.linspace(lo, hi, args.points)
    us = gamma_curve(eta, xis)
    _emit(["xi,re,im"] + [f"{fmt(x)},{fmt(u.real)},{fmt(u.imag)}" for x, u in zip(xis, us)], args.output)
    return EXIT_OK


def _parse_points(fh: TextIO, source: str) -> List[complex]:
    pts = []
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if lineno == 1 and parts == ["re", "im"]:
            continue
        if len(parts) != 2:
            raise UsageError(f"{source}:{lineno}: expected 're,im', got {line!r}")
        try:
            re, im = float(parts[0]), float(parts[1])
        except ValueError:
            raise UsageError(f"{source}:{lineno}: not a number in {line!r}")
        if not (math.isfinite(re) and math.isfinite(im)):
            raise UsageError(f"{source}:{lineno}: non-finite value in {line!r}")
        if im < 0.0:
            raise UsageError(f"{source}:{lineno}: Im z must be >= 0, got {im}")
        pts.append(complex(re, im))
    return pts


def _transform_row(z: complex) -> str:
    if z.imag == 0.0 and abs(z.real) == EDGE:
        F, G = 0j, complex(math.inf, math.inf)
    else:
        G = G_mu(z)
        F = 1.0 / G if z == 0 else F_mu(z)
    return ",".join(fmt(v) for v in (z.real, z.imag, F.real, F.imag, G.real, G.imag))


def cmd_transform(args) -> int:
    if args.input == "-":
        pts = _parse_points(sys.stdin, "<stdin>")
    else:
        try:
            with open(args.input, encoding="utf-8") as fh:
                pts = _parse_points(fh, args.input)
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}")
    _emit(["re,im,F_re,F_im,G_re,G_im"] + [_transform_row(z) for z in pts], args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    only: List[str] = []
    for item in args.only or ():
        only.extend(g for g in item.split(",") if g)
    unknown = [g for g in only if g not in GROUPS]
    if unknown:
        raise UsageError(f"unknown check group(s): {', '.join(unknown)}; choose from {', '.join(GROUPS)}")
    cfg = Config(quad_panels=args.panels, quad_nodes=args.nodes, tolerance=args.tolerance, only=tuple(only))
    rep = report(run_checks(cfg))
    _emit([json.dumps(rep, indent=2)], args.output)
    if not args.quiet:
        for row in rep["checks"]:
            status = "PASS" if row["passed"] else "FAIL"
            print(f"{status} {row['name']}: error={row['error']:.3g} tol={row['tolerance']:.3g}", file=sys.stderr)
    return EXIT_OK if rep["passed"] else EXIT_FAIL


# -- parser -------------------------------------------------------------------------------

def _float_pair(text: str) -> tuple:
    try:
        a, b = (float(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return a, b


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="vmonotone", description="Moments, transforms and density of the V-monotone Gaussian law.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=False):
        sp.add_argument("-o", "--output", default=None, help="output path (default: stdout)")
        if formats:
            sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("constants", help="gamma0, sqrt(3) pi / 9 and the support edge")
    common(sp, formats=True)
    sp.set_defaults(func=cmd_constants)

    sp = sub.add_parser("moments", help="exact moments m_0..m_N as num/den")
    sp.add_argument("N", type=_order)
    common(sp, formats=True)
    sp.set_defaults(func=cmd_moments)

    sp = sub.add_parser("density", help="density samples as x,rho,method")
    sp.add_argument("--points", type=_count, default=2001)
    sp.add_argument("--range", type=_float_pair, metavar="LO:HI", help="x range (default: the open support)")
    sp.add_argument("--log", action="store_true", help="log-spaced grid (positive range only)")
    sp.add_argument("--sqrt2-refine", type=int, default=0, metavar="K",
                    help="add K log-spaced points on each side of +-sqrt(2)")
    sp.add_argument("--parametric", choices=[b.value for b in Branch],
                    help="sweep the level curve eta=-pi (inner) or eta=0 (outer) instead of an x grid")
    sp.add_argument("--xi-range", type=_float_pair, metavar="LO:HI", help="xi range for --parametric")
    common(sp)
    sp.set_defaults(func=cmd_density)

    sp = sub.add_parser("curve", help="samples of the level curve Gamma_eta as xi,re,im")
    sp.add_argument("--eta", type=float, default=-math.pi / 2)
    sp.add_argument("--xi-min", type=float, default=-10.0)
    sp.add_argument("--xi-max", type=float, default=None)
    sp.add_argument("--points", type=_count, default=401)
    common(sp)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("transform", help="F and G at points read as re,im rows")
    sp.add_argument("input", help="CSV file with re,im rows ('-' for stdin)")
    common(sp)
    sp.set_defaults(func=cmd_transform)

    sp = sub.add_parser("verify", help="run the acceptance checks and print a JSON report")
    sp.add_argument("--only", action="append", metavar="GROUP",
                    help=f"restrict to groups (repeatable or comma-separated): {', '.join(GROUPS)}")
    sp.add_argument("--tolerance", type=_positive, default=None, help="override every tolerance")
    sp.add_argument("--panels", type=_count, default=64)
    sp.add_argument("--nodes", type=_count, default=32)
    sp.add_argument("-q", "--quiet", action="store_true", help="no per-check lines on stderr")
    common(sp)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except (DomainError, PoleError) as exc:
        print(f"vmonotone: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); silence the flush at exit
        devnull = os.open(os.devnull, os.O_WRONLY)
        os.dup2(devnull, sys.stdout.fileno())
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
