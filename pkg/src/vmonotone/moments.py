"""Exact moments of the V-monotone Gaussian law.

Even moments are values at ``s = 1`` of a family of polynomials ``P_n``
built by a convolution-type recursion with exact rational coefficients::

    P_0 = 1
    P_{n+1}(s) = sum_{m=0}^{n} (int_0^s P_m + 2^-m C_m (1 - s)^(m+1)) P_{n-m}(s)

The recursion runs on integer coefficient vectors sharing one denominator
per polynomial (a plain :class:`fractions.Fraction` per coefficient is ~30x
slower at order 200); results are handed out as :class:`fractions.Fraction`,
so every returned moment is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, lcm
from typing import Iterable, List, Sequence, Tuple

Rational = Fraction

MAX_SERIES_ORDER = 200


class RationalPoly:
    """Polynomial in ``s`` with exact rational coefficients (index = power)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int] = ()):
        c = [Fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: Tuple[Fraction, ...] = tuple(c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, s) -> Fraction:
        # Horner; exact for rational s
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * s + a
        return acc

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return RationalPoly(out)

    def __mul__(self, other: "RationalPoly") -> "RationalPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return RationalPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return RationalPoly(out)

    def antiderivative(self) -> "RationalPoly":
        """Primitive vanishing at ``s = 0``."""
        return RationalPoly([Fraction(0)] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPoly({[str(c) for c in self.coeffs]})"


@dataclass(frozen=True)
class MomentTable:
    max_order: int
    values: Tuple[Fraction, ...]

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)

    def as_strings(self) -> List[str]:
        """Moments as ``"num/den"`` strings (denominator always written)."""
        return [f"{m.numerator}/{m.denominator}" for m in self.values]


def catalan(n: int) -> int:
    """Catalan number ``C_n`` via ``C_{n+1} = sum_k C_k C_{n-k}``."""
    if n < 0:
        raise ValueError(f"catalan: n must be >= 0, got {n}")
    return _catalan_table(n)[n]


@lru_cache(maxsize=None)
def _catalan_table(n: int) -> Tuple[int, ...]:
    c = [1]
    for k in range(n):
        c.append(sum(c[i] * c[k - i] for i in range(k + 1)))
    return tuple(c)


def p_polynomials(N: int) -> List[RationalPoly]:
    """``[P_0, ..., P_N]`` computed exactly."""
    if N < 0:
        raise ValueError(f"p_polynomials: N must be >= 0, got {N}")
    return list(_p_table(N))


# Scaled integer polynomials: (coefficients, denominator) with gcd 1 overall.
_Scaled = Tuple[List[int], int]


def _reduce(num: List[int], den: int) -> _Scaled:
    g = den
    for c in num:
        g = gcd(g, c)
        if g == 1:
            break
    if g > 1:
        num = [c // g for c in num]
        den //= g
    return num, den


def _conv(a: List[int], b: List[int]) -> List[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _integrate_plus_tail(p: _Scaled, n: int, catalan_n: int) -> _Scaled:
    """``int_0^s P_n + 2^-n C_n (1-s)^(n+1)`` for scaled ``P_n``."""
    num, den = p
    L = den
    for k in range(1, len(num) + 1):
        L = lcm(L, den * k)
    L = lcm(L, 2 ** n)
    out = [0] * (n + 2)
    for k, c in enumerate(num):
        out[k + 1] += c * (L // (den * (k + 1)))
    scale = catalan_n * (L >> n)
    for j in range(n + 2):
        out[j] += (-1) ** j * comb(n + 1, j) * scale
    return _reduce(out, L)


@lru_cache(maxsize=8)
def _p_table(N: int) -> Tuple[RationalPoly, ...]:
    cat = _catalan_table(N)
    P: List[_Scaled] = [([1], 1)]
    # A_m = int_0^s P_m + 2^-m C_m (1-s)^(m+1); fixed once P_m is known
    A: List[_Scaled] = []
    for n in range(N):
        A.append(_integrate_plus_tail(P[n], n, cat[n]))
        terms = [(_conv(A[m][0], P[n - m][0]), A[m][1] * P[n - m][1]) for m in range(n + 1)]
        L = 1
        for _, d in terms:
            L = lcm(L, d)
        acc = [0] * (n + 2)
        for num, d in terms:
            f = L // d
            for k, c in enumerate(num):
                acc[k] += c * f
        P.append(_reduce(acc, L))
    return tuple(RationalPoly(Fraction(c, den) for c in num) for num, den in P)


def moments(N: int) -> MomentTable:
    """Exact moments ``m_0, ..., m_N`` (odd ones vanish)."""
    if N < 0:
        raise ValueError(f"moments: N must be >= 0, got {N}")
    P = _p_table(N // 2)
    vals = tuple(P[n // 2](Fraction(1)) if n % 2 == 0 else Fraction(0) for n in range(N + 1))
    return MomentTable(max_order=N, values=vals)


def mgf_partial(x: float, N: int) -> float:
    """Truncated moment generating series ``sum_{n<=N} m_n x^n`` in floating point.

    Terms are summed from the lowest degree up. Meaningful only for
    ``|x| < 1/sqrt(2 + gamma0)``, the radius of convergence.
    """
    if N < 0:
        raise ValueError(f"mgf_partial: N must be >= 0, got {N}")
    if N > MAX_SERIES_ORDER:
        raise ValueError(f"mgf_partial: N={N} exceeds the cap {MAX_SERIES_ORDER}")
    table = moments(N)
    total = 0.0
    xn = 1.0
    for n, m in enumerate(table.values):
        if n % 2 == 0:
            total += float(m) * xn
        xn *= x
    return total


def hankel(values: Sequence[Fraction], k: int) -> List[List[Fraction]]:
    """Hankel matrix ``(m_{i+j})_{0<=i,j<=k}``."""
    if len(values) < 2 * k + 1:
        raise ValueError(f"need moments up to order {2 * k}")
    return [[values[i + j] for j in range(k + 1)] for i in range(k + 1)]
