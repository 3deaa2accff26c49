"""Lower bounds for covolumes of arithmetic subgroups of PO(n,1).

The universal minima omega_c(n), omega_nc(n) for all dimensions, and the
field/form-specific bound nu(n,k,f) through the class-number route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .numerics import (
    BoundedReal,
    Context,
    UndecidedComparison,
    double_factorial,
    factorial,
    sphere_volume,
)
from . import lfunc

__all__ = [
    "VolumeBound",
    "FieldBoundInput",
    "omega",
    "growth_certificate",
    "nu_lower_bound",
    "class_number_estimate",
    "b1",
    "b2",
]


@dataclass(frozen=True)
class VolumeBound:
    dimension: int
    cocompact: bool
    value: BoundedReal
    branch: str

    def __post_init__(self):
        if not self.value.is_positive():
            raise ValueError("volume bounds must be strictly positive")


@dataclass(frozen=True)
class FieldBoundInput:
    """Inputs for nu(n,k,f): dimension, field degree/discriminant data, class number."""

    n: int
    d: int
    D_k: int
    h: int
    D_l: Optional[int] = None

    def __post_init__(self):
        if self.d < 1 or self.D_k < 1 or self.h < 1:
            raise ValueError("degree, discriminant and class number must be positive")
        if self.D_l is not None and self.D_l < self.D_k**2:
            raise ValueError("quadratic extension needs D_l >= D_k^2")


def _zeta_k0(ctx: Context, s: int) -> BoundedReal:
    return lfunc.zeta_value(ctx, s) * lfunc.dirichlet_l(ctx, lfunc.CHI_5, s)


def omega(ctx: Context, n: int, cocompact: bool) -> VolumeBound:
    """The covolume lower bound omega_c(n) or omega_nc(n)."""
    if n < 2:
        raise ValueError("need n >= 2")
    pi = ctx.pi()
    two_pi = pi * 2
    if n == 2:
        val = pi * (Fraction(1, 42) if cocompact else Fraction(1, 6))
        return VolumeBound(2, cocompact, val, "small-n constant")
    if n == 3:
        # embedded sharp constants, rad = one unit in the last displayed digit
        if cocompact:
            val = ctx.from_decimal("0.0195255", "0.0000005")
        else:
            val = ctx.from_decimal("0.04235", "0.00005")
        return VolumeBound(3, cocompact, val, "small-n constant")
    if n % 2 == 0:
        r = n // 2
        if cocompact:
            lead = 2 if r % 2 == 0 else 4**r - 1
            branch = "even cocompact r even" if r % 2 == 0 else "even cocompact r odd"
            val = two_pi**r * Fraction(lead, double_factorial(2 * r - 1))
            val = val * ctx.exact(5) ** Fraction(2 * r * r + r, 2)
            for i in range(1, r + 1):
                val = (
                    val
                    * _zeta_k0(ctx, 2 * i)
                    * Fraction(factorial(2 * i - 1) ** 2)
                    / two_pi ** (4 * i)
                )
        else:
            lead = 2 if r % 4 in (0, 1) else 2**r - 1
            branch = (
                "even noncocompact r = 0,1 mod 4"
                if r % 4 in (0, 1)
                else "even noncocompact r = 2,3 mod 4"
            )
            val = two_pi**r * Fraction(lead, double_factorial(2 * r - 1))
            for i in range(1, r + 1):
                val = (
                    val
                    * lfunc.zeta_even(ctx, i)
                    * Fraction(factorial(2 * i - 1))
                    / two_pi ** (2 * i)
                )
        return VolumeBound(n, cocompact, val, branch)
    # odd n = 2r - 1 >= 5
    r = (n + 1) // 2
    if cocompact:
        branch = "odd cocompact"
        val = (
            ctx.exact(5) ** Fraction(2 * r * r - r, 2)
            * ctx.exact(11) ** Fraction(2 * r - 1, 2)
            * Fraction(factorial(r - 1), 2 ** (2 * r))
            / pi**r
        )
        val = val * lfunc.l_relative_quartic(ctx, r=r)
        for i in range(1, r):
            val = (
                val
                * _zeta_k0(ctx, 2 * i)
                * Fraction(factorial(2 * i - 1) ** 2)
                / two_pi ** (4 * i)
            )
    else:
        if r % 2 == 0:
            branch = "odd noncocompact r even"
            val = ctx.exact(3) ** Fraction(2 * r - 1, 2) * Fraction(1, 2**r)
            val = val * lfunc.dirichlet_l(ctx, lfunc.CHI_MINUS_3, r)
        elif r % 4 == 1:
            branch = "odd noncocompact r = 1 mod 4"
            val = lfunc.zeta_value(ctx, r) * Fraction(1, 2 ** (r - 1))
        else:
            branch = "odd noncocompact r = 3 mod 4"
            val = lfunc.zeta_value(ctx, r) * Fraction(
                (2**r - 1) * (2 ** (r - 1) - 1), 3 * 2**r
            )
        for i in range(1, r):
            val = (
                val
                * lfunc.zeta_even(ctx, i)
                * Fraction(factorial(2 * i - 1))
                / two_pi ** (2 * i)
            )
    return VolumeBound(n, cocompact, val, branch)


def growth_certificate(ctx: Context, n_max: int, check_from: int = 20) -> dict:
    """Ratios omega(n)/Vol(S^n) up to n_max, with the super-exponential check.

    Asserts that the consecutive-term growth ratio is increasing from
    `check_from` on, in both compactness classes.  The branch selection
    oscillates with period 8 in n (mod-4 cases in r, even and odd dimensions
    interleaved), so the comparison is made within each residue class mod 8.
    Raises UndecidedComparison if any required comparison is not definite.
    """
    if n_max > 64:
        raise ValueError("hard ceiling is n = 64")
    out = {}
    for cocompact in (True, False):
        series = []
        for n in range(2, n_max + 1):
            ratio = omega(ctx, n, cocompact).value / sphere_volume(ctx, n)
            series.append((n, ratio))
        key = "cocompact" if cocompact else "noncocompact"
        out[key] = series
        growth = []
        for (n0, a), (_, b) in zip(series, series[1:]):
            growth.append((n0, b / a))
        by_n = dict(growth)
        for n0, g0 in growth:
            if n0 < check_from or n0 + 8 not in by_n:
                continue
            g1 = by_n[n0 + 8]
            if not g1.definitely_greater(g0):
                if g1.overlaps(g0):
                    raise UndecidedComparison(
                        f"growth comparison undecided at n = {n0} ({key})"
                    )
                raise AssertionError(f"growth ratio not increasing at n = {n0} ({key})")
    return out


def nu_lower_bound(
    ctx: Context, inp: FieldBoundInput, parity_case: Optional[str] = None
) -> BoundedReal:
    """The class-number-route lower bound for nu(n,k,f).

    Even n = 2r: C_1(n,k)/(2^d h).  Odd n = 2r-1: the C_2 expressions with
    the D_l power r-1/2 (r odd) or r-3/2 (r even), over 2^{d+1} h or
    2^{2d-1} h respectively.  The zeta/lambda factors (all > 1) are dropped,
    which only weakens the bound.
    """
    n, d, h = inp.n, inp.d, inp.h
    pi = ctx.pi()
    two_pi = pi * 2
    if n % 2 == 0:
        r = n // 2
        case = "even"
        val = ctx.exact(inp.D_k) ** Fraction(2 * r * r + r, 2)
        val = val * two_pi**r * Fraction(2, double_factorial(2 * r - 1))
        prod = ctx.exact(1)
        for i in range(1, r + 1):
            prod = prod * Fraction(factorial(2 * i - 1)) / two_pi ** (2 * i)
        val = val * prod**d * Fraction(1, 2**d * h)
    else:
        r = (n + 1) // 2
        if inp.D_l is None:
            if d > 1:
                raise ValueError(
                    "odd dimension over k != Q needs the quadratic extension's D_l"
                )
            raise ValueError("odd-dimension bound needs D_l")
        dl = ctx.exact(inp.D_l)
        sphere_part = pi**r * Fraction(4, factorial(r - 1))
        if r % 2 == 1:
            case = "odd-r-odd"
            val = (
                ctx.exact(inp.D_k) ** Fraction(2 * r * r - 5 * r + 2, 2)
                * dl ** Fraction(2 * r - 1, 2)
                * b2(ctx, r) ** d
                * sphere_part
                * Fraction(1, 2 ** (d + 1) * h)
            )
        else:
            case = "odd-r-even"
            val = (
                ctx.exact(inp.D_k) ** Fraction(2 * r * r - 5 * r + 6, 2)
                * dl ** Fraction(2 * r - 3, 2)
                * b2(ctx, r) ** d
                * sphere_part
                * Fraction(1, 2 ** (2 * d - 1) * h)
            )
    if parity_case is not None and parity_case != case:
        raise ValueError(f"parity case {parity_case!r} does not match n = {n} ({case})")
    return val


def class_number_estimate(ctx: Context, d: int, D_k: int) -> int:
    """Brauer-Siegel-route class number bound: ceil(16 (pi/12)^d D_k)."""
    if d < 1 or D_k < 1:
        raise ValueError("need d >= 1 and D_k >= 1")
    c = ctx
    for _ in range(5):
        v = (c.pi() * Fraction(1, 12)) ** d * (16 * D_k)
        lo, hi = math.ceil(v.lo), math.ceil(v.hi)
        if lo == hi:
            return lo
        c = c.deeper()
    raise UndecidedComparison(f"ceiling of 16(pi/12)^{d} * {D_k} undecided")


def b1(ctx: Context, r: int) -> BoundedReal:
    """B_1(r) = (12/2pi) prod_{i=1}^{r} (2i-1)!/(2pi)^{2i}."""
    if r < 2:
        raise ValueError("need r >= 2")
    two_pi = ctx.pi() * 2
    val = ctx.exact(12) / two_pi
    for i in range(1, r + 1):
        val = val * Fraction(factorial(2 * i - 1)) / two_pi ** (2 * i)
    return val


def b2(ctx: Context, r: int) -> BoundedReal:
    """B_2(r) = ((r-1)!/(2pi)^r) prod_{i=1}^{r-1} (2i-1)!/(2pi)^{2i}."""
    if r < 2:
        raise ValueError("need r >= 2")
    two_pi = ctx.pi() * 2
    val = ctx.exact(Fraction(factorial(r - 1))) / two_pi**r
    for i in range(1, r):
        val = val * Fraction(factorial(2 * i - 1)) / two_pi ** (2 * i)
    return val
