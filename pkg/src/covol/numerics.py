"""Certified real arithmetic (directed-rounding balls) and exact combinatorial constants.

Every analytic quantity in the package flows through :class:`BoundedReal`,
an interval [lo, hi] with mpfr endpoints rounded outward.  Exact rational
data (Bernoulli numbers, factorials) uses :class:`fractions.Fraction`.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpz

__all__ = [
    "Context",
    "BoundedReal",
    "UndecidedComparison",
    "DEFAULT_PRECISION",
    "bernoulli",
    "factorial",
    "double_factorial",
    "sphere_volume",
    "sphere_volume_gamma",
]

DEFAULT_PRECISION = 128


class UndecidedComparison(Exception):
    """An interval comparison could not be decided at the working precision."""


class Context:
    """Working-precision context: a pair of directed-rounding mpfr contexts.

    Immutable after construction.  Also carries read-only caches (pi, prime
    sieve, Frobenius data) shared by the analytic modules.
    """

    def __init__(self, prec: int = DEFAULT_PRECISION):
        if prec < 64:
            raise ValueError("precision must be at least 64 bits")
        self.prec = prec
        self._down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
        self._up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
        self._pi = None
        self.cache: dict = {}

    def __repr__(self):
        return f"Context(prec={self.prec})"

    def deeper(self, factor: int = 2) -> "Context":
        """A fresh context at `factor` times the precision (for escalation)."""
        return Context(self.prec * factor)

    # -- constructors -------------------------------------------------------

    def exact(self, value) -> "BoundedReal":
        """Promote an int/Fraction to a ball; rad covers only the single quotient rounding."""
        if isinstance(value, BoundedReal):
            return value
        if isinstance(value, numbers.Rational):
            p, q = mpz(value.numerator), mpz(value.denominator)
        elif isinstance(value, int):
            p, q = mpz(value), mpz(1)
        else:
            raise TypeError(f"cannot promote {type(value)!r} exactly")
        return BoundedReal(self, self._down.div(p, q), self._up.div(p, q))

    def ball(self, lo, hi) -> "BoundedReal":
        return BoundedReal(self, mpfr(lo, self.prec), mpfr(hi, self.prec))

    def from_decimal(self, mid: str, rad: str) -> "BoundedReal":
        """Ball from decimal strings, widened outward by one rounding step."""
        m = self.exact(Fraction(mid))
        r = self.exact(Fraction(rad))
        return BoundedReal(self, self._down.sub(m.lo, r.hi), self._up.add(m.hi, r.hi))

    def pi(self) -> "BoundedReal":
        if self._pi is None:
            self._pi = BoundedReal(self, self._down.const_pi(), self._up.const_pi())
        return self._pi

    def one(self) -> "BoundedReal":
        return self.exact(1)


class BoundedReal:
    """A certified real: the closed interval [lo, hi] contains the exact value.

    All arithmetic rounds outward, so containment is preserved through any
    sequence of operations.  Instances are immutable.
    """

    __slots__ = ("ctx", "lo", "hi")

    def __init__(self, ctx: Context, lo, hi):
        if not (lo <= hi):
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, *a):
        raise AttributeError("BoundedReal is immutable")

    # -- midpoint / radius view --------------------------------------------

    @property
    def mid(self) -> mpfr:
        c = self.ctx
        return gmpy2.context(precision=c.prec).div(
            gmpy2.context(precision=c.prec).add(self.lo, self.hi), mpz(2)
        )

    @property
    def rad(self) -> mpfr:
        c = self.ctx
        m = self.mid
        return max(c._up.sub(self.hi, m), c._up.sub(m, self.lo))

    def __repr__(self):
        return f"[{self.lo} .. {self.hi}]"

    def __float__(self):
        return float(self.mid)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BoundedReal):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.exact(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        c = self.ctx
        return BoundedReal(c, c._down.add(self.lo, o.lo), c._up.add(self.hi, o.hi))

    __radd__ = __add__

    def __neg__(self):
        return BoundedReal(self.ctx, -self.hi, -self.lo)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        c = self.ctx
        return BoundedReal(c, c._down.sub(self.lo, o.hi), c._up.sub(self.hi, o.lo))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        c = self.ctx
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(c._down.mul(a, b) for a, b in pairs)
        hi = max(c._up.mul(a, b) for a, b in pairs)
        return BoundedReal(c, lo, hi)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor interval contains zero")
        c = self.ctx
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(c._down.div(a, b) for a, b in pairs)
        hi = max(c._up.div(a, b) for a, b in pairs)
        return BoundedReal(c, lo, hi)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o.__truediv__(self)

    def __pow__(self, exponent):
        """Integer powers exactly-directed; Fraction/BoundedReal exponents via exp(log) on positive bases."""
        c = self.ctx
        if isinstance(exponent, int):
            if exponent == 0:
                return c.exact(1)
            if exponent < 0:
                return c.exact(1) / self.__pow__(-exponent)
            e = mpz(exponent)
            if self.lo >= 0:
                return BoundedReal(c, c._down.pow(self.lo, e), c._up.pow(self.hi, e))
            # signed base: binary exponentiation with outward-rounded products
            result = c.exact(1)
            base = self
            k = exponent
            while k:
                if k & 1:
                    result = result * base
                base = base * base
                k >>= 1
            return result
        if isinstance(exponent, Fraction):
            if exponent.denominator == 1:
                return self.__pow__(exponent.numerator)
            if exponent.denominator == 2:
                # half-integer exponents stay sharp: x^(p/2) = sqrt(x^p)
                return self.__pow__(exponent.numerator).sqrt()
            return (self.log() * c.exact(exponent)).exp()
        if isinstance(exponent, BoundedReal):
            return (self.log() * exponent).exp()
        return NotImplemented

    def sqrt(self):
        if self.lo < 0:
            raise ValueError("sqrt of interval with negative part")
        c = self.ctx
        return BoundedReal(c, c._down.sqrt(self.lo), c._up.sqrt(self.hi))

    def exp(self):
        c = self.ctx
        return BoundedReal(c, c._down.exp(self.lo), c._up.exp(self.hi))

    def log(self):
        if self.lo <= 0:
            raise ValueError("log of interval touching zero")
        c = self.ctx
        return BoundedReal(c, c._down.log(self.lo), c._up.log(self.hi))

    # -- predicates ----------------------------------------------------------

    def definitely_less(self, other) -> bool:
        o = self._coerce(other)
        return self.hi < o.lo

    def definitely_greater(self, other) -> bool:
        o = self._coerce(other)
        return self.lo > o.hi

    def overlaps(self, other) -> bool:
        o = self._coerce(other)
        return not (self.hi < o.lo or o.hi < self.lo)

    def contains(self, value) -> bool:
        """Exact rational `value` lies in the interval."""
        q = Fraction(value)
        # compare endpoints exactly: mpfr endpoints are dyadic rationals
        lo = Fraction(*self.lo.as_integer_ratio())
        hi = Fraction(*self.hi.as_integer_ratio())
        return lo <= q <= hi

    def encloses(self, other: "BoundedReal") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0

    def width(self) -> mpfr:
        return self.ctx._up.sub(self.hi, self.lo)

    def mid_str(self, digits: int = 40) -> str:
        return self.mid.__format__(f".{digits}g")

    def rad_str(self) -> str:
        return self.rad.__format__(".3g")


# -- exact combinatorial constants ------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli_upto(m: int) -> tuple:
    """B_0..B_m by the defining recurrence sum(C(m+1,k) B_k, k=0..m) = 0."""
    from math import comb

    bs = [Fraction(1)]
    for n in range(1, m + 1):
        acc = Fraction(0)
        for k in range(n):
            acc += comb(n + 1, k) * bs[k]
        bs.append(-acc / (n + 1))
    return tuple(bs)


def bernoulli(m: int) -> Fraction:
    """Exact Bernoulli number B_m for even m >= 2 (B_1 = -1/2 allowed)."""
    if m < 0:
        raise ValueError("negative Bernoulli index")
    if m > 1 and m % 2 == 1:
        raise ValueError(f"B_{m} = 0; odd indices above 1 are rejected")
    return _bernoulli_upto(m)[m]


def bernoulli_sequence(m: int) -> tuple:
    """B_0..B_m (internal: Bernoulli polynomials, Euler-Maclaurin)."""
    return _bernoulli_upto(m)


def factorial(m: int) -> int:
    if m < 0:
        raise ValueError("negative factorial")
    import math

    return math.factorial(m)


def double_factorial(m: int) -> int:
    """m!! with 0!! = (-1)!! = 1 (empty products)."""
    if m < -1:
        raise ValueError("double factorial needs m >= -1")
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def sphere_volume(ctx: Context, n: int) -> BoundedReal:
    """Euclidean volume of the unit n-sphere in R^{n+1}.

    Even n = 2r: 2*(2pi)^r/(2r-1)!!.  Odd n = 2r-1: 2*pi^r/(r-1)!.
    """
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    pi = ctx.pi()
    if n % 2 == 0:
        r = n // 2
        return (pi * 2) ** r * Fraction(2, double_factorial(2 * r - 1))
    r = (n + 1) // 2
    return pi**r * Fraction(2, factorial(r - 1))


def gamma_half_integer(ctx: Context, k: int) -> BoundedReal:
    """Gamma(k + 1/2) = (2k)! sqrt(pi) / (4^k k!), exact closed form."""
    if k < 0:
        raise ValueError("k must be >= 0")
    coeff = Fraction(factorial(2 * k), 4**k * factorial(k))
    return ctx.pi().sqrt() * coeff


def sphere_volume_gamma(ctx: Context, n: int) -> BoundedReal:
    """Vol(S^n) = 2 pi^{(n+1)/2} / Gamma((n+1)/2); independent of the factorial route."""
    if n < 1:
        raise ValueError("sphere dimension must be >= 1")
    pi = ctx.pi()
    if n % 2 == 1:
        r = (n + 1) // 2
        return pi**r * Fraction(2, factorial(r - 1))
    r = n // 2  # (n+1)/2 = r + 1/2
    num = pi ** Fraction(2 * r + 1, 2) * 2
    return num / gamma_half_integer(ctx, r)
