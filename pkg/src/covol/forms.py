"""Local-invariant bookkeeping for candidate quadratic forms.

Provides Hilbert symbols and Hasse invariants over the rationals, the
normalization against the split form of the same rank, lower bounds for the
local lambda factors, enumeration of candidate bad-place sets under a
lambda-product budget, and the local-global consistency check used to screen
candidate invariant profiles.  Over general number fields only the
bookkeeping layer (profile type, lambda bounds, budget arithmetic) applies;
enumeration there would need prime-ideal data and is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple, Union

from .numerics import BoundedReal, UndecidedComparison
from .lfunc import primes_upto

__all__ = [
    "INFINITE_PLACE",
    "Place",
    "hilbert_symbol",
    "hasse_invariant",
    "split_coefficients",
    "split_inf_hasse",
    "normalized_hasse",
    "lambda_lower",
    "enumerate_T_sets",
    "LocalInvariantProfile",
    "CheckResult",
    "local_global_check",
    "NAMED_FORMS",
    "named_form_coefficients",
    "named_form_invariants",
    "squarefree_class",
]

# The archimedean place of the rationals, used alongside prime numbers.
INFINITE_PLACE = "inf"

Place = Union[int, str]

Rational = Union[int, Fraction]


def _valuation(x: Fraction, p: int) -> Tuple[int, Fraction]:
    """p-adic valuation and unit part of a nonzero rational."""
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _unit_mod(u: Fraction, modulus: int) -> int:
    """Residue of a rational that is a unit at every prime of the modulus."""
    return (u.numerator * pow(u.denominator, -1, modulus)) % modulus


def hilbert_symbol(a: Rational, b: Rational, place: Place) -> int:
    """Hilbert symbol (a, b)_v over the rationals, valued in {+1, -1}.

    place is a prime number or INFINITE_PLACE.  Uses the tame formula at odd
    primes, the unit-residue formula at 2, and the sign rule at infinity.
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place == INFINITE_PLACE:
        return -1 if a < 0 and b < 0 else 1
    p = int(place)
    if p < 2:
        raise ValueError(f"not a place of the rationals: {place!r}")
    alpha, u = _valuation(a, p)
    beta, w = _valuation(b, p)
    if p == 2:
        u8, w8 = _unit_mod(u, 8), _unit_mod(w, 8)
        eps_u, eps_w = ((u8 - 1) // 2) % 2, ((w8 - 1) // 2) % 2
        om_u, om_w = ((u8 * u8 - 1) // 8) % 2, ((w8 * w8 - 1) // 8) % 2
        exponent = eps_u * eps_w + alpha * om_w + beta * om_u
        return -1 if exponent % 2 else 1
    leg_u = pow(_unit_mod(u, p), (p - 1) // 2, p)
    leg_w = pow(_unit_mod(w, p), (p - 1) // 2, p)
    leg_u = -1 if leg_u == p - 1 else 1
    leg_w = -1 if leg_w == p - 1 else 1
    sign = leg_u**beta * leg_w**alpha
    if alpha * beta * ((p - 1) // 2) % 2:
        sign = -sign
    return sign


def hasse_invariant(coefficients: Sequence[Rational], place: Place) -> int:
    """Hasse invariant of a diagonal form: product of (a_i, a_j)_v for i < j."""
    coeffs = [Fraction(c) for c in coefficients]
    if any(c == 0 for c in coeffs):
        raise ValueError("diagonal coefficients must be nonzero")
    sign = 1
    for i in range(len(coeffs)):
        for j in range(i + 1, len(coeffs)):
            sign *= hilbert_symbol(coeffs[i], coeffs[j], place)
    return sign


def split_coefficients(n: int) -> List[int]:
    """Diagonal coefficients of the reference split form in n + 1 variables."""
    return [(-1) ** i for i in range(n + 1)]


def split_inf_hasse(n: int) -> int:
    """Hasse invariant of the split form at the real place: (-1)^C(k,2), k = floor((n+1)/2)."""
    k = (n + 1) // 2
    return -1 if math.comb(k, 2) % 2 else 1


def normalized_hasse(coefficients: Sequence[Rational], place: Place) -> int:
    """Hasse invariant normalized so the split form of the same rank gets +1."""
    n = len(coefficients) - 1
    return hasse_invariant(coefficients, place) * hasse_invariant(
        split_coefficients(n), place
    )


def squarefree_class(x: Rational) -> int:
    """Squarefree integer representing the square class of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    m = x.numerator * x.denominator
    sign = -1 if m < 0 else 1
    m = abs(m)
    out = 1
    d = 2
    while d * d <= m:
        count = 0
        while m % d == 0:
            m //= d
            count += 1
        if count % 2:
            out *= d
        d += 1
    return sign * out * m


def _lambda_unchecked(q: int, r: int, parity: str) -> Fraction:
    if parity == "even":
        return Fraction(q**r - 1, 2)
    if parity == "odd":
        return Fraction((q**r - 1) * (q ** (r - 1) - 1), 2 * (q + 1))
    raise ValueError("parity must be 'even' or 'odd'")


def lambda_lower(q: int, r: int, parity: str) -> Fraction:
    """Exact lower bound for the local lambda factor at a place of residue size q.

    parity "even" (ambient dimension n = 2r):  (q^r - 1) / 2.
    parity "odd"  (ambient dimension n = 2r - 1):
        (q^r - 1)(q^(r-1) - 1) / (2(q + 1)).
    """
    if q < 2:
        raise ValueError("residue field size must be at least 2")
    if r < 2:
        raise ValueError("need r >= 2")
    return _lambda_unchecked(q, r, parity)


def _dimension_parameters(n: int) -> Tuple[int, str]:
    if n % 2 == 0:
        return n // 2, "even"
    return (n + 1) // 2, "odd"


def enumerate_T_sets(
    n: int, budget: Union[Rational, BoundedReal]
) -> List[Tuple[int, ...]]:
    """All sets S of rational primes with prod_{p in S} lambda_lower(p) <= budget.

    The search walks primes in increasing order and prunes a branch as soon
    as the running product exceeds the budget; lambda_lower is increasing in
    the prime, so the enumeration is complete.  Products are exact rationals.
    A BoundedReal budget whose interval straddles a product raises
    UndecidedComparison naming the offending prime set; the caller should
    recompute the budget at higher precision.
    """
    if n < 4:
        raise ValueError("need dimension n >= 4")
    r, parity = _dimension_parameters(n)
    if isinstance(budget, BoundedReal):
        budget_lo = Fraction(*budget.lo.as_integer_ratio())
        budget_hi = Fraction(*budget.hi.as_integer_ratio())
    else:
        budget_lo = budget_hi = Fraction(budget)
    if budget_hi < 1:
        raise ValueError("budget must be at least 1 (the empty product)")

    # Every admissible prime satisfies lambda_lower(p) <= budget, and the
    # even-case bound (q^r - 1)/2 is the smaller of the two, so this cap
    # covers both parities.
    prime_cap = int((2 * budget_hi + 1) ** Fraction(1, r)) + 2
    primes = [p for p in primes_upto(prime_cap) if lambda_lower(p, r, parity) <= budget_hi]

    out: List[Tuple[int, ...]] = []

    def admit(product: Fraction, chosen: Tuple[int, ...]) -> bool:
        if product <= budget_lo:
            return True
        if product > budget_hi:
            return False
        raise UndecidedComparison(
            f"budget interval straddles the lambda product for primes {chosen}"
        )

    def walk(start: int, product: Fraction, chosen: Tuple[int, ...]) -> None:
        out.append(chosen)
        for idx in range(start, len(primes)):
            p = primes[idx]
            next_product = product * lambda_lower(p, r, parity)
            if not admit(next_product, chosen + (p,)):
                # lambda_lower increases with the prime: later branches fail too
                break
            walk(idx + 1, next_product, chosen + (p,))

    walk(0, Fraction(1), ())
    return sorted(out, key=lambda s: (len(s), s))


@dataclass(frozen=True)
class LocalInvariantProfile:
    """Local invariants of a candidate form of signature (n, 1).

    base_field is "Q" for forms over the rationals or a (degree,
    discriminant) pair used as an opaque reference otherwise.
    disc_class is the signed squarefree square class of the discriminant.
    hasse_minus_places collects the places (primes, possibly INFINITE_PLACE)
    where the normalized Hasse symbol equals -1.  T is the derived set of
    bad finite places feeding the lambda product, and lambda_product_bound
    is the exact rational lower bound for that product.
    """

    base_field: Union[str, Tuple[int, int]]
    n: int
    r: int
    disc_class: int
    hasse_minus_places: FrozenSet[Place]
    T: FrozenSet[int]
    lambda_product_bound: Fraction
    label: Optional[str] = None

    def to_json_dict(self) -> dict:
        def place_key(v: Place):
            return (1, 0) if v == INFINITE_PLACE else (0, int(v))

        return {
            "base_field": self.base_field
            if isinstance(self.base_field, str)
            else list(self.base_field),
            "label": self.label,
            "n": self.n,
            "r": self.r,
            "disc_class": self.disc_class,
            "hasse_minus_places": sorted(self.hasse_minus_places, key=place_key),
            "T": sorted(self.T),
            "lambda_product_bound": str(self.lambda_product_bound),
        }


@dataclass(frozen=True)
class CheckResult:
    accepted: bool
    reason: str


def local_global_check(profile: LocalInvariantProfile) -> CheckResult:
    """Screen a rational profile against the local-global constraints.

    Accepts iff the discriminant sign matches signature (n, 1), the
    archimedean normalized symbol forced by the signature agrees with the
    profile, and the count of places with normalized symbol -1 (including
    infinity) is even, as Hilbert reciprocity requires.
    """
    if profile.base_field != "Q":
        raise ValueError("local_global_check only applies to profiles over Q")
    # sig (n, 1) means a negative determinant class; the stored disc_class
    # carries the extra sign (-1)^(m(m-1)/2) with m = n + 1 variables
    m = profile.n + 1
    expected_sign = -1 if (m * (m - 1) // 2) % 2 == 0 else 1
    if profile.disc_class == 0 or (profile.disc_class > 0) != (expected_sign > 0):
        return CheckResult(
            False, "discriminant class sign inconsistent with signature (n, 1)"
        )
    # A form of signature (n, 1) has exactly one negative diagonal entry, so
    # its plain Hasse invariant at the real place is +1 and the normalized
    # symbol there equals the split form's invariant.
    inf_minus = split_inf_hasse(profile.n) == -1
    if (INFINITE_PLACE in profile.hasse_minus_places) != inf_minus:
        return CheckResult(
            False,
            "archimedean normalized symbol inconsistent with signature (n, 1)",
        )
    if len(profile.hasse_minus_places) % 2:
        return CheckResult(
            False, "odd number of places with normalized symbol -1 (reciprocity)"
        )
    return CheckResult(True, "profile is locally consistent")


NAMED_FORMS = {"f1": 1, "f2": 2, "f3": 3}


def named_form_coefficients(label: str, n: int) -> List[int]:
    """Diagonal coefficients (-a, 1, ..., 1) of a named candidate form."""
    if label not in NAMED_FORMS:
        raise ValueError(f"unknown form label {label!r}")
    if n < 2:
        raise ValueError("need n >= 2")
    return [-NAMED_FORMS[label]] + [1] * n


def _is_square_in_qp(d: int, p: int) -> bool:
    """Whether a squarefree integer d is a square in the p-adic numbers."""
    if d == 1:
        return True
    if p == 2:
        return d % 8 == 1
    if d % p == 0:
        return False
    return pow(d % p, (p - 1) // 2, p) == 1


def _quadratic_field_ramified(d: int, p: int) -> bool:
    """Whether p ramifies in Q(sqrt(d)) for squarefree d != 1."""
    if p == 2:
        return d % 4 != 1
    return d % p == 0


def named_form_invariants(label: str, n: int) -> LocalInvariantProfile:
    """Local invariant profile of a named form diag(-a, 1, ..., 1) over Q.

    The discriminant class carries the sign (-1)^(m(m-1)/2) with m = n + 1
    variables, so that for even rank the class generates the splitting field.
    Only 2, the primes dividing a and the discriminant class, and the real
    place can carry a nontrivial normalized symbol or enter T.
    """
    coeffs = named_form_coefficients(label, n)
    a = NAMED_FORMS[label]
    m = n + 1
    r, parity = _dimension_parameters(n)
    det_class = squarefree_class(-a)
    disc_class = squarefree_class((-1) ** (m * (m - 1) // 2) * det_class)

    relevant = {2}
    relevant.update(p for p in primes_upto(abs(disc_class) + 1) if disc_class % p == 0)
    relevant.update(p for p in primes_upto(a + 1) if a % p == 0)
    relevant = sorted(relevant)
    minus: set = set()
    for p in relevant:
        if normalized_hasse(coeffs, p) == -1:
            minus.add(p)
    if normalized_hasse(coeffs, INFINITE_PLACE) == -1:
        minus.add(INFINITE_PLACE)

    T: set = set()
    if parity == "even":
        for p in relevant:
            if abs(disc_class) % p == 0:
                T.add(p)
            elif p in minus:
                T.add(p)
    else:
        square_class = disc_class
        for p in relevant:
            if p not in minus:
                continue
            if _is_square_in_qp(square_class, p):
                T.add(p)
            elif square_class != 1 and not _quadratic_field_ramified(square_class, p):
                T.add(p)

    product = Fraction(1)
    for p in sorted(T):
        product *= _lambda_unchecked(p, max(r, 1), parity)

    return LocalInvariantProfile(
        base_field="Q",
        n=n,
        r=r,
        disc_class=disc_class,
        hasse_minus_places=frozenset(minus),
        T=frozenset(T),
        lambda_product_bound=product,
        label=label,
    )
