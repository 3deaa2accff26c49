"""Spectral gap data, conformal volume upper bounds, and the R_c/R_nc table.

The upper bound M(n) = (n/delta(n))^{n/2} for the minimal covolume of a
congruence reflection group comes from the conformal-volume argument; the
ratios R(n) = M(n) / (omega(n)/Vol(S^n)) decide in which dimensions such
groups can exist at all.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .numerics import BoundedReal, Context, UndecidedComparison, sphere_volume
from .bounds import omega

__all__ = [
    "spectral_gap",
    "m_bound",
    "conformal_volume_upper",
    "r_ratios",
    "TableRow",
    "DimensionReport",
    "table1",
    "dimension_cutoffs",
]

MODES = ("proven", "conjectural")


def spectral_gap(n: int, mode: str = "proven") -> Fraction:
    """Lower bound delta(n) <= lambda_1 for congruence hyperbolic n-orbifolds.

    Proven: 3/16 for n = 2, (2n-3)/4 for n >= 3.  Conjectural: 1/4 for
    n = 2 (Selberg), n - 1 otherwise.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if n < 2:
        raise ValueError("need n >= 2")
    if mode == "proven":
        return Fraction(3, 16) if n == 2 else Fraction(2 * n - 3, 4)
    return Fraction(1, 4) if n == 2 else Fraction(n - 1)


def m_bound(ctx: Context, n: int, mode: str = "proven") -> BoundedReal:
    """M(n) = (n / delta(n))^{n/2}, sharp for even n (exact rational base)."""
    q = ctx.exact(Fraction(n) / spectral_gap(n, mode))
    return q ** Fraction(n, 2)


def conformal_volume_upper(
    ctx: Context, n: int, lambda1: BoundedReal
) -> BoundedReal:
    """(n / lambda1)^{n/2} for an arbitrary certified spectral gap lambda1."""
    if n < 2:
        raise ValueError("need n >= 2")
    if not lambda1.is_positive():
        raise ValueError("spectral gap must be strictly positive")
    return (ctx.exact(n) / lambda1) ** Fraction(n, 2)


def r_ratios(
    ctx: Context, n: int, mode: str = "proven"
) -> Tuple[BoundedReal, BoundedReal]:
    """(R_c(n), R_nc(n)) = M(n) * Vol(S^n) / omega(n)."""
    m = m_bound(ctx, n, mode)
    vol = sphere_volume(ctx, n)
    r_c = m * vol / omega(ctx, n, cocompact=True).value
    r_nc = m * vol / omega(ctx, n, cocompact=False).value
    return r_c, r_nc


@dataclass(frozen=True)
class TableRow:
    n: int
    m: BoundedReal
    r_c: BoundedReal
    r_nc: BoundedReal

    def feasible(self, cocompact: bool) -> bool:
        r = self.r_c if cocompact else self.r_nc
        return not r.definitely_less(1)


def _fmt_m(x: BoundedReal, n: int = 0, mode: str = "proven") -> str:
    """Certified decimal ceiling of M(n): two decimals below 1000, one above.

    The table reports upper bounds, so the printed value must round up.  For
    even n the base is an exact rational and the ceiling is computed exactly;
    for odd n the interval is narrowed until both endpoints agree on the
    ceiling.  Falls back to midpoint rounding when n is unknown.
    """
    if n < 2:
        v = float(x.mid)
        return f"{v:.2f}" if v < 1000 else f"{v:.1f}"
    base = Fraction(n) / spectral_gap(n, mode)
    if n % 2 == 0:
        q = base ** (n // 2)
        scale = 100 if q < 1000 else 10
        c = math.ceil(q * scale)
    else:
        prec = 128
        while True:
            m = Context(prec).exact(base) ** Fraction(n, 2)
            scale = 100 if m.hi < 1000 else 10
            lo_c = math.ceil(m.lo * scale)
            hi_c = math.ceil(m.hi * scale)
            if lo_c == hi_c:
                c = int(lo_c)
                break
            if prec > 4096:
                raise UndecidedComparison(
                    f"printed ceiling of M({n}) undecided at precision {prec}"
                )
            prec *= 2
    if scale == 100:
        return f"{c // 100}.{c % 100:02d}"
    return f"{c // 10}.{c % 10}"


def _fmt_r(x: BoundedReal) -> str:
    v = float(x.mid)
    if 0.01 <= v < 1e8:
        return f"{v:.2f}"
    return f"{v:.2e}"


@dataclass(frozen=True)
class DimensionReport:
    mode: str
    rows: Tuple[TableRow, ...]

    def row(self, n: int) -> TableRow:
        for row in self.rows:
            if row.n == n:
                return row
        raise KeyError(n)

    def to_text(self) -> str:
        lines = [f"{'n':>3}  {'M(n)':>12}  {'R_c(n)':>14}  {'R_nc(n)':>14}"]
        for row in self.rows:
            lines.append(
                f"{row.n:>3}  {_fmt_m(row.m, row.n, self.mode):>12}  "
                f"{_fmt_r(row.r_c):>14}  {_fmt_r(row.r_nc):>14}"
            )
        return "\n".join(lines)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "M", "R_c", "R_nc"])
        for row in self.rows:
            writer.writerow(
                [row.n, _fmt_m(row.m, row.n, self.mode), _fmt_r(row.r_c), _fmt_r(row.r_nc)]
            )
        return buf.getvalue()

    def to_json(self) -> str:
        def enc(x: BoundedReal) -> dict:
            return {"mid": x.mid_str(), "rad": x.rad_str()}

        payload = {
            "mode": self.mode,
            "rows": [
                {"n": row.n, "M": enc(row.m), "R_c": enc(row.r_c), "R_nc": enc(row.r_nc)}
                for row in self.rows
            ],
        }
        return json.dumps(payload, indent=2)


def table1(
    ctx: Context, n_min: int = 2, n_max: int = 29, mode: str = "proven"
) -> DimensionReport:
    """The M(n), R_c(n), R_nc(n) table over a dimension range."""
    if n_min < 2 or n_max < n_min:
        raise ValueError("need 2 <= n_min <= n_max")
    rows = []
    for n in range(n_min, n_max + 1):
        r_c, r_nc = r_ratios(ctx, n, mode)
        rows.append(TableRow(n=n, m=m_bound(ctx, n, mode), r_c=r_c, r_nc=r_nc))
    return DimensionReport(mode=mode, rows=tuple(rows))


def dimension_cutoffs(
    ctx: Context, ceiling: int = 64, mode: str = "proven"
) -> Tuple[int, int]:
    """Largest dimensions with R_c(n) >= 1 and R_nc(n) >= 1, respectively.

    Scans n = 4..ceiling and requires every R-versus-1 comparison to be
    definite, escalating precision when an enclosure straddles 1.  Also
    verifies that neither ratio crosses back above 1 before the ceiling.
    """
    max_c: Optional[int] = None
    max_nc: Optional[int] = None
    for n in range(4, ceiling + 1):
        r_c, r_nc = r_ratios(ctx, n, mode)
        for c, r in ((True, r_c), (False, r_nc)):
            attempts = 0
            while not (r.definitely_less(1) or r.definitely_greater(1)):
                attempts += 1
                if attempts > 4:
                    raise UndecidedComparison(
                        f"R ratio at n = {n} straddles 1 at all tried precisions"
                    )
                deep = ctx.deeper(2**attempts)
                pair = r_ratios(deep, n, mode)
                r = pair[0] if c else pair[1]
            if r.definitely_greater(1):
                if c:
                    max_c = n
                else:
                    max_nc = n
    if max_c is None or max_nc is None:
        raise ValueError("no feasible dimensions in scan range")
    # the cutoff is only meaningful if the tail of the scan stayed below 1
    for n in range(max_c + 1, ceiling + 1):
        if not r_ratios(ctx, n, mode)[0].definitely_less(1):
            raise AssertionError(f"cocompact ratio re-crosses 1 at n = {n}")
    for n in range(max_nc + 1, ceiling + 1):
        if not r_ratios(ctx, n, mode)[1].definitely_less(1):
            raise AssertionError(f"noncocompact ratio re-crosses 1 at n = {n}")
    return max_c, max_nc
