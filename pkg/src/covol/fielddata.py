"""Number-field records and discriminant-minimum tables for the sieve.

Ingests a small CSV dialect of field records (degree, discriminant,
signature, class number, optional polynomial), validates it, and serves
range queries guarded by completeness certificates.  Also stores certified
lower bounds for minimal discriminants per degree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from typing import Dict, Iterable, List, Optional, Tuple

__all__ = [
    "NumberFieldRecord",
    "FieldTable",
    "FieldDataError",
    "load_field_table",
    "default_table",
    "odlyzko_min_disc",
    "TOTALLY_REAL_MIN_DISC",
    "ANY_SIGNATURE_MIN_DISC",
]


class FieldDataError(ValueError):
    pass


# Minimal absolute discriminants of totally real fields per degree.  These
# published minima are valid certified lower bounds (any sharper analytic
# bound would also work, but the minima are what make the degree cutoffs
# in the sieve match the known field lists).
TOTALLY_REAL_MIN_DISC: Dict[int, int] = {
    1: 1,
    2: 5,
    3: 49,
    4: 725,
    5: 14641,
    6: 300125,
    7: 20134393,
    8: 282300416,
    9: 9685993193,
    10: 443952558373,
}

# Minimal absolute discriminants over all signatures (degrees 1..9).
ANY_SIGNATURE_MIN_DISC: Dict[int, int] = {
    1: 1,
    2: 3,
    3: 23,
    4: 117,
    5: 1609,
    6: 9747,
    7: 184607,
    8: 1257728,
    9: 29510281,
}


def odlyzko_min_disc(d: int, totally_real: bool = True) -> int:
    """Certified lower bound for the minimal |disc| of a degree-d field."""
    table = TOTALLY_REAL_MIN_DISC if totally_real else ANY_SIGNATURE_MIN_DISC
    if d not in table:
        raise FieldDataError(f"no stored discriminant bound for degree {d}")
    return table[d]


@dataclass(frozen=True)
class NumberFieldRecord:
    degree: int
    discriminant: int
    r1: int
    r2: int
    class_number: int
    polynomial: Optional[str] = None

    def __post_init__(self):
        if self.degree < 1:
            raise FieldDataError("degree must be >= 1")
        if self.discriminant < 1:
            raise FieldDataError("absolute discriminant must be >= 1")
        if self.class_number < 1:
            raise FieldDataError("class number must be >= 1")
        if self.r1 + 2 * self.r2 != self.degree:
            raise FieldDataError(
                f"signature ({self.r1},{self.r2}) inconsistent with degree {self.degree}"
            )

    @property
    def totally_real(self) -> bool:
        return self.r2 == 0

    @property
    def label(self) -> str:
        return f"{self.degree}.{self.r1}.{self.discriminant}"

    def to_line(self) -> str:
        base = (
            f"{self.degree},{self.discriminant},{self.r1},{self.r2},"
            f"{self.class_number}"
        )
        return base + (f",{self.polynomial}" if self.polynomial else "")


_COMPLETE_RE = re.compile(r"^#complete\s+degree=(\d+)\s+up_to=(\d+)\s*$")


class FieldTable:
    """Immutable, validated collection of field records with completeness data."""

    def __init__(
        self,
        records: Iterable[NumberFieldRecord],
        completeness: Optional[Dict[int, int]] = None,
    ):
        self._records: Tuple[NumberFieldRecord, ...] = tuple(
            sorted(records, key=lambda rec: (rec.degree, rec.discriminant))
        )
        self._completeness: Dict[int, int] = dict(completeness or {})
        seen = set()
        for rec in self._records:
            key = (rec.degree, rec.discriminant)
            if key in seen:
                raise FieldDataError(f"duplicate record {key}")
            seen.add(key)
        for d, up_to in self._completeness.items():
            low = TOTALLY_REAL_MIN_DISC.get(d)
            for rec in self._records:
                if rec.degree == d and rec.totally_real and low is not None:
                    if rec.discriminant < low:
                        raise FieldDataError(
                            f"record {rec.label} below the degree-{d} discriminant bound"
                        )

    @property
    def records(self) -> Tuple[NumberFieldRecord, ...]:
        return self._records

    @property
    def completeness(self) -> Dict[int, int]:
        return dict(self._completeness)

    def complete_up_to(self, d: int) -> int:
        return self._completeness.get(d, 0)

    def fields_in_range(
        self, d: int, d_max: int, best_effort: bool = False
    ) -> List[NumberFieldRecord]:
        """Totally real records of degree d with discriminant <= d_max.

        Refuses ranges beyond the table's completeness certificate unless
        best_effort is set; a range provably below the stored discriminant
        minimum is answered (empty) without a certificate.
        """
        if d in TOTALLY_REAL_MIN_DISC and d_max < TOTALLY_REAL_MIN_DISC[d]:
            return []
        if not best_effort and d_max > self.complete_up_to(d):
            raise FieldDataError(
                f"table only certified complete for degree {d} up to "
                f"{self.complete_up_to(d)}, requested {d_max} "
                "(pass best_effort to override)"
            )
        return [
            rec
            for rec in self._records
            if rec.degree == d and rec.totally_real and rec.discriminant <= d_max
        ]

    def serialize(self) -> str:
        lines = []
        for d in sorted(self._completeness):
            lines.append(f"#complete degree={d} up_to={self._completeness[d]}")
        lines.extend(rec.to_line() for rec in self._records)
        return "\n".join(lines) + "\n"

    def validate(self) -> List[str]:
        """Consistency findings (empty list = clean)."""
        findings = []
        for d in sorted({rec.degree for rec in self._records}):
            discs = [
                rec.discriminant
                for rec in self._records
                if rec.degree == d and rec.totally_real
            ]
            if discs and d in TOTALLY_REAL_MIN_DISC:
                if min(discs) < TOTALLY_REAL_MIN_DISC[d]:
                    findings.append(
                        f"degree {d}: record below stored discriminant minimum"
                    )
        degrees = sorted(TOTALLY_REAL_MIN_DISC)
        for a, b in zip(degrees, degrees[1:]):
            if TOTALLY_REAL_MIN_DISC[a] >= TOTALLY_REAL_MIN_DISC[b]:
                findings.append(f"discriminant minima not increasing at degree {b}")
        return findings


def load_field_table(text: str) -> FieldTable:
    """Parse the CSV dialect; `#` comments, optional completeness directives."""
    records = []
    completeness: Dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _COMPLETE_RE.match(line)
            if m:
                d, up_to = int(m.group(1)), int(m.group(2))
                if d in completeness:
                    raise FieldDataError(
                        f"line {lineno}: duplicate completeness directive for degree {d}"
                    )
                completeness[d] = up_to
            continue
        parts = line.split(",")
        if len(parts) not in (5, 6):
            raise FieldDataError(f"line {lineno}: expected 5 or 6 fields, got {len(parts)}")
        try:
            degree, disc, r1, r2, h = (int(p) for p in parts[:5])
        except ValueError as exc:
            raise FieldDataError(f"line {lineno}: {exc}") from None
        poly = parts[5] if len(parts) == 6 else None
        try:
            records.append(
                NumberFieldRecord(
                    degree=degree,
                    discriminant=disc,
                    r1=r1,
                    r2=r2,
                    class_number=h,
                    polynomial=poly,
                )
            )
        except FieldDataError as exc:
            raise FieldDataError(f"line {lineno}: {exc}") from None
    return FieldTable(records, completeness)


def default_table() -> FieldTable:
    """The embedded mini-table shipped with the package."""
    text = resources.files("covol.data").joinpath("fields.csv").read_text()
    return load_field_table(text)
