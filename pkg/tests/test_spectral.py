"""Spectral upper bounds, the feasibility table, and dimension cutoffs."""

import csv
import io
import json
from fractions import Fraction

import pytest

from covol.numerics import Context
from covol.spectral import (
    MODES,
    conformal_volume_upper,
    dimension_cutoffs,
    m_bound,
    r_ratios,
    spectral_gap,
    table1,
)
from covol.bounds import omega
from covol.numerics import sphere_volume


def test_spectral_gap_values():
    assert spectral_gap(2, "proven") == Fraction(3, 16)
    assert spectral_gap(5, "proven") == Fraction(7, 4)
    assert spectral_gap(2, "conjectural") == Fraction(1, 4)
    assert spectral_gap(10, "conjectural") == 9
    with pytest.raises(ValueError):
        spectral_gap(1)
    with pytest.raises(ValueError):
        spectral_gap(4, "hopeful")


def test_m_bound_exact_rationals(ctx):
    assert m_bound(ctx, 2).contains(Fraction(32, 3))
    assert m_bound(ctx, 4).contains(Fraction(256, 25))
    assert m_bound(ctx, 6).contains(Fraction(512, 27))


def test_mode_monotonicity(ctx):
    for n in range(2, 30):
        assert m_bound(ctx, n, "conjectural").definitely_less(m_bound(ctx, n, "proven"))


def test_r_ratio_consistency(ctx):
    for n in (4, 7, 12):
        r_c, r_nc = r_ratios(ctx, n)
        direct_c = m_bound(ctx, n) * sphere_volume(ctx, n) / omega(ctx, n, True).value
        direct_nc = m_bound(ctx, n) * sphere_volume(ctx, n) / omega(ctx, n, False).value
        assert r_c.overlaps(direct_c)
        assert r_nc.overlaps(direct_nc)


def test_conformal_volume_upper(ctx):
    v = conformal_volume_upper(ctx, 4, ctx.exact(spectral_gap(4)))
    assert v.overlaps(m_bound(ctx, 4))
    with pytest.raises(ValueError):
        conformal_volume_upper(ctx, 4, ctx.ball(-1, 1))


def test_table_shape_and_formats(ctx):
    report = table1(ctx)
    assert [row.n for row in report.rows] == list(range(2, 30))
    reader = csv.reader(io.StringIO(report.to_csv()))
    rows = list(reader)
    assert rows[0] == ["n", "M", "R_c", "R_nc"]
    assert len(rows) == 29
    payload = json.loads(report.to_json())
    assert payload["mode"] == "proven"
    assert len(payload["rows"]) == 28
    first = payload["rows"][0]
    assert set(first) == {"n", "M", "R_c", "R_nc"}
    assert "mid" in first["M"] and "rad" in first["M"]
    text = report.to_text()
    assert len(text.splitlines()) == 29


def test_table_row_lookup(ctx):
    report = table1(ctx)
    assert report.row(13).n == 13
    with pytest.raises(KeyError):
        report.row(99)


def test_dimension_cutoffs(ctx):
    assert dimension_cutoffs(ctx) == (12, 27)
    assert dimension_cutoffs(ctx, ceiling=30) == (12, 27)


def test_dimension_cutoffs_conjectural(ctx):
    assert dimension_cutoffs(ctx, mode="conjectural") == (12, 26)


def test_modes_constant():
    assert MODES == ("proven", "conjectural")
