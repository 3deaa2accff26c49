"""Field-table ingestion, completeness certificates, discriminant minima."""

import pytest

from covol.fielddata import (
    ANY_SIGNATURE_MIN_DISC,
    FieldDataError,
    FieldTable,
    NumberFieldRecord,
    default_table,
    load_field_table,
    odlyzko_min_disc,
)

SAMPLE = """\
# sample table
#complete degree=2 up_to=20
2,5,2,0,1,x^2-x-1
2,8,2,0,1,x^2-2
2,12,2,0,1,x^2-3
2,13,2,0,1,x^2-x-3
2,17,2,0,1,x^2-x-4
3,49,3,0,1,x^3-x^2-2x+1
"""


def test_load_and_roundtrip():
    table = load_field_table(SAMPLE)
    assert len(table.records) == 6
    assert table.complete_up_to(2) == 20
    again = load_field_table(table.serialize())
    assert again.serialize() == table.serialize()


def test_record_validation():
    rec = NumberFieldRecord(2, 5, 2, 0, 1, "x^2-x-1")
    assert rec.label == "2.2.5"
    assert rec.totally_real
    with pytest.raises((ValueError, FieldDataError)):
        NumberFieldRecord(2, 5, 1, 1, 1)  # r1 + 2 r2 != degree
    with pytest.raises((ValueError, FieldDataError)):
        NumberFieldRecord(2, 5, 2, 0, 0)


def test_duplicate_rejected():
    with pytest.raises(FieldDataError):
        load_field_table(SAMPLE + "2,5,2,0,1\n")


def test_bad_line_reports_line_number():
    with pytest.raises(FieldDataError) as err:
        load_field_table("#complete degree=2 up_to=20\n2,notanumber,2,0,1\n")
    assert "2" in str(err.value)


def test_fields_in_range_completeness_guard():
    table = load_field_table(SAMPLE)
    assert [rec.discriminant for rec in table.fields_in_range(2, 13)] == [5, 8, 12, 13]
    with pytest.raises(FieldDataError):
        table.fields_in_range(2, 25)  # beyond certificate
    assert [rec.discriminant for rec in table.fields_in_range(2, 25, best_effort=True)] == [
        5,
        8,
        12,
        13,
        17,
    ]
    # degree with no certificate but query below the universal minimum
    assert table.fields_in_range(5, 100) == []


def test_odlyzko_min_disc():
    assert odlyzko_min_disc(1) == 1
    assert odlyzko_min_disc(2) <= 5
    assert odlyzko_min_disc(3) <= 49
    assert odlyzko_min_disc(6) <= 300125
    with pytest.raises((KeyError, ValueError)):
        odlyzko_min_disc(11)


def test_any_signature_minima():
    assert ANY_SIGNATURE_MIN_DISC[2] == 3
    assert ANY_SIGNATURE_MIN_DISC[6] == 9747
    for d in range(1, 9):
        assert ANY_SIGNATURE_MIN_DISC[d] <= odlyzko_min_disc(d)


def test_default_table_contents():
    table = default_table()
    assert table.validate() == []
    quad = table.fields_in_range(2, 50)
    assert [rec.discriminant for rec in quad] == [
        5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40, 41, 44,
    ]
    assert {rec.discriminant: rec.class_number for rec in quad}[40] == 2
    cubics = table.fields_in_range(3, 197)
    assert [rec.discriminant for rec in cubics] == [49, 81, 148, 169]
    assert all(rec.class_number == 1 for rec in cubics)
    assert [rec.discriminant for rec in table.fields_in_range(4, 1000)] == [725]


def test_consistency_with_minima():
    table = default_table()
    for d in (2, 3, 4):
        recs = table.fields_in_range(d, table.complete_up_to(d))
        assert min(rec.discriminant for rec in recs) >= odlyzko_min_disc(d)
