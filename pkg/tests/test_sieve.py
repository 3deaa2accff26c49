"""Admissible-field sieve: exponent table, golden lists, structural checks."""

import json
from fractions import Fraction

import pytest

from covol.numerics import Context, UndecidedComparison
from covol.sieve import (
    KNOWN_EXCLUSIONS,
    discriminant_exponent,
    even_sieve,
    odd_degree_cap,
    odd_sieve,
    r_case,
    sieve,
    sieve_all,
)

GOLDEN_CAPS = {
    4: [262, 2244, 19210, 164442, 1407650],
    5: [214, 1928, 17302, 155272, 1393406],
    6: [41, 197, 939],
    7: [39, 205, 1062],
    8: [17, 59],
    9: [16, 59],
    10: [9],
    11: [9],
    12: [6],
}

GOLDEN_REFINED = {
    6: [(2, 5), (2, 8), (2, 12), (2, 13), (2, 17), (2, 21), (2, 24), (2, 28),
        (3, 49), (3, 81)],
    8: [(2, 5), (2, 8), (2, 12), (2, 13)],
    9: [(2, 5), (2, 8), (2, 12), (2, 13)],
    10: [(2, 5), (2, 8)],
    11: [(2, 5), (2, 8)],
    12: [(2, 5)],
}


@pytest.fixture(scope="module")
def reports(ctx):
    return {n: sieve(ctx, n) for n in range(4, 14)}


def test_exponent_table():
    assert discriminant_exponent(2, "even", "step1") == 4
    assert discriminant_exponent(2, "even", "step2") == 5
    assert discriminant_exponent(3, "odd-r-odd", "step1") == Fraction(11, 2)
    assert discriminant_exponent(5, "odd-r-odd", "dl") == Fraction(7, 2)
    assert discriminant_exponent(5, "odd-r-odd", "dk-residual") == Fraction(27, 2)
    assert discriminant_exponent(4, "odd-r-even", "dl") == Fraction(3, 2)
    assert discriminant_exponent(4, "odd-r-even", "dk-residual") == 9
    with pytest.raises(KeyError):
        discriminant_exponent(3, "even", "dl")


def test_r_case():
    assert r_case(3) == "odd-r-odd"
    assert r_case(4) == "odd-r-even"


def test_golden_degree_caps(reports):
    for n, caps in GOLDEN_CAPS.items():
        assert [cap for _, cap in reports[n].admissible] == caps, n


def test_golden_refined_lists(reports):
    for n, refined in GOLDEN_REFINED.items():
        assert reports[n].refined == refined, n


def test_low_dimensions_left_unrefined(reports):
    for n in (4, 5):
        assert reports[n].refined == []
        assert reports[n].unrefined == reports[n].admissible


def test_exclusions_carry_reasons(reports):
    for rep in reports.values():
        for exc in rep.excluded:
            assert exc.reason
    n6 = {(e.degree, e.discriminant) for e in reports[6].excluded}
    assert n6 == {(2, 29), (2, 33), (2, 37), (2, 40), (2, 41), (3, 148), (3, 169),
                  (4, 725)}


def test_override_is_isolated(reports):
    overridden = [
        (rep.n, exc.degree, exc.discriminant)
        for rep in reports.values()
        for exc in rep.excluded
        if exc.override
    ]
    assert overridden == [(8, 3, 49)]
    assert set(KNOWN_EXCLUSIONS) == {(8, 3, 49)}
    reason = next(e.reason for e in reports[8].excluded if e.override)
    assert "lhs" in reason and "M" in reason


def test_extension_ceiling_exclusion(reports):
    rep = reports[9]
    assert rep.dl_ceilings[(3, 49)] == 7446
    exc = next(e for e in rep.excluded if (e.degree, e.discriminant) == (3, 49))
    assert "7446" in exc.reason and "degree-6" in exc.reason


def test_infeasible_dimension(reports):
    rep = reports[13]
    assert rep.admissible == [] and rep.case == "infeasible"
    assert "below 1" in rep.empty_reason


def test_refined_degrees_within_admissible(reports):
    for rep in reports.values():
        caps = dict(rep.admissible)
        for d, disc in rep.refined:
            assert disc <= caps[d], (rep.n, d, disc)


def test_root_discriminant_caps_non_increasing(reports):
    # caps grow with degree, but in root-discriminant terms they shrink
    for rep in reports.values():
        values = [cap ** (1.0 / d) for d, cap in rep.admissible]
        assert all(a >= b for a, b in zip(values, values[1:])), rep.n


def test_cross_parity_cap_routing(ctx):
    # the two step-1 right-hand sides differ by the factor 4 * 2^(-d): the
    # chains agree at d = 2 and the r-odd chain is strictly tighter beyond
    for n in (7, 11):
        assert odd_degree_cap(ctx, n, 2) == odd_degree_cap(
            ctx, n, 2, force_chain="odd-r-odd"
        )
        for d in (3, 4):
            correct = odd_degree_cap(ctx, n, d)
            misrouted = odd_degree_cap(ctx, n, d, force_chain="odd-r-odd")
            assert misrouted <= correct, (n, d)


def test_dispatch_and_bounds(ctx):
    with pytest.raises(ValueError):
        sieve(ctx, 3)
    with pytest.raises(ValueError):
        sieve(ctx, 65)
    with pytest.raises(ValueError):
        even_sieve(ctx, 7)
    with pytest.raises(ValueError):
        odd_sieve(ctx, 8)
    with pytest.raises(ValueError):
        sieve_all(ctx, 9, 5)


def test_sieve_all_matches_single(ctx):
    reports = sieve_all(ctx, 11, 13)
    assert [rep.n for rep in reports] == [11, 12, 13]
    assert reports[1].refined == sieve(ctx, 12).refined


def test_json_round_trip(reports):
    payload = json.loads(reports[9].to_json())
    assert payload["n"] == 9
    assert [tuple(x) for x in payload["refined"]] == reports[9].refined
    ceilings = {(e["degree"], e["discriminant"]): e["ceiling"] for e in payload["dl_ceilings"]}
    assert ceilings[(3, 49)] == 7446
    assert any(e["override"] for e in json.loads(reports[8].to_json())["excluded"])
