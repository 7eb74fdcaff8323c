#!/usr/bin/env python3
"""
Tests for the marriage checks, matchings and their audits.

Most checks run on twelve integer translations t + 1 .. t + 12: translates
stay translations, so every count can be worked out by hand. Subsets of up
to twelve consecutive shifts pass the 2-marriage bound and larger ones fail.
"""

from dataclasses import replace
from fractions import Fraction

import pytest

from modules.marriage.matching import HopcroftKarp
from modules.marriage.subsets import (
    EMPTY_SUBSET,
    PIECE_COUNT,
    FiniteSubset,
    TranslatingSet,
    TranslationTable,
    ball,
)
from modules.marriage.verifier import (
    HallViolation,
    MatchingCertificate,
    MatchingEdge,
    audited_product,
    check_2marriage,
    check_egs_condition,
    extract_matching,
    recount_violation,
    validate_certificate,
)
from modules.piecewise.generators import thompson_f, translation_map
from modules.piecewise.piecewise_map import IDENTITY_MAP


def shifts(*values):
    return FiniteSubset(tuple(translation_map(v) for v in values))


# -- Hopcroft-Karp -------------------------------------------------------------------

def test_perfect_matching():
    matcher = HopcroftKarp({1: ["x", "y"], 2: ["x"], 3: ["y", "z"]})
    size, matching = matcher.get_maximum_matching_num()
    assert size == 3
    assert matching[2] == "x"
    assert len(set(matching.values())) == 3
    assert matcher.is_left_perfect()
    assert matcher.hall_violator() == ([], [])


def test_hall_violator_on_deficient_graph():
    matcher = HopcroftKarp({1: ["x"], 2: ["x"], 3: ["x", "y"], 4: ["z"]})
    assert matcher.get_maximum_matching_num()[0] == 3
    assert not matcher.is_left_perfect()
    vertices, neighbours = matcher.hall_violator()
    assert len(neighbours) < len(vertices)
    assert set(vertices) >= {1, 2}
    assert 4 not in vertices
    assert set(neighbours) == {"x", "y"} or set(neighbours) == {"x"}


def test_empty_graph():
    matcher = HopcroftKarp({})
    assert matcher.get_maximum_matching() == {}
    assert matcher.is_left_perfect()


# -- subsets and balls -----------------------------------------------------------------

def test_finite_subset_rules():
    g, h = translation_map(1), translation_map(2)
    assert len(FiniteSubset.of([g, h, g])) == 2
    with pytest.raises(ValueError):
        FiniteSubset((g, g))
    with pytest.raises(ValueError):
        FiniteSubset((g,), ("one", "two"))
    both = FiniteSubset((g,)).union(FiniteSubset((h, g)))
    assert both.elements == (g, h)
    assert FiniteSubset((g, h)).intersection(FiniteSubset((h,))).elements == (h,)
    assert IDENTITY_MAP not in both
    assert FiniteSubset.from_json(both.to_json()) == both


def test_ball_of_single_translation():
    region = ball([translation_map(1)], 2)
    assert len(region) == 5
    assert region.labels == ("1", "x0", "x0^-1", "x0.x0", "x0^-1.x0^-1")
    assert region.elements[3] == translation_map(2)
    assert len(ball([translation_map(1)], 0)) == 1
    with pytest.raises(ValueError):
        ball([translation_map(1)], -1)


def test_ball_of_thompson_generators():
    region = ball(thompson_f(), 1)
    assert len(region) == 5
    assert len(ball(thompson_f(), 2)) == 17


def test_translating_set_invariants(shift_set):
    assert len(shift_set.translators) == 13
    assert shift_set.translators[0] is IDENTITY_MAP
    assert list(shift_set.s1) == list(range(13))
    assert list(shift_set.s2) == list(range(1, 13))
    assert shift_set.piece_count == PIECE_COUNT == 25
    with pytest.raises(ValueError):
        replace(shift_set, elements=shift_set.elements[:11], source_words=shift_set.source_words[:11])
    with pytest.raises(ValueError):
        replace(shift_set, elements=(IDENTITY_MAP,) + shift_set.elements[1:])
    with pytest.raises(ValueError):
        replace(shift_set, elements=(shift_set.elements[1],) + shift_set.elements[1:])


def test_translating_set_json(shift_set):
    again = TranslatingSet.from_json(shift_set.to_json())
    assert again.elements == shift_set.elements
    assert again.source_words == shift_set.source_words
    assert again.delta == Fraction(1, 386)


def test_translation_table_memoizes(shift_set):
    table = TranslationTable(shift_set.translators)
    serial = table.intern(translation_map(5))
    assert table.intern(translation_map(5)) == serial
    assert table.translate(0, serial) == serial
    target = table.translate(3, serial)
    assert table.elements[target] == translation_map(8)
    assert table.translate(3, serial) == target
    assert len(table.translates(shift_set.s1, [serial])) == 13


# -- 2-marriage and the coloured condition ------------------------------------------------

def test_empty_subset_passes(shift_set):
    report = check_2marriage(shift_set, EMPTY_SUBSET)
    assert (report.size, report.lhs, report.rhs, report.passed) == (0, 0, 0, True)


def test_identity_subset(shift_set, translating_set):
    for tset in (shift_set, translating_set):
        report = check_2marriage(tset, FiniteSubset((IDENTITY_MAP,)))
        assert report.lhs == 13
        assert report.rhs == 2
        assert report


@pytest.mark.parametrize("count, lhs, passed", [
    (1, 13, True),
    (12, 24, True),
    (13, 25, False),
    (20, 32, False),
])
def test_consecutive_shifts(shift_set, count, lhs, passed):
    report = check_2marriage(shift_set, shifts(*range(count)))
    assert report.lhs == lhs
    assert report.rhs == 2 * count
    assert report.passed is passed
    if passed:
        assert report.witness is None
    else:
        witness = report.witness
        assert len(witness["subset"]) == count
        assert len({t for row in witness["products"] for t in row}) == lhs


def test_quad_count(shift_set):
    report = check_2marriage(shift_set, shifts(0, 100), quad=True)
    assert report.quad_lhs == 8
    assert report.to_json()["quad_lhs"] == 8


def test_coloured_condition(shift_set):
    report = check_egs_condition(shift_set, shifts(0), EMPTY_SUBSET)
    assert report.lhs == 13
    assert report.target == 1
    assert report.passed
    both = check_egs_condition(shift_set, shifts(0, 1), shifts(1, 50))
    assert both.union_size == 3 and both.intersection_size == 1
    assert both.identity_holds and both.sum_identity_holds
    assert both.lhs == both.identity_rhs
    assert both.passed


def test_coloured_condition_fails_on_large_subsets(shift_set):
    u = shifts(*range(20))
    report = check_egs_condition(shift_set, u, u)
    assert report.identity_holds
    assert report.lhs == 32
    assert report.target == 40
    assert not report.union_bound_holds
    assert not report.passed


# -- matchings ----------------------------------------------------------------------------------

def test_certificate_for_single_element(shift_set):
    cert = extract_matching(shift_set, shifts(0), shifts(0))
    assert isinstance(cert, MatchingCertificate)
    assert cert.size == 2
    assert validate_certificate(cert)
    colours = sorted(edge.color for edge in cert.edges)
    assert colours == [1, 2]


def test_certificate_for_twelve_shifts(shift_set):
    u = shifts(*range(0, 120, 10))
    cert = extract_matching(shift_set, u, u)
    assert isinstance(cert, MatchingCertificate)
    assert cert.size == 24
    assert validate_certificate(cert).ok
    again = MatchingCertificate.from_json(cert.to_json())
    assert validate_certificate(again).ok


def test_tampered_certificates_fail_audit(shift_set):
    cert = extract_matching(shift_set, shifts(0, 1), shifts(0))
    first, second = cert.edges[0], cert.edges[1]
    collided = replace(cert, edges=(first, replace(second, target=first.target)) + cert.edges[2:])
    assert not validate_certificate(collided)
    wrong_colour = replace(cert, edges=tuple(
        replace(e, translator=0) if e.color == 2 else e for e in cert.edges))
    audit = validate_certificate(wrong_colour)
    assert any("not in S2" in v for v in audit.violations)
    dropped = replace(cert, edges=cert.edges[1:])
    assert any("covered 0 times" in v for v in validate_certificate(dropped).violations)
    bad_product = replace(cert, edges=(replace(first, translator=(first.translator % 12) + 1),)
                          + cert.edges[1:])
    assert any("differs" in v for v in validate_certificate(bad_product).violations)


def test_audit_ignores_the_search_table(shift_set):
    table = TranslationTable(shift_set.translators)
    serial = table.intern(translation_map(0))
    for s in range(1, 13):
        table._translates[(s, serial)] = table.intern(translation_map(100 + s))
    cert = extract_matching(shift_set, shifts(0), shifts(0), table)
    assert isinstance(cert, MatchingCertificate)
    audit = validate_certificate(cert)
    assert any("differs" in v for v in audit.violations)


def test_audit_products_are_cached(shift_set):
    audited_product.cache_clear()
    u = shifts(*range(0, 40, 10))
    cert = extract_matching(shift_set, u, u)
    assert validate_certificate(cert)
    misses = audited_product.cache_info().misses
    assert validate_certificate(MatchingCertificate.from_json(cert.to_json()))
    assert audited_product.cache_info().misses == misses
    assert audited_product.cache_info().hits >= cert.size


def test_violation_for_large_subsets(shift_set):
    u = shifts(*range(20))
    outcome = extract_matching(shift_set, u, u)
    assert isinstance(outcome, HallViolation)
    assert outcome.deficiency >= 1
    assert outcome.matching_size <= 32
    assert recount_violation(outcome).ok
    again = HallViolation.from_json(outcome.to_json())
    assert recount_violation(again).ok
    assert outcome.to_json()["kind"] == "violation"


def test_tampered_violation_fails_recount(shift_set):
    u = shifts(*range(20))
    outcome = extract_matching(shift_set, u, u)
    padded = replace(outcome, neighbours=outcome.neighbours[:-1])
    assert not recount_violation(padded)


def test_matching_edge_json():
    assert MatchingEdge(2, 0, 5, 3).to_json() == [2, 0, 5, 3]


def test_translating_set_ball_matchings(translating_set):
    region = ball(translating_set.elements, 1)
    assert len(region) == 25
    table = TranslationTable(translating_set.translators)
    for index in range(len(region)):
        u = FiniteSubset((region.elements[index],))
        report = check_2marriage(translating_set, u, table)
        assert report.lhs == 13
        cert = extract_matching(translating_set, u, u, table)
        assert validate_certificate(cert).ok
    whole = check_2marriage(translating_set, region, table)
    assert whole.passed
