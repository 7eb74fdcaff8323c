#!/usr/bin/env python3
"""
Tests for reduced words, the translating-word search and the
no-relation certificate.
"""

from fractions import Fraction

import pytest

from modules.projective.interval import Interval
from modules.projective.mat2 import IDENTITY, Mat2, compose, dist_to_identity
from modules.shared.errors import ConfigError, UnknownGeneratorError, WordSearchExhausted
from modules.shared.pair_selector import GeneratorPairSelector
from modules.words.forge import (
    FAILURE_KINDS,
    RelationCertificate,
    TranslatingWords,
    certify_no_relation,
    check_word_conditions,
    condition_failure,
    conjugate_form,
    find_translating_words,
    flanking_failure,
    near_identity_scan,
)
from modules.words.word import EMPTY_WORD, GeneratorPair, Word, eval_word, read_words, word_reduce

UNIT = Interval.of(0, 1)
DELTA = Fraction(1, 386)


# -- words ---------------------------------------------------------------------------

def test_free_reduction():
    assert word_reduce("aAb") == Word("b")
    assert word_reduce("ab BA") == EMPTY_WORD
    assert Word("ab") + Word("BA") == EMPTY_WORD
    assert Word("ab").inverse() == Word("BA")
    assert Word("ab").power(2) == Word("abab")
    assert Word("ab").power(-1) == Word("BA")
    with pytest.raises(ValueError):
        Word("aA")
    with pytest.raises(ValueError):
        Word("ac")


def test_shortlex_order():
    words = [Word("b"), Word("A"), Word("aa"), Word("a"), Word("B")]
    assert [str(w) for w in sorted(words, key=lambda w: w.sort_key)] == ["a", "A", "b", "B", "aa"]


def test_evaluation_is_left_to_right(sanov_pair):
    assert eval_word(Word("ab"), sanov_pair) == Mat2(1, 2, 2, 5)
    assert eval_word(Word("ba"), sanov_pair) == Mat2(5, 2, 2, 1)
    assert eval_word(EMPTY_WORD, sanov_pair) == IDENTITY


def test_word_file_parsing():
    words = read_words(["ab   # first", "", "# comment only", "  BA  "])
    assert words == [Word("ab"), Word("BA")]
    with pytest.raises(ValueError, match="line 2"):
        read_words(["ab", "aA"])


def test_pair_rejects_identity_and_foreign_entries(sanov_pair):
    with pytest.raises(ValueError):
        GeneratorPair(IDENTITY, sanov_pair.b)
    with pytest.raises(ValueError):
        GeneratorPair(Mat2(1, Fraction(1, 3), 0, 1), sanov_pair.b)
    again = GeneratorPair.from_json(sanov_pair.to_json())
    assert again == sanov_pair


# -- pair selector ----------------------------------------------------------------------

def test_shipped_pairs(selector):
    assert selector.get_pair_names() == ["dyadic-hyperbolic", "sanov"]
    assert selector.get_claims("sanov")["translating_words"] is False
    with pytest.raises(UnknownGeneratorError):
        selector.get_pair("nope")


def test_pair_file_errors(tmp_path):
    with pytest.raises(ConfigError):
        GeneratorPairSelector(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        GeneratorPairSelector(str(broken))
    singular = tmp_path / "singular.json"
    singular.write_text('{"pairs": [{"name": "x", "a": {"a": 1, "b": 1, "c": 1, "d": 1}, '
                        '"b": {"a": 1, "b": 0, "c": 0, "d": 1}}]}', encoding="utf-8")
    with pytest.raises(ConfigError):
        GeneratorPairSelector(str(singular))


# -- translating-word conditions ----------------------------------------------------------

def test_conjugate_form():
    assert conjugate_form(Word("aabAA"), "a") == (2, Word("b"))
    assert conjugate_form(Word("bbaBB"), "b") == (2, Word("a"))
    assert conjugate_form(Word("ab"), "a") is None
    assert conjugate_form(Word("aabA"), "a") is None
    assert conjugate_form(Word("abAA"), "a") is None


def test_flanking():
    assert flanking_failure(Mat2(2, 1, 1, 1), UNIT) is None
    assert flanking_failure(Mat2(2, 1, 1, 1), Interval.of(0, 2)) == "not-flanking"
    assert flanking_failure(Mat2(1, 1, 0, 1), UNIT) == "not-hyperbolic"
    assert flanking_failure(Mat2(2, 0, 0, Fraction(1, 2)), UNIT) == "fixes-infinity"


def test_condition_order(dyadic_pair):
    assert condition_failure(Mat2(2, 1, 1, 1), DELTA, UNIT) == "distance"
    assert condition_failure(dyadic_pair.a, DELTA, UNIT) is None
    assert dist_to_identity(dyadic_pair.b) < DELTA


def test_search_on_dyadic_pair(dyadic_pair):
    found = find_translating_words(dyadic_pair, DELTA, UNIT, max_core_len=4)
    assert found.g_core == Word("b")
    assert found.h_core == Word("a")
    assert found.g_words[0] == Word("abA")
    assert found.h_words[5] == Word("bbbbbbaBBBBBB")
    assert len(found.words) == 12
    assert len(set(found.matrices)) == 12
    for word, matrix in zip(found.words, found.matrices):
        assert eval_word(word, dyadic_pair) == matrix
        outer = "a" if word in found.g_words else "b"
        assert check_word_conditions(word, outer, dyadic_pair, DELTA, UNIT) == []
    assert set(found.statistics["failures"]) == set(FAILURE_KINDS)


def test_search_exhausts_without_cores(dyadic_pair):
    with pytest.raises(WordSearchExhausted) as info:
        find_translating_words(dyadic_pair, DELTA, UNIT, max_core_len=0)
    assert info.value.statistics["side"] == "g"
    assert info.value.statistics["cores_tried"] == 0


def test_search_exhausts_on_discrete_pair(sanov_pair):
    with pytest.raises(WordSearchExhausted) as info:
        find_translating_words(sanov_pair, DELTA, UNIT, max_core_len=3)
    stats = info.value.statistics
    assert stats["cores_tried"] > 0
    assert stats["failures"]["distance"] == stats["cores_tried"]


def test_word_conditions_report_every_failure(sanov_pair):
    failures = check_word_conditions(Word("ab"), "a", sanov_pair, DELTA, UNIT)
    assert failures[0] == "form"
    assert "distance" in failures


def test_translating_words_json(dyadic_pair):
    found = find_translating_words(dyadic_pair, DELTA, UNIT, max_core_len=2)
    again = TranslatingWords.from_json(found.to_json())
    assert again.words == found.words
    assert again.matrices == found.matrices


# -- relations ------------------------------------------------------------------------------

def test_sanov_pair_is_free_to_length_six(sanov_pair):
    cert = certify_no_relation(sanov_pair, 6)
    assert cert.holds
    assert cert.words_checked == 4 * (1 + 3 + 9 + 27 + 81 + 243)


def test_dyadic_pair_is_free_to_length_five(dyadic_pair):
    assert certify_no_relation(dyadic_pair, 5).holds


@pytest.mark.slow
@pytest.mark.parametrize("name", ["sanov", "dyadic-hyperbolic"])
def test_shipped_pairs_are_free_to_their_claimed_length(selector, name):
    length = selector.get_claims(name)["free_to_length"]
    assert length == 10
    cert = certify_no_relation(selector.get_pair(name), length)
    assert cert.holds
    assert cert.words_checked == 2 * (3 ** length - 1)


def test_sabotaged_pairs_report_shortest_relation(sanov_pair):
    a = sanov_pair.a
    repeated = certify_no_relation(GeneratorPair(a, a, "repeated"), 6)
    assert not repeated.holds
    assert repeated.counterexample == Word("aB")
    squared = certify_no_relation(GeneratorPair(a, compose(a, a), "squared"), 6)
    assert squared.counterexample == Word("aaB")


def test_relation_certificate_json(sanov_pair):
    cert = certify_no_relation(GeneratorPair(sanov_pair.a, sanov_pair.a, "repeated"), 3)
    again = RelationCertificate.from_json(cert.to_json())
    assert again == cert
    assert cert.to_json()["holds"] is False
    with pytest.raises(ValueError):
        certify_no_relation(sanov_pair, 0)


def test_near_identity_scan(dyadic_pair, sanov_pair):
    close = near_identity_scan(dyadic_pair, DELTA, 1)
    assert [str(item.word) for item in close][0] == ""
    assert {str(item.word) for item in close} == {"", "a", "A", "b", "B"}
    assert [str(item.word) for item in near_identity_scan(sanov_pair, DELTA, 3)] == [""]
