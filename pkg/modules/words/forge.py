"""
Word Forge

Search for the twelve translating words a^i w a^-i and b^i w' b^-i whose
matrices lie near the identity, plus bounded-length freeness certificates and
near-identity scans. Enumeration is shortlex with letters ranked a < A < b < B.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from modules.exact.qsqrt2 import QSqrt2, as_fraction
from modules.projective.interval import Interval
from modules.projective.mat2 import IDENTITY, Mat2, compose, dist_to_identity
from modules.shared.errors import WordSearchExhausted
from modules.shared.logger import ParadoxLogger
from modules.words.word import (
    ALPHABET,
    EMPTY_WORD,
    INVERSE_LETTER,
    GeneratorPair,
    Word,
    eval_word,
)

CONJUGATE_POWERS = range(1, 7)
FAILURE_KINDS = ("distance", "pole", "not-hyperbolic", "fixes-infinity", "not-flanking", "duplicate")

logger = ParadoxLogger()


def _walk(gens: GeneratorPair, length: int, first: str, last: str) -> Iterator[Tuple[str, Mat2]]:
    """Reduced words of one length with given first and last letters, in lex order."""
    def extend(prefix: str, matrix: Mat2):
        if len(prefix) == length:
            if prefix[-1] in last:
                yield prefix, matrix
            return
        for letter in ALPHABET:
            if not prefix and letter not in first:
                continue
            if prefix and INVERSE_LETTER[letter] == prefix[-1]:
                continue
            yield from extend(prefix + letter, compose(matrix, gens.letters[letter]))

    if length == 0:
        return iter(())
    return extend("", IDENTITY)


def flanking_failure(m: Mat2, interval: Interval) -> Optional[str]:
    """None when m is hyperbolic with finite fixed points on both sides of the interval.

    The fixed points are the roots of q(t) = c t^2 + (d - a) t - b; they flank
    [lo, hi] exactly when q has the sign of -c at both endpoints.
    """
    trace = m.trace
    if not trace * trace > 4:
        return "not-hyperbolic"
    if not m.c:
        return "fixes-infinity"
    target = -m.c.sign()
    for x in interval:
        q = m.c * x * x + (m.d - m.a) * x - m.b
        if q.sign() != target:
            return "not-flanking"
    return None


def condition_failure(m: Mat2, delta: QSqrt2, interval: Interval) -> Optional[str]:
    """First failed translating-word condition on an evaluated matrix, or None."""
    if not dist_to_identity(m) < delta:
        return "distance"
    pole = m.pole
    if pole is not None and interval.contains(pole):
        return "pole"
    return flanking_failure(m, interval)


def conjugate_form(word: Word, outer: str) -> Optional[Tuple[int, Word]]:
    """(i, core) when word = outer^i core outer^-i with a core bounded by the other generator."""
    letters = word.letters
    i = len(letters) - len(letters.lstrip(outer))
    inverse = INVERSE_LETTER[outer]
    if i == 0 or not letters.endswith(inverse * i):
        return None
    core = letters[i:len(letters) - i]
    others = "bB" if outer == "a" else "aA"
    if not core or core[0] not in others or core[-1] not in others:
        return None
    return i, Word(core)


def check_word_conditions(word: Word, outer: str, gens: GeneratorPair, delta,
                          interval: Interval) -> List[str]:
    """Independent re-check of one translating word; returns every failure."""
    failures = []
    form = conjugate_form(word, outer)
    if form is None or form[0] not in CONJUGATE_POWERS:
        failures.append("form")
    matrix = eval_word(word, gens)
    delta = QSqrt2.coerce(as_fraction(delta))
    if not dist_to_identity(matrix) < delta:
        failures.append("distance")
    pole = matrix.pole
    if pole is not None and interval.contains(pole):
        failures.append("pole")
    flank = flanking_failure(matrix, interval)
    if flank:
        failures.append(flank)
    return failures


@dataclass
class TranslatingWords:
    g_words: List[Word]
    h_words: List[Word]
    g_core: Word
    h_core: Word
    matrices: List[Mat2]
    statistics: Dict = field(default_factory=dict)

    @property
    def words(self) -> List[Word]:
        return self.g_words + self.h_words

    def to_json(self) -> dict:
        return {
            "g_core": str(self.g_core),
            "h_core": str(self.h_core),
            "g_words": [str(w) for w in self.g_words],
            "h_words": [str(w) for w in self.h_words],
            "matrices": [m.to_json() for m in self.matrices],
            "statistics": self.statistics,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TranslatingWords":
        return cls(
            g_words=[Word(w) for w in data["g_words"]],
            h_words=[Word(w) for w in data["h_words"]],
            g_core=Word(data["g_core"]),
            h_core=Word(data["h_core"]),
            matrices=[Mat2.from_json(m) for m in data["matrices"]],
            statistics=data.get("statistics", {}),
        )


def _search_side(gens: GeneratorPair, outer: str, delta: QSqrt2, interval: Interval,
                 max_core_len: int, failures: Counter, exclude: Sequence[Mat2] = (),
                 progress: bool = False):
    """First core (shortlex) whose six conjugates all pass; yields candidates lazily."""
    others = "bB" if outer == "a" else "aA"
    outer_inverse = INVERSE_LETTER[outer]
    powers = [IDENTITY]
    inverse_powers = [IDENTITY]
    for _ in CONJUGATE_POWERS:
        powers.append(compose(powers[-1], gens.letters[outer]))
        inverse_powers.append(compose(inverse_powers[-1], gens.letters[outer_inverse]))
    tried = 0
    lengths = tqdm(range(1, max_core_len + 1), desc=f"{outer}-cores", disable=not progress, leave=False)
    for length in lengths:
        for core, core_matrix in _walk(gens, length, others, others):
            tried += 1
            matrices = []
            for i in CONJUGATE_POWERS:
                m = compose(compose(powers[i], core_matrix), inverse_powers[i])
                failure = condition_failure(m, delta, interval)
                if failure is None and (m in exclude or m in matrices):
                    failure = "duplicate"
                if failure:
                    failures[failure] += 1
                    break
                matrices.append(m)
            else:
                yield Word(core), matrices, tried
    yield None, [], tried


def find_translating_words(gens: GeneratorPair, delta, interval: Interval, max_core_len: int,
                           progress: bool = False) -> TranslatingWords:
    """Twelve words g_i = a^i w a^-i, h_i = b^i w' b^-i (i = 1..6) meeting every condition."""
    delta_value = QSqrt2.coerce(as_fraction(delta))
    failures: Counter = Counter()

    def statistics(side: str, tried: int) -> dict:
        return {
            "side": side,
            "max_core_len": max_core_len,
            "cores_tried": tried,
            "failures": {kind: failures.get(kind, 0) for kind in FAILURE_KINDS},
        }

    g_core, g_matrices, g_tried = next(_search_side(
        gens, "a", delta_value, interval, max_core_len, failures, progress=progress))
    if g_core is None:
        raise WordSearchExhausted(
            f"no core w up to length {max_core_len} gives six conjugates a^i w a^-i in the ball",
            statistics("g", g_tried))
    h_core, h_matrices, h_tried = next(_search_side(
        gens, "b", delta_value, interval, max_core_len, failures, exclude=g_matrices, progress=progress))
    if h_core is None:
        raise WordSearchExhausted(
            f"no core w' up to length {max_core_len} gives six conjugates b^i w' b^-i in the ball",
            statistics("h", h_tried))

    g_words = [Word("a" * i + g_core.letters + "A" * i) for i in CONJUGATE_POWERS]
    h_words = [Word("b" * i + h_core.letters + "B" * i) for i in CONJUGATE_POWERS]
    stats = statistics("both", g_tried + h_tried)
    logger.log_debug(f"translating words found with cores {g_core} and {h_core}: {stats}")
    return TranslatingWords(g_words, h_words, g_core, h_core, g_matrices + h_matrices, stats)


@dataclass
class RelationCertificate:
    pair: str
    max_length: int
    words_checked: int
    counterexample: Optional[Word] = None

    @property
    def holds(self) -> bool:
        return self.counterexample is None

    def to_json(self) -> dict:
        return {
            "pair": self.pair,
            "max_length": self.max_length,
            "words_checked": self.words_checked,
            "holds": self.holds,
            "counterexample": None if self.counterexample is None else str(self.counterexample),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RelationCertificate":
        counterexample = data.get("counterexample")
        return cls(data["pair"], data["max_length"], data["words_checked"],
                   None if counterexample is None else Word(counterexample))


def _levels(gens: GeneratorPair, max_length: int, first: str) -> Iterator[List[Tuple[str, Mat2]]]:
    """Breadth-first levels of reduced words starting with a letter of ``first``, each in lex order."""
    level = [(letter, gens.letters[letter]) for letter in ALPHABET if letter in first]
    length = 1
    while level and length <= max_length:
        yield level
        if length == max_length:
            return
        level = [
            (word + letter, compose(matrix, gens.letters[letter]))
            for word, matrix in level
            for letter in ALPHABET
            if INVERSE_LETTER[letter] != word[-1]
        ]
        length += 1


def _shortest_relation(gens: GeneratorPair, max_length: int, first: str,
                       progress: bool = False) -> Tuple[int, Optional[str]]:
    checked = 0
    levels = tqdm(_levels(gens, max_length, first), total=max_length, desc=f"relations {first}",
                  disable=not progress, leave=False)
    for level in levels:
        for word, matrix in level:
            checked += 1
            if matrix == IDENTITY:
                return checked, word
    return checked, None


def certify_no_relation(gens: GeneratorPair, max_length: int, jobs: int = 1,
                        progress: bool = False) -> RelationCertificate:
    """Exhaustive check that no reduced word of length 1..max_length is the identity."""
    if max_length < 1:
        raise ValueError("max_length must be at least 1")
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(ALPHABET))) as pool:
            results = list(pool.map(_shortest_relation, [gens] * len(ALPHABET),
                                    [max_length] * len(ALPHABET), list(ALPHABET)))
    else:
        results = [_shortest_relation(gens, max_length, letter, progress) for letter in ALPHABET]
    found = [Word(word) for _, word in results if word is not None]
    counterexample = min(found, key=lambda w: w.sort_key) if found else None
    checked = sum(count for count, _ in results)
    if counterexample is not None:
        # subtrees stop early, so the count is exact only up to the counterexample's length
        logger.log_warning(f"pair {gens.name!r} satisfies the relation {counterexample}")
    return RelationCertificate(gens.name, max_length, checked, counterexample)


@dataclass(frozen=True)
class NearIdentityWord:
    word: Word
    distance: QSqrt2

    def to_json(self) -> dict:
        return {"word": str(self.word), "distance": self.distance.to_json(),
                "approx": float(self.distance)}


def near_identity_scan(gens: GeneratorPair, delta, max_length: int,
                       progress: bool = False) -> List[NearIdentityWord]:
    """Every reduced word of length <= max_length whose matrix is within delta of the identity."""
    delta_value = QSqrt2.coerce(as_fraction(delta))
    found = [NearIdentityWord(EMPTY_WORD, QSqrt2(0))]
    if max_length >= 1:
        levels = tqdm(_levels(gens, max_length, ALPHABET), total=max_length, desc="near-identity",
                      disable=not progress, leave=False)
        for level in levels:
            for word, matrix in level:
                distance = dist_to_identity(matrix)
                if distance < delta_value:
                    found.append(NearIdentityWord(Word(word), distance))
    found.sort(key=lambda item: (item.distance, item.word.sort_key))
    return found
