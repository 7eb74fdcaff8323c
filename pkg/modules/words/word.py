"""Reduced words over {a, A, b, B} and their evaluation.

A stands for a inverse and B for b inverse. Words are evaluated left to
right: the first letter acts first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Mapping, TypeVar

from modules.projective.mat2 import IDENTITY, Mat2, compose, inverse

ALPHABET = "aAbB"
INVERSE_LETTER = {"a": "A", "A": "a", "b": "B", "B": "b"}
LETTER_RANK = {letter: rank for rank, letter in enumerate(ALPHABET)}

T = TypeVar("T")


@dataclass(frozen=True)
class Word:
    """A freely reduced word."""

    letters: str = ""

    def __post_init__(self) -> None:
        for index, letter in enumerate(self.letters):
            if letter not in INVERSE_LETTER:
                raise ValueError(f"letter {letter!r} at position {index} is not one of {ALPHABET}")
            if index and INVERSE_LETTER[letter] == self.letters[index - 1]:
                raise ValueError(f"word {self.letters!r} is not reduced at position {index}")

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return self.letters

    def __add__(self, other: "Word") -> "Word":
        return word_reduce(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word("".join(INVERSE_LETTER[ch] for ch in reversed(self.letters)))

    def power(self, exponent: int) -> "Word":
        if exponent < 0:
            return self.inverse().power(-exponent)
        return word_reduce(self.letters * exponent)

    @property
    def sort_key(self):
        """Shortlex order with letters ranked a < A < b < B."""
        return (len(self.letters), tuple(LETTER_RANK[ch] for ch in self.letters))


EMPTY_WORD = Word("")


def word_reduce(raw: str) -> Word:
    """Free reduction; whitespace is ignored."""
    stack = []
    for letter in raw:
        if letter.isspace():
            continue
        if letter not in INVERSE_LETTER:
            raise ValueError(f"letter {letter!r} is not one of {ALPHABET}")
        if stack and stack[-1] == INVERSE_LETTER[letter]:
            stack.pop()
        else:
            stack.append(letter)
    return Word("".join(stack))


def word_product(word: Word, values: Mapping[str, T], combine: Callable[[T, T], T], identity: T) -> T:
    """Fold the letter values left to right with ``combine(first, then)``."""
    result = identity
    for letter in word.letters:
        result = combine(result, values[letter])
    return result


@dataclass(frozen=True)
class GeneratorPair:
    """Two matrices over Z[sqrt2, 1/2] generating the free group used by the search."""

    a: Mat2
    b: Mat2
    name: str = "unnamed"
    provenance: str = ""
    letters: Dict[str, Mat2] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        for label, matrix in (("a", self.a), ("b", self.b)):
            if matrix.is_identity():
                raise ValueError(f"generator {label} of pair {self.name!r} is the identity")
            if not matrix.in_ring("zsqrt2-with-halves"):
                raise ValueError(f"generator {label} of pair {self.name!r} has entries outside Z[sqrt2, 1/2]")
        object.__setattr__(self, "letters", {
            "a": self.a, "A": inverse(self.a), "b": self.b, "B": inverse(self.b),
        })

    def to_json(self) -> dict:
        return {"name": self.name, "provenance": self.provenance,
                "a": self.a.to_json(), "b": self.b.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "GeneratorPair":
        return cls(Mat2.from_json(data["a"]), Mat2.from_json(data["b"]),
                   data.get("name", "unnamed"), data.get("provenance", ""))


def eval_word(word: Word, gens: GeneratorPair) -> Mat2:
    """Matrix of the word; the empty word gives the identity."""
    return word_product(word, gens.letters, compose, IDENTITY)


def read_words(lines: Iterable[str]) -> list:
    """Parse a word file: one word per line, blank lines and # comments skipped."""
    words = []
    for number, line in enumerate(lines, start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            words.append(Word(text))
        except ValueError as error:
            raise ValueError(f"line {number}: {error}") from None
    return words
