"""
Finite Subsets

Finite subsets of the group of piecewise projective maps, balls over a
generating set, the translating set T and an interning table that turns
elements into serial numbers so marriage checks run on integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from modules.exact.qsqrt2 import as_fraction, format_fraction
from modules.piecewise.piecewise_map import IDENTITY_MAP, PiecewiseMap, pw_compose, pw_invert
from modules.projective.interval import Interval
from modules.words.word import GeneratorPair, Word

TRANSLATING_SET_SIZE = 12
# |S1| + |S2| with S1 = T u {1} and S2 = T
PIECE_COUNT = 25


@dataclass(frozen=True)
class FiniteSubset:
    """Pairwise distinct elements in a fixed order, with optional provenance labels."""

    elements: Tuple[PiecewiseMap, ...] = ()
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", tuple(self.elements))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != len(self.elements):
                raise ValueError(f"{len(self.labels)} labels for {len(self.elements)} elements")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("subset elements must be pairwise distinct")

    @classmethod
    def of(cls, elements: Iterable[PiecewiseMap]) -> "FiniteSubset":
        """Deduplicate, keeping first occurrences."""
        return cls(tuple(dict.fromkeys(elements)))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[PiecewiseMap]:
        return iter(self.elements)

    def __contains__(self, item: object) -> bool:
        return item in self.elements

    def union(self, other: "FiniteSubset") -> "FiniteSubset":
        return FiniteSubset.of(self.elements + other.elements)

    def intersection(self, other: "FiniteSubset") -> "FiniteSubset":
        keep = set(other.elements)
        return FiniteSubset(tuple(g for g in self.elements if g in keep))

    def to_json(self) -> dict:
        data = {"elements": [g.to_json() for g in self.elements]}
        if self.labels is not None:
            data["labels"] = list(self.labels)
        return data

    @classmethod
    def from_json(cls, data: dict) -> "FiniteSubset":
        return cls(tuple(PiecewiseMap.from_json(g) for g in data["elements"]), data.get("labels"))


EMPTY_SUBSET = FiniteSubset()


def ball(gens: Sequence[PiecewiseMap], radius: int) -> FiniteSubset:
    """All products of at most ``radius`` generators and inverses, in breadth-first order.

    Labels name each element by its first product found, e.g. ``x0.x1^-1``
    (apply x0 first).
    """
    if radius < 0:
        raise ValueError(f"radius must be non-negative, got {radius}")
    steps: List[Tuple[str, PiecewiseMap]] = []
    for index, g in enumerate(gens):
        steps.append((f"x{index}", g))
        steps.append((f"x{index}^-1", pw_invert(g)))
    found: Dict[PiecewiseMap, str] = {IDENTITY_MAP: "1"}
    frontier = [IDENTITY_MAP]
    for _ in range(radius):
        grown = []
        for element in frontier:
            prefix = found[element]
            for name, step in steps:
                product = pw_compose(element, step)
                if product not in found:
                    found[product] = name if prefix == "1" else f"{prefix}.{name}"
                    grown.append(product)
        if not grown:
            break
        frontier = grown
    return FiniteSubset(tuple(found), tuple(found.values()))


@dataclass
class TranslatingSet:
    """The twelve lifted elements and the data they were built from."""

    elements: Tuple[PiecewiseMap, ...]
    source_words: Tuple[Word, ...]
    interval: Interval
    delta: Fraction
    epsilon: Fraction
    pair: GeneratorPair
    translators: Tuple[PiecewiseMap, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.elements = tuple(self.elements)
        self.source_words = tuple(self.source_words)
        problems = self.invariant_violations()
        if problems:
            raise ValueError("; ".join(problems))
        self.translators = (IDENTITY_MAP,) + self.elements

    def invariant_violations(self) -> List[str]:
        problems = []
        if len(self.elements) != TRANSLATING_SET_SIZE:
            problems.append(f"expected {TRANSLATING_SET_SIZE} elements, got {len(self.elements)}")
        if len(self.source_words) != len(self.elements):
            problems.append("every element needs a source word")
        if any(g.is_identity() for g in self.elements):
            problems.append("an element equals the identity")
        if len(set(self.elements)) != len(self.elements):
            problems.append("elements are not pairwise distinct")
        if 2 * len(self.elements) + 1 != PIECE_COUNT:
            problems.append(f"piece count {2 * len(self.elements) + 1} is not {PIECE_COUNT}")
        return problems

    @property
    def s1(self) -> range:
        """Translator indices of T u {1}; index 0 is the identity."""
        return range(0, len(self.translators))

    @property
    def s2(self) -> range:
        return range(1, len(self.translators))

    @property
    def piece_count(self) -> int:
        return len(self.s1) + len(self.s2)

    def to_json(self) -> dict:
        return {
            "interval": self.interval.to_json(),
            "epsilon": format_fraction(self.epsilon),
            "delta": format_fraction(self.delta),
            "pair": self.pair.to_json(),
            "words": [str(w) for w in self.source_words],
            "elements": [g.to_json() for g in self.elements],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TranslatingSet":
        return cls(
            elements=tuple(PiecewiseMap.from_json(g) for g in data["elements"]),
            source_words=tuple(Word(w) for w in data["words"]),
            interval=Interval.from_json(data["interval"]),
            delta=as_fraction(data["delta"]),
            epsilon=as_fraction(data["epsilon"]),
            pair=GeneratorPair.from_json(data["pair"]),
        )


class TranslationTable:
    """Interned elements and memoized left translates s.g for a fixed translator list."""

    def __init__(self, translators: Sequence[PiecewiseMap]):
        self.translators: Tuple[PiecewiseMap, ...] = tuple(translators)
        self.elements: List[PiecewiseMap] = []
        self._serials: Dict[PiecewiseMap, int] = {}
        self._translates: Dict[Tuple[int, int], int] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def intern(self, element: PiecewiseMap) -> int:
        serial = self._serials.get(element)
        if serial is None:
            serial = len(self.elements)
            self._serials[element] = serial
            self.elements.append(element)
        return serial

    def intern_all(self, subset: Iterable[PiecewiseMap]) -> List[int]:
        return [self.intern(g) for g in subset]

    def translate(self, s_index: int, serial: int) -> int:
        """Serial of s.g: apply g, then the translator s."""
        key = (s_index, serial)
        target = self._translates.get(key)
        if target is None:
            if s_index == 0 and self.translators[0].is_identity():
                target = serial
            else:
                target = self.intern(pw_compose(self.elements[serial], self.translators[s_index]))
            self._translates[key] = target
        return target

    def translates(self, indices: Iterable[int], serials: Iterable[int]) -> set:
        serials = list(serials)
        return {self.translate(s, g) for s in indices for g in serials}
