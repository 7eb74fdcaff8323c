"""
Marriage Verifier

Exact checks of the 2-marriage inequality |(T u {1}).u| >= 2|u|, the
evenly coloured condition |S1.u1 u S2.u2| >= |u1| + |u2| with S1 = T u {1}
and S2 = T, and extraction plus independent audit of the colour-respecting
matchings that witness it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from modules.marriage.matching import HopcroftKarp
from modules.marriage.subsets import FiniteSubset, TranslatingSet, TranslationTable
from modules.piecewise.piecewise_map import PiecewiseMap, pw_compose, pw_normalize

COLORS = (1, 2)
QUAD_SIZE = 4


def _table(tset: TranslatingSet, table: Optional[TranslationTable]) -> TranslationTable:
    return table if table is not None else TranslationTable(tset.translators)


@dataclass
class MarriageReport:
    size: int
    lhs: int
    rhs: int
    passed: bool
    quad_lhs: Optional[int] = None
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        data = {"size": self.size, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}
        if self.quad_lhs is not None:
            data["quad_lhs"] = self.quad_lhs
        if self.witness is not None:
            data["witness"] = self.witness
        return data


def _product_table(table: TranslationTable, serials: Sequence[int]) -> dict:
    """Every translate of every element, by local serial, with the element table."""
    rows = [[table.translate(s, g) for s in range(len(table.translators))] for g in serials]
    used = list(dict.fromkeys(list(serials) + [t for row in rows for t in row]))
    local = {serial: index for index, serial in enumerate(used)}
    return {
        "elements": [table.elements[serial].to_json() for serial in used],
        "subset": [local[g] for g in serials],
        "products": [[local[t] for t in row] for row in rows],
    }


def check_2marriage(tset: TranslatingSet, u: FiniteSubset, table: Optional[TranslationTable] = None,
                    quad: bool = False) -> MarriageReport:
    """Count the distinct left translates (T u {1}).u against 2|u|."""
    table = _table(tset, table)
    serials = table.intern_all(u)
    lhs = len(table.translates(tset.s1, serials))
    rhs = 2 * len(serials)
    report = MarriageReport(size=len(serials), lhs=lhs, rhs=rhs, passed=lhs >= rhs)
    if quad:
        report.quad_lhs = max(
            (len(table.translates(k, serials)) for k in combinations(tset.s1, QUAD_SIZE)),
            default=0,
        )
    if not report.passed:
        report.witness = _product_table(table, serials)
    return report


@dataclass
class EgsReport:
    size_u1: int
    size_u2: int
    union_size: int
    intersection_size: int
    lhs: int
    identity_rhs: int
    target: int
    identity_holds: bool
    union_bound_holds: bool
    sum_identity_holds: bool

    @property
    def passed(self) -> bool:
        return (self.identity_holds and self.union_bound_holds and self.sum_identity_holds
                and self.lhs >= self.target)

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "u1": self.size_u1,
            "u2": self.size_u2,
            "union": self.union_size,
            "intersection": self.intersection_size,
            "lhs": self.lhs,
            "identity_rhs": self.identity_rhs,
            "target": self.target,
            "identity_holds": self.identity_holds,
            "union_bound_holds": self.union_bound_holds,
            "sum_identity_holds": self.sum_identity_holds,
            "pass": self.passed,
        }


def check_egs_condition(tset: TranslatingSet, u1: FiniteSubset, u2: FiniteSubset,
                        table: Optional[TranslationTable] = None) -> EgsReport:
    """Both sides of S1.u1 u S2.u2 = T.(u1 u u2) u u1 as sets, and the bound chain after it."""
    table = _table(tset, table)
    first = table.intern_all(u1)
    second = table.intern_all(u2)
    union = set(first) | set(second)
    intersection = set(first) & set(second)
    lhs_set = table.translates(tset.s1, first) | table.translates(tset.s2, second)
    identity_set = table.translates(tset.s2, union) | set(first)
    target = len(first) + len(second)
    return EgsReport(
        size_u1=len(first),
        size_u2=len(second),
        union_size=len(union),
        intersection_size=len(intersection),
        lhs=len(lhs_set),
        identity_rhs=len(identity_set),
        target=target,
        identity_holds=lhs_set == identity_set,
        union_bound_holds=len(identity_set) >= len(union) + len(intersection),
        sum_identity_holds=len(union) + len(intersection) == target,
    )


@dataclass(frozen=True)
class MatchingEdge:
    color: int
    source: int
    translator: int
    target: int

    def to_json(self) -> list:
        return [self.color, self.source, self.translator, self.target]


@dataclass
class MatchingCertificate:
    """Colour-respecting injective assignment; serials index ``elements``."""

    elements: List[PiecewiseMap]
    translators: List[PiecewiseMap]
    u1: Tuple[int, ...]
    u2: Tuple[int, ...]
    edges: Tuple[MatchingEdge, ...]

    @property
    def size(self) -> int:
        return len(self.edges)

    def to_json(self) -> dict:
        return {
            "kind": "certificate",
            "elements": [g.to_json() for g in self.elements],
            "translators": [s.to_json() for s in self.translators],
            "u1": list(self.u1),
            "u2": list(self.u2),
            "edges": [e.to_json() for e in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> "MatchingCertificate":
        return cls(
            elements=[PiecewiseMap.from_json(g) for g in data["elements"]],
            translators=[PiecewiseMap.from_json(s) for s in data["translators"]],
            u1=tuple(data["u1"]),
            u2=tuple(data["u2"]),
            edges=tuple(MatchingEdge(*e) for e in data["edges"]),
        )


@dataclass
class HallViolation:
    """Left vertices V with fewer than |V| neighbours; serials index ``elements``."""

    elements: List[PiecewiseMap]
    translators: List[PiecewiseMap]
    vertices: Tuple[Tuple[int, int], ...]
    neighbours: Tuple[int, ...]
    matching_size: int

    @property
    def deficiency(self) -> int:
        return len(self.vertices) - len(self.neighbours)

    def to_json(self) -> dict:
        return {
            "kind": "violation",
            "elements": [g.to_json() for g in self.elements],
            "translators": [s.to_json() for s in self.translators],
            "vertices": [list(v) for v in self.vertices],
            "neighbours": list(self.neighbours),
            "size": len(self.vertices),
            "neighbourhood_size": len(self.neighbours),
            "deficiency": self.deficiency,
            "matching_size": self.matching_size,
        }

    @classmethod
    def from_json(cls, data: dict) -> "HallViolation":
        return cls(
            elements=[PiecewiseMap.from_json(g) for g in data["elements"]],
            translators=[PiecewiseMap.from_json(s) for s in data["translators"]],
            vertices=tuple((c, g) for c, g in data["vertices"]),
            neighbours=tuple(data["neighbours"]),
            matching_size=data["matching_size"],
        )


def _color_set(color: int, translator_count: int) -> range:
    return range(0, translator_count) if color == 1 else range(1, translator_count)


def extract_matching(tset: TranslatingSet, u1: FiniteSubset, u2: FiniteSubset,
                     table: Optional[TranslationTable] = None
                     ) -> Union[MatchingCertificate, HallViolation]:
    """Maximum matching from u1 (via S1) and u2 (via S2) into S1.u1 u S2.u2."""
    table = _table(tset, table)
    first = table.intern_all(u1)
    second = table.intern_all(u2)
    graph: Dict[Tuple[int, int], List[int]] = {}
    reached_by: Dict[Tuple[Tuple[int, int], int], int] = {}
    for color, serials, indices in ((1, first, tset.s1), (2, second, tset.s2)):
        for g in serials:
            vertex = (color, g)
            targets = graph.setdefault(vertex, [])
            for s in indices:
                target = table.translate(s, g)
                if (vertex, target) not in reached_by:
                    reached_by[(vertex, target)] = s
                    targets.append(target)

    matcher = HopcroftKarp(graph)
    size, matching = matcher.get_maximum_matching_num()
    used = list(dict.fromkeys(first + second + [t for targets in graph.values() for t in targets]))
    local = {serial: index for index, serial in enumerate(used)}
    elements = [table.elements[serial] for serial in used]
    translators = list(tset.translators)

    if matcher.is_left_perfect():
        edges = tuple(
            MatchingEdge(color, local[g], reached_by[((color, g), matching[(color, g)])],
                         local[matching[(color, g)]])
            for color, g in graph
        )
        return MatchingCertificate(elements, translators, tuple(local[g] for g in first),
                                   tuple(local[g] for g in second), edges)
    vertices, neighbours = matcher.hall_violator()
    return HallViolation(
        elements=elements,
        translators=translators,
        vertices=tuple((color, local[g]) for color, g in vertices),
        neighbours=tuple(local[t] for t in neighbours),
        matching_size=size,
    )


@dataclass
class Audit:
    violations: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


@lru_cache(maxsize=100_000)
def audited_product(element: PiecewiseMap, translator: PiecewiseMap) -> PiecewiseMap:
    """s.g rebuilt and normalized for the audits, apart from any TranslationTable."""
    return pw_normalize(pw_compose(element, translator))


def validate_certificate(cert: MatchingCertificate) -> Audit:
    """Recompute every edge product from the embedded tables and check the matching clauses."""
    audit = Audit()
    translators = cert.translators
    if not translators or not translators[0].is_identity():
        audit.violations.append("translator 0 is not the identity")
    if len(set(translators)) != len(translators):
        audit.violations.append("translators are not pairwise distinct")
    if len(set(cert.elements)) != len(cert.elements):
        audit.violations.append("element table has repeated elements")
    left = [(1, g) for g in cert.u1] + [(2, g) for g in cert.u2]
    if len(set(left)) != len(left):
        audit.violations.append("a subset lists an element twice")

    covered: Dict[Tuple[int, int], int] = {}
    targets: Dict[int, int] = {}
    for number, edge in enumerate(cert.edges):
        label = f"edge {number}"
        if edge.color not in COLORS:
            audit.violations.append(f"{label}: unknown colour {edge.color}")
            continue
        if edge.translator not in _color_set(edge.color, len(translators)):
            audit.violations.append(f"{label}: translator {edge.translator} is not in S{edge.color}")
            continue
        if not (0 <= edge.source < len(cert.elements) and 0 <= edge.target < len(cert.elements)):
            audit.violations.append(f"{label}: serial outside the element table")
            continue
        product = audited_product(cert.elements[edge.source], translators[edge.translator])
        if product != cert.elements[edge.target]:
            audit.violations.append(f"{label}: s.g differs from the recorded target {edge.target}")
        vertex = (edge.color, edge.source)
        covered[vertex] = covered.get(vertex, 0) + 1
        if edge.target in targets:
            audit.violations.append(f"{label}: target {edge.target} already used by edge {targets[edge.target]}")
        else:
            targets[edge.target] = number

    for vertex in left:
        count = covered.get(vertex, 0)
        if count != 1:
            audit.violations.append(f"left vertex {vertex} covered {count} times")
    extra = set(covered) - set(left)
    for vertex in sorted(extra):
        audit.violations.append(f"edge source {vertex} is not in its coloured subset")
    return audit


def recount_violation(violation: HallViolation) -> Audit:
    """Recompute N(V) from scratch and confirm |N(V)| < |V|."""
    audit = Audit()
    translators = violation.translators
    neighbours = set()
    for color, g in violation.vertices:
        for s in _color_set(color, len(translators)):
            neighbours.add(audited_product(violation.elements[g], translators[s]))
    recorded = {violation.elements[t] for t in violation.neighbours}
    if neighbours != recorded:
        audit.violations.append(f"recorded neighbourhood has {len(recorded)} elements, recount gives {len(neighbours)}")
    if not len(neighbours) < len(set(violation.vertices)):
        audit.violations.append(f"|N(V)| = {len(neighbours)} is not below |V| = {len(violation.vertices)}")
    return audit
