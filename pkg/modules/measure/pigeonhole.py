"""Pigeonhole witnesses.

Given J inside I with mu(J) >= mu(I)/2 and six matrices g_1..g_6 close to the
identity (g_0 is the identity), the sets L_i = (J.g_i^-1) n I have total
measure above 3 mu(I), so some region of positive measure is covered by at
least four of them. That region L and four of its covering indices are the
witness: L.g_i lies in J for each returned index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from modules.exact.qsqrt2 import QSqrt2, as_fraction
from modules.measure.distortion import distortion_window
from modules.measure.interval_set import (
    IntervalSet,
    arrangement,
    iset_algebra,
    iset_measure,
    iset_subset,
    pushforward,
)
from modules.projective.interval import Interval
from modules.projective.mat2 import IDENTITY, Mat2, inverse
from modules.shared.errors import PigeonholeFailure, PoleInIntervalError, PreconditionError

DEFAULT_EPSILON = Fraction(1, 48)
MIN_COVERAGE = 4


@dataclass
class PigeonholeWitness:
    region: IntervalSet
    indices: Tuple[int, ...]
    region_measure: QSqrt2
    set_measures: List[QSqrt2]
    total_measure: QSqrt2
    interval_measure: QSqrt2
    cells: List[Tuple[IntervalSet, Tuple[int, ...]]] = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        return {
            "region": self.region.to_json(),
            "indices": list(self.indices),
            "region_measure": self.region_measure.to_json(),
            "set_measures": [m.to_json() for m in self.set_measures],
            "total_measure": self.total_measure.to_json(),
            "interval_measure": self.interval_measure.to_json(),
            "cells": [{"cell": c.to_json(), "coverage": list(cov)} for c, cov in self.cells],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PigeonholeWitness":
        return cls(
            region=IntervalSet.from_json(data["region"]),
            indices=tuple(data["indices"]),
            region_measure=QSqrt2.from_json(data["region_measure"]),
            set_measures=[QSqrt2.from_json(m) for m in data["set_measures"]],
            total_measure=QSqrt2.from_json(data["total_measure"]),
            interval_measure=QSqrt2.from_json(data["interval_measure"]),
            cells=[(IntervalSet.from_json(c["cell"]), tuple(c["coverage"])) for c in data.get("cells", [])],
        )


def check_preconditions(interval: Interval, j: IntervalSet, gs: Sequence[Mat2],
                        epsilon=DEFAULT_EPSILON) -> List[str]:
    """Every failed precondition, in order; an empty list means all hold."""
    epsilon = as_fraction(epsilon)
    failures: List[str] = []
    whole = IntervalSet.from_interval(interval)
    if len(gs) != 6:
        failures.append(f"expected six matrices, got {len(gs)}")
    if not iset_subset(j, whole):
        failures.append("J is not contained in I")
    elif 2 * iset_measure(j) < iset_measure(whole):
        failures.append("mu(J) is below mu(I)/2")
    enlarged = IntervalSet.from_interval(interval.scaled(1 + epsilon))
    reach = whole
    for index, g in enumerate(gs, start=1):
        g_inv = inverse(g)
        try:
            if not distortion_window(g_inv, interval, epsilon):
                failures.append(f"g_{index}^-1 distorts measure on I by epsilon or more")
            image = pushforward(whole, g_inv)
            reach = iset_algebra(reach, image, "union")
            if not iset_subset(image, enlarged):
                failures.append(f"I.g_{index}^-1 is not inside the (1 + epsilon) enlargement of I")
        except PoleInIntervalError:
            failures.append(f"pole of g_{index}^-1 lies in I")
    # the enlargement adds exactly epsilon mu(I); the hull of I and its images must add less
    hull = IntervalSet.of((reach.intervals[0][0], reach.intervals[-1][1]))
    if not iset_measure(hull) - iset_measure(whole) < epsilon * iset_measure(whole):
        failures.append("the I.g_i^-1 reach epsilon mu(I) or more beyond I, filling the (1 + epsilon) enlargement")
    return failures


def pigeonhole_witness(interval: Interval, j: IntervalSet, gs: Sequence[Mat2],
                       epsilon=DEFAULT_EPSILON) -> PigeonholeWitness:
    """Region of positive measure covered by four of the L_i, with those indices."""
    failures = check_preconditions(interval, j, gs, epsilon)
    if failures:
        raise PreconditionError(f"{len(failures)} precondition(s) failed", failures)
    whole = IntervalSet.from_interval(interval)
    matrices = [IDENTITY] + list(gs)
    sets = [iset_algebra(pushforward(j, inverse(g)), whole, "intersect") for g in matrices]
    measures = [iset_measure(s) for s in sets]
    total = sum(measures, QSqrt2(0))
    interval_measure = iset_measure(whole)
    if not total > 3 * interval_measure:
        raise PigeonholeFailure(f"sum of measures {total} does not exceed 3 mu(I) = {3 * interval_measure}")

    cells = arrangement(sets)
    weighted = QSqrt2(0)
    groups: Dict[Tuple[int, ...], List[Tuple]] = {}
    for lo, hi, covering in cells:
        cell = IntervalSet._trusted(((lo, hi),))
        weighted = weighted + len(covering) * iset_measure(cell)
        if len(covering) >= MIN_COVERAGE:
            groups.setdefault(covering, []).append((lo, hi))
    if weighted != total:
        raise PigeonholeFailure(f"coverage integral {weighted} differs from the measure sum {total}")
    if not groups:
        raise PigeonholeFailure("no region is covered by four of the sets")

    best = None
    for covering, spans in groups.items():
        region = IntervalSet(spans)
        size = iset_measure(region)
        if best is None or size > best[2]:
            best = (covering, region, size)
    covering, region, size = best
    indices = covering[:MIN_COVERAGE]
    for index in indices:
        if not iset_subset(pushforward(region, matrices[index]), j):
            raise PigeonholeFailure(f"region pushed by g_{index} leaves J")
    return PigeonholeWitness(
        region=region,
        indices=indices,
        region_measure=size,
        set_measures=measures,
        total_measure=total,
        interval_measure=interval_measure,
        cells=[(IntervalSet._trusted(((lo, hi),)), cov) for lo, hi, cov in cells],
    )
