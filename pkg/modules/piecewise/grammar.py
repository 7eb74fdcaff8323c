"""Text form of piecewise maps.

    (-inf,0) [1 0 0 1]; (0,1/2) [1 0 -1 1]; (1/2,1) [3 -1 1 0]; (1,inf) [1 1 0 1]

Clauses are separated by semicolons; each names an interval and the matrix
acting there. Endpoints and entries are Q(sqrt2) literals such as 1/2,
sqrt2 or 1-3/4*sqrt2. Matrices are normalized to determinant one.
"""

from __future__ import annotations

import re
from typing import List

from modules.exact.algebraic import INFINITY, NEG_INFINITY, RealAlgebraic, is_infinite
from modules.exact.qsqrt2 import parse_qsqrt2
from modules.piecewise.piecewise_map import PiecewiseMap, pw_normalize
from modules.projective.mat2 import Mat2
from modules.shared.errors import DeterminantError, ParadoxError, SchemaError

_CLAUSE = re.compile(r"^\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*\[\s*([^\[\]]+?)\s*\]$")
_INFINITE = {"-inf": NEG_INFINITY, "inf": INFINITY, "+inf": INFINITY}


def _endpoint(text: str):
    return _INFINITE.get(text.lower()) or parse_qsqrt2(text)


def _parse_clause(clause: str, path: str):
    match = _CLAUSE.match(clause)
    if match is None:
        raise SchemaError(f"expected '(lo,hi) [a b c d]', got {clause!r}", path)
    entries = match.group(3).split()
    if len(entries) != 4:
        raise SchemaError(f"matrix needs 4 entries, got {len(entries)}", path)
    try:
        lo, hi = _endpoint(match.group(1)), _endpoint(match.group(2))
        matrix = Mat2.from_entries(*(parse_qsqrt2(e) for e in entries))
    except (ValueError, DeterminantError) as error:
        raise SchemaError(str(error), path) from None
    return lo, hi, matrix


def parse_map(text: str) -> PiecewiseMap:
    """Parse the clause grammar into a canonical PiecewiseMap."""
    clauses = [c.strip() for c in text.strip().split(";") if c.strip()]
    if not clauses:
        raise SchemaError("no clauses", "map")
    breakpoints: List[RealAlgebraic] = []
    pieces: List[Mat2] = []
    previous_hi = None
    last = len(clauses) - 1
    for index, clause in enumerate(clauses):
        path = f"map.clause[{index}]"
        lo, hi, matrix = _parse_clause(clause, path)
        if index == 0 and lo is not NEG_INFINITY:
            raise SchemaError("first interval must start at -inf", path)
        if index == last and hi is not INFINITY:
            raise SchemaError("last interval must end at inf", path)
        if index < last and is_infinite(hi):
            raise SchemaError("only the last interval may end at inf", path)
        if index > 0:
            if is_infinite(lo) or lo != previous_hi:
                raise SchemaError(f"interval starts at {lo}, previous ended at {previous_hi}", path)
            breakpoints.append(RealAlgebraic.from_qsqrt2(lo))
        pieces.append(matrix)
        previous_hi = hi
    try:
        return pw_normalize(PiecewiseMap._trusted(breakpoints, pieces))
    except (ValueError, ParadoxError) as error:
        raise SchemaError(str(error), "map") from None


def _format_point(point: RealAlgebraic) -> str:
    exact = point.as_qsqrt2()
    if exact is None:
        return f"~{float(point):.12g}"
    return str(exact)


def format_map(pm: PiecewiseMap) -> str:
    """Inverse of parse_map; breakpoints outside Q(sqrt2) print as ~approximations."""
    ends = ["-inf"] + [_format_point(p) for p in pm.breakpoints] + ["inf"]
    clauses = []
    for index, piece in enumerate(pm.pieces):
        entries = " ".join(str(e) for e in piece.entries)
        clauses.append(f"({ends[index]},{ends[index + 1]}) [{entries}]")
    return "; ".join(clauses)
