"""
Marriage Verifier

Finite subsets, the translating set, Hopcroft-Karp matching and the exact
marriage checks built on them.
"""

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
    Audit,
    EgsReport,
    HallViolation,
    MarriageReport,
    MatchingCertificate,
    MatchingEdge,
    check_2marriage,
    check_egs_condition,
    extract_matching,
    recount_violation,
    validate_certificate,
)

__all__ = [
    'HopcroftKarp', 'EMPTY_SUBSET', 'PIECE_COUNT', 'FiniteSubset', 'TranslatingSet',
    'TranslationTable', 'ball', 'Audit', 'EgsReport', 'HallViolation', 'MarriageReport',
    'MatchingCertificate', 'MatchingEdge', 'check_2marriage', 'check_egs_condition',
    'extract_matching', 'recount_violation', 'validate_certificate',
]
