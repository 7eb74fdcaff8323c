"""
Translating Set Construction

Interval and epsilon to a certified delta, delta to the twelve translating
words, and each word's matrix to a piecewise map that agrees with it on the
interval and is the identity outside its fixed points.
"""

from dataclasses import dataclass
from typing import List, Optional

from modules.exact.qsqrt2 import QSqrt2
from modules.marriage.subsets import PIECE_COUNT, TranslatingSet
from modules.measure.distortion import DistortionCert, distortion_delta
from modules.measure.interval_set import IntervalSet
from modules.measure.pigeonhole import PigeonholeWitness, pigeonhole_witness
from modules.piecewise.piecewise_map import PiecewiseMap, pw_pieces_on, pw_validate, splice_lift
from modules.projective.interval import Interval
from modules.projective.mat2 import dist_to_identity
from modules.shared.config import PipelineConfig
from modules.shared.errors import ConstructionError
from modules.shared.logger import ParadoxLogger
from modules.shared.pair_selector import GeneratorPairSelector
from modules.words.forge import TranslatingWords, find_translating_words
from modules.words.word import GeneratorPair, Word, eval_word

LIFT_RING = "zsqrt2-with-halves"
PIGEONHOLE_SIDES = ("g", "h")

logger = ParadoxLogger()


@dataclass
class Construction:
    distortion: DistortionCert
    words: TranslatingWords
    translating_set: TranslatingSet

    def to_json(self) -> dict:
        return {
            "distortion": self.distortion.to_json(),
            "words": self.words.to_json(),
            "translating_set": self.translating_set.to_json(),
        }


def verify_agreement(elem: PiecewiseMap, w: Word, gens: GeneratorPair, interval: Interval) -> bool:
    """Every piece of elem meeting the interior of the interval equals the word's matrix."""
    target = eval_word(w, gens)
    pieces = pw_pieces_on(elem, interval)
    return bool(pieces) and all(piece == target for piece in pieces)


def translating_set_failures(tset: TranslatingSet) -> List[str]:
    """Recheck everything a finished translating set promises; empty means sound."""
    failures = list(tset.invariant_violations())
    delta = QSqrt2(tset.delta)
    for index, (elem, word) in enumerate(zip(tset.elements, tset.source_words), start=1):
        if not verify_agreement(elem, word, tset.pair, tset.interval):
            failures.append(f"element {index} ({word}) does not agree with its word on {tset.interval}")
        if not dist_to_identity(eval_word(word, tset.pair)) < delta:
            failures.append(f"word {word} lies outside the delta ball")
        report = pw_validate(elem, LIFT_RING)
        failures.extend(f"element {index}: {violation}" for violation in report.violations)
    if len(set(tset.translators)) != len(tset.translators):
        failures.append("translators are not pairwise distinct")
    if tset.piece_count != PIECE_COUNT:
        failures.append(f"piece count is {tset.piece_count}, expected {PIECE_COUNT}")
    return failures


def construct(cfg: PipelineConfig, selector: Optional[GeneratorPairSelector] = None,
              progress: bool = False) -> Construction:
    """Run every construction stage and keep the intermediate artifacts."""
    selector = selector or GeneratorPairSelector()
    gens = selector.get_pair(cfg.pair)
    cert = distortion_delta(cfg.interval, cfg.epsilon)
    logger.log_info(f"📐 delta = {cert.delta} for epsilon = {cfg.epsilon} on {cfg.interval}")

    words = find_translating_words(gens, cert.delta, cfg.interval, cfg.max_core_len, progress=progress)
    logger.log_info(f"🔤 cores w = {words.g_core}, w' = {words.h_core}")

    elements = tuple(splice_lift(m, cfg.interval) for m in words.matrices)
    try:
        tset = TranslatingSet(elements, tuple(words.words), cfg.interval, cert.delta, cfg.epsilon, gens)
    except ValueError as error:
        raise ConstructionError(str(error), [str(error)]) from None
    failures = translating_set_failures(tset)
    if failures:
        raise ConstructionError(f"{len(failures)} translating set invariant(s) failed", failures)
    logger.log_success(f"translating set built: {len(tset.translators)} translators, "
                       f"{tset.piece_count} pieces")
    return Construction(cert, words, tset)


def build_translating_set(cfg: PipelineConfig, selector: Optional[GeneratorPairSelector] = None,
                          progress: bool = False) -> TranslatingSet:
    return construct(cfg, selector, progress).translating_set


def pigeonhole_case(construction: Construction, j: IntervalSet, side: str = "g") -> PigeonholeWitness:
    """Pigeonhole witness for the six g-words (side "g") or the six h-words (side "h")."""
    if side not in PIGEONHOLE_SIDES:
        raise ValueError(f"side must be one of {PIGEONHOLE_SIDES}, got {side!r}")
    matrices = construction.words.matrices
    gs = matrices[:6] if side == "g" else matrices[6:]
    tset = construction.translating_set
    return pigeonhole_witness(tset.interval, j, gs, tset.epsilon)
