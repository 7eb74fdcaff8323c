"""
Shared fixtures for the module tests.

The expensive construction (word search, lifts, validation) runs once per
session; marriage tests that only need twelve distinct translators use the
cheap integer-translation set instead.
"""

import os
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

os.environ.setdefault("PARADOX_LOG_DIR", str(ROOT / "logs"))
os.environ.setdefault("PARADOX_PROGRESS", "false")

settings.register_profile("paradox", max_examples=60, deadline=None, derandomize=True)
settings.load_profile("paradox")

from modules.marriage.subsets import TranslatingSet  # noqa: E402
from modules.piecewise.generators import translation_map  # noqa: E402
from modules.projective.interval import Interval  # noqa: E402
from modules.shared.config import CampaignPlan, PipelineConfig  # noqa: E402
from modules.shared.pair_selector import GeneratorPairSelector  # noqa: E402
from modules.words.word import Word  # noqa: E402

PAIRS_FILE = ROOT / "pairs" / "generator_pairs.json"


@pytest.fixture(scope="session")
def selector():
    return GeneratorPairSelector(str(PAIRS_FILE))


@pytest.fixture(scope="session")
def dyadic_pair(selector):
    return selector.get_pair("dyadic-hyperbolic")


@pytest.fixture(scope="session")
def sanov_pair(selector):
    return selector.get_pair("sanov")


def small_config(**plan) -> PipelineConfig:
    """Default construction with a campaign small enough for the unit suite."""
    values = dict(radius=1, exhaustive_max_size=1, random_samples=5, random_max_size=3,
                  egs_pairs=5, seed=11)
    values.update(plan)
    return PipelineConfig(plan=CampaignPlan(**values))


@pytest.fixture(scope="session")
def construction(selector):
    from modules.pipeline.translating_set import construct
    return construct(PipelineConfig(plan=CampaignPlan.empty()), selector)


@pytest.fixture(scope="session")
def translating_set(construction):
    return construction.translating_set


@pytest.fixture(scope="session")
def shift_set(dyadic_pair):
    """Twelve integer translations t + k; amenable, so large subsets violate the marriage bound."""
    words = [Word("a" * i + "b" + "A" * i) for i in range(1, 7)] + \
            [Word("b" * i + "a" + "B" * i) for i in range(1, 7)]
    return TranslatingSet(
        elements=tuple(translation_map(k) for k in range(1, 13)),
        source_words=tuple(words),
        interval=Interval.of(0, 1),
        delta=Fraction(1, 386),
        epsilon=Fraction(1, 48),
        pair=dyadic_pair,
    )
