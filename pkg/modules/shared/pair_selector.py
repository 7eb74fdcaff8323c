"""
Generator Pair Selection Module

Loads the shipped generator-pair candidates from the pairs JSON file and
validates every record before handing it out.
"""

import json
from pathlib import Path
from typing import Dict, List, Optional

from modules.exact.qsqrt2 import QSqrt2, parse_qsqrt2
from modules.projective.mat2 import Mat2
from modules.shared.config import pairs_file
from modules.shared.errors import ConfigError, DeterminantError, UnknownGeneratorError
from modules.words.word import GeneratorPair


def _entry(value) -> QSqrt2:
    if isinstance(value, dict):
        return QSqrt2.from_json(value)
    return parse_qsqrt2(str(value))


class GeneratorPairSelector:
    """Looks up generator pairs by name."""

    def __init__(self, pairs_path: Optional[str] = None):
        """
        Initialize the selector.

        Args:
            pairs_path: Path to the pairs JSON file (PARADOX_PAIRS_FILE by default)
        """
        self.pairs_file = Path(pairs_path) if pairs_path else pairs_file()
        self.pairs_data = None
        self.pairs: Dict[str, GeneratorPair] = {}
        self.claims: Dict[str, dict] = {}
        self._load_pairs()

    def _load_pairs(self):
        """Load and validate every pair record."""
        try:
            with open(self.pairs_file, 'r', encoding='utf-8') as f:
                self.pairs_data = json.load(f)
        except FileNotFoundError:
            raise ConfigError(f"Pairs file not found: {self.pairs_file}") from None
        except json.JSONDecodeError as e:
            raise ConfigError(f"Invalid JSON in pairs file: {e}") from None

        records = self.pairs_data.get("pairs") if isinstance(self.pairs_data, dict) else None
        if not isinstance(records, list):
            raise ConfigError(f"{self.pairs_file}: expected an object with a 'pairs' list")
        for index, record in enumerate(records):
            pair = self._parse_record(record, f"pairs[{index}]")
            if pair.name in self.pairs:
                raise ConfigError(f"pairs[{index}]: duplicate pair name {pair.name!r}")
            self.pairs[pair.name] = pair
            self.claims[pair.name] = dict(record.get("claims", {}))

    @staticmethod
    def _parse_record(record: dict, path: str) -> GeneratorPair:
        try:
            matrices = []
            for label in ("a", "b"):
                entries = record[label]
                matrices.append(Mat2(*(_entry(entries[k]) for k in "abcd")))
            return GeneratorPair(matrices[0], matrices[1], record["name"], record.get("provenance", ""))
        except KeyError as e:
            raise ConfigError(f"{path}: missing field {e}") from None
        except (ValueError, TypeError, DeterminantError) as e:
            raise ConfigError(f"{path}: {e}") from None

    def get_pair_names(self) -> List[str]:
        return list(self.pairs)

    def get_pair(self, name: str) -> GeneratorPair:
        try:
            return self.pairs[name]
        except KeyError:
            raise UnknownGeneratorError(
                f"unknown generator pair {name!r}; available: {', '.join(self.pairs)}") from None

    def get_claims(self, name: str) -> dict:
        self.get_pair(name)
        return self.claims[name]

    def get_stats(self) -> Dict:
        return {
            "pairs_file": str(self.pairs_file),
            "total_pairs": len(self.pairs),
            "names": self.get_pair_names(),
        }
