"""
Serialization

Tagged JSON envelopes {"type": ..., "value": ...} for every exported
artifact, plus deterministic file helpers. Decoding failures raise
SchemaError naming the JSON path that broke.
"""

import json
from functools import singledispatch
from pathlib import Path
from typing import Any, Callable, Dict, Union

from modules.exact.algebraic import RealAlgebraic
from modules.exact.qsqrt2 import QSqrt2
from modules.marriage.subsets import FiniteSubset, TranslatingSet
from modules.marriage.verifier import HallViolation, MatchingCertificate
from modules.measure.distortion import DistortionCert
from modules.measure.interval_set import IntervalSet
from modules.measure.pigeonhole import PigeonholeWitness
from modules.piecewise.piecewise_map import PiecewiseMap
from modules.projective.interval import Interval
from modules.projective.mat2 import Mat2
from modules.shared.config import PipelineConfig
from modules.shared.errors import ConfigError, SchemaError
from modules.words.forge import RelationCertificate, TranslatingWords
from modules.words.word import GeneratorPair, Word

EXPORTED_TYPES: Dict[str, type] = {
    "qsqrt2": QSqrt2,
    "real-algebraic": RealAlgebraic,
    "mat2": Mat2,
    "interval": Interval,
    "piecewise-map": PiecewiseMap,
    "interval-set": IntervalSet,
    "distortion-cert": DistortionCert,
    "pigeonhole-witness": PigeonholeWitness,
    "generator-pair": GeneratorPair,
    "translating-words": TranslatingWords,
    "relation-certificate": RelationCertificate,
    "finite-subset": FiniteSubset,
    "translating-set": TranslatingSet,
    "matching-certificate": MatchingCertificate,
    "hall-violation": HallViolation,
    "pipeline-config": PipelineConfig,
}
TYPE_NAMES = {cls: name for name, cls in EXPORTED_TYPES.items()}


def dumps(data: Any) -> str:
    """Byte-stable JSON text."""
    return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True) + "\n"


@singledispatch
def encode(artifact) -> dict:
    name = TYPE_NAMES.get(type(artifact))
    if name is None:
        raise TypeError(f"cannot serialize {type(artifact).__name__}")
    return {"type": name, "value": artifact.to_json()}


@encode.register
def _(artifact: Word) -> dict:
    return {"type": "word", "value": str(artifact)}


def _decode_value(name: str) -> Callable[[Any], Any]:
    if name == "word":
        return Word
    return EXPORTED_TYPES[name].from_json


def decode(data: Any, path: str = "$") -> Any:
    """Inverse of encode; schema problems name the offending path."""
    if not isinstance(data, dict):
        raise SchemaError(f"expected an object, got {type(data).__name__}", path)
    missing = [key for key in ("type", "value") if key not in data]
    if missing:
        raise SchemaError(f"missing key {missing[0]!r}", path)
    name = data["type"]
    if name != "word" and name not in EXPORTED_TYPES:
        raise SchemaError(f"unknown artifact type {name!r}", f"{path}.type")
    try:
        return _decode_value(name)(data["value"])
    except KeyError as error:
        raise SchemaError(f"missing key {error.args[0]!r}", f"{path}.value") from None
    except SchemaError:
        raise
    except ConfigError as error:
        raise SchemaError(str(error), f"{path}.value") from None
    except (TypeError, ValueError, ArithmeticError) as error:
        raise SchemaError(f"invalid {name}: {error}", f"{path}.value") from None


def serialize_roundtrip(artifact):
    """Write to JSON text and read it back."""
    return decode(json.loads(dumps(encode(artifact))))


def write_json(path: Union[str, Path], data: Any) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(dumps(data))
    return path


def read_json(path: Union[str, Path]) -> Any:
    """Parsed JSON; a missing or malformed file is a SchemaError carrying line and column."""
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return json.load(f)
    except FileNotFoundError:
        raise SchemaError("file not found", str(path)) from None
    except json.JSONDecodeError as e:
        raise SchemaError(f"line {e.lineno} column {e.colno}: {e.msg}", str(path)) from None


def load_artifact(path: Union[str, Path], expected: str) -> Any:
    """Read a tagged file and check its type."""
    data = read_json(path)
    if isinstance(data, dict) and data.get("type") not in (None, expected):
        raise SchemaError(f"expected a {expected} artifact, got {data.get('type')!r}", f"{path}:$.type")
    return decode(data, f"{path}:$")
