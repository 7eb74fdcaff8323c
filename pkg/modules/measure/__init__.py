"""
Interval Measure

Exact Lebesgue measure on finite unions of intervals, measure distortion
near the identity and pigeonhole witnesses.
"""

from modules.measure.interval_set import (
    IntervalSet,
    arrangement,
    as_point,
    iset_algebra,
    iset_measure,
    iset_measure_enclosure,
    iset_subset,
    parse_interval_set,
    pushforward,
)
from modules.measure.distortion import (
    DistortionCert,
    DistortionCheck,
    check_distortion,
    delta_is_certified,
    distortion_delta,
    distortion_window,
)
from modules.measure.pigeonhole import (
    DEFAULT_EPSILON,
    PigeonholeWitness,
    check_preconditions,
    pigeonhole_witness,
)

__all__ = [
    'IntervalSet', 'arrangement', 'as_point', 'iset_algebra', 'iset_measure',
    'iset_measure_enclosure', 'iset_subset', 'parse_interval_set', 'pushforward', 'DistortionCert',
    'DistortionCheck', 'check_distortion', 'delta_is_certified', 'distortion_delta',
    'distortion_window', 'DEFAULT_EPSILON', 'PigeonholeWitness', 'check_preconditions',
    'pigeonhole_witness',
]
