"""Measure distortion near the identity.

For I inside [-R, R] and a matrix within entrywise distance delta of the
identity, |c*x + d - 1| <= (R + 1) * delta on I, so the derivative
1/(c*x + d)**2 lies in [(1 + (R+1)delta)**-2, (1 - (R+1)delta)**-2] and every
point of I moves by at most delta * (R + 1)**2 / (1 - (R + 1) * delta).

The enlargement of I is I scaled by 1 + epsilon, so it adds exactly
epsilon mu(I). Matrices in the open delta-ball move I by strictly less than
the certified displacement, which keeps the hull of I and its images below
that bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from modules.exact.qsqrt2 import QSqrt2, as_fraction, format_fraction
from modules.measure.interval_set import IntervalSet, iset_measure, iset_subset, pushforward
from modules.projective.interval import Interval
from modules.projective.mat2 import Mat2, derivative_bounds
from modules.shared.errors import PoleInIntervalError, PreconditionError


@dataclass(frozen=True)
class DistortionCert:
    interval: Interval
    epsilon: Fraction
    delta: Fraction
    radius: Fraction
    delta_derivative: Fraction
    delta_containment: Fraction
    derivative_lower: Fraction
    derivative_upper: Fraction
    displacement: Fraction
    containment_margin: QSqrt2

    def to_json(self) -> dict:
        return {
            "interval": self.interval.to_json(),
            "epsilon": format_fraction(self.epsilon),
            "delta": format_fraction(self.delta),
            "radius": format_fraction(self.radius),
            "delta_derivative": format_fraction(self.delta_derivative),
            "delta_containment": format_fraction(self.delta_containment),
            "derivative_lower": format_fraction(self.derivative_lower),
            "derivative_upper": format_fraction(self.derivative_upper),
            "displacement": format_fraction(self.displacement),
            "containment_margin": self.containment_margin.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DistortionCert":
        interval = Interval.from_json(data["interval"])
        epsilon = as_fraction(data["epsilon"])
        cert = distortion_delta(interval, epsilon)
        if cert.delta != as_fraction(data["delta"]):
            raise ValueError(f"stored delta {data['delta']} does not match the derivation")
        return cert


def _derivative_ok(radius: Fraction, epsilon: Fraction, delta: Fraction) -> bool:
    drift = (radius + 1) * delta
    if drift >= 1:
        return False
    return 1 / (1 - drift) ** 2 < 1 + epsilon and 1 / (1 + drift) ** 2 > 1 - epsilon


def _displacement(radius: Fraction, delta: Fraction) -> Fraction:
    return delta * (radius + 1) ** 2 / (1 - (radius + 1) * delta)


def _containment_ok(radius: Fraction, margin: QSqrt2, delta: Fraction) -> bool:
    if (radius + 1) * delta >= 1:
        return False
    return QSqrt2(_displacement(radius, delta)) <= margin


def _least_denominator(holds: Callable[[Fraction], bool]) -> int:
    """Least k with holds(1/k); holds must be monotone in k."""
    high = 1
    while not holds(Fraction(1, high)):
        high *= 2
    low = high // 2
    while high - low > 1:
        mid = (low + high) // 2
        if holds(Fraction(1, mid)):
            high = mid
        else:
            low = mid
    return high


def _margin(interval: Interval, epsilon: Fraction) -> QSqrt2:
    return interval.length * epsilon / 2


def delta_is_certified(interval: Interval, epsilon, delta) -> bool:
    """Both the derivative window and the containment in the (1 + epsilon) enlargement hold at delta."""
    epsilon, delta = as_fraction(epsilon), as_fraction(delta)
    radius = interval.radius_bound
    return (delta > 0 and _derivative_ok(radius, epsilon, delta)
            and _containment_ok(radius, _margin(interval, epsilon), delta))


def distortion_delta(interval: Interval, epsilon) -> DistortionCert:
    """Certified delta = 1/k for measure distortion epsilon on the interval."""
    epsilon = as_fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon}")
    radius = interval.radius_bound
    margin = _margin(interval, epsilon)
    k_derivative = _least_denominator(lambda d: _derivative_ok(radius, epsilon, d))
    k_containment = _least_denominator(lambda d: _containment_ok(radius, margin, d))
    delta = Fraction(1, max(k_derivative, k_containment))
    drift = (radius + 1) * delta
    return DistortionCert(
        interval=interval,
        epsilon=epsilon,
        delta=delta,
        radius=radius,
        delta_derivative=Fraction(1, k_derivative),
        delta_containment=Fraction(1, k_containment),
        derivative_lower=1 / (1 + drift) ** 2,
        derivative_upper=1 / (1 - drift) ** 2,
        displacement=_displacement(radius, delta),
        containment_margin=margin,
    )


@dataclass(frozen=True)
class DistortionCheck:
    ratio: QSqrt2
    epsilon: Fraction

    @property
    def inside(self) -> bool:
        return 1 - self.epsilon < self.ratio < 1 + self.epsilon

    def __bool__(self) -> bool:
        return self.inside


def check_distortion(g: Mat2, interval: Interval, j: IntervalSet, epsilon) -> DistortionCheck:
    """Exact ratio mu(J.g)/mu(J) and whether it lies in (1 - epsilon, 1 + epsilon)."""
    epsilon = as_fraction(epsilon)
    if not j:
        raise ValueError("the ratio is undefined for an empty set")
    if not iset_subset(j, IntervalSet.from_interval(interval)):
        raise PreconditionError("J is not contained in I", ["J not inside I"])
    pole = g.pole
    if pole is not None and interval.contains(pole):
        raise PoleInIntervalError(f"pole {pole} lies in {interval}", pole)
    ratio = iset_measure(pushforward(j, g)) / iset_measure(j)
    return DistortionCheck(ratio, epsilon)


def distortion_window(g: Mat2, interval: Interval, epsilon) -> bool:
    """Sufficient exact test: g' stays strictly inside (1 - epsilon, 1 + epsilon) on I."""
    epsilon = as_fraction(epsilon)
    lower, upper = derivative_bounds(g, interval)
    return 1 - epsilon < lower and upper < 1 + epsilon
