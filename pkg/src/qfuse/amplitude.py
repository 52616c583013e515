"""Polar-form complex amplitudes, the mass values of quantum evidence bodies."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


def canonical_phase(theta: float) -> float:
    """Map an angle in radians onto the canonical interval (-pi, pi]."""
    reduced = math.remainder(theta, math.tau)
    if reduced <= -math.pi:
        reduced += math.tau
    return reduced


@dataclass(frozen=True)
class ComplexAmplitude:
    """A complex mass value psi * e^(i*theta), held in polar form.

    The magnitude psi is the amplitude proper; its square is the classic
    (decision-facing) probability the value carries.  Phases are stored
    canonically in (-pi, pi].  Values are immutable; arithmetic that mixes
    amplitudes (sums of products, complements) is done in rectangular
    coordinates via :meth:`to_complex` / :meth:`from_complex`.
    """

    magnitude: float
    phase: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.magnitude) or self.magnitude < 0.0:
            raise ValueError(f"magnitude must be finite and >= 0, got {self.magnitude!r}")
        if not math.isfinite(self.phase):
            raise ValueError(f"phase must be finite, got {self.phase!r}")
        object.__setattr__(self, "phase", canonical_phase(self.phase))

    @classmethod
    def from_complex(cls, z: complex) -> "ComplexAmplitude":
        return cls(abs(z), cmath.phase(z) if z else 0.0)

    def to_complex(self) -> complex:
        return cmath.rect(self.magnitude, self.phase)

    @property
    def classic(self) -> float:
        """Squared magnitude: the classic probability of this value."""
        return self.magnitude * self.magnitude

    def scaled(self, ratio: float) -> "ComplexAmplitude":
        """Scale the magnitude by a nonnegative real ratio; the phase is kept."""
        if ratio < 0.0:
            raise ValueError(f"ratio must be >= 0, got {ratio!r}")
        return ComplexAmplitude(self.magnitude * ratio, self.phase)

    def __mul__(self, other: "ComplexAmplitude") -> "ComplexAmplitude":
        return ComplexAmplitude(self.magnitude * other.magnitude, self.phase + other.phase)


ZERO_AMPLITUDE = ComplexAmplitude(0.0, 0.0)
