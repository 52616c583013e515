"""Time-gap weighting of ordered evidence bodies.

Propositions inside one evidence arrive at strictly increasing moments.
The gap between consecutive propositions falls into the lower half, the
midpoint, or the upper half of a reference interval, which grades the
connection between them as strong, moderate or weak.  The grade multipliers
chain into per-proposition weights (the first proposition always has weight
one) that rescale the amplitudes before renormalization; phases are never
touched by this stage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .amplitude import ComplexAmplitude
from .qbpa import FocalSet, Frame, Qbpa, normalize

#: Relative tolerance for deciding that a gap sits exactly at the midpoint.
MIDPOINT_REL_TOL = 1e-9

PER_EVIDENCE_MINMAX = "per-evidence-minmax"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class TimedProposition:
    """One focal set with its amplitude and occurrence moment (seconds)."""

    focal: FocalSet
    amplitude: ComplexAmplitude
    moment: float

    def __post_init__(self):
        if not math.isfinite(self.moment) or self.moment < 0.0:
            raise ValueError(f"moment must be finite and >= 0, got {self.moment!r}")


@dataclass(frozen=True)
class TimedEvidence:
    """An evidence body whose propositions are ordered by occurrence moment."""

    frame: Frame
    propositions: tuple[TimedProposition, ...]

    def __post_init__(self):
        propositions = tuple(self.propositions)
        object.__setattr__(self, "propositions", propositions)
        if not propositions:
            raise ValueError("an evidence needs at least one proposition")
        for earlier, later in zip(propositions, propositions[1:]):
            if later.moment <= earlier.moment:
                raise ValueError(
                    f"not ordinal: moment {later.moment!r} does not follow {earlier.moment!r}"
                )
        focals = [p.focal for p in propositions]
        if len(set(focals)) != len(focals):
            raise ValueError("propositions must carry distinct focal sets")

    def moments(self) -> tuple[float, ...]:
        return tuple(p.moment for p in self.propositions)

    def gaps(self) -> tuple[float, ...]:
        moments = self.moments()
        return tuple(b - a for a, b in zip(moments, moments[1:]))

    def to_qbpa(self) -> Qbpa:
        return Qbpa(self.frame, {p.focal: p.amplitude for p in self.propositions})


@dataclass(frozen=True)
class ConnectionGrades:
    """Multipliers for strong / moderate / weak connections.

    A shorter gap means a closer connection and therefore a larger
    multiplier, so the triple must be strictly decreasing and positive.
    """

    strong: float
    moderate: float
    weak: float

    def __post_init__(self):
        if not (self.strong > self.moderate > self.weak > 0.0):
            raise ValueError(
                f"grades must satisfy strong > moderate > weak > 0, got "
                f"({self.strong!r}, {self.moderate!r}, {self.weak!r})"
            )


@dataclass(frozen=True)
class IntervalPolicy:
    """How the reference interval for each consecutive gap is chosen.

    ``per-evidence-minmax`` uses the smallest and largest consecutive gap of
    the evidence as one shared interval (the parameter-free default);
    ``explicit`` supplies one (lo, hi) pair per gap.
    """

    mode: str = PER_EVIDENCE_MINMAX
    explicit_bounds: tuple[tuple[float, float], ...] | None = None

    def __post_init__(self):
        if self.mode not in (PER_EVIDENCE_MINMAX, EXPLICIT):
            raise ValueError(f"unknown interval policy mode {self.mode!r}")
        if self.mode == EXPLICIT:
            if not self.explicit_bounds:
                raise ValueError("explicit interval policy needs bounds")
            bounds = tuple((float(lo), float(hi)) for lo, hi in self.explicit_bounds)
            for lo, hi in bounds:
                if not (lo < hi):
                    raise ValueError(f"degenerate interval: ({lo!r}, {hi!r})")
            object.__setattr__(self, "explicit_bounds", bounds)


def classify_gap(gap: float, bounds: tuple[float, float], grades: ConnectionGrades) -> float:
    """Grade multiplier for a gap inside a reference interval.

    The gap is clamped into [lo, hi]; the lower half maps to the strong
    grade, the midpoint (within a relative tolerance) to the moderate grade,
    and the upper half to the weak grade.
    """
    lo, hi = bounds
    if not (lo < hi):
        raise ValueError(f"degenerate interval: ({lo!r}, {hi!r})")
    gap = min(max(gap, lo), hi)
    midpoint = 0.5 * (lo + hi)
    if math.isclose(gap, midpoint, rel_tol=MIDPOINT_REL_TOL):
        return grades.moderate
    return grades.strong if gap < midpoint else grades.weak


def pair_bounds(evidence: TimedEvidence, policy: IntervalPolicy) -> tuple[tuple[float, float], ...]:
    """Reference interval for each consecutive proposition pair."""
    gaps = evidence.gaps()
    if not gaps:
        return ()
    if policy.mode == PER_EVIDENCE_MINMAX:
        lo, hi = min(gaps), max(gaps)
        return tuple((lo, hi) for _ in gaps)
    bounds = policy.explicit_bounds or ()
    if len(bounds) < len(gaps):
        raise ValueError(
            f"explicit interval policy provides {len(bounds)} bounds for {len(gaps)} gaps"
        )
    return tuple(bounds[: len(gaps)])


def time_weights(
    evidence: TimedEvidence, policy: IntervalPolicy, grades: ConnectionGrades
) -> tuple[float, ...]:
    """Chained per-proposition weights; the first proposition has weight one.

    Each later proposition multiplies its predecessor's weight by the grade
    of the gap separating the two.
    """
    gaps = evidence.gaps()
    weights = [1.0]
    if gaps:
        for gap, (lo, hi) in zip(gaps, pair_bounds(evidence, policy)):
            if lo == hi:
                # all gaps equal under min-max: every gap sits at the midpoint
                multiplier = grades.moderate
            else:
                multiplier = classify_gap(gap, (lo, hi), grades)
            weights.append(weights[-1] * multiplier)
    return tuple(weights)


def apply_time_rule(evidence: TimedEvidence, weights: Sequence[float]) -> Qbpa:
    """Rescale each proposition's magnitude by its weight and renormalize.

    Phases are preserved; the output's squared magnitudes sum to one.
    """
    propositions = evidence.propositions
    if len(weights) != len(propositions):
        raise ValueError(
            f"{len(weights)} weights for {len(propositions)} propositions"
        )
    if any(not math.isfinite(w) or w <= 0.0 for w in weights):
        raise ValueError("weights must be finite and > 0")
    scaled = {
        p.focal: p.amplitude.scaled(w) for p, w in zip(propositions, weights)
    }
    return normalize(Qbpa(evidence.frame, scaled))


def fit_connection_grades(
    evidence: TimedEvidence,
    targets: Mapping[FocalSet, float],
    policy: IntervalPolicy,
    candidates: Iterable[tuple[float, float, float]],
) -> list[tuple[float, ConnectionGrades]]:
    """Score candidate grade triples against target post-rule magnitudes.

    Returns (rms error, grades) pairs sorted best-first; triples that violate
    the strong > moderate > weak > 0 ordering are skipped.  This is a survey
    tool for exploring which grade choices could have produced a published
    reweighted table, not a fitting procedure with any optimality claim.
    """
    scored: list[tuple[float, ConnectionGrades]] = []
    for strong, moderate, weak in candidates:
        try:
            grades = ConnectionGrades(strong, moderate, weak)
        except ValueError:
            continue
        reweighted = apply_time_rule(evidence, time_weights(evidence, policy, grades))
        errors = [
            reweighted.amplitude(fs).magnitude - target for fs, target in targets.items()
        ]
        score = math.sqrt(math.fsum(e * e for e in errors) / max(len(errors), 1))
        scored.append((score, grades))
    scored.sort(key=lambda pair: pair[0])
    return scored
