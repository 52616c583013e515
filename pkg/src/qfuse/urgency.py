"""Urgency grading of evidences and the final urgency-weighted combination.

Each evidence carries a positive urgency exponent whose band label is pure
reporting metadata; numerically the exponent itself weights the evidence's
fused body in a linear aggregate.  The aggregate is renormalized and then
Dempster-combined with itself once per additional evidence, which sharpens
the distribution toward the dominant propositions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .amplitude import ComplexAmplitude
from .fusion import FusedBody
from .qbpa import FocalSet, Qbpa, normalize, self_combine

#: Band labels from least to most urgent.
URGENCY_LABELS = (
    "Ignorable event",
    "More or less ignorable event",
    "Normal event",
    "More or less urgent event",
    "Urgent event",
    "Quite urgent event",
    "Very urgent event",
    "Quite very urgent event",
    "Very very urgent event",
)


def grade_label(exponent: float) -> str:
    """The unique urgency band containing a positive exponent.

    Exact points 1 and 2 take their dedicated labels; the half-open bands
    partition everything else: (0, 0.5), [0.5, 1), (1, 2), (2, 2.5),
    [2.5, 3), [3, 5) and [5, inf).
    """
    if not math.isfinite(exponent) or exponent <= 0.0:
        raise ValueError(f"invalid urgency exponent: {exponent!r}")
    if exponent == 1.0:
        return "Normal event"
    if exponent == 2.0:
        return "Urgent event"
    if exponent < 0.5:
        return "Ignorable event"
    if exponent < 1.0:
        return "More or less ignorable event"
    if exponent < 2.0:
        return "More or less urgent event"
    if exponent < 2.5:
        return "Quite urgent event"
    if exponent < 3.0:
        return "Very urgent event"
    if exponent < 5.0:
        return "Quite very urgent event"
    return "Very very urgent event"


@dataclass(frozen=True)
class UrgencyGrade:
    """A positive urgency exponent with its derived band label."""

    exponent: float
    label: str = field(init=False, default="")

    def __post_init__(self):
        object.__setattr__(self, "label", grade_label(self.exponent))


def mid(fused: Sequence[FusedBody], grades: Sequence[UrgencyGrade]) -> Qbpa:
    """Exponent-weighted complex sum of the normalized fused bodies.

    Keys absent from a body contribute zero; the result is a raw aggregate,
    not yet normalized.
    """
    if not fused:
        raise ValueError("no evidences to aggregate")
    if len(fused) != len(grades):
        raise ValueError(f"{len(grades)} urgency grades for {len(fused)} fused bodies")
    frame = fused[0].body.frame
    for other in fused[1:]:
        if other.body.frame != frame:
            raise ValueError("fused bodies must share one frame")
    keys = sorted({fs for fb in fused for fs in fb.body.masses}, key=frame.sort_key)
    aggregated: dict[FocalSet, ComplexAmplitude] = {}
    for focal in keys:
        value = sum(
            (grade.exponent * fb.body.amplitude(focal).to_complex() for fb, grade in zip(fused, grades)),
            start=0j,
        )
        if value != 0:
            aggregated[focal] = ComplexAmplitude.from_complex(value)
    if not aggregated:
        raise ValueError("degenerate aggregate: all weighted masses vanished")
    return Qbpa(frame, aggregated)


def nor(aggregate: Qbpa) -> Qbpa:
    """Renormalize an aggregate so squared magnitudes sum to one (phases kept)."""
    if aggregate.total_classic() <= 0.0:
        raise ValueError("degenerate aggregate: nothing to normalize")
    return normalize(aggregate)


@dataclass(frozen=True)
class FinalDistribution:
    """Final fused body, its pre-combination normalized form, and the classic view."""

    fin: Qbpa
    nor: Qbpa
    classic: dict[FocalSet, float]


def xg_fuse(fused: Sequence[FusedBody], grades: Sequence[UrgencyGrade]) -> FinalDistribution:
    """Aggregate, normalize, then self-combine once per additional evidence."""
    nor_body = nor(mid(fused, grades))
    fin = self_combine(nor_body, len(fused) - 1)
    classic = {fs: amp.classic for fs, amp in fin.items_canonical()}
    return FinalDistribution(fin, nor_body, classic)
