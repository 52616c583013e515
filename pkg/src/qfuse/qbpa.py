"""Frames, focal sets and complex-amplitude mass functions.

A body of evidence assigns a :class:`~qfuse.amplitude.ComplexAmplitude` to
nonempty subsets of a finite frame; the squared magnitudes of a validated
body sum to one.  This module also provides the amplitude-level Dempster
combiner used both as the comparison baseline and as the final-stage
self-combination primitive.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .amplitude import ZERO_AMPLITUDE, ComplexAmplitude

#: Mass-sum tolerance used when no explicit tolerance is requested.
DEFAULT_VALIDATION_TOL = 1e-9


@dataclass(frozen=True)
class Frame:
    """An ordered collection of distinct hypothesis labels.

    The label order is fixed at construction and defines the canonical
    ordering of focal sets (singletons first, then proper multi-element
    subsets, then the full set).
    """

    elements: tuple[str, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise ValueError("a frame needs at least one element")
        seen = set()
        for label in elements:
            if not isinstance(label, str) or not label:
                raise ValueError(f"labels must be non-empty strings, got {label!r}")
            if "," in label:
                raise ValueError(f"labels must not contain ',': {label!r}")
            if label in seen:
                raise ValueError(f"duplicate label {label!r}")
            seen.add(label)
        object.__setattr__(self, "_index", {label: i for i, label in enumerate(elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def focal(self, members: Iterable[str] | str) -> "FocalSet":
        """Build the canonical focal set for the given member labels."""
        if isinstance(members, str):
            members = (members,)
        unique = set(members)
        unknown = unique - self._index.keys()
        if unknown:
            raise ValueError(f"labels {sorted(unknown)} are not in frame {list(self.elements)}")
        return FocalSet(tuple(sorted(unique, key=self._index.__getitem__)))

    def theta(self) -> "FocalSet":
        """The full set: total ignorance."""
        return FocalSet(self.elements)

    def singletons(self) -> tuple["FocalSet", ...]:
        return tuple(FocalSet((label,)) for label in self.elements)

    def focal_sets(self) -> list["FocalSet"]:
        """All nonempty subsets of the frame, canonically ordered."""
        subsets = [
            FocalSet(combo)
            for size in range(1, len(self.elements) + 1)
            for combo in combinations(self.elements, size)
        ]
        subsets.sort(key=self.sort_key)
        return subsets

    def sort_key(self, focal: "FocalSet") -> tuple[int, tuple[int, ...]]:
        """Canonical order: singletons, proper multisubsets, the full set."""
        size = len(focal.members)
        if size == len(self.elements):
            group = 2
        elif size == 1:
            group = 0
        else:
            group = 1
        return (group, tuple(self._index[m] for m in focal.members))


@dataclass(frozen=True)
class FocalSet:
    """A nonempty subset of a frame's labels, in canonical (frame) order.

    Build these through :meth:`Frame.focal`, which sorts members into the
    frame's label order; the empty set is never represented (it carries no
    mass by definition).
    """

    members: tuple[str, ...]

    def __post_init__(self):
        members = tuple(self.members)
        object.__setattr__(self, "members", members)
        if not members:
            raise ValueError("a focal set must be nonempty")
        if len(set(members)) != len(members):
            raise ValueError(f"duplicate members in focal set {members!r}")
        object.__setattr__(self, "_member_set", frozenset(members))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[str]:
        return iter(self.members)

    def __contains__(self, label: object) -> bool:
        return label in self._member_set

    def __str__(self) -> str:
        return ",".join(self.members)

    def issubset(self, other: "FocalSet") -> bool:
        return self._member_set <= other._member_set

    def intersection(self, other: "FocalSet") -> "FocalSet | None":
        """Intersection of two canonical focal sets, or None when empty."""
        kept = tuple(m for m in self.members if m in other._member_set)
        return FocalSet(kept) if kept else None


@dataclass(frozen=True)
class Qbpa:
    """A quantum basic probability assignment: focal set -> amplitude.

    The container itself accepts any nonempty mass map whose keys are
    subsets of the frame; whether the squared magnitudes sum to one is
    checked by :func:`validate` (report style) so that intermediate,
    deliberately unnormalized bodies can be represented too.
    """

    frame: Frame
    masses: Mapping[FocalSet, ComplexAmplitude]

    def __post_init__(self):
        canonical: dict[FocalSet, ComplexAmplitude] = {}
        for focal, amplitude in self.masses.items():
            key = self.frame.focal(focal.members)
            if key in canonical:
                raise ValueError(f"duplicate focal set {{{key}}}")
            canonical[key] = amplitude
        if not canonical:
            raise ValueError("a body needs at least one focal set")
        object.__setattr__(self, "masses", canonical)

    def amplitude(self, focal: FocalSet | None) -> ComplexAmplitude:
        """Stored amplitude for a focal set; absent keys read as zero."""
        if focal is None:
            return ZERO_AMPLITUDE
        return self.masses.get(focal, ZERO_AMPLITUDE)

    def classic_probability(self, focal: FocalSet) -> float:
        """Squared magnitude of the stored amplitude (zero when absent)."""
        return self.amplitude(focal).classic

    def total_classic(self) -> float:
        return math.fsum(a.classic for a in self.masses.values())

    def items_canonical(self) -> list[tuple[FocalSet, ComplexAmplitude]]:
        return sorted(self.masses.items(), key=lambda kv: self.frame.sort_key(kv[0]))


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate(body: Qbpa, tol: float = DEFAULT_VALIDATION_TOL) -> ValidationReport:
    """Check that squared magnitudes sum to one within ``tol``.

    Structural invariants (nonempty canonical keys inside the frame,
    nonnegative magnitudes, canonical phases) hold by construction, so the
    report concentrates on the mass-sum condition.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be > 0, got {tol!r}")
    violations = []
    total = body.total_classic()
    deviation = abs(total - 1.0)
    if deviation > tol:
        violations.append(
            f"squared magnitudes sum to {total:.10g}, off one by {deviation:.3e} (tol {tol:.1e})"
        )
    return ValidationReport(not violations, tuple(violations))


def normalize(body: Qbpa) -> Qbpa:
    """Divide every magnitude by sqrt of the squared-magnitude total.

    Phases are untouched.  Raises for an all-zero body.
    """
    total = body.total_classic()
    if total <= 0.0:
        raise ValueError("degenerate body: all masses are zero")
    scale = 1.0 / math.sqrt(total)
    return Qbpa(
        body.frame,
        {fs: ComplexAmplitude(a.magnitude * scale, a.phase) for fs, a in body.masses.items()},
    )


@dataclass(frozen=True)
class DempsterResult:
    """A combined body plus the conflict mass that fell on empty intersections."""

    body: Qbpa
    conflict: float


def dempster_combine(first: Qbpa, second: Qbpa) -> DempsterResult:
    """Amplitude-level Dempster combination of two bodies over one frame.

    For every nonempty intersection the pairwise amplitude products (complex)
    are summed coherently; the result is renormalized so squared magnitudes
    sum to one.  Conflict is reported separately as the total squared
    magnitude of products falling on empty intersections, not folded back
    into the amplitudes.  Contributions are sorted before summation so the
    operation is exactly commutative.
    """
    if first.frame != second.frame:
        raise ValueError("cannot combine bodies over different frames")
    contributions: dict[FocalSet, list[complex]] = {}
    conflict_terms: list[float] = []
    for left, a_left in first.masses.items():
        for right, a_right in second.masses.items():
            magnitude = a_left.magnitude * a_right.magnitude
            if magnitude == 0.0:
                continue
            meet = left.intersection(right)
            if meet is None:
                conflict_terms.append(magnitude * magnitude)
            else:
                product = cmath.rect(magnitude, a_left.phase + a_right.phase)
                contributions.setdefault(meet, []).append(product)
    conflict = math.fsum(sorted(conflict_terms))
    raw: dict[FocalSet, ComplexAmplitude] = {}
    for focal in sorted(contributions, key=first.frame.sort_key):
        terms = sorted(contributions[focal], key=lambda z: (z.real, z.imag))
        value = sum(terms, start=0j)
        if value != 0:
            raw[focal] = ComplexAmplitude.from_complex(value)
    if not raw:
        raise ValueError("complete conflict: every intersection is empty")
    return DempsterResult(normalize(Qbpa(first.frame, raw)), conflict)


def self_combine(body: Qbpa, times: int) -> Qbpa:
    """Left fold of ``times`` Dempster combinations of a body with itself."""
    if times < 0:
        raise ValueError(f"times must be >= 0, got {times!r}")
    result = body
    for _ in range(times):
        result = dempster_combine(result, body).body
    return result
