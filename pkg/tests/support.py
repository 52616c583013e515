"""Shared test helpers: random generators and independent oracles.

The oracles here deliberately share no code with the package: the classical
combiner works on plain float mass dicts keyed by frozensets, and the fusion
oracle is a direct nested-loop transcription of the stage's defining sums
over plain complex numbers.
"""

from __future__ import annotations

import math
import random
from itertools import combinations

from qfuse import (
    ComplexAmplitude,
    FocalSet,
    Frame,
    Qbpa,
    RedistributedReliability,
    ReliabilityQbpa,
    TimedEvidence,
    TimedProposition,
)

LABEL_POOL = ("a", "b", "c", "d")


def amp(mag: float, phase: float = 0.0) -> ComplexAmplitude:
    return ComplexAmplitude(mag, phase)


def body(frame: Frame, entries: dict) -> Qbpa:
    """Shorthand body builder: keys are label strings or tuples, values
    are (mag, phase) pairs or bare magnitudes."""
    masses = {}
    for key, value in entries.items():
        members = (key,) if isinstance(key, str) else tuple(key)
        if isinstance(value, tuple):
            a = ComplexAmplitude(*value)
        else:
            a = ComplexAmplitude(float(value))
        masses[frame.focal(members)] = a
    return Qbpa(frame, masses)


def close(x: float, y: float, tol: float = 1e-12) -> bool:
    return abs(x - y) <= tol


def amp_close(a: ComplexAmplitude, b: ComplexAmplitude, tol: float = 1e-12) -> bool:
    return abs(a.to_complex() - b.to_complex()) <= tol


# ---------------------------------------------------------------- generators

def rand_frame(rng: random.Random, max_elements: int = 4, min_elements: int = 1) -> Frame:
    size = rng.randint(min_elements, max_elements)
    return Frame(LABEL_POOL[:size])


def rand_magnitudes(rng: random.Random, count: int) -> list[float]:
    """Positive magnitudes with squared sum exactly normalized."""
    raw = [rng.uniform(0.05, 1.0) for _ in range(count)]
    norm = math.sqrt(math.fsum(v * v for v in raw))
    return [v / norm for v in raw]


def rand_keys(rng: random.Random, frame: Frame, count: int | None = None) -> list[FocalSet]:
    pool = frame.focal_sets()
    if count is None:
        count = rng.randint(1, len(pool))
    return rng.sample(pool, min(count, len(pool)))


def rand_qbpa(
    rng: random.Random,
    frame: Frame,
    keys: list[FocalSet] | None = None,
    phase_zero: bool = False,
    singleton_only: bool = False,
) -> Qbpa:
    if keys is None:
        if singleton_only:
            singles = list(frame.singletons())
            keys = rng.sample(singles, rng.randint(1, len(singles)))
        else:
            keys = rand_keys(rng, frame)
    mags = rand_magnitudes(rng, len(keys))
    masses = {}
    for focal, mag in zip(keys, mags):
        phase = 0.0 if phase_zero else rng.uniform(-math.pi, math.pi)
        masses[focal] = ComplexAmplitude(mag, phase)
    return Qbpa(frame, masses)


def rand_reliability(rng: random.Random, phase_zero: bool = False) -> ReliabilityQbpa:
    mags = rand_magnitudes(rng, 4)
    phases = [0.0 if phase_zero else rng.uniform(-math.pi, math.pi) for _ in range(4)]
    return ReliabilityQbpa(*(ComplexAmplitude(m, p) for m, p in zip(mags, phases)))


def rand_redistributed(rng: random.Random, phase_zero: bool = False) -> RedistributedReliability:
    mags = rand_magnitudes(rng, 4)
    phases = [0.0 if phase_zero else rng.uniform(-math.pi, math.pi) for _ in range(4)]
    values = [ComplexAmplitude(m, p) for m, p in zip(mags, phases)]
    return RedistributedReliability(*values)


def rand_timed_evidence(rng: random.Random, frame: Frame, phase_zero: bool = False) -> TimedEvidence:
    keys = rand_keys(rng, frame)
    base = rand_qbpa(rng, frame, keys=keys, phase_zero=phase_zero)
    moment = 0.0
    propositions = []
    for focal in keys:
        moment += rng.uniform(0.5, 50.0)
        propositions.append(TimedProposition(focal, base.masses[focal], moment))
    return TimedEvidence(frame, tuple(propositions))


# ------------------------------------------------------------------- oracles

def classical_dempster(
    first: dict[frozenset, float], second: dict[frozenset, float]
) -> tuple[dict[frozenset, float], float]:
    """Textbook Dempster's rule on plain float masses."""
    raw: dict[frozenset, float] = {}
    conflict = 0.0
    for left, m_left in first.items():
        for right, m_right in second.items():
            meet = left & right
            product = m_left * m_right
            if meet:
                raw[meet] = raw.get(meet, 0.0) + product
            else:
                conflict += product
    total = sum(raw.values())
    if total == 0.0:
        raise ZeroDivisionError("complete conflict")
    return {key: value / total for key, value in raw.items()}, conflict


def classic_masses(q: Qbpa) -> dict[frozenset, float]:
    return {frozenset(fs.members): a.classic for fs, a in q.masses.items()}


def fusion_reference(
    labels: tuple[str, ...],
    m1: dict[frozenset, complex],
    z_y: complex,
    z_n: complex,
    z_r: complex,
) -> dict[frozenset, complex]:
    """Direct-summation transcription of the two-dimensional fusion stage.

    Works on plain complex numbers and frozensets.  The full set's mass is
    pooled into each multi-element key of the body; singletons collect
    support from pooled masses containing them and opposition from the rest;
    the full set survives through z_r alone.
    """
    universe = frozenset(labels)

    def mass(subset: frozenset) -> complex:
        return m1.get(subset, 0j)

    multis = [
        frozenset(combo)
        for size in range(2, len(labels))
        for combo in combinations(labels, size)
        if frozenset(combo) in m1
    ]
    theta_mass = mass(universe)
    raw: dict[frozenset, complex] = {}
    if len(labels) > 1:
        for label in labels:
            single = frozenset([label])
            value = mass(single) * z_y + (1.0 - mass(single)) * z_n
            for multi in multis:
                pooled = mass(multi) + theta_mass
                value += pooled * (z_y if single <= multi else z_n)
            raw[single] = value
    for multi in multis:
        raw[multi] = (mass(multi) + theta_mass) * z_y
    if universe in m1:
        raw[universe] = theta_mass * z_r
    return {key: value for key, value in raw.items() if value != 0}


def power_normalize(masses: dict, exponent: int) -> dict:
    """Independent final-stage oracle for singleton-only phase-zero bodies:
    n-fold self-combination is mass-powering plus renormalization."""
    powered = {key: value**exponent for key, value in masses.items()}
    total = sum(powered.values())
    return {key: value / total for key, value in powered.items()}
