"""Two-dimensional fusion of an evidence body with its reliability.

The full set's mass first flows into every proper multi-element key (total
ignorance refines into the partial hypotheses the evidence actually names).
Every singleton then collects support from the reliability's Y amplitude,
weighted by its own mass and by each pooled multi-element mass containing
it, and opposition from the N amplitude, weighted by its complement and by
each pooled multi-element mass excluding it.  The full set itself survives
only through the refusal amplitude, which damps residual ignorance.  The
raw result deliberately breaks normalization and is kept alongside a
renormalized body.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .amplitude import ComplexAmplitude
from .qbpa import FocalSet, Frame, Qbpa, normalize
from .reliability import RedistributedReliability


@dataclass(frozen=True)
class Tdqbf:
    """A two-dimensional pair: an evidence body and its redistributed reliability."""

    m1: Qbpa
    m2: RedistributedReliability


@dataclass(frozen=True)
class SubsetPartition:
    singletons: tuple[FocalSet, ...]
    multisubsets: tuple[FocalSet, ...]
    theta: FocalSet | None


def multisubset_partition(frame: Frame, keys: Iterable[FocalSet]) -> SubsetPartition:
    """Split focal sets into singletons, proper multisubsets and the full set."""
    singletons: list[FocalSet] = []
    multisubsets: list[FocalSet] = []
    theta: FocalSet | None = None
    for focal in sorted(keys, key=frame.sort_key):
        if len(focal) == len(frame):
            theta = focal
        elif len(focal) == 1:
            singletons.append(focal)
        else:
            multisubsets.append(focal)
    return SubsetPartition(tuple(singletons), tuple(multisubsets), theta)


@dataclass(frozen=True)
class FusedBody:
    """Raw (unnormalized) and normalized forms of one fused evidence body."""

    raw: Qbpa
    body: Qbpa
    conflict_note: str


def combine_tdqbf(pair: Tdqbf) -> FusedBody:
    """Fuse an evidence body with its redistributed reliability.

    With pooled(A) = m1(A) + m1(full set) for every proper multi-element key
    A of m1, the raw masses are:

    * every frame singleton x:  m1(x)*zY + (1 - m1(x))*zN
      + sum over pooled multi-element keys of pooled(A)*zY when x is inside
      A, else pooled(A)*zN;
    * every proper multi-element key A of m1:  pooled(A)*zY;
    * the full set, when m1 carries it:  m1(full)*zR.

    Absent keys read as zero amplitude; the complement (1 - m1(x)) is complex
    subtraction from the real unit.  The normalized form divides magnitudes
    by sqrt of the raw squared-magnitude total.
    """
    frame = pair.m1.frame
    z_y = pair.m2.zy.to_complex()
    z_n = pair.m2.zn.to_complex()
    z_r = pair.m2.r.to_complex()
    partition = multisubset_partition(frame, pair.m1.masses.keys())
    theta_mass = pair.m1.amplitude(partition.theta).to_complex() if partition.theta else 0j
    pooled = {
        multi: pair.m1.amplitude(multi).to_complex() + theta_mass
        for multi in partition.multisubsets
    }

    raw: dict[FocalSet, complex] = {}
    if len(frame) > 1:
        for label in frame:
            singleton = frame.focal(label)
            own = pair.m1.amplitude(singleton).to_complex()
            value = own * z_y + (1.0 - own) * z_n
            for multi, pooled_mass in pooled.items():
                value += pooled_mass * (z_y if singleton.issubset(multi) else z_n)
            raw[singleton] = value
    for multi in partition.multisubsets:
        raw[multi] = pooled[multi] * z_y
    if partition.theta is not None:
        raw[partition.theta] = theta_mass * z_r

    masses = {fs: ComplexAmplitude.from_complex(v) for fs, v in raw.items() if v != 0}
    if not masses:
        raise ValueError("annihilating fusion: every combined mass vanished")
    raw_body = Qbpa(frame, masses)
    total = raw_body.total_classic()
    note = f"raw squared-magnitude total {total:.6f} rescaled to 1"
    return FusedBody(raw_body, normalize(raw_body), note)
