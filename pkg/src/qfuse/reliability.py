"""Reliability bodies over the pictorial frame {Y, N, H, R}.

The second dimension of a two-dimensional belief pair judges how reliable
an evidence body is: support (Y), opposition (N), hesitancy (H) and refusal
(R), mirroring the four voting attitudes of a picture fuzzy set.  Hesitancy
is dynamically split between support and opposition, and the split portions
are added back with square-root coefficients chosen so that no squared-
magnitude probability is lost in the transfer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .amplitude import ComplexAmplitude

RELIABILITY_LABELS = ("Y", "N", "H", "R")


@dataclass(frozen=True)
class PictureFuzzyElement:
    """Membership / hesitancy / non-membership grades with their refusal rest."""

    membership: float
    hesitancy: float
    non_membership: float

    def __post_init__(self):
        for name, value in (
            ("membership", self.membership),
            ("hesitancy", self.hesitancy),
            ("non_membership", self.non_membership),
        ):
            if not (0.0 <= value <= 1.0):
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
        if self.membership + self.hesitancy + self.non_membership > 1.0:
            raise ValueError("membership + hesitancy + non_membership must not exceed 1")

    @property
    def refusal(self) -> float:
        """The grade left over once membership, hesitancy and non-membership are spoken for."""
        return 1.0 - (self.membership + self.hesitancy + self.non_membership)


@dataclass(frozen=True)
class ReliabilityQbpa:
    """Amplitudes on the fixed pictorial frame {Y, N, H, R}."""

    y: ComplexAmplitude
    n: ComplexAmplitude
    h: ComplexAmplitude
    r: ComplexAmplitude

    @classmethod
    def from_picture_fuzzy(cls, element: PictureFuzzyElement) -> "ReliabilityQbpa":
        """Phase-zero embedding with squared magnitudes equal to the fuzzy grades."""
        return cls(
            ComplexAmplitude(math.sqrt(element.membership)),
            ComplexAmplitude(math.sqrt(element.non_membership)),
            ComplexAmplitude(math.sqrt(element.hesitancy)),
            ComplexAmplitude(math.sqrt(element.refusal)),
        )

    def total_classic(self) -> float:
        return math.fsum(a.classic for a in (self.y, self.n, self.h, self.r))

    def as_dict(self) -> dict[str, ComplexAmplitude]:
        return {"Y": self.y, "N": self.n, "H": self.h, "R": self.r}


@dataclass(frozen=True)
class HesitancySplit:
    """Portions of the hesitancy mass credited to support and opposition.

    ``ratio_y`` and ``ratio_n`` are the real scaling ratios applied to the H
    amplitude; whatever they leave unclaimed stays behind as residual
    hesitancy.
    """

    to_y: ComplexAmplitude
    to_n: ComplexAmplitude
    ratio_y: float
    ratio_n: float

    @property
    def residual_ratio(self) -> float:
        return 1.0 - self.ratio_y - self.ratio_n


def dhdf(m2: ReliabilityQbpa) -> HesitancySplit:
    """Split the hesitancy amplitude between support and opposition.

    With w_Y, w_N the squared magnitudes of Y and N, the ratios are
    w_Y / (w_Y + w_N + 2 w_Y w_N) and the N analogue; each scales the H
    amplitude (phase preserved).  Undefined when hesitancy is present but
    both Y and N are empty.
    """
    w_y = m2.y.classic
    w_n = m2.n.classic
    if w_y == 0.0 and w_n == 0.0:
        if m2.h.magnitude > 0.0:
            raise ValueError("undistributable hesitancy: Y and N both carry zero mass")
        return HesitancySplit(m2.h.scaled(0.0), m2.h.scaled(0.0), 0.0, 0.0)
    denominator = w_y + w_n + 2.0 * w_y * w_n
    ratio_y = w_y / denominator
    ratio_n = w_n / denominator
    return HesitancySplit(m2.h.scaled(ratio_y), m2.h.scaled(ratio_n), ratio_y, ratio_n)


def pignistic_coefficients(m2: ReliabilityQbpa) -> tuple[float, float]:
    """Square-root transfer coefficients (c_Y, c_N) with c_Y^2 + c_N^2 = 1.

    c_Y = w_Y / hypot(w_Y, w_N) for w the squared magnitudes, so scaling two
    amplitude portions by the pair conserves their combined squared
    magnitude; this is what avoids the probability loss a plain proportional
    split would incur.
    """
    w_y = m2.y.classic
    w_n = m2.n.classic
    norm = math.hypot(w_y, w_n)
    if norm == 0.0:
        raise ValueError("undefined pignistic ratio: Y and N both carry zero mass")
    return w_y / norm, w_n / norm


@dataclass(frozen=True)
class RedistributedReliability:
    """Reliability body after the hesitancy transfer.

    ``zy`` and ``zn`` absorb their hesitancy portions, ``residual_h`` is the
    unclaimed remainder of H, and ``r`` passes through untouched.
    """

    zy: ComplexAmplitude
    zn: ComplexAmplitude
    residual_h: ComplexAmplitude
    r: ComplexAmplitude

    def as_dict(self) -> dict[str, ComplexAmplitude]:
        return {"Y": self.zy, "N": self.zn, "H": self.residual_h, "R": self.r}


def qpdr(
    m2: ReliabilityQbpa, to_y: ComplexAmplitude, to_n: ComplexAmplitude
) -> RedistributedReliability:
    """Add the split hesitancy portions back to Y and N.

    Each portion is scaled by its pignistic square-root coefficient and added
    (complex, in rectangular coordinates) to the original amplitude.  The
    portions must come from :func:`dhdf` on the same body.  With zero
    hesitancy the body passes through unchanged.
    """
    if m2.h.magnitude == 0.0:
        return RedistributedReliability(m2.y, m2.n, m2.h, m2.r)
    c_y, c_n = pignistic_coefficients(m2)
    zy = ComplexAmplitude.from_complex(to_y.scaled(c_y).to_complex() + m2.y.to_complex())
    zn = ComplexAmplitude.from_complex(to_n.scaled(c_n).to_complex() + m2.n.to_complex())
    taken = (to_y.magnitude + to_n.magnitude) / m2.h.magnitude
    residual = m2.h.scaled(max(1.0 - taken, 0.0))
    return RedistributedReliability(zy, zn, residual, m2.r)


def redistribute(m2: ReliabilityQbpa) -> RedistributedReliability:
    """Convenience chain: split hesitancy, then add the portions back."""
    split = dhdf(m2)
    return qpdr(m2, split.to_y, split.to_n)
