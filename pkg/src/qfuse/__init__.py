"""Complex-amplitude evidence fusion toolkit.

Evidence bodies assign polar-form complex amplitudes to subsets of a finite
frame; the pipeline reweights each body by the time gaps between its
propositions, redistributes the hesitancy of a pictorial reliability
judgment, fuses body and reliability into one distribution, and combines
the per-evidence results under urgency weighting.  All values are immutable
and every operation is a pure function, so everything here is safe to share
across threads.
"""

from .amplitude import ComplexAmplitude, ZERO_AMPLITUDE, canonical_phase
from .fusion import FusedBody, SubsetPartition, Tdqbf, combine_tdqbf, multisubset_partition
from .qbpa import (
    DempsterResult,
    FocalSet,
    Frame,
    Qbpa,
    ValidationReport,
    dempster_combine,
    normalize,
    self_combine,
    validate,
)
from .reliability import (
    HesitancySplit,
    PictureFuzzyElement,
    RedistributedReliability,
    ReliabilityQbpa,
    RELIABILITY_LABELS,
    dhdf,
    pignistic_coefficients,
    qpdr,
    redistribute,
)
from .time_rule import (
    ConnectionGrades,
    EXPLICIT,
    IntervalPolicy,
    PER_EVIDENCE_MINMAX,
    TimedEvidence,
    TimedProposition,
    apply_time_rule,
    classify_gap,
    fit_connection_grades,
    pair_bounds,
    time_weights,
)
from .urgency import FinalDistribution, UrgencyGrade, URGENCY_LABELS, grade_label, mid, nor, xg_fuse
from .pipeline import (
    EvidenceRecord,
    EvidenceTrace,
    ParseError,
    PipelineConfig,
    RunReport,
    StageError,
    ingest,
    run_baseline,
    run_pipeline,
)
from .report import emit, polar

__all__ = [name for name in dir() if not name.startswith("_")]

__version__ = "0.1.0"
