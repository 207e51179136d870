"""Exact certificates separating Riemann and Lebesgue integration on [0, 1]."""

from __future__ import annotations

from .convergence import (
    ConvergenceVerdict,
    cauchy_modulus,
    dominated_check,
    in_measure_profile,
    l1_limit_defect,
    pairwise_l1_distance,
    pointwise_profile,
)
from .counterexamples import (
    FatCoverConfig,
    SequenceKind,
    enumerate_rationals,
    fat_interval,
    fat_union,
    rational_index,
    sequence_term,
)
from .darboux import (
    DarbouxReport,
    FatCoverIndicator,
    Partition,
    RationalsIndicator,
    StepFn,
    darboux_sums,
    riemann_gap_certificate,
    robustness_probe,
)
from .exact_core import (
    Enclosure,
    Interval,
    IntervalSet,
    QuadraticIrrational,
    irrational_in,
    measure,
    normalize,
    set_op,
    simplest_rational_in,
)
from .fourier import (
    ComplexEnclosure,
    TransformProbe,
    decay_bound,
    improper_l2_profile,
    plancherel_probe,
    riemann_defect_summary,
    transform_value,
)
from .functions import AeClass, KurtzTail, StepFunction, linear_combine, seminorm_l1

__version__ = "0.1.0"

__all__ = [
    "AeClass", "ComplexEnclosure", "ConvergenceVerdict", "DarbouxReport", "Enclosure",
    "FatCoverConfig", "FatCoverIndicator", "Interval", "IntervalSet", "KurtzTail", "Partition",
    "QuadraticIrrational", "RationalsIndicator", "SequenceKind", "StepFn", "StepFunction",
    "TransformProbe", "cauchy_modulus", "darboux_sums", "decay_bound", "dominated_check",
    "enumerate_rationals", "fat_interval", "fat_union", "improper_l2_profile", "in_measure_profile",
    "irrational_in", "l1_limit_defect", "linear_combine", "measure", "normalize",
    "pairwise_l1_distance", "plancherel_probe", "pointwise_profile", "rational_index",
    "riemann_defect_summary", "riemann_gap_certificate", "robustness_probe", "seminorm_l1",
    "sequence_term", "set_op", "simplest_rational_in", "transform_value",
]
