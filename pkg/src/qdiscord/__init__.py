"""Quantum discord, entanglement, and entropy measures for two-qubit states,
plus the boundary analysis of the discord-entanglement and discord-entropy
regions."""

from .bounds import (
    BoundaryCurve,
    NoSignChange,
    RegionReport,
    SampleBatch,
    entropy_upper,
    find_crossover,
    horn_crossovers,
    horn_lower,
    horn_upper,
    sample_near_boundary,
    sample_random,
    sweep_family,
    verify_bounds,
)
from .measures import (
    AnalyticDiscordTrace,
    CorrelationRecord,
    OptimizerConfig,
    OptimizerDidNotConverge,
    UnsupportedFamily,
    apply_measurement,
    classical_correlation,
    concurrence,
    concurrence_analytic,
    conditional_information,
    discord_analytic,
    discord_numeric,
    eof,
    eof_from_concurrence,
    measurement_pair,
    mutual_information,
    spin_flip_spectrum,
)
from .states import (
    Family,
    NotHermitian,
    NotNormalized,
    NotPositive,
    ParamOutOfRange,
    SchmidtForm,
    StateError,
    TraceNotOne,
    binary_entropy,
    linear_entropy,
    make_family,
    partial_trace,
    random_pure_state,
    random_state,
    schmidt,
    spectrum,
    validate_state,
    von_neumann_entropy,
)

__all__ = [name for name in dir() if not name.startswith("_")]
