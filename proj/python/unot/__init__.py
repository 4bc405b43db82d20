"""Fidelity and deviation of approximate universal-NOT circuits."""

from ._core import (
    Axis,
    ConsistencyError,
    FidelityStats,
    InvalidInput,
    OneQubitGate,
    avg_fidelity_3q_unitary,
    avg_fidelity_unitary,
    compensated_stats,
    covariance_pair,
    ladder_stats,
    ladder_unitary,
    mc_stats,
    optimal_unot_stats,
    region_membership,
    rotation_from_gate,
    rotation_from_unitary,
    run_experiment,
    run_feedback,
    sample_unitary,
    skew_from_axis,
    stats_affine_channel,
    stats_one_qubit,
    stats_stochastic_map,
    trace_R,
    trace_R_squared,
    unitary_from_gate,
    weights_from_preps,
)

__all__ = [name for name in dir() if not name.startswith("_")]
