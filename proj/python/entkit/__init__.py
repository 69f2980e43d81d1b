"""Two- and three-party entanglement toolkit: states, measures, channels, cloning and protocols."""

from entkit._core import (
    DomainError,
    cdc,
    cdc_montecarlo,
    concurrence,
    distilled_nonoptimal,
    distilled_optimal,
    entropy_difference,
    figure,
    figure_ids,
    m_value,
    measure,
    measure_kinds,
    n_value,
    negativity,
    partial_trace,
    partial_transpose,
    pure_state,
    qutrit_cloned_pair,
    secret_share,
    singlet_fraction,
    state,
    teleport,
)

__all__ = [
    "DomainError",
    "cdc",
    "cdc_montecarlo",
    "concurrence",
    "distilled_nonoptimal",
    "distilled_optimal",
    "entropy_difference",
    "figure",
    "figure_ids",
    "m_value",
    "measure",
    "measure_kinds",
    "n_value",
    "negativity",
    "partial_trace",
    "partial_transpose",
    "pure_state",
    "qutrit_cloned_pair",
    "secret_share",
    "singlet_fraction",
    "state",
    "teleport",
]
