"""Gegenbauer spectra, trace powers and multigraph moment oracles."""

from .gegenbauer import (
    gegenbauer_at_one,
    gegenbauer_eval,
    harmonic_dim,
    log_harmonic_dim,
    normalized_gegenbauer_table,
)
from .spectrum import (
    KernelSpectrum,
    MonteCarloEstimate,
    SpectrumRow,
    eta_profile,
    gegenbauer_coefficients,
    rodrigues_coefficient,
    trace_power,
    trace_power_mc,
    trace_tail_bound,
)
from .wick import (
    Multigraph,
    small_multigraphs,
    spherical_exact,
    spherical_multigraph_expectation,
    wick_exact,
    wick_multigraph_expectation,
)

__all__ = [
    "KernelSpectrum",
    "MonteCarloEstimate",
    "Multigraph",
    "SpectrumRow",
    "eta_profile",
    "gegenbauer_at_one",
    "gegenbauer_coefficients",
    "gegenbauer_eval",
    "harmonic_dim",
    "log_harmonic_dim",
    "normalized_gegenbauer_table",
    "rodrigues_coefficient",
    "small_multigraphs",
    "spherical_exact",
    "spherical_multigraph_expectation",
    "trace_power",
    "trace_power_mc",
    "trace_tail_bound",
    "wick_exact",
    "wick_multigraph_expectation",
]
