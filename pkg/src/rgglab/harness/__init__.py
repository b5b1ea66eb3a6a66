"""Experiment configs, sweeps, results files, fits and plots."""

from .config import (
    DistanceSection,
    ExperimentConfig,
    PosteriorSection,
    geometric_grid,
    load_config,
    override_config,
    parse_config,
)
from .fits import (
    ScaleFit,
    ThresholdFit,
    collect_curves,
    crossing_dimension,
    crossings_by_kernel,
    fit_scale_slope,
    fit_threshold,
    level_sensitivity,
)
from .plots import emit_plots, plot_name
from .records import (
    ExperimentRecord,
    format_csv,
    parse_csv,
    read_results,
    sort_records,
    write_results,
)
from .runner import Cell, SweepResult, build_cells, cell_seed, run_sweep, scaled_kernel

__all__ = [
    "Cell",
    "DistanceSection",
    "ExperimentConfig",
    "ExperimentRecord",
    "PosteriorSection",
    "ScaleFit",
    "SweepResult",
    "ThresholdFit",
    "build_cells",
    "cell_seed",
    "collect_curves",
    "crossing_dimension",
    "crossings_by_kernel",
    "emit_plots",
    "fit_scale_slope",
    "fit_threshold",
    "format_csv",
    "geometric_grid",
    "level_sensitivity",
    "load_config",
    "override_config",
    "parse_config",
    "parse_csv",
    "plot_name",
    "read_results",
    "run_sweep",
    "scaled_kernel",
    "sort_records",
    "write_results",
]
