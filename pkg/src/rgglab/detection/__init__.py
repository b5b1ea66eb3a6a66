"""Signed motif statistics, their tests and threshold predictors."""

from .motifs import (
    signed_triangle_count,
    signed_triangle_count_bruteforce,
    signed_wedge_count,
    signed_wedge_count_bruteforce,
)
from .power import (
    PowerResult,
    TrialResult,
    power_experiment,
    run_trial,
    sample_cloud,
    trial_seeds,
)
from .theory import (
    Decision,
    MotifTest,
    MotifTheory,
    Statistic,
    TestOutcome,
    decide,
    make_test,
    triangle_theory,
    wedge_theory,
)
from .thresholds import ThresholdPrediction, predicted_thresholds, spectrum_at

__all__ = [
    "Decision",
    "MotifTest",
    "MotifTheory",
    "PowerResult",
    "Statistic",
    "TestOutcome",
    "ThresholdPrediction",
    "TrialResult",
    "decide",
    "make_test",
    "power_experiment",
    "predicted_thresholds",
    "run_trial",
    "sample_cloud",
    "signed_triangle_count",
    "signed_triangle_count_bruteforce",
    "signed_wedge_count",
    "signed_wedge_count_bruteforce",
    "spectrum_at",
    "trial_seeds",
    "triangle_theory",
    "wedge_theory",
]
