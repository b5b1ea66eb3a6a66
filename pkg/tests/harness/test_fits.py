"""Tests for threshold-exponent fits."""

import math

import pytest

from rgglab.core.errors import InvalidParameterError, NoCrossingError
from rgglab.harness.fits import (
    crossing_dimension,
    crossings_by_kernel,
    fit_scale_slope,
    fit_threshold,
    level_sensitivity,
)
from rgglab.harness.records import ExperimentRecord

TRIALS = 100


def _power_records(
    ns: tuple[int, ...], exponent: float = 0.75, kernel: str = "gauss(r=1)"
) -> list[ExperimentRecord]:
    """Rejection rates 1 / (1 + (d / d*)^2) with d* = n^exponent."""
    records = []
    for n in ns:
        d_star = n**exponent
        for k in range(-12, 13):
            d = max(2, round(d_star * 2 ** (k / 4)))
            rate = 1.0 / (1.0 + (d / d_star) ** 2)
            hits = round(rate * TRIALS)
            records += [
                ExperimentRecord(
                    kind="detect",
                    kernel=kernel,
                    n=n,
                    d=d,
                    trial=t,
                    seed=t,
                    statistic="triangle",
                    value=0.0,
                    decision="rgg" if t < hits else "er",
                )
                for t in range(TRIALS)
            ]
    return records


def test_crossing_interpolates_in_log_d():
    """0.8 -> 0.2 between d=10 and d=100 crosses 0.5 at sqrt(1000)."""
    d = crossing_dimension([10, 100], [0.8, 0.2], [5, 5], 0.5, decreasing=True)
    assert d == pytest.approx(math.sqrt(1000))
    d = crossing_dimension([10, 100], [0.2, 0.8], [5, 5], 0.5, decreasing=False)
    assert d == pytest.approx(math.sqrt(1000))


def test_crossing_smooths_noise_monotonically():
    """A non-monotone blip is pooled before the crossing is read."""
    d = crossing_dimension(
        [10, 20, 40, 80], [0.9, 0.6, 0.7, 0.1], [1, 1, 1, 1], 0.5, decreasing=True
    )
    assert 40 < d < 80


def test_no_crossing():
    """A curve that never reaches the level has no crossing."""
    assert crossing_dimension([10, 100], [0.3, 0.1], [5, 5], 0.5, True) is None
    assert crossing_dimension([10], [0.9], [5], 0.5, True) is None


def test_fit_recovers_exponent():
    """Synthetic power curves with d* = n^{3/4}."""
    fit = fit_threshold(_power_records((100, 400, 1600, 6400)), resamples=50, seed=1)
    assert fit.kind == "detect"
    assert fit.exponent == pytest.approx(0.75, abs=0.02)
    assert fit.ci_low <= fit.exponent <= fit.ci_high
    assert set(fit.crossings) == {100, 400, 1600, 6400}
    assert fit.excluded == ()


def test_fit_needs_three_sizes():
    """Two crossings are not enough for an exponent."""
    with pytest.raises(NoCrossingError):
        fit_threshold(_power_records((100, 400)), resamples=10)


def test_fit_rejects_mixed_kernels():
    """One kernel per exponent."""
    records = _power_records((100, 400, 1600)) + _power_records(
        (100, 400, 1600), kernel="gauss(r=2)"
    )
    with pytest.raises(InvalidParameterError):
        fit_threshold(records, resamples=10)


def test_level_sensitivity():
    """Reachable levels fit; an unreachable one reports None."""
    records = _power_records((100, 400, 1600))
    fits = level_sensitivity(records, (0.3, 0.8, 0.999), resamples=10)
    assert fits[0.3] is not None
    assert fits[0.8] is not None
    assert fits[0.999] is None
    assert fits[0.8].exponent == pytest.approx(0.75, abs=0.03)


def test_crossings_by_kernel_and_scale_slope():
    """d* proportional to r^{3/2} gives slope 3/2."""
    records = []
    for r, label in [(0.5, "gauss(r=0.5)"), (1.0, "gauss(r=1)"), (2.0, "gauss(r=2)")]:
        exponent = 0.75 + 1.5 * math.log(r) / math.log(400)
        records += _power_records((400,), exponent=exponent, kernel=label)
    crossings = crossings_by_kernel(records, 400)
    assert set(crossings) == {"gauss(r=0.5)", "gauss(r=1)", "gauss(r=2)"}
    by_r = {float(k[len("gauss(r=") : -1]): v for k, v in crossings.items()}
    assert fit_scale_slope(by_r).slope == pytest.approx(1.5, abs=0.05)


def test_scale_slope_needs_two_points():
    """One scale has no slope."""
    with pytest.raises(NoCrossingError):
        fit_scale_slope({1.0: 10.0})
