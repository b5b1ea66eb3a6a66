"""Threshold-exponent regressions over sweep records."""

import logging
import math
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import isotonic_regression

from ..core.errors import InvalidParameterError, NoCrossingError
from ..core.rng import generator
from .records import ExperimentRecord

logger = logging.getLogger(__name__)

BOOTSTRAP_RESAMPLES = 1000
CI_LEVEL = 0.95
SENSITIVITY_LEVELS = (0.3, 0.5, 0.8)

# kind -> (primary statistic, metric is a rejection rate that falls with d)
PRIMARY = {
    "detect": ("triangle", True),
    "sweep": ("triangle", True),
    "distance": ("wedge", True),
    "recover": ("relative_mse", False),
}


@dataclass(frozen=True)
class ThresholdFit:
    """``log d_hat(n) = intercept + exponent log n`` with a bootstrap CI."""

    kind: str
    level: float
    crossings: dict[int, float]
    excluded: tuple[int, ...]
    exponent: float
    intercept: float
    ci_level: float
    ci_low: float
    ci_high: float
    resamples: int = field(default=BOOTSTRAP_RESAMPLES)


@dataclass(frozen=True)
class ScaleFit:
    """``log d_hat = intercept + slope log r`` across kernel scales."""

    slope: float
    intercept: float
    points: dict[float, float]


# (kernel, n) -> d -> per-trial metric values
Curves = dict[tuple[str, int], dict[int, np.ndarray]]


def collect_curves(
    records: Iterable[ExperimentRecord], kind: str | None = None
) -> tuple[str, Curves]:
    """Group the primary metric of each trial by ``(kernel, n)`` and ``d``."""
    grouped: dict[tuple[str, int], dict[int, list[float]]] = defaultdict(
        lambda: defaultdict(list)
    )
    kinds = set()
    for r in records:
        if r.failed or r.kind not in PRIMARY:
            continue
        statistic, is_rate = PRIMARY[r.kind]
        if r.statistic != statistic:
            continue
        kinds.add(r.kind)
        value = float(r.decision == "rgg") if is_rate else r.value
        grouped[(r.kernel, r.n)][r.d].append(value)
    if kind is None:
        if len(kinds) > 1:
            raise InvalidParameterError(f"records mix kinds {sorted(kinds)}")
        kind = kinds.pop() if kinds else "detect"
    curves = {
        key: {d: np.asarray(v) for d, v in sorted(by_d.items())}
        for key, by_d in sorted(grouped.items())
    }
    return kind, curves


def crossing_dimension(
    ds: Sequence[int],
    means: Sequence[float],
    counts: Sequence[int],
    level: float,
    decreasing: bool,
) -> float | None:
    """Where the isotonic fit of ``means`` over ``log d`` crosses ``level``.

    Interpolates linearly in ``log d`` between the bracketing grid points and
    returns ``None`` when the fitted curve never crosses.
    """
    if len(ds) < 2:
        return None
    fitted = isotonic_regression(
        np.asarray(means, dtype=np.float64),
        weights=np.asarray(counts, dtype=np.float64),
        increasing=not decreasing,
    ).x
    sign = 1.0 if decreasing else -1.0
    g = sign * fitted
    target = sign * level
    for i in range(len(ds) - 1):
        if g[i] >= target > g[i + 1]:
            frac = (g[i] - target) / (g[i] - g[i + 1])
            lo, hi = math.log(ds[i]), math.log(ds[i + 1])
            return math.exp(lo + frac * (hi - lo))
    return None


def _crossings(
    curves: Curves, level: float, decreasing: bool, kernel: str | None = None
) -> dict[tuple[str, int], float | None]:
    out = {}
    for key, by_d in curves.items():
        if kernel is not None and key[0] != kernel:
            continue
        ds = list(by_d)
        out[key] = crossing_dimension(
            ds,
            [float(v.mean()) for v in by_d.values()],
            [v.size for v in by_d.values()],
            level,
            decreasing,
        )
    return out


def _slope(points: Mapping[float, float]) -> tuple[float, float]:
    x = np.log(np.array(list(points), dtype=np.float64))
    y = np.log(np.array(list(points.values()), dtype=np.float64))
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def fit_threshold(
    records: Iterable[ExperimentRecord],
    power_level: float = 0.5,
    *,
    kind: str | None = None,
    resamples: int = BOOTSTRAP_RESAMPLES,
    seed: int = 0,
) -> ThresholdFit:
    """Fit the exponent of the crossing dimension in ``n``.

    Each ``n`` contributes the ``d`` where its monotone-smoothed curve crosses
    ``power_level`` (power for detection kinds, relative mse for recovery).
    ``n`` values without a bracketing crossing are excluded. The CI resamples
    trials within every cell.

    Raises:
        NoCrossingError: If fewer than three ``n`` values have a crossing.
        InvalidParameterError: If the records hold more than one kernel.
    """
    records = list(records)
    kind, curves = collect_curves(records, kind)
    kernels = {key[0] for key in curves}
    if len(kernels) > 1:
        raise InvalidParameterError(f"records mix kernels {sorted(kernels)}")
    decreasing = PRIMARY.get(kind, ("", True))[1]
    found = _crossings(curves, power_level, decreasing)
    crossings = {n: d for (_, n), d in found.items() if d is not None}
    excluded = tuple(sorted(n for (_, n), d in found.items() if d is None))
    for n in excluded:
        logger.warning(f"No {kind} crossing of level {power_level} at n={n}")
    if len(crossings) < 3:
        raise NoCrossingError(
            f"need crossings at >= 3 values of n, found {len(crossings)} "
            f"(excluded n={list(excluded)})"
        )
    exponent, intercept = _slope(crossings)

    rng = generator(seed, len(records))
    slopes = []
    for _ in range(resamples):
        boot: Curves = {
            key: {d: rng.choice(v, size=v.size) for d, v in by_d.items()}
            for key, by_d in curves.items()
        }
        points = {
            n: d
            for (_, n), d in _crossings(boot, power_level, decreasing).items()
            if d is not None
        }
        if len(points) >= 3:
            slopes.append(_slope(points)[0])
    if slopes:
        tail = 100 * (1 - CI_LEVEL) / 2
        lo, hi = np.percentile(slopes, [tail, 100 - tail])
    else:
        lo = hi = exponent
    return ThresholdFit(
        kind=kind,
        level=power_level,
        crossings=crossings,
        excluded=excluded,
        exponent=exponent,
        intercept=intercept,
        ci_level=CI_LEVEL,
        ci_low=min(float(lo), exponent),
        ci_high=max(float(hi), exponent),
        resamples=resamples,
    )


def level_sensitivity(
    records: Iterable[ExperimentRecord],
    levels: Sequence[float] = SENSITIVITY_LEVELS,
    *,
    kind: str | None = None,
    resamples: int = BOOTSTRAP_RESAMPLES,
    seed: int = 0,
) -> dict[float, ThresholdFit | None]:
    """:func:`fit_threshold` at several levels; ``None`` where the fit aborts."""
    records = list(records)
    out: dict[float, ThresholdFit | None] = {}
    for level in levels:
        try:
            out[level] = fit_threshold(
                records, level, kind=kind, resamples=resamples, seed=seed
            )
        except NoCrossingError as exc:
            logger.info(f"Level {level}: {exc}")
            out[level] = None
    return out


def crossings_by_kernel(
    records: Iterable[ExperimentRecord], n: int, level: float = 0.5
) -> dict[str, float]:
    """Crossing dimension of every kernel at one ``n``."""
    kind, curves = collect_curves(records)
    decreasing = PRIMARY.get(kind, ("", True))[1]
    return {
        kernel: d
        for (kernel, size), d in _crossings(curves, level, decreasing).items()
        if size == n and d is not None
    }


def fit_scale_slope(crossings_by_r: Mapping[float, float]) -> ScaleFit:
    """Least squares of ``log d_hat`` on ``log r``.

    Raises:
        NoCrossingError: If fewer than two scales have a crossing.
    """
    if len(crossings_by_r) < 2:
        raise NoCrossingError(
            f"need crossings at >= 2 scales, found {len(crossings_by_r)}"
        )
    slope, intercept = _slope(crossings_by_r)
    return ScaleFit(slope=slope, intercept=intercept, points=dict(crossings_by_r))
