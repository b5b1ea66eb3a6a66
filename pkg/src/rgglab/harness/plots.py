"""SVG line charts of sweep records."""

import logging
import math
import re
from collections import defaultdict
from collections.abc import Iterable
from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .records import ExperimentRecord

logger = logging.getLogger(__name__)

# kind -> statistics drawn, as (statistic, metric is a rejection rate)
PLOTTED = {
    "detect": (("triangle", True), ("triangle_null", True)),
    "sweep": (("triangle", True), ("triangle_null", True)),
    "distance": (("wedge", True), ("triangle", True)),
    "recover": (("relative_mse", False),),
}
_YLABEL = {True: "rejection rate", False: "relative mse"}
_SVG_METADATA = {"Date": None}


def plot_name(kind: str, kernel: str, n: int) -> str:
    slug = re.sub(r"[^A-Za-z0-9.=-]+", "_", kernel).strip("_")
    return f"{kind}_{slug}_n{n}.svg"


def _save(fig: Figure, path: Path) -> Path:
    fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    return path


def _empty_plot(out_dir: Path) -> Path:
    fig = Figure(figsize=(5, 3.5))
    ax = fig.add_subplot()
    ax.set_xlabel("d")
    ax.set_ylabel("value")
    ax.text(0.5, 0.5, "no data", ha="center", va="center", transform=ax.transAxes)
    return _save(fig, out_dir / "no_data.svg")


def emit_plots(records: Iterable[ExperimentRecord], out_dir: Path) -> list[Path]:
    """One SVG per ``(kind, kernel, n)`` of metric against ``d``.

    Rejection rates are plotted for the detection kinds, relative mse for
    recovery, each with one-standard-error bars. Without plottable records a
    single ``no_data.svg`` is written.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    series: dict[tuple[str, str, int], dict[str, dict[int, list[float]]]] = (
        defaultdict(lambda: defaultdict(lambda: defaultdict(list)))
    )
    for r in records:
        if r.failed or r.kind not in PLOTTED:
            continue
        for statistic, is_rate in PLOTTED[r.kind]:
            if r.statistic == statistic:
                value = float(r.decision == "rgg") if is_rate else r.value
                series[(r.kind, r.kernel, r.n)][statistic][r.d].append(value)
    if not series:
        return [_empty_plot(out_dir)]

    paths = []
    for (kind, kernel, n), by_stat in sorted(series.items()):
        fig = Figure(figsize=(5, 3.5))
        ax = fig.add_subplot()
        is_rate = PLOTTED[kind][0][1]
        for statistic, by_d in sorted(by_stat.items()):
            ds = sorted(by_d)
            means = np.array([np.mean(by_d[d]) for d in ds])
            ses = np.array(
                [
                    np.std(by_d[d], ddof=1) / math.sqrt(len(by_d[d]))
                    if len(by_d[d]) > 1
                    else 0.0
                    for d in ds
                ]
            )
            ax.errorbar(ds, means, yerr=ses, marker="o", capsize=2, label=statistic)
        ax.set_xscale("log")
        ax.set_xlabel("d")
        ax.set_ylabel(_YLABEL[is_rate])
        ax.set_title(f"{kernel}, n={n}", fontsize=9)
        ax.legend(fontsize=8)
        fig.tight_layout()
        paths.append(_save(fig, out_dir / plot_name(kind, kernel, n)))
    logger.info(f"Wrote {len(paths)} plots to {out_dir}")
    return paths
