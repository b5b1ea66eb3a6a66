"""Experiment records and the results CSV.

Columns: ``kind, kernel, n, d, trial, seed, statistic, value, decision,
error`` and, unless excluded, ``seconds``. Floats are written with 17
significant digits so parsing reproduces them exactly; rows are sorted by
``(kind, kernel, n, d, trial, statistic)``.
"""

import csv
import io
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

from ..core.errors import InvalidParameterError

logger = logging.getLogger(__name__)

KEY_COLUMNS = ("kind", "kernel", "n", "d", "trial", "statistic")
COLUMNS = (
    "kind",
    "kernel",
    "n",
    "d",
    "trial",
    "seed",
    "statistic",
    "value",
    "decision",
    "error",
)
TIMING_COLUMNS = (*KEY_COLUMNS, "seconds")


@dataclass(frozen=True)
class ExperimentRecord:
    """One value produced by one trial of one grid cell.

    ``seconds`` is excluded from equality: it is the only field that differs
    between reruns.
    """

    kind: str
    kernel: str
    n: int
    d: int
    trial: int
    seed: int
    statistic: str
    value: float
    decision: str = ""
    error: str = ""
    seconds: float = field(default=0.0, compare=False)

    @property
    def key(self) -> tuple[str, str, int, int, int, str]:
        return (self.kind, self.kernel, self.n, self.d, self.trial, self.statistic)

    @property
    def failed(self) -> bool:
        return bool(self.error)


def format_float(value: float) -> str:
    return format(value, ".17g")


def sort_records(records: Iterable[ExperimentRecord]) -> list[ExperimentRecord]:
    """Canonical order, rejecting duplicate keys."""
    ordered = sorted(records, key=lambda r: r.key)
    for first, second in zip(ordered, ordered[1:]):
        if first.key == second.key:
            raise InvalidParameterError(f"duplicate record key {first.key}")
    return ordered


def _row(record: ExperimentRecord, with_seconds: bool) -> list[str]:
    row = [
        record.kind,
        record.kernel,
        str(record.n),
        str(record.d),
        str(record.trial),
        str(record.seed),
        record.statistic,
        format_float(record.value),
        record.decision,
        record.error,
    ]
    if with_seconds:
        row.append(format_float(record.seconds))
    return row


def format_csv(records: Iterable[ExperimentRecord], with_seconds: bool = True) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([*COLUMNS, "seconds"] if with_seconds else COLUMNS)
    for record in sort_records(records):
        writer.writerow(_row(record, with_seconds))
    return buffer.getvalue()


def parse_csv(text: str) -> list[ExperimentRecord]:
    """Inverse of :func:`format_csv`; ``seconds`` defaults to 0 when absent.

    Raises:
        InvalidParameterError: On a header mismatch or a malformed row.
    """
    reader = csv.DictReader(io.StringIO(text))
    header = tuple(reader.fieldnames or ())
    if header[: len(COLUMNS)] != COLUMNS:
        raise InvalidParameterError(f"unexpected results header {header}")
    records = []
    for lineno, row in enumerate(reader, start=2):
        try:
            records.append(
                ExperimentRecord(
                    kind=row["kind"],
                    kernel=row["kernel"],
                    n=int(row["n"]),
                    d=int(row["d"]),
                    trial=int(row["trial"]),
                    seed=int(row["seed"]),
                    statistic=row["statistic"],
                    value=float(row["value"]),
                    decision=row["decision"],
                    error=row["error"],
                    seconds=float(row.get("seconds") or 0.0),
                )
            )
        except (TypeError, ValueError) as exc:
            raise InvalidParameterError(f"results line {lineno}: {exc}") from None
    return records


def format_timings(records: Iterable[ExperimentRecord]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(TIMING_COLUMNS)
    for r in sort_records(records):
        writer.writerow([*(str(part) for part in r.key), format_float(r.seconds)])
    return buffer.getvalue()


def write_results(records: list[ExperimentRecord], out_dir: Path) -> Path:
    """Write ``results.csv`` (deterministic) and ``timings.csv`` to ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    results = out_dir / "results.csv"
    results.write_text(format_csv(records, with_seconds=False), encoding="utf-8")
    (out_dir / "timings.csv").write_text(format_timings(records), encoding="utf-8")
    logger.info(f"Wrote {len(records)} records to {results}")
    return results


def read_results(path: Path) -> list[ExperimentRecord]:
    return parse_csv(Path(path).read_text(encoding="utf-8"))
