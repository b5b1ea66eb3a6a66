"""Experiment config files.

Line-oriented ``key = value`` pairs under ``[section]`` headers; ``#`` starts
a comment. Keys before the first header belong to ``[experiment]``::

    [experiment]
    kind = detect
    kernel = gauss(r=1)
    n = 128, 256
    d_geometric = 8:4096:1.4142135623730951
    trials = 200
    seed = 7

    [distance]
    gamma = 0.5
    beta = 1

Every problem in a file is reported at once by :class:`ConfigError`.
"""

import logging
import math
from collections.abc import Callable
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..core.errors import ConfigError, KernelDomainError
from ..geometry.points import Geometry
from ..kernels.grammar import parse_kernel
from ..kernels.zoo import KernelSpec

logger = logging.getLogger(__name__)

ExperimentKind = Literal[
    "detect", "recover", "posterior", "distance", "spectrum", "sweep"
]

_NEEDS_KERNEL = {"detect", "recover", "posterior", "spectrum", "sweep"}
_NEEDS_N = {"detect", "recover", "posterior", "distance", "sweep"}


class DistanceSection(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    gamma: float = Field(default=0.5, gt=0.0, lt=1.0)
    beta: float = Field(default=1.0, gt=0.0)


class PosteriorSection(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    ensemble: int = Field(default=100_000, ge=2, le=10**7)
    replicates: int = Field(default=20, ge=1)


class ExperimentConfig(BaseModel):
    """A validated experiment.

    ``d`` is always an explicit sorted list; a ``d_geometric`` spec is
    expanded during parsing.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    kind: ExperimentKind
    kernel: str | None = None
    n: list[int] = Field(default_factory=list)
    d: list[int] = Field(min_length=1)
    trials: int = Field(default=200, ge=1)
    alpha: float = Field(default=0.01, gt=0.0, le=0.5)
    seed: int
    workers: int = Field(default=1, ge=1)
    out: Path | None = None
    power_level: float = Field(default=0.5, gt=0.0, lt=1.0)
    empirical_p: bool = False
    geometry: Geometry = Geometry.SPHERE_UNIFORM
    r: list[float] | None = None
    distance: DistanceSection = DistanceSection()
    posterior: PosteriorSection = PosteriorSection()

    @model_validator(mode="after")
    def _check_kind(self) -> "ExperimentConfig":
        if self.kind in _NEEDS_KERNEL and self.kernel is None:
            raise ValueError(f"kind={self.kind} needs a kernel")
        if self.kind in _NEEDS_N and not self.n:
            raise ValueError(f"kind={self.kind} needs at least one n")
        if self.kind == "sweep" and not self.r:
            raise ValueError("kind=sweep needs a list of kernel scales r")
        if any(v < 1 for v in self.n + self.d):
            raise ValueError("n and d must be positive")
        return self

    @property
    def kernel_spec(self) -> KernelSpec:
        if self.kernel is None:
            raise ValueError(f"kind={self.kind} has no kernel")
        return parse_kernel(self.kernel)


def _int(text: str) -> int:
    return int(text.strip())


def _float(text: str) -> float:
    value = float(text.strip())
    if not math.isfinite(value):
        raise ValueError(f"{text!r} is not finite")
    return value


def _bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in {"1", "true", "yes", "on"}:
        return True
    if lowered in {"0", "false", "no", "off"}:
        return False
    raise ValueError(f"{text!r} is not a boolean")


def _list(item: Callable[[str], Any]) -> Callable[[str], list[Any]]:
    def convert(text: str) -> list[Any]:
        values = [item(part) for part in text.split(",") if part.strip()]
        if not values:
            raise ValueError("empty list")
        return values

    return convert


def _unquote(text: str) -> str:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in {'"', "'"}:
        return text[1:-1]
    return text


def _kernel(text: str) -> str:
    return parse_kernel(_unquote(text)).kernel_id


def geometric_grid(spec: str) -> list[int]:
    """Expand ``start:stop:ratio`` into the rounded geometric grid."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected start:stop:ratio, got {spec!r}")
    start, stop, ratio = (_float(p) for p in parts)
    if start < 1 or stop < start or ratio <= 1.0:
        raise ValueError(f"need 1 <= start <= stop and ratio > 1, got {spec!r}")
    count = int(math.floor(math.log(stop / start) / math.log(ratio) + 1e-9)) + 1
    return sorted({round(start * ratio**k) for k in range(count)})


_CONVERTERS: dict[str, dict[str, Callable[[str], Any]]] = {
    "experiment": {
        "kind": str.strip,
        "kernel": _kernel,
        "n": _list(_int),
        "d": _list(_int),
        "d_geometric": geometric_grid,
        "trials": _int,
        "alpha": _float,
        "seed": _int,
        "workers": _int,
        "out": lambda text: Path(text.strip()),
        "power_level": _float,
        "empirical_p": _bool,
        "geometry": str.strip,
        "r": _list(_float),
    },
    "distance": {"gamma": _float, "beta": _float},
    "posterior": {"ensemble": _int, "replicates": _int},
    "recover": {},
}


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate an experiment config.

    Raises:
        ConfigError: Listing every unknown key, malformed value or kernel
            string, missing key and failed constraint with its line number.
    """
    problems: list[tuple[int, str]] = []
    values: dict[str, dict[str, Any]] = {name: {} for name in _CONVERTERS}
    lines: dict[tuple[str, str], int] = {}
    section = "experiment"

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip()
            if section not in _CONVERTERS:
                problems.append((lineno, f"unknown section [{section}]"))
            continue
        if "=" not in line:
            problems.append((lineno, f"expected 'key = value', got {line!r}"))
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        converters = _CONVERTERS.get(section)
        if converters is None:
            continue
        if key not in converters:
            problems.append((lineno, f"unknown key {key!r} in [{section}]"))
            continue
        if (section, key) in lines:
            problems.append((lineno, f"duplicate key {key!r} in [{section}]"))
            continue
        lines[(section, key)] = lineno
        try:
            values[section][key] = converters[key](value)
        except KernelDomainError as exc:
            problems.append((lineno, f"malformed kernel string: {exc}"))
        except ValueError as exc:
            problems.append((lineno, f"bad value for {key!r}: {exc}"))

    experiment = values["experiment"]
    if "d_geometric" in experiment:
        grid = experiment.pop("d_geometric")
        if "d" in experiment:
            line = lines[("experiment", "d_geometric")]
            problems.append((line, "d and d_geometric exclude each other"))
        else:
            experiment["d"] = grid
            lines[("experiment", "d")] = lines[("experiment", "d_geometric")]
    if "seed" not in experiment and ("experiment", "seed") not in lines:
        problems.append((0, "missing required key 'seed'"))

    data = dict(experiment)
    data["distance"] = values["distance"]
    data["posterior"] = values["posterior"]
    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        for error in exc.errors():
            loc = [str(part) for part in error["loc"]]
            if loc and loc[0] == "seed" and error["type"] == "missing":
                continue
            if len(loc) >= 2 and loc[0] in {"distance", "posterior"}:
                line = lines.get((loc[0], loc[1]), 0)
            else:
                line = lines.get(("experiment", loc[0]), 0) if loc else 0
            where = ".".join(loc) or "config"
            problems.append((line, f"{where}: {error['msg']}"))
        raise ConfigError(problems) from None
    if problems:
        raise ConfigError(problems)
    logger.debug(f"Parsed {config.kind} config with {len(config.d)} dimensions")
    return config


def load_config(path: Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"))


def override_config(
    config: ExperimentConfig | None, updates: dict[str, Any]
) -> ExperimentConfig:
    """Apply command-line values on top of a parsed config and re-validate.

    ``None`` values in ``updates`` leave the config untouched. Without a base
    config the updates alone must form a complete experiment.

    Raises:
        ConfigError: If the merged values fail validation.
    """
    data: dict[str, Any] = config.model_dump() if config is not None else {}
    problems: list[tuple[int, str]] = []
    for key, value in updates.items():
        if value is None:
            continue
        if key == "kernel":
            try:
                value = _kernel(value)
            except (KernelDomainError, ValueError) as exc:
                problems.append((0, f"malformed kernel string: {exc}"))
                continue
        data[key] = value
    if "seed" not in data:
        problems.append((0, "missing required key 'seed'"))
    try:
        merged = ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        for error in exc.errors():
            loc = ".".join(str(part) for part in error["loc"]) or "config"
            if loc == "seed" and error["type"] == "missing":
                continue
            problems.append((0, f"{loc}: {error['msg']}"))
        raise ConfigError(problems) from None
    if problems:
        raise ConfigError(problems)
    return merged
