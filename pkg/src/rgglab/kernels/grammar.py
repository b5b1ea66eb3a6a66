"""Parser for kernel strings such as ``linear(p=0.3,r=0.05)``.

Grammar::

    kernel  := name "(" [args] ")"
    args    := arg ("," arg)*
    arg     := number | key "=" number

Recognised forms::

    linear(p=P,r=R[,override=1])   gauss(r=R)   logistic(r=R)
    hard(tau=T)   const(p=P)   exp(gamma=G,beta=B)   poly(A0,A1,...,AL)
"""

import re

from pydantic import ValidationError

from ..core.errors import KernelDomainError
from .zoo import (
    Constant,
    ExpInner,
    HardThreshold,
    KernelSpec,
    Linear,
    Polynomial,
    ScaledCDF,
)

_CALL = re.compile(r"^\s*([a-z]+)\s*\((.*)\)\s*$")
_KEYED = re.compile(r"^\s*([a-z_]+)\s*=\s*(\S+)\s*$")

_KEYS: dict[str, set[str]] = {
    "linear": {"p", "r", "override"},
    "gauss": {"r"},
    "logistic": {"r"},
    "hard": {"tau"},
    "const": {"p"},
    "exp": {"gamma", "beta"},
}
_REQUIRED: dict[str, set[str]] = {
    "linear": {"p", "r"},
    "gauss": set(),
    "logistic": set(),
    "hard": set(),
    "const": {"p"},
    "exp": {"gamma", "beta"},
}


def _number(text: str, source: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise KernelDomainError(f"malformed number {text!r} in {source!r}") from None


def parse_kernel(text: str) -> KernelSpec:
    """Parse a kernel string into a :data:`KernelSpec`.

    Raises:
        KernelDomainError: On unknown names, unknown or missing keys,
            malformed numbers, or parameters the variant rejects.
    """
    match = _CALL.match(text)
    if match is None:
        raise KernelDomainError(f"malformed kernel string {text!r}")
    name, body = match.group(1), match.group(2).strip()
    parts = body.split(",") if body else []

    try:
        if name == "poly":
            if not parts:
                raise KernelDomainError(f"poly needs coefficients: {text!r}")
            coeffs = tuple(_number(part.strip(), text) for part in parts)
            return Polynomial(coeffs=coeffs)

        if name not in _KEYS:
            known = ", ".join(sorted([*_KEYS, "poly"]))
            raise KernelDomainError(f"unknown kernel {name!r} (known: {known})")
        args: dict[str, float] = {}
        for part in parts:
            keyed = _KEYED.match(part)
            if keyed is None:
                raise KernelDomainError(f"expected key=value, got {part!r} in {text!r}")
            key, value = keyed.group(1), keyed.group(2)
            if key not in _KEYS[name]:
                raise KernelDomainError(f"unknown key {key!r} for {name} in {text!r}")
            if key in args:
                raise KernelDomainError(f"duplicate key {key!r} in {text!r}")
            args[key] = _number(value, text)
        missing = _REQUIRED[name] - args.keys()
        if missing:
            raise KernelDomainError(
                f"missing {', '.join(sorted(missing))} for {name} in {text!r}"
            )

        if name == "linear":
            return Linear(
                p=args["p"], r=args["r"], override=bool(args.get("override", 0.0))
            )
        if name in ("gauss", "logistic"):
            return ScaledCDF(base=name, r=args.get("r", 1.0))
        if name == "hard":
            return HardThreshold(tau=args.get("tau", 0.0))
        if name == "const":
            return Constant(p=args["p"])
        return ExpInner(gamma=args["gamma"], beta=args["beta"])
    except ValidationError as e:
        problems = "; ".join(err["msg"] for err in e.errors())
        raise KernelDomainError(f"invalid kernel {text!r}: {problems}") from e
