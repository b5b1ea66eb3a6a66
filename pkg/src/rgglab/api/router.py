"""Read-only computations over HTTP."""

import logging
from typing import Annotated

from fastapi import APIRouter, Depends, HTTPException, Query
from pydantic import BaseModel, Field

from ..core.errors import InvalidParameterError, KernelDomainError
from ..detection.power import MIN_TRIALS, power_experiment
from ..detection.thresholds import predicted_thresholds, spectrum_at
from ..kernels.grammar import parse_kernel
from ..kernels.zoo import KernelSpec
from .dependencies import ApiSettingsDep, SettingsDep, check_api_enabled

logger = logging.getLogger(__name__)

router = APIRouter(
    prefix="/rgglab", tags=["rgglab"], dependencies=[Depends(check_api_enabled)]
)


class SpectrumEntry(BaseModel):
    k: int
    alpha: float
    eigenvalue: float
    multiplicity: float
    cumulative_cube: float
    scaled: float


class SpectrumResponse(BaseModel):
    kernel: str
    d: int
    p: float
    rows: list[SpectrumEntry]


class ThresholdResponse(BaseModel):
    kernel: str
    n: int
    d_test: float | None
    d_test_closed: float | None
    d_est: float | None
    k0: int | None
    d_test_general: float | None
    d_test_linear: float | None


class DetectRequest(BaseModel):
    kernel: str
    n: int = Field(ge=3)
    d: int = Field(ge=1)
    trials: int = Field(default=MIN_TRIALS, ge=MIN_TRIALS)
    alpha: float = Field(default=0.01, gt=0.0, le=0.5)
    seed: int


class DetectResponse(BaseModel):
    kernel: str
    n: int
    d: int
    p: float
    threshold: float
    power: float
    power_se: float
    fpr: float
    fpr_se: float


def _kernel(text: str) -> KernelSpec:
    try:
        return parse_kernel(text)
    except KernelDomainError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e


@router.get("/spectrum")
def spectrum(
    kernel: Annotated[str, Query(description='e.g. "gauss(r=1)"')],
    d: Annotated[int, Query(ge=1)],
    settings: SettingsDep,
) -> SpectrumResponse:
    spec_kernel = _kernel(kernel)
    try:
        spec = spectrum_at(spec_kernel, d, settings.spectrum, settings.quadrature)
    except InvalidParameterError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    return SpectrumResponse(
        kernel=spec_kernel.kernel_id,
        d=d,
        p=spec.p,
        rows=[
            SpectrumEntry(
                k=row.k,
                alpha=row.alpha,
                eigenvalue=row.eigenvalue,
                multiplicity=float(row.multiplicity),
                cumulative_cube=row.cumulative_cube,
                scaled=row.scaled,
            )
            for row in spec.table()
        ],
    )


@router.get("/thresholds")
def thresholds(
    kernel: str,
    n: Annotated[int, Query(ge=3)],
    settings: SettingsDep,
    api: ApiSettingsDep,
) -> ThresholdResponse:
    if n > api.max_n:
        raise HTTPException(status_code=422, detail=f"n must be <= {api.max_n}")
    spec_kernel = _kernel(kernel)
    pred = predicted_thresholds(
        spec_kernel,
        n,
        spectrum_settings=settings.spectrum,
        quadrature_settings=settings.quadrature,
    )
    return ThresholdResponse(
        kernel=pred.kernel_id,
        n=n,
        d_test=pred.d_test,
        d_test_closed=pred.d_test_closed,
        d_est=pred.d_est,
        k0=pred.k0,
        d_test_general=pred.d_test_general,
        d_test_linear=pred.d_test_linear,
    )


@router.post("/detect")
def detect(
    request: DetectRequest, settings: SettingsDep, api: ApiSettingsDep
) -> DetectResponse:
    if request.n > api.max_n or request.trials > api.max_trials:
        raise HTTPException(
            status_code=422,
            detail=f"limits are n <= {api.max_n} and trials <= {api.max_trials}",
        )
    kernel = _kernel(request.kernel)
    logger.info(f"Detect request for {kernel.kernel_id} n={request.n} d={request.d}")
    try:
        result = power_experiment(
            kernel,
            request.n,
            request.d,
            request.trials,
            request.alpha,
            request.seed,
            settings=settings.quadrature,
        )
    except InvalidParameterError as e:
        raise HTTPException(status_code=422, detail=str(e)) from e
    return DetectResponse(
        kernel=kernel.kernel_id,
        n=result.n,
        d=result.d,
        p=result.p,
        threshold=result.threshold,
        power=result.power,
        power_se=result.power_se,
        fpr=result.fpr,
        fpr_se=result.fpr_se,
    )
