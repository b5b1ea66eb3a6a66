"""Distance kernels on Gaussian latent points."""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..core.errors import InvalidParameterError
from ..geometry.points import PointCloud


class DistanceKernelSpec(BaseModel):
    """``K(x, y) = gamma exp(-(beta / 2) ||x - y||^2)``.

    Implements the pair-kernel protocol of :mod:`rgglab.graphs.model`.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    gamma: float = Field(gt=0.0, lt=1.0)
    beta: float = Field(gt=0.0)

    @property
    def kernel_id(self) -> str:
        return f"dist(gamma={self.gamma:g},beta={self.beta:g})"

    def __call__(self, squared_distance: np.ndarray) -> np.ndarray:
        return self.gamma * np.exp(-0.5 * self.beta * squared_distance)

    def edge_density(self, d: int) -> float:
        """``p = gamma (1 + 2 beta / d)^(-d/2)`` for ``N(0, I_d / d)`` points."""
        if d < 1:
            raise InvalidParameterError(f"d must be >= 1, got {d}")
        return self.gamma * math.exp(-0.5 * d * math.log1p(2.0 * self.beta / d))

    def pair_probabilities(self, cloud: PointCloud, rows: slice) -> np.ndarray:
        x = cloud.coords
        sq_norms = np.einsum("ij,ij->i", x, x)
        sq = sq_norms[rows, None] + sq_norms[None, :] - 2.0 * (x[rows] @ x.T)
        return self(np.maximum(sq, 0.0))
