"""Latent point geometry."""

from .points import (
    DiagMode,
    Geometry,
    GramMatrix,
    PointCloud,
    gram_matrix,
    sample_gaussian_points,
    sample_sphere_points,
    sphere_overlap_moment,
    sphere_rows,
)

__all__ = [
    "DiagMode",
    "Geometry",
    "GramMatrix",
    "PointCloud",
    "gram_matrix",
    "sample_gaussian_points",
    "sample_sphere_points",
    "sphere_overlap_moment",
    "sphere_rows",
]
