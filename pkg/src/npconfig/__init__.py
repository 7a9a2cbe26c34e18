"""Neumann-Poincare kernels, configuration constants and spectral-set experiments for convex planar domains."""

from .domain import ConvexDomain, affine_image, build
from .npkernel import apply_K, config_constant, measure, tv_distance

__all__ = ["ConvexDomain", "affine_image", "build", "apply_K", "config_constant", "measure", "tv_distance"]
__version__ = "0.1.0"
