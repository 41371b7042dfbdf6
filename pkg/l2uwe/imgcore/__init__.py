from l2uwe.imgcore.filters import clamp01, gaussian_blur, invert, luminance
from l2uwe.imgcore.objects import ImageF, Pyramid
from l2uwe.imgcore.pyramid import (
    build_gaussian_pyramid,
    build_laplacian_pyramid,
    collapse_pyramid,
    max_pyramid_levels,
)

__all__ = [
    "ImageF",
    "Pyramid",
    "build_gaussian_pyramid",
    "build_laplacian_pyramid",
    "clamp01",
    "collapse_pyramid",
    "gaussian_blur",
    "invert",
    "luminance",
    "max_pyramid_levels",
]
