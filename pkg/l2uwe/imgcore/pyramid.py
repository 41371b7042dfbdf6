"""
Gaussian and Laplacian pyramids.

Each Gaussian level is the previous one blurred with sigma=1 and decimated by
two (ceil division). Laplacian detail levels subtract the bilinear upsampling
of the next Gaussian level, so collapsing with the same upsampler restores the
source up to floating point rounding.
"""

import logging
import math

from l2uwe.imgcore.filters import downsample2, gaussian_blur, upsample2
from l2uwe.imgcore.objects import ImageF, Pyramid
from l2uwe.utils import EnhancementException

logger = logging.getLogger(__name__)

DEFAULT_LEVELS = 5
PYRAMID_SIGMA = 1.0
# short side of the coarsest level when depth is auto-limited
MIN_COARSE_SIDE = 8


def max_pyramid_levels(width: int, height: int, requested: int = DEFAULT_LEVELS) -> int:
    """
    Limit pyramid depth so the coarsest level keeps at least 8 pixels on its short side.

    Returns ``min(requested, floor(log2(min(w, h) / 8)) + 1)``, never less than 1.
    """
    short_side = min(width, height)
    if short_side < MIN_COARSE_SIDE:
        return 1
    limit = int(math.floor(math.log2(short_side / MIN_COARSE_SIDE))) + 1
    return max(1, min(requested, limit))


def _check_depth(stage: str, img: ImageF, levels: int) -> None:
    if levels < 1:
        raise EnhancementException(stage=stage, message=f"levels must be at least 1, got {levels}")
    if levels > 1 and min(img.width, img.height) / 2 ** (levels - 1) < 2:
        raise EnhancementException(
            stage=stage,
            message=f"{levels} levels are too deep for a {img.width}x{img.height} image",
        )


def build_gaussian_pyramid(img: ImageF, levels: int) -> Pyramid:
    _check_depth("build_gaussian_pyramid", img, levels)
    pyramid = [img]
    for _ in range(levels - 1):
        pyramid.append(downsample2(gaussian_blur(pyramid[-1], PYRAMID_SIGMA)))
    return Pyramid(levels=pyramid, kind="gaussian")


def build_laplacian_pyramid(img: ImageF, levels: int) -> Pyramid:
    _check_depth("build_laplacian_pyramid", img, levels)
    gaussian = build_gaussian_pyramid(img, levels).levels

    pyramid = []
    for finer, coarser in zip(gaussian[:-1], gaussian[1:], strict=True):
        expanded = upsample2(coarser, finer.height, finer.width)
        pyramid.append(ImageF(finer.data - expanded.data))
    # Last level is the coarsest Gaussian residual
    pyramid.append(gaussian[-1])
    return Pyramid(levels=pyramid, kind="laplacian")


def collapse_pyramid(pyr: Pyramid) -> ImageF:
    """
    Reconstruct a full-resolution image from a Laplacian pyramid.

    The result is not clamped.

    Raises
    ------
    EnhancementException
        If the pyramid is not of Laplacian kind
    """
    if pyr.kind != "laplacian":
        raise EnhancementException(stage="collapse_pyramid", message=f"cannot collapse a {pyr.kind} pyramid")

    current = pyr.levels[-1]
    for finer in reversed(pyr.levels[:-1]):
        expanded = upsample2(current, finer.height, finer.width)
        current = ImageF(finer.data + expanded.data)
    return current
