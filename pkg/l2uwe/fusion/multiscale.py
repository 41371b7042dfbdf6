"""
Multi-scale fusion.

Each input is split into a Laplacian pyramid and each normalized weight into
a Gaussian pyramid of the same depth; at every level the detail bands are
blended by the weights and the blended pyramid is collapsed.
"""

import logging

import numpy as np

from l2uwe.fusion.objects import NormalizedWeight
from l2uwe.imgcore.filters import clamp01
from l2uwe.imgcore.objects import ImageF, Pyramid, require_rgb
from l2uwe.imgcore.pyramid import (
    DEFAULT_LEVELS,
    build_gaussian_pyramid,
    build_laplacian_pyramid,
    collapse_pyramid,
    max_pyramid_levels,
)
from l2uwe.utils import EnhancementException, require_same_shape

logger = logging.getLogger(__name__)


def _check_fusion_inputs(inputs: list[ImageF], weights: list[NormalizedWeight]) -> None:
    if len(inputs) != len(weights):
        raise EnhancementException(
            stage="fuse_multiscale", message=f"{len(inputs)} inputs but {len(weights)} weight maps"
        )
    if not inputs:
        raise EnhancementException(stage="fuse_multiscale", message="no inputs to fuse")
    for image in inputs:
        require_rgb("fuse_multiscale", image)
    require_same_shape("fuse_multiscale", *(i.data for i in inputs), *(w.data for w in weights))


def fuse_multiscale_unclamped(
    inputs: list[ImageF], weights: list[NormalizedWeight], levels: int = DEFAULT_LEVELS
) -> tuple[ImageF, int]:
    """
    Blend the inputs level by level and collapse, without clamping.

    The requested depth is reduced so the coarsest level keeps at least 8
    pixels on its short side.

    Returns
    -------
    tuple[ImageF, int]
        The collapsed image and the pyramid depth actually used
    """
    _check_fusion_inputs(inputs, weights)
    height, width = inputs[0].shape
    depth = max_pyramid_levels(width, height, levels)
    if depth < levels:
        logger.debug(f"Pyramid depth reduced from {levels} to {depth} for a {width}x{height} image")

    fused_levels: list[np.ndarray] = []
    for image, weight in zip(inputs, weights, strict=True):
        detail = build_laplacian_pyramid(image, depth)
        gauss = build_gaussian_pyramid(weight.image, depth)
        for level in range(depth):
            # (H, W, 1) weight broadcasts across the three channels
            contribution = gauss[level].data * detail[level].data
            if level < len(fused_levels):
                fused_levels[level] = fused_levels[level] + contribution
            else:
                fused_levels.append(contribution)

    fused = Pyramid(levels=[ImageF(level) for level in fused_levels], kind="laplacian")
    return collapse_pyramid(fused), depth


def fuse_multiscale(inputs: list[ImageF], weights: list[NormalizedWeight], levels: int = DEFAULT_LEVELS) -> ImageF:
    """
    Multi-scale fusion of 3-channel inputs with normalized weights.

    Parameters
    ----------
    inputs : list[ImageF]
        Images to blend, all of the same size
    weights : list[NormalizedWeight]
        One normalized weight per input
    levels : int
        Requested pyramid depth

    Returns
    -------
    ImageF
        Fused image clamped to [0, 1]
    """
    fused, _ = fuse_multiscale_unclamped(inputs, weights, levels)
    return clamp01(fused)
