"""
Fast guided filter.

Local linear model ``q = a * I + b`` fitted per window of the guide ``I``;
the coefficients are estimated on a grid subsampled by ``guided_subsample``
and upsampled bilinearly before being applied to the full-resolution guide.
"""

import math

import numpy as np
from scipy import ndimage

from l2uwe.dehaze.objects import DehazeParams
from l2uwe.imgcore.filters import resize_bilinear
from l2uwe.imgcore.objects import ImageF
from l2uwe.utils import EnhancementException, require_same_shape


def box_mean(plane: np.ndarray, radius: int) -> np.ndarray:
    return ndimage.uniform_filter(plane, size=2 * radius + 1, mode="nearest")


def guided_filter(guide: ImageF, src: ImageF, params: DehazeParams) -> ImageF:
    """
    Edge-preserving smoothing of ``src`` steered by ``guide``.

    Parameters
    ----------
    guide : ImageF
        1-channel guide image
    src : ImageF
        1-channel image to filter
    params : DehazeParams
        Supplies radius, regularizer and subsampling factor

    Returns
    -------
    ImageF
        Filtered image with the dimensions of ``src``
    """
    if guide.channels != 1 or src.channels != 1:
        raise EnhancementException(stage="guided_filter", message="guide and source must be single-channel")
    require_same_shape("guided_filter", guide.data, src.data)

    height, width = src.shape
    s = params.guided_subsample
    low_h, low_w = max(1, math.ceil(height / s)), max(1, math.ceil(width / s))
    radius = max(1, round(params.guided_radius / s))

    guide_full = guide.plane()
    guide_low = resize_bilinear(guide_full, low_h, low_w)
    src_low = resize_bilinear(src.plane(), low_h, low_w)

    mean_i = box_mean(guide_low, radius)
    mean_p = box_mean(src_low, radius)
    cov_ip = box_mean(guide_low * src_low, radius) - mean_i * mean_p
    var_i = box_mean(guide_low * guide_low, radius) - mean_i * mean_i

    a = cov_ip / (var_i + params.guided_eps)
    b = mean_p - a * mean_i

    mean_a = resize_bilinear(box_mean(a, radius), height, width)
    mean_b = resize_bilinear(box_mean(b, radius), height, width)
    return ImageF(mean_a * guide_full + mean_b)
