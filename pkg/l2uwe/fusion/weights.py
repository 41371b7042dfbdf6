"""
Per-input fusion weights.

Saliency rewards pixels whose blurred color departs from the input's mean
color, luminance rewards color saturation (spread of R, G, B around their
mean) and local contrast rewards strong Laplacian response of the luminance.
The three maps are multiplied and normalized across inputs.
"""

import numpy as np

from l2uwe.fusion.objects import NormalizedWeight, WeightMaps
from l2uwe.imgcore.filters import binomial_blur, laplacian_response, luminance
from l2uwe.imgcore.objects import ImageF, require_rgb
from l2uwe.utils import EnhancementException, require_same_shape

# Regularizer so pixels where every product is zero split evenly
WEIGHT_DELTA = 1e-6


def saliency_weight(image: ImageF) -> ImageF:
    require_rgb("saliency_weight", image)
    blurred = binomial_blur(image).data
    mean = image.data.reshape(-1, 3).mean(axis=0)
    return ImageF(np.sqrt(np.sum((blurred - mean) ** 2, axis=2)))


def luminance_weight(image: ImageF) -> ImageF:
    require_rgb("luminance_weight", image)
    data = image.data
    lum = luminance(image).data
    return ImageF(np.sqrt(np.mean((data - lum) ** 2, axis=2)))


def local_contrast_weight(image: ImageF) -> ImageF:
    require_rgb("local_contrast_weight", image)
    return ImageF(np.abs(laplacian_response(luminance(image).plane())))


def compute_weight_maps(image: ImageF) -> WeightMaps:
    return WeightMaps(
        saliency=saliency_weight(image),
        luminance=luminance_weight(image),
        local_contrast=local_contrast_weight(image),
    )


def normalize_weights(maps: list[WeightMaps]) -> list[NormalizedWeight]:
    """
    Normalize the product of the three weights across inputs.

    ``W_k = (P_k + delta) / (sum_j P_j + K * delta)`` where ``P_k`` is the
    product of the saliency, luminance and local contrast maps of input k.
    The result is a partition of unity at every pixel.

    Parameters
    ----------
    maps : list[WeightMaps]
        Weight maps of at least two inputs with equal dimensions

    Returns
    -------
    list[NormalizedWeight]
        One normalized weight per input, in input order
    """
    if len(maps) < 2:
        raise EnhancementException(stage="normalize_weights", message=f"need at least 2 inputs, got {len(maps)}")
    require_same_shape("normalize_weights", *(m.saliency.data for m in maps))

    products = [m.product() for m in maps]
    total = np.sum(products, axis=0) + len(maps) * WEIGHT_DELTA
    return [NormalizedWeight(ImageF((p + WEIGHT_DELTA) / total)) for p in products]
