from l2uwe.fusion.multiscale import fuse_multiscale
from l2uwe.fusion.objects import EnhanceResult, NormalizedWeight, WeightMaps
from l2uwe.fusion.pipeline import l2uwe_enhance, l2uwe_enhance_detailed
from l2uwe.fusion.weights import (
    compute_weight_maps,
    local_contrast_weight,
    luminance_weight,
    normalize_weights,
    saliency_weight,
)

__all__ = [
    "EnhanceResult",
    "NormalizedWeight",
    "WeightMaps",
    "compute_weight_maps",
    "fuse_multiscale",
    "l2uwe_enhance",
    "l2uwe_enhance_detailed",
    "local_contrast_weight",
    "luminance_weight",
    "normalize_weights",
    "saliency_weight",
]
