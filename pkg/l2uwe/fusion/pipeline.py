"""
End-to-end low-light underwater enhancement.

invert -> contrast code image -> one dehazed input per multiplication factor
(m=5 keeps detail, m=30 removes darkness) -> weight maps -> multi-scale fusion.
"""

import logging

from l2uwe.batch.objects import EnhanceConfig
from l2uwe.cci.contrast import compute_cci
from l2uwe.dehaze.transmission import enhance_single_detailed
from l2uwe.fusion.multiscale import fuse_multiscale_unclamped
from l2uwe.fusion.objects import EnhanceResult
from l2uwe.fusion.weights import compute_weight_maps, normalize_weights
from l2uwe.imgcore.filters import clamp01, invert
from l2uwe.imgcore.objects import ImageF, require_rgb

logger = logging.getLogger(__name__)


def l2uwe_enhance_detailed(lowlight: ImageF, config: EnhanceConfig | None = None) -> EnhanceResult:
    """
    Enhance a low-light image and keep every intermediate.

    Parameters
    ----------
    lowlight : ImageF
        3-channel image in [0, 1]
    config : EnhanceConfig, optional
        Pipeline settings, defaults when omitted

    Returns
    -------
    EnhanceResult
        Output plus CCI, fusion inputs, weight maps and the pre-clamp fused image
    """
    config = config or EnhanceConfig()
    require_rgb("l2uwe_enhance", lowlight)

    cci = compute_cci(invert(lowlight), config.tolerance)
    params = config.dehaze_params()

    inputs = [
        enhance_single_detailed(
            lowlight,
            cci,
            m,
            params,
            lighting_mode=config.lighting_mode,
            fraction=config.atmosphere_fraction,
        )
        for m in config.m_values()
    ]
    weight_maps = [compute_weight_maps(single.output) for single in inputs]
    normalized = normalize_weights(weight_maps)
    fused_raw, depth = fuse_multiscale_unclamped([single.output for single in inputs], normalized, config.levels)

    logger.debug(f"Fused {len(inputs)} inputs over {depth} pyramid levels")
    return EnhanceResult(
        cci=cci,
        inputs=inputs,
        weight_maps=weight_maps,
        normalized=normalized,
        fused_raw=fused_raw,
        output=clamp01(fused_raw),
        levels=depth,
    )


def l2uwe_enhance(lowlight: ImageF, config: EnhanceConfig | None = None) -> ImageF:
    return l2uwe_enhance_detailed(lowlight, config).output
