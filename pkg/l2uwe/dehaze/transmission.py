"""
Transmission estimation, radiance recovery and the single-input enhancer.

The low-light image is inverted so its dark regions look like haze, dehazed
with the dark channel prior against a local lighting field, and inverted
back. Each call of ``enhance_single`` produces one fusion input.
"""

import logging
from typing import Literal

import numpy as np

from l2uwe.cci.contrast import ContrastCodeImage
from l2uwe.dehaze.guided import guided_filter
from l2uwe.dehaze.objects import DehazeParams, SingleEnhancement, TransmissionMap
from l2uwe.imgcore.filters import clamp01, invert, luminance
from l2uwe.imgcore.objects import ImageF, require_rgb
from l2uwe.lighting.atmosphere import (
    DEFAULT_FRACTION,
    dark_channel_cg,
    global_atmosphere,
    local_cg_atmosphere,
    smooth_lighting,
)
from l2uwe.lighting.objects import LightingField
from l2uwe.utils import EnhancementException, require_same_shape

logger = logging.getLogger(__name__)

LightingMode = Literal["local_cg", "global"]


def transmission_cg(inv: ImageF, light: LightingField, cci: ContrastCodeImage, omega: float) -> TransmissionMap:
    """
    Contrast-guided transmission ``t = 1 - omega * dark(min(inv / A, 1))``.

    Parameters
    ----------
    inv : ImageF
        Inverted 3-channel image
    light : LightingField
        Atmospheric light per pixel and channel
    cci : ContrastCodeImage
        Patch codes for the dark channel
    omega : float
        Haze removal strength in [0, 1]

    Returns
    -------
    TransmissionMap
        Values clamped to [0, 1]
    """
    require_rgb("transmission_cg", inv)
    require_same_shape("transmission_cg", inv.data, light.data, cci.codes)
    if not 0.0 <= omega <= 1.0:
        raise EnhancementException(stage="transmission_cg", message=f"omega must be in [0, 1], got {omega}")

    normalized = ImageF(np.minimum(inv.data / light.data, 1.0))
    dark = dark_channel_cg(normalized, cci).plane()
    return TransmissionMap(ImageF(np.clip(1.0 - omega * dark, 0.0, 1.0)))


def recover_radiance(inv: ImageF, light: LightingField, t: TransmissionMap, t0: float) -> ImageF:
    """
    Scene radiance ``J = (I - A) / max(t, t0) + A`` per channel.

    The result is not clamped; clamping happens after re-inversion.
    """
    require_rgb("recover_radiance", inv)
    require_same_shape("recover_radiance", inv.data, light.data, t.data)
    if not 0.0 < t0 < 1.0:
        raise EnhancementException(stage="recover_radiance", message=f"t0 must be in (0, 1), got {t0}")

    # I + (I - A)(1/t - 1) equals (I - A)/t + A and is exactly I when t is 1
    gain = 1.0 / np.maximum(t.data, t0) - 1.0
    return ImageF(inv.data + (inv.data - light.data) * gain)


def estimate_lighting(
    inv: ImageF,
    cci: ContrastCodeImage,
    m: int,
    lighting_mode: LightingMode = "local_cg",
    fraction: float = DEFAULT_FRACTION,
) -> tuple[LightingField, LightingField]:
    """
    Lighting field for one fusion input, before and after smoothing.

    ``global`` mode broadcasts a single A from the brightest dark-channel
    pixels and ignores ``m``; the constant field needs no smoothing.
    """
    match lighting_mode:
        case "local_cg":
            raw = local_cg_atmosphere(inv, cci, m)
            return raw, smooth_lighting(raw)
        case "global":
            light = global_atmosphere(inv, dark_channel_cg(inv, cci), fraction)
            field = light.broadcast(inv.height, inv.width)
            return field, field
        case _:
            raise EnhancementException(stage="estimate_lighting", message=f"unknown lighting mode {lighting_mode!r}")


def enhance_single_detailed(
    lowlight: ImageF,
    cci: ContrastCodeImage,
    m: int,
    params: DehazeParams,
    lighting_mode: LightingMode = "local_cg",
    fraction: float = DEFAULT_FRACTION,
) -> SingleEnhancement:
    """
    Run the inversion-wrapped dehazing for one multiplication factor.

    Parameters
    ----------
    lowlight : ImageF
        3-channel low-light image in [0, 1]
    cci : ContrastCodeImage
        Contrast codes of the inverted image, shared by all inputs
    m : int
        Multiplication factor of the lighting patch
    params : DehazeParams
        Transmission, recovery and guided filter settings
    lighting_mode : {"local_cg", "global"}
        Lighting model; ``global`` reproduces the single-A baseline
    fraction : float
        Pixel share used by the global model

    Returns
    -------
    SingleEnhancement
        Output in [0, 1] plus lighting and transmission intermediates
    """
    require_rgb("enhance_single", lowlight)
    require_same_shape("enhance_single", lowlight.data, cci.codes)

    inv = invert(lowlight)
    lighting_raw, lighting = estimate_lighting(inv, cci, m, lighting_mode, fraction)
    t_raw = transmission_cg(inv, lighting, cci, params.omega)
    t = TransmissionMap(guided_filter(luminance(inv), t_raw.image, params))
    radiance = recover_radiance(inv, lighting, t, params.t0)
    output = clamp01(invert(radiance))

    logger.debug(f"m={m}: mean transmission {t.data.mean():.3f}, mean output {output.data.mean():.3f}")
    return SingleEnhancement(
        m=m,
        lighting_raw=lighting_raw,
        lighting=lighting,
        transmission_raw=t_raw,
        transmission=t,
        output=output,
    )


def enhance_single(
    lowlight: ImageF,
    cci: ContrastCodeImage,
    m: int,
    params: DehazeParams,
    lighting_mode: LightingMode = "local_cg",
    fraction: float = DEFAULT_FRACTION,
) -> ImageF:
    return enhance_single_detailed(lowlight, cci, m, params, lighting_mode, fraction).output
