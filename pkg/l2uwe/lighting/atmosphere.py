"""
Atmospheric lighting estimation on the inverted image.

Patch sizes follow the contrast code image: the dark-channel minimum at a
pixel with code ``c`` uses a ``(2c+1)`` square, and the local lighting maximum
uses a ``S(m, c)`` square where ``S(m, c) = 3m - (m / 3)(c - 1)`` rounded to the
nearest odd side of at least 3. High-contrast pixels (small codes) therefore
gather light from a wider neighbourhood.
"""

import logging
import math

import numpy as np
from scipy import ndimage

from l2uwe.cci.contrast import CODES, ContrastCodeImage, check_code
from l2uwe.imgcore.filters import gaussian_blur
from l2uwe.imgcore.objects import ImageF, require_rgb
from l2uwe.lighting.objects import GlobalLight, LightingField, floor_light
from l2uwe.utils import EnhancementException, require_same_shape

logger = logging.getLogger(__name__)

DEFAULT_FRACTION = 0.002
MAX_FRACTION = 0.05
LIGHTING_SIGMA = 10.0
MIN_PATCH_SIDE = 3


def s_upsilon(m: int, c: int) -> int:
    """
    Side of the contrast-guided lighting patch.

    Parameters
    ----------
    m : int
        Multiplication factor, at least 1
    c : int
        Contrast code in 1..7

    Returns
    -------
    int
        Odd side length, at least 3

    Examples
    --------
    >>> s_upsilon(15, 1)
    45
    >>> s_upsilon(15, 5)
    25
    """
    check_code("s_upsilon", c)
    if m < 1:
        raise EnhancementException(stage="s_upsilon", message=f"m must be at least 1, got {m}")

    side = 3 * m - (m / 3) * (c - 1)
    odd = 2 * math.floor((side - 1) / 2 + 0.5) + 1
    return max(MIN_PATCH_SIDE, odd)


def _check_inputs(stage: str, img: ImageF, cci: ContrastCodeImage) -> None:
    require_rgb(stage, img)
    require_same_shape(stage, img.data, cci.codes)


def _select_by_code(cci: ContrastCodeImage, filtered: dict[int, np.ndarray], channels: int) -> np.ndarray:
    out = np.empty((cci.height, cci.width, channels), dtype=np.float64)
    for code, values in filtered.items():
        mask = cci.codes == code
        out[mask] = values[mask]
    return out


def min_image(img: ImageF, cci: ContrastCodeImage) -> ImageF:
    """
    Per-channel minimum over the CCI-sized square patch centred on each pixel.
    """
    _check_inputs("min_image", img, cci)

    filtered = {}
    for code in np.unique(cci.codes):
        side = 2 * int(code) + 1
        filtered[int(code)] = ndimage.minimum_filter(img.data, size=(side, side, 1), mode="nearest")
    return ImageF(_select_by_code(cci, filtered, img.channels))


def dark_channel_cg(img: ImageF, cci: ContrastCodeImage) -> ImageF:
    """Contrast-guided dark channel: channel minimum of ``min_image``."""
    _check_inputs("dark_channel_cg", img, cci)
    return ImageF(min_image(img, cci).data.min(axis=2))


def global_atmosphere(img: ImageF, dark: ImageF, fraction: float = DEFAULT_FRACTION) -> GlobalLight:
    """
    Global atmospheric light from the brightest dark-channel pixels.

    The ``max(1, round(fraction * w * h))`` brightest dark-channel positions
    are selected (row-major order breaks ties); at those positions the
    maximum of each color channel is taken.

    Parameters
    ----------
    img : ImageF
        3-channel image the dark channel was computed from
    dark : ImageF
        1-channel dark channel
    fraction : float
        Share of pixels to select, in (0, 0.05]

    Returns
    -------
    GlobalLight
        One value per channel, floored at LIGHT_FLOOR
    """
    require_rgb("global_atmosphere", img)
    require_same_shape("global_atmosphere", img.data, dark.data)
    if not 0 < fraction <= MAX_FRACTION:
        raise EnhancementException(
            stage="global_atmosphere", message=f"fraction must be in (0, {MAX_FRACTION}], got {fraction}"
        )

    count = max(1, math.floor(fraction * img.width * img.height + 0.5))
    order = np.argsort(-dark.plane().ravel(), kind="stable")[:count]
    selected = img.data.reshape(-1, 3)[order]
    light = GlobalLight(tuple(selected.max(axis=0)))
    logger.debug(f"Global light from {count} pixels: {light.values}")
    return light


def local_cg_atmosphere(img: ImageF, cci: ContrastCodeImage, m: int) -> LightingField:
    """
    Local contrast-guided atmospheric light.

    Per channel, the maximum of ``min_image`` over the ``s_upsilon(m,
    cci(x))`` square around each pixel. Larger ``m`` means wider patches and a
    pointwise brighter field.

    Parameters
    ----------
    img : ImageF
        3-channel image (the inverted low-light input in the pipeline)
    cci : ContrastCodeImage
        Contrast codes of ``img``
    m : int
        Multiplication factor, at least 1

    Returns
    -------
    LightingField
        Unsmoothed field floored at LIGHT_FLOOR
    """
    _check_inputs("local_cg_atmosphere", img, cci)
    if m < 1:
        raise EnhancementException(stage="local_cg_atmosphere", message=f"m must be at least 1, got {m}")

    minimum = min_image(img, cci).data
    sides = {code: s_upsilon(m, code) for code in CODES}

    by_side: dict[int, np.ndarray] = {}
    filtered = {}
    for code in np.unique(cci.codes):
        side = sides[int(code)]
        if side not in by_side:
            by_side[side] = ndimage.maximum_filter(minimum, size=(side, side, 1), mode="nearest")
        filtered[int(code)] = by_side[side]

    field = _select_by_code(cci, filtered, 3)
    return LightingField(ImageF(floor_light(field)))


def smooth_lighting(field: LightingField, sigma: float = LIGHTING_SIGMA) -> LightingField:
    """Per-channel Gaussian smoothing (sigma=10) that removes square-shaped steps."""
    blurred = gaussian_blur(field.image, sigma)
    return LightingField(ImageF(floor_light(blurred.data)))
