"""
Synthetic low-light suite.

Clean scenes are rendered from a seed (smooth color washes, flat shapes and
fine texture) and darkened with a 2.2 gamma and a radial spot-light falloff,
imitating an artificial light source in dark water.
"""

import logging

import numpy as np

from l2uwe.imgcore.objects import ImageF, require_rgb
from l2uwe.utils import EnhancementException

logger = logging.getLogger(__name__)

DARKEN_GAMMA = 2.2
DEFAULT_FALLOFF_FLOOR = 0.15


def make_clean_scene(height: int, width: int, seed: int, noise: float = 0.0) -> ImageF:
    """
    Render a deterministic textured color scene.

    Parameters
    ----------
    height, width : int
        Scene size in pixels
    seed : int
        Seed of the random generator; equal seeds give identical scenes
    noise : float
        Standard deviation of per-pixel Gaussian sensor noise; 0 renders a
        clean scene
    """
    if noise < 0:
        raise EnhancementException(stage="make_clean_scene", message=f"noise must be non-negative, got {noise}")
    rng = np.random.default_rng(seed)
    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    yy /= max(height - 1, 1)
    xx /= max(width - 1, 1)

    # Smooth background wash with a blue-green cast
    base = rng.uniform(0.25, 0.6, size=3) * np.array([0.6, 1.0, 1.1])
    slope = rng.uniform(-0.25, 0.25, size=(2, 3))
    scene = base + xx[..., None] * slope[0] + yy[..., None] * slope[1]

    # Flat shapes with hard edges
    for _ in range(rng.integers(4, 9)):
        color = rng.uniform(0.1, 1.0, size=3)
        cy, cx = rng.uniform(0, 1, size=2)
        if rng.random() < 0.5:
            radius = rng.uniform(0.05, 0.2)
            mask = (yy - cy) ** 2 + (xx - cx) ** 2 < radius**2
        else:
            hy, hx = rng.uniform(0.04, 0.2, size=2)
            mask = (np.abs(yy - cy) < hy) & (np.abs(xx - cx) < hx)
        scene[mask] = color

    # Fine texture
    frequency = rng.uniform(10, 40)
    texture = 0.05 * np.sin(2 * np.pi * frequency * xx) * np.cos(2 * np.pi * frequency * yy)
    scene += texture[..., None]
    if noise > 0:
        scene += rng.normal(0.0, noise, size=scene.shape)
    return ImageF(np.clip(scene, 0.0, 1.0))


def illumination_falloff(
    height: int,
    width: int,
    center: tuple[float, float] = (0.5, 0.5),
    spread: float = 0.35,
    floor: float = DEFAULT_FALLOFF_FLOOR,
) -> np.ndarray:
    """
    Radial spot-light profile in [floor, 1].

    Parameters
    ----------
    center : tuple[float, float]
        Light position as (row, column) fractions of the image size
    spread : float
        Gaussian radius of the spot as a fraction of the image diagonal
    floor : float
        Illumination far from the light
    """
    if not 0.0 <= floor <= 1.0:
        raise EnhancementException(stage="illumination_falloff", message=f"floor must be in [0, 1], got {floor}")
    if spread <= 0:
        raise EnhancementException(stage="illumination_falloff", message=f"spread must be positive, got {spread}")

    yy, xx = np.mgrid[0:height, 0:width].astype(np.float64)
    diagonal = np.hypot(height, width)
    distance = np.hypot(yy - center[0] * (height - 1), xx - center[1] * (width - 1)) / diagonal
    return floor + (1.0 - floor) * np.exp(-(distance**2) / (2 * spread**2))


def darken(
    clean: ImageF,
    gamma: float = DARKEN_GAMMA,
    center: tuple[float, float] = (0.5, 0.5),
    spread: float = 0.35,
    floor: float = DEFAULT_FALLOFF_FLOOR,
) -> ImageF:
    """Low-light version of ``clean``: ``clean ** gamma`` times a spot-light falloff."""
    require_rgb("darken", clean)
    if gamma <= 0:
        raise EnhancementException(stage="darken", message=f"gamma must be positive, got {gamma}")
    falloff = illumination_falloff(clean.height, clean.width, center, spread, floor)
    return ImageF(np.clip(clean.data, 0.0, 1.0) ** gamma * falloff[..., None])


def synthetic_suite(
    count: int, height: int = 64, width: int = 64, seed: int = 0, noise: float = 0.0
) -> list[tuple[ImageF, ImageF]]:
    """
    Build ``count`` (clean, low-light) pairs with varied light positions.

    ``noise`` is passed on to ``make_clean_scene``.

    Returns
    -------
    list[tuple[ImageF, ImageF]]
        Pairs in seed order
    """
    rng = np.random.default_rng(seed)
    suite = []
    for index in range(count):
        clean = make_clean_scene(height, width, seed=seed * 1000 + index, noise=noise)
        center = tuple(rng.uniform(0.2, 0.8, size=2))
        spread = float(rng.uniform(0.25, 0.5))
        suite.append((clean, darken(clean, center=center, spread=spread)))
    logger.debug(f"Built synthetic suite of {count} images at {width}x{height}")
    return suite
