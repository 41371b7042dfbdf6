"""
Pixel-wise utilities, convolution and resampling shared by all pipeline stages.

Every filter uses replicate border handling (``mode="nearest"`` in
scipy.ndimage), so image edges never pull in dark zero padding.
"""

import math

import cv2
import numpy as np
import numpy.typing as npt
from scipy import ndimage

from l2uwe.imgcore.objects import ImageF, require_rgb
from l2uwe.utils import EnhancementException

# 5x5 binomial kernel, applied separably
BINOMIAL_5 = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0

# Absolute-value Laplacian used for local contrast, normalized by 1/8
LAPLACIAN_3X3 = np.array(
    [
        [-1.0, -1.0, -1.0],
        [-1.0, 8.0, -1.0],
        [-1.0, -1.0, -1.0],
    ]
) / 8.0


def invert(img: ImageF) -> ImageF:
    return ImageF(1.0 - img.data)


def luminance(img: ImageF) -> ImageF:
    """Mean of the R, G and B intensities at each pixel."""
    require_rgb("luminance", img)
    data = img.data
    return ImageF((data[:, :, 0] + data[:, :, 1] + data[:, :, 2]) / 3.0)


def clamp01(img: ImageF) -> ImageF:
    return ImageF(np.clip(img.data, 0.0, 1.0))


def gaussian_kernel_radius(sigma: float) -> int:
    return math.ceil(3.0 * sigma)


def gaussian_blur(img: ImageF, sigma: float) -> ImageF:
    """
    Separable Gaussian convolution with replicate borders.

    Parameters
    ----------
    img : ImageF
        Image to blur, any channel count; channels are blurred independently
    sigma : float
        Standard deviation in pixels; the kernel radius is ``ceil(3 * sigma)``

    Returns
    -------
    ImageF
        Blurred image of the same dimensions

    Raises
    ------
    EnhancementException
        If sigma is not positive
    """
    if not sigma > 0:
        raise EnhancementException(stage="gaussian_blur", message=f"sigma must be positive, got {sigma}")
    truncate = gaussian_kernel_radius(sigma) / sigma
    blurred = ndimage.gaussian_filter(img.data, sigma=(sigma, sigma, 0), mode="nearest", truncate=truncate)
    return ImageF(blurred)


def binomial_blur(img: ImageF) -> ImageF:
    """Blur with the separable 5x5 kernel 1/16 [1, 4, 6, 4, 1]."""
    blurred = ndimage.correlate1d(img.data, BINOMIAL_5, axis=0, mode="nearest")
    blurred = ndimage.correlate1d(blurred, BINOMIAL_5, axis=1, mode="nearest")
    return ImageF(blurred)


def laplacian_response(plane: npt.NDArray[np.float64]) -> npt.NDArray[np.float64]:
    return ndimage.correlate(plane, LAPLACIAN_3X3, mode="nearest")


def downsample2(img: ImageF) -> ImageF:
    """Keep every second row and column; odd sizes round up."""
    return ImageF(img.data[::2, ::2, :])


def resize_bilinear(data: npt.NDArray[np.float64], height: int, width: int) -> npt.NDArray[np.float64]:
    """Bilinear resampling of an (H, W) or (H, W, C) array to an exact size."""
    if data.shape[0] == height and data.shape[1] == width:
        return data.copy()
    resized = cv2.resize(data, (width, height), interpolation=cv2.INTER_LINEAR)
    # cv2 drops a trailing singleton channel axis
    if data.ndim == 3 and resized.ndim == 2:
        resized = resized[:, :, np.newaxis]
    return resized


def upsample2(img: ImageF, height: int, width: int) -> ImageF:
    """Bilinear upsampling to the exact size of the next finer level."""
    return ImageF(resize_bilinear(img.data, height, width))
