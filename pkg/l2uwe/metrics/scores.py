"""
No-reference and paired quality metrics.

``gcf`` is a re-implementation of the global contrast factor (mean local
contrast over nine successively halved resolutions, combined with fixed
polynomial weights). ``e_r_scores`` approximates the visible-edge e and r
scores with a Sobel gradient and a fixed visibility threshold; the scores
are meant for relative comparisons between runs of this package.
"""

import logging
import math

import numpy as np
from scipy import ndimage

from l2uwe.imgcore.filters import luminance
from l2uwe.imgcore.objects import ImageF
from l2uwe.metrics.objects import MetricsReport
from l2uwe.utils import EnhancementException, require_same_shape

logger = logging.getLogger(__name__)

GCF_RESOLUTIONS = 9
GCF_GAMMA = 2.2
EDGE_THRESHOLD = 0.1
GRADIENT_FLOOR = 1e-4
# Sobel responses are divided by this so a unit step reads as gradient 1
SOBEL_NORM = 4.0


def _gray(img: ImageF) -> np.ndarray:
    if img.channels == 3:
        return luminance(img).plane()
    return img.plane()


def gcf_weight(r: int) -> float:
    x = r / GCF_RESOLUTIONS
    return (-0.406385 * x + 0.334573) * x + 0.0877526


def _mean_local_contrast(plane: np.ndarray) -> float:
    """Mean over pixels of the mean absolute difference to existing 4-neighbours."""
    diff_sum = np.zeros_like(plane)
    count = np.zeros_like(plane)

    vertical = np.abs(np.diff(plane, axis=0))
    diff_sum[:-1, :] += vertical
    diff_sum[1:, :] += vertical
    count[:-1, :] += 1
    count[1:, :] += 1

    horizontal = np.abs(np.diff(plane, axis=1))
    diff_sum[:, :-1] += horizontal
    diff_sum[:, 1:] += horizontal
    count[:, :-1] += 1
    count[:, 1:] += 1

    valid = count > 0
    if not valid.any():
        return 0.0
    return float(np.mean(diff_sum[valid] / count[valid]))


def _halve(plane: np.ndarray) -> np.ndarray:
    """Average 2x2 superpixels, replicating the last row/column of odd sizes."""
    height, width = plane.shape
    padded = np.pad(plane, ((0, height % 2), (0, width % 2)), mode="edge")
    return padded.reshape(padded.shape[0] // 2, 2, padded.shape[1] // 2, 2).mean(axis=(1, 3))


def gcf(img: ImageF) -> float:
    """
    Global contrast factor.

    Parameters
    ----------
    img : ImageF
        Gray or color image in [0, 1]

    Returns
    -------
    float
        Non-negative contrast score, 0 for constant images
    """
    plane = _gray(img)
    total = 0.0
    for r in range(1, GCF_RESOLUTIONS + 1):
        if r > 1:
            if min(plane.shape) < 2:
                break
            plane = _halve(plane)
        perceptual = np.clip(plane, 0.0, 1.0) ** (1.0 / GCF_GAMMA)
        total += gcf_weight(r) * _mean_local_contrast(perceptual)
    return max(total, 0.0)


def gradient_magnitude(img: ImageF) -> np.ndarray:
    plane = _gray(img)
    gx = ndimage.sobel(plane, axis=1, mode="nearest")
    gy = ndimage.sobel(plane, axis=0, mode="nearest")
    return np.hypot(gx, gy) / SOBEL_NORM


def e_r_scores(original: ImageF, enhanced: ImageF) -> tuple[float | None, float]:
    """
    Visible-edge increase ``e`` and gradient ratio ``r``.

    Parameters
    ----------
    original : ImageF
        Reference image
    enhanced : ImageF
        Enhanced version of ``original``

    Returns
    -------
    tuple[float | None, float]
        ``e = (n_enhanced - n_original) / n_original`` (None when the original
        has no visible edge) and ``r``, the geometric mean of enhanced over
        original gradient on the enhanced image's visible edges (1 when there
        are none)
    """
    require_same_shape("e_r_scores", original.data, enhanced.data)

    g_original = gradient_magnitude(original)
    g_enhanced = gradient_magnitude(enhanced)
    visible_original = g_original > EDGE_THRESHOLD
    visible_enhanced = g_enhanced > EDGE_THRESHOLD

    n_original = int(visible_original.sum())
    n_enhanced = int(visible_enhanced.sum())
    e = (n_enhanced - n_original) / n_original if n_original > 0 else None

    if n_enhanced == 0:
        return e, 1.0
    ratios = g_enhanced[visible_enhanced] / np.maximum(g_original[visible_enhanced], GRADIENT_FLOOR)
    r = math.exp(float(np.mean(np.log(ratios))))
    return e, r


def mean_luminance(img: ImageF) -> float:
    return float(np.clip(np.mean(_gray(img)), 0.0, 1.0))


def metrics_report(original: ImageF, enhanced: ImageF) -> MetricsReport:
    e, r = e_r_scores(original, enhanced)
    return MetricsReport(
        gcf=gcf(enhanced),
        e_score=e,
        r_score=r,
        mean_luminance_in=mean_luminance(original),
        mean_luminance_out=mean_luminance(enhanced),
    )
