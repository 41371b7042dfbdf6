"""
Contrast code image.

For every pixel the contrast code is the patch code ``i`` in 1..7 (patch side
``2i + 1``) whose window has the smallest tolerance-adjusted standard
deviation over all three color channels. Larger codes win ties, so
homogeneous regions get the largest patch.

Window statistics come from box filters over values and squared values, so
each code costs O(1) per pixel regardless of patch size.
"""

import logging
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy import ndimage

from l2uwe.imgcore.objects import ImageF, require_rgb
from l2uwe.utils import EnhancementException

logger = logging.getLogger(__name__)

MIN_CODE = 1
MAX_CODE = 7
CODES = tuple(range(MIN_CODE, MAX_CODE + 1))
# Any discount above about 1e-4 pins darkened input to code 7 almost everywhere
DEFAULT_TOLERANCE = 0.0
# Scores closer than this to the minimum count as tied
TIE_EPSILON = 1e-9
# Window variances below this are rounding noise from the box sums
VARIANCE_FLOOR = 1e-12


@dataclass(frozen=True)
class ContrastCodeImage:
    """
    Per-pixel patch codes.

    Attributes
    ----------
    codes : numpy.ndarray
        Integer array of shape (H, W), every value in 1..7
    """

    codes: npt.NDArray[np.int64]

    def __post_init__(self):
        codes = np.asarray(self.codes)
        if codes.ndim != 2:
            raise EnhancementException(stage="ContrastCodeImage", message=f"expected a 2-D code map, got {codes.shape}")
        if codes.size and (codes.min() < MIN_CODE or codes.max() > MAX_CODE):
            raise EnhancementException(stage="ContrastCodeImage", message="codes must lie in 1..7")
        object.__setattr__(self, "codes", codes.astype(np.int64))

    @property
    def height(self) -> int:
        return self.codes.shape[0]

    @property
    def width(self) -> int:
        return self.codes.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.codes.shape[0], self.codes.shape[1]

    def patch_sides(self) -> npt.NDArray[np.int64]:
        return 2 * self.codes + 1

    def to_image(self) -> ImageF:
        """Gray rendering with code c mapped to c / 7."""
        return ImageF(self.codes.astype(np.float64) / MAX_CODE)


def check_code(stage: str, i: int) -> None:
    if i not in CODES:
        raise EnhancementException(stage=stage, message=f"code must be in {MIN_CODE}..{MAX_CODE}, got {i}")


def local_std(img: ImageF, i: int) -> ImageF:
    """
    Population standard deviation of all channel values inside each (2i+1)^2 patch.

    Parameters
    ----------
    img : ImageF
        3-channel image
    i : int
        Patch code in 1..7

    Returns
    -------
    ImageF
        1-channel map of window standard deviations
    """
    check_code("local_std", i)
    require_rgb("local_std", img)

    size = 2 * i + 1
    data = img.data
    # Per-channel window means, then average over channels: every window holds
    # the same number of samples per channel
    mean = ndimage.uniform_filter(data, size=(size, size, 1), mode="nearest").mean(axis=2)
    mean_sq = ndimage.uniform_filter(data * data, size=(size, size, 1), mode="nearest").mean(axis=2)
    variance = mean_sq - mean * mean
    variance[variance < VARIANCE_FLOOR] = 0.0
    return ImageF(np.sqrt(variance))


def select_codes(scores: npt.NDArray[np.float64]) -> npt.NDArray[np.int64]:
    """
    Pick the largest code whose score is within ``TIE_EPSILON`` of the per-pixel minimum.

    Parameters
    ----------
    scores : numpy.ndarray
        Array of shape (7, H, W); index 0 holds code 1
    """
    best = scores.min(axis=0)
    tied = scores <= best + TIE_EPSILON
    # Index of the last tied code along axis 0
    last = scores.shape[0] - 1 - np.argmax(tied[::-1], axis=0)
    return last.astype(np.int64) + MIN_CODE


def compute_cci(img: ImageF, tolerance: float = DEFAULT_TOLERANCE) -> ContrastCodeImage:
    """
    Compute the contrast code image.

    The score of code ``i`` at pixel ``x`` is ``local_std(img, i)(x) -
    tolerance * (i - 1)``. The subtractive discount favours larger patches
    and is monotone: raising ``tolerance`` never lowers a selected code.

    Parameters
    ----------
    img : ImageF
        3-channel image (the inverted low-light input in the pipeline)
    tolerance : float
        Non-negative discount per code step, in [0, 1] intensity units; 0 keeps
        the plain minimum with ties going to the larger code

    Returns
    -------
    ContrastCodeImage
        Codes in 1..7 with the same dimensions as ``img``
    """
    if tolerance < 0:
        raise EnhancementException(stage="compute_cci", message=f"tolerance must be non-negative, got {tolerance}")
    require_rgb("compute_cci", img)

    scores = np.stack([local_std(img, i).plane() - tolerance * (i - 1) for i in CODES], axis=0)
    cci = ContrastCodeImage(select_codes(scores))
    logger.debug(f"CCI {img.width}x{img.height}: mean code {cci.codes.mean():.3f}")
    return cci
