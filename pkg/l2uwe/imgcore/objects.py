from dataclasses import dataclass, field
from typing import Literal

import numpy as np
import numpy.typing as npt

from l2uwe.utils import EnhancementException

PyramidKind = Literal["gaussian", "laplacian"]


@dataclass(frozen=True)
class ImageF:
    """
    Floating-point image with one or three channels.

    Pixel data is held as a ``float64`` array of shape ``(height, width,
    channels)``. Values are nominally in [0, 1] but intermediate images
    (Laplacian levels, unclamped radiance) may leave that range; they are
    always finite.

    Attributes
    ----------
    data : numpy.ndarray
        Pixel array of shape (H, W, C) with C in {1, 3}
    """

    data: npt.NDArray[np.float64]

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim == 2:
            data = data[:, :, np.newaxis]
        if data.ndim != 3 or data.shape[2] not in (1, 3):
            raise EnhancementException(stage="ImageF", message=f"expected (H, W, 1|3) array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise EnhancementException(stage="ImageF", message="width and height must be at least 1")
        if not np.all(np.isfinite(data)):
            raise EnhancementException(stage="ImageF", message="image contains NaN or Inf values")
        object.__setattr__(self, "data", data)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape[0], self.data.shape[1]

    def channel(self, c: int) -> npt.NDArray[np.float64]:
        return self.data[:, :, c]

    def plane(self) -> npt.NDArray[np.float64]:
        """Return the single channel of a gray image as a 2-D array."""
        if self.channels != 1:
            raise EnhancementException(stage="ImageF.plane", message="image has more than one channel")
        return self.data[:, :, 0]

    @classmethod
    def full(cls, height: int, width: int, value: float | tuple[float, ...], channels: int = 3) -> "ImageF":
        values = np.broadcast_to(np.asarray(value, dtype=np.float64), (channels,))
        return cls(np.broadcast_to(values, (height, width, channels)).copy())


def require_rgb(stage: str, img: ImageF) -> None:
    if img.channels != 3:
        raise EnhancementException(stage=stage, message=f"expected a 3-channel image, got {img.channels} channel(s)")


@dataclass(frozen=True)
class Pyramid:
    """
    Leveled stack of progressively halved images.

    Attributes
    ----------
    levels : list[ImageF]
        Level 0 is full resolution, each further level is halved per axis
    kind : {"gaussian", "laplacian"}
        How the levels were built
    """

    levels: list[ImageF] = field(default_factory=list)
    kind: PyramidKind = "gaussian"

    def __post_init__(self):
        if not self.levels:
            raise EnhancementException(stage="Pyramid", message="a pyramid needs at least one level")

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, level: int) -> ImageF:
        return self.levels[level]
