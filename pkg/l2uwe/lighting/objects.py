from dataclasses import dataclass

import numpy as np

from l2uwe.imgcore.objects import ImageF, require_rgb
from l2uwe.utils import EnhancementException

# Lower bound on atmospheric light, keeps the divisions in transmission and
# radiance recovery finite
LIGHT_FLOOR = 1e-3


def floor_light(values: np.ndarray) -> np.ndarray:
    return np.clip(values, LIGHT_FLOOR, 1.0)


@dataclass(frozen=True)
class GlobalLight:
    """Single per-channel atmospheric light value A in (LIGHT_FLOOR, 1]."""

    values: tuple[float, float, float]

    def __post_init__(self):
        values = tuple(float(v) for v in floor_light(np.asarray(self.values, dtype=np.float64)))
        if len(values) != 3:
            raise EnhancementException(stage="GlobalLight", message=f"expected 3 channel values, got {len(values)}")
        object.__setattr__(self, "values", values)

    def broadcast(self, height: int, width: int) -> "LightingField":
        """Constant lighting field with this value everywhere."""
        return LightingField(ImageF.full(height, width, self.values))


@dataclass(frozen=True)
class LightingField:
    """
    Per-pixel, per-channel atmospheric light.

    Attributes
    ----------
    image : ImageF
        3-channel field, every value in [LIGHT_FLOOR, 1]
    """

    image: ImageF

    def __post_init__(self):
        require_rgb("LightingField", self.image)
        data = self.image.data
        if data.min() < LIGHT_FLOOR or data.max() > 1.0:
            object.__setattr__(self, "image", ImageF(floor_light(data)))

    @property
    def data(self) -> np.ndarray:
        return self.image.data

    @property
    def shape(self) -> tuple[int, int]:
        return self.image.shape
