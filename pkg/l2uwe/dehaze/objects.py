from dataclasses import dataclass

import numpy as np
from pydantic import BaseModel, Field

from l2uwe.imgcore.objects import ImageF
from l2uwe.lighting.objects import LightingField
from l2uwe.utils import EnhancementException


class DehazeParams(BaseModel):
    omega: float = Field(
        default=0.95,
        ge=0.0,
        le=1.0,
        description="Share of the haze removed; 1 - omega of it is kept in the transmission estimate",
    )
    t0: float = Field(
        default=0.1,
        gt=0.0,
        lt=1.0,
        description="Lower bound on the transmission divisor during radiance recovery",
    )
    guided_radius: int = Field(default=16, ge=1, description="Guided filter window radius in pixels")
    guided_eps: float = Field(default=1e-3, gt=0.0, description="Guided filter regularizer")
    guided_subsample: int = Field(
        default=4,
        ge=1,
        description="Subsampling factor of the fast guided filter; 1 computes the exact filter",
    )


@dataclass(frozen=True)
class TransmissionMap:
    """Per-pixel transmission t in [0, 1]."""

    image: ImageF

    def __post_init__(self):
        if self.image.channels != 1:
            raise EnhancementException(stage="TransmissionMap", message="transmission must have one channel")
        data = self.image.data
        if data.min() < 0.0 or data.max() > 1.0:
            object.__setattr__(self, "image", ImageF(np.clip(data, 0.0, 1.0)))

    @property
    def data(self) -> np.ndarray:
        return self.image.data

    @property
    def shape(self) -> tuple[int, int]:
        return self.image.shape


@dataclass(frozen=True)
class SingleEnhancement:
    """One fusion input together with the intermediates that produced it."""

    m: int
    lighting_raw: LightingField
    lighting: LightingField
    transmission_raw: TransmissionMap
    transmission: TransmissionMap
    output: ImageF
