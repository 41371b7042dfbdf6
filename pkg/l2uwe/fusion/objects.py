from dataclasses import dataclass

import numpy as np

from l2uwe.cci.contrast import ContrastCodeImage
from l2uwe.dehaze.objects import SingleEnhancement
from l2uwe.imgcore.objects import ImageF
from l2uwe.utils import EnhancementException, require_same_shape


@dataclass(frozen=True)
class WeightMaps:
    """Saliency, luminance and local contrast weights of one fusion input."""

    saliency: ImageF
    luminance: ImageF
    local_contrast: ImageF

    def __post_init__(self):
        maps = (self.saliency, self.luminance, self.local_contrast)
        if any(m.channels != 1 for m in maps):
            raise EnhancementException(stage="WeightMaps", message="weight maps must be single-channel")
        require_same_shape("WeightMaps", *(m.data for m in maps))
        if any(m.data.min() < 0.0 for m in maps):
            raise EnhancementException(stage="WeightMaps", message="weight maps must be non-negative")

    @property
    def shape(self) -> tuple[int, int]:
        return self.saliency.shape

    def product(self) -> np.ndarray:
        return self.saliency.plane() * self.luminance.plane() * self.local_contrast.plane()


@dataclass(frozen=True)
class NormalizedWeight:
    """Weight of one input after normalization across all inputs."""

    image: ImageF

    @property
    def data(self) -> np.ndarray:
        return self.image.data

    @property
    def shape(self) -> tuple[int, int]:
        return self.image.shape


@dataclass(frozen=True)
class EnhanceResult:
    """Final output of the fusion pipeline with every intermediate kept for inspection."""

    cci: ContrastCodeImage
    inputs: list[SingleEnhancement]
    weight_maps: list[WeightMaps]
    normalized: list[NormalizedWeight]
    fused_raw: ImageF
    output: ImageF
    levels: int
