from l2uwe.dehaze.guided import guided_filter
from l2uwe.dehaze.objects import DehazeParams, SingleEnhancement, TransmissionMap
from l2uwe.dehaze.transmission import (
    enhance_single,
    enhance_single_detailed,
    recover_radiance,
    transmission_cg,
)

__all__ = [
    "DehazeParams",
    "SingleEnhancement",
    "TransmissionMap",
    "enhance_single",
    "enhance_single_detailed",
    "guided_filter",
    "recover_radiance",
    "transmission_cg",
]
