from l2uwe.lighting.atmosphere import (
    dark_channel_cg,
    global_atmosphere,
    local_cg_atmosphere,
    min_image,
    s_upsilon,
    smooth_lighting,
)
from l2uwe.lighting.objects import LIGHT_FLOOR, GlobalLight, LightingField

__all__ = [
    "LIGHT_FLOOR",
    "GlobalLight",
    "LightingField",
    "dark_channel_cg",
    "global_atmosphere",
    "local_cg_atmosphere",
    "min_image",
    "s_upsilon",
    "smooth_lighting",
]
