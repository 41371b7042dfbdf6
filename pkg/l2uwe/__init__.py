# Copyright 2025 The l2uwe Authors
# SPDX-License-Identifier: Apache-2.0
"""
Low-light underwater image enhancement.

The package brightens dark underwater photographs lit by artificial sources.
The input is inverted so darkness behaves like haze, contrast-guided local
lighting fields are estimated, two dark-channel dehazing passes with
different lighting patch sizes are run, and the results are merged with a
multi-scale Laplacian fusion.

The package provides:
- imgcore: image buffers, filters, resampling, pyramids and file I/O
- cci: contrast code image selecting a local patch size per pixel
- lighting: contrast-guided dark channel and atmospheric lighting
- dehaze: transmission, fast guided filter and radiance recovery
- fusion: weight maps, multi-scale fusion and the full pipeline
- metrics: global contrast factor, visible-edge e/r scores, mean luminance
- synthetic: synthetic low-light test images
- batch / cli: the ``l2uwe`` command line

Environment Variables
---------------------
L2UWE_JOBS : int
    Default number of worker processes (alternative to --jobs)
L2UWE_CONFIG_FILE : str
    Path to a JSON or YAML pipeline configuration (alternative to --config)
L2UWE_LOG_LEVEL : str
    Logging level, INFO by default (alternative to --log-level)
"""

from l2uwe.batch.objects import EnhanceConfig
from l2uwe.fusion.pipeline import l2uwe_enhance, l2uwe_enhance_detailed
from l2uwe.imgcore.objects import ImageF

__all__ = ["EnhanceConfig", "ImageF", "l2uwe_enhance", "l2uwe_enhance_detailed"]
__version__ = "1.0.0"
