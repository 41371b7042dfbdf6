"""
Image decode and encode.

PNG and JPEG are decoded through OpenCV and scaled to [0, 1]; PNG output is
8-bit with round-half-up of ``v * 255``. PFM keeps float32 precision for
intermediate dumps. OpenCV stores color in BGR order, converted here so that
``ImageF`` channels are always R, G, B.
"""

import logging
from pathlib import Path

import cv2
import numpy as np

from l2uwe.imgcore.objects import ImageF
from l2uwe.utils import ImageReadException

logger = logging.getLogger(__name__)

SUPPORTED_SUFFIXES = (".png", ".jpg", ".jpeg", ".pfm")


def is_image_file(path: str | Path) -> bool:
    return Path(path).suffix.lower() in SUPPORTED_SUFFIXES


def _to_rgb_order(data: np.ndarray) -> np.ndarray:
    if data.ndim == 3 and data.shape[2] == 3:
        return data[:, :, ::-1]
    return data


def read_image(path: str | Path) -> ImageF:
    """
    Decode a PNG, JPEG or PFM file into an ImageF.

    Gray files decode to one channel, color files to three (alpha is dropped).

    Raises
    ------
    ImageReadException
        If the file is missing, unreadable or not a supported image
    """
    path = Path(path)
    if not path.is_file():
        raise ImageReadException(path, "file not found")

    raw = cv2.imread(str(path), cv2.IMREAD_UNCHANGED)
    if raw is None:
        raise ImageReadException(path, "unsupported or corrupt image data")

    if raw.ndim == 3 and raw.shape[2] == 4:
        raw = raw[:, :, :3]
    if raw.ndim == 3 and raw.shape[2] == 2:
        raw = raw[:, :, :1]

    if raw.dtype == np.uint8:
        data = raw.astype(np.float64) / 255.0
    elif raw.dtype == np.uint16:
        data = raw.astype(np.float64) / 65535.0
    else:
        data = raw.astype(np.float64)

    try:
        return ImageF(_to_rgb_order(data))
    except ValueError as e:
        raise ImageReadException(path, str(e))


def to_uint8(img: ImageF) -> np.ndarray:
    return np.floor(np.clip(img.data, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


def write_png(img: ImageF, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    encoded = _to_rgb_order(to_uint8(img))
    if not cv2.imwrite(str(path), np.ascontiguousarray(encoded)):
        raise OSError(f"Failed to write PNG {path}")
    logger.debug(f"Wrote {path}")
    return path


def write_pfm(img: ImageF, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = _to_rgb_order(img.data).astype(np.float32)
    if not cv2.imwrite(str(path), np.ascontiguousarray(data)):
        raise OSError(f"Failed to write PFM {path}")
    logger.debug(f"Wrote {path}")
    return path


def write_image(img: ImageF, stem: str | Path) -> list[Path]:
    """Write both a PNG preview and a lossless PFM dump next to each other."""
    stem = Path(stem)
    return [
        write_png(img, stem.with_suffix(".png")),
        write_pfm(img, stem.with_suffix(".pfm")),
    ]
