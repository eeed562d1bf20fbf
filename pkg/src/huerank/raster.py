"""Image decoding and channel-level views.

A decoded image is held as three independent ``(height, width)`` uint8
planes rather than one interleaved array: every downstream statistic is a
whole-plane or per-column operation, so keeping the channels contiguous is
the cache-friendly layout.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import CorruptImageError, UnsupportedFormatError

SUPPORTED_FORMATS = {"JPEG", "PNG", "BMP"}

# ITU-R BT.601 luma weights; rounding is half-away-from-zero.
GRAY_WEIGHTS = (0.2989, 0.5870, 0.1140)


@dataclass(frozen=True, eq=False)
class RgbRaster:
    """True-color image: three (height, width) uint8 channel planes."""

    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray

    def __post_init__(self):
        for plane in (self.red, self.green, self.blue):
            if not isinstance(plane, np.ndarray) or plane.ndim != 2:
                raise ValueError("channel planes must be 2-D numpy arrays")
            if plane.dtype != np.uint8:
                raise ValueError("channel planes must be uint8")
            if plane.shape != self.red.shape:
                raise ValueError("channel planes must share one shape")
        if self.red.size == 0:
            raise ValueError("rasters must have at least one pixel")

    @property
    def width(self) -> int:
        return self.red.shape[1]

    @property
    def height(self) -> int:
        return self.red.shape[0]

    def __eq__(self, other):
        if not isinstance(other, RgbRaster):
            return NotImplemented
        return (
            np.array_equal(self.red, other.red)
            and np.array_equal(self.green, other.green)
            and np.array_equal(self.blue, other.blue)
        )


@dataclass(frozen=True, eq=False)
class GrayRaster:
    """Single-plane 8-bit image."""

    gray: np.ndarray

    def __post_init__(self):
        if not isinstance(self.gray, np.ndarray) or self.gray.ndim != 2:
            raise ValueError("gray plane must be a 2-D numpy array")
        if self.gray.dtype != np.uint8:
            raise ValueError("gray plane must be uint8")
        if self.gray.size == 0:
            raise ValueError("rasters must have at least one pixel")

    @property
    def width(self) -> int:
        return self.gray.shape[1]

    @property
    def height(self) -> int:
        return self.gray.shape[0]

    def __eq__(self, other):
        if not isinstance(other, GrayRaster):
            return NotImplemented
        return np.array_equal(self.gray, other.gray)


def decode(path) -> RgbRaster:
    """Decode a JPEG/PNG/BMP file into an :class:`RgbRaster`.

    Grayscale and paletted sources are normalized to RGB (a single-channel
    source replicates its plane into red=green=blue); alpha channels are
    dropped without premultiplying.

    Raises ``FileNotFoundError`` for a missing path,
    :class:`UnsupportedFormatError` for anything that is not one of the
    three supported formats, and :class:`CorruptImageError` when the header
    parses but the pixel data does not.
    """
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(f"no such image file: {p}")
    try:
        with Image.open(p) as im:
            if im.format not in SUPPORTED_FORMATS:
                raise UnsupportedFormatError(p, im.format)
            arr = np.asarray(im.convert("RGB"), dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise UnsupportedFormatError(p, "unrecognized header") from exc
    except OSError as exc:
        raise CorruptImageError(p, str(exc)) from exc
    return RgbRaster(
        arr[:, :, 0].copy(), arr[:, :, 1].copy(), arr[:, :, 2].copy()
    )


def split_channels(img: RgbRaster) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return the red, green, blue planes as independent copies."""
    return img.red.copy(), img.green.copy(), img.blue.copy()


def to_gray(img: RgbRaster) -> GrayRaster:
    """Convert to 8-bit grayscale with BT.601 weights.

    gray = round(0.2989 r + 0.5870 g + 0.1140 b), half away from zero,
    clamped to [0, 255].
    """
    mix = (
        GRAY_WEIGHTS[0] * img.red
        + GRAY_WEIGHTS[1] * img.green
        + GRAY_WEIGHTS[2] * img.blue
    )
    # np.round would round half-to-even; the weighted sum is non-negative,
    # so floor(x + 0.5) is exactly half-away-from-zero here.
    gray = np.clip(np.floor(mix + 0.5), 0, 255).astype(np.uint8)
    return GrayRaster(gray)


def histogram(g: GrayRaster) -> np.ndarray:
    """256-bin intensity histogram; bins[v] counts samples equal to v."""
    return np.bincount(g.gray.ravel(), minlength=256).astype(np.int64)
