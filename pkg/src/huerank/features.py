"""Per-image color statistics: the 13-field feature vector.

The composite median/std are intentionally nested (per-column first, then
across the column results) rather than global over all pixels; the two
disagree on most planes and the nested form is what the retrieval tables
are built from.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyPlaneError
from .raster import RgbRaster, histogram, split_channels, to_gray


@dataclass(frozen=True)
class FeatureVector:
    """Indexed statistics for one image.

    ``threshold`` is the grayscale histogram bin-sum, which is provably the
    pixel count; it is stored anyway because it is the grouping key.
    """

    name: str
    width: int
    height: int
    threshold: int
    mean_r: float
    mean_g: float
    mean_b: float
    median_r: float
    median_g: float
    median_b: float
    std_r: float
    std_g: float
    std_b: float

    def __post_init__(self):
        if not self.name:
            raise ValueError("feature vector name must be non-empty")
        if self.width < 1 or self.height < 1:
            raise ValueError(f"{self.name}: dimensions must be >= 1")
        if self.threshold != self.width * self.height:
            raise ValueError(
                f"{self.name}: threshold {self.threshold} != "
                f"width*height {self.width * self.height}"
            )
        for field in ("mean", "median"):
            for ch in "rgb":
                v = getattr(self, f"{field}_{ch}")
                if not 0.0 <= v <= 255.0:
                    raise ValueError(f"{self.name}: {field}_{ch}={v} outside [0, 255]")
        for ch in "rgb":
            if getattr(self, f"std_{ch}") < 0.0:
                raise ValueError(f"{self.name}: std_{ch} must be >= 0")


def _as_plane(plane) -> np.ndarray:
    a = np.asarray(plane, dtype=np.float64)
    if a.size == 0:
        raise EmptyPlaneError("statistic requested over an empty plane")
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D plane, got ndim={a.ndim}")
    return a


def channel_mean(plane) -> float:
    """Arithmetic mean over every entry of the plane."""
    return float(_as_plane(plane).mean())


def channel_median_composite(plane) -> float:
    """Median of the per-column medians.

    Each column (the height dimension) is reduced to its median, giving
    ``width`` values; the result is the median of those. Even-length
    medians average the two middle order statistics.
    """
    a = _as_plane(plane)
    return float(np.median(np.median(a, axis=0)))


def channel_std_composite(plane) -> float:
    """Sample standard deviation of the per-column sample deviations.

    Uses N-1 normalization at both levels. A height-1 column has std 0,
    and a width-1 plane has outer std 0.
    """
    a = _as_plane(plane)
    height, width = a.shape
    if height == 1:
        col_stds = np.zeros(width)
    else:
        col_stds = np.std(a, axis=0, ddof=1)
    if width == 1:
        return 0.0
    return float(np.std(col_stds, ddof=1))


def threshold(img: RgbRaster) -> int:
    """Sum of all 256 grayscale histogram bins (equals the pixel count)."""
    return int(histogram(to_gray(img)).sum())


def extract_features(img: RgbRaster, name: str) -> FeatureVector:
    """Compute the full feature vector for a decoded image."""
    if not name:
        raise ValueError("image name must be non-empty")
    red, green, blue = split_channels(img)
    return FeatureVector(
        name=name,
        width=img.width,
        height=img.height,
        threshold=threshold(img),
        mean_r=channel_mean(red),
        mean_g=channel_mean(green),
        mean_b=channel_mean(blue),
        median_r=channel_median_composite(red),
        median_g=channel_median_composite(green),
        median_b=channel_median_composite(blue),
        std_r=channel_std_composite(red),
        std_g=channel_std_composite(green),
        std_b=channel_std_composite(blue),
    )
