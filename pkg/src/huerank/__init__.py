"""huerank: query-by-example image retrieval over per-channel color statistics."""

from .errors import (
    CorruptImageError,
    EmptyGroupError,
    EmptyPlaneError,
    HueRankError,
    InvalidQuerySpecError,
    MalformedFeatureFileError,
    NoImagesFoundError,
    UnknownImageError,
    UnsupportedFormatError,
)
from .features import (
    FeatureVector,
    channel_mean,
    channel_median_composite,
    channel_std_composite,
    extract_features,
    threshold,
)
from .index import BuildResult, IndexStore, ThresholdGroup, build_index
from .query import (
    STANDARD_COLUMNS,
    QuerySpec,
    RankedItem,
    RankedList,
    RankMatrix,
    column_label,
    combo_value,
    evaluate,
    execute,
    score,
    stat_of,
)
from .raster import GrayRaster, RgbRaster, decode, histogram, split_channels, to_gray

__version__ = "0.1.0"

__all__ = [
    "BuildResult",
    "CorruptImageError",
    "EmptyGroupError",
    "EmptyPlaneError",
    "FeatureVector",
    "GrayRaster",
    "HueRankError",
    "IndexStore",
    "InvalidQuerySpecError",
    "MalformedFeatureFileError",
    "NoImagesFoundError",
    "QuerySpec",
    "RankMatrix",
    "RankedItem",
    "RankedList",
    "RgbRaster",
    "STANDARD_COLUMNS",
    "ThresholdGroup",
    "UnknownImageError",
    "UnsupportedFormatError",
    "build_index",
    "channel_mean",
    "channel_median_composite",
    "channel_std_composite",
    "column_label",
    "combo_value",
    "decode",
    "evaluate",
    "execute",
    "extract_features",
    "histogram",
    "score",
    "split_channels",
    "stat_of",
    "threshold",
    "to_gray",
]
