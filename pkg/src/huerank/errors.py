"""Exception types shared across the package.

Filesystem-level failures (missing files, missing directories, unreadable
paths) surface as the builtin ``FileNotFoundError`` / ``OSError`` family;
everything domain-specific derives from :class:`HueRankError`.
"""


class HueRankError(Exception):
    """Base class for all huerank-specific errors."""


class UnsupportedFormatError(HueRankError):
    """The file exists but is not a decodable JPEG/PNG/BMP image."""

    def __init__(self, path, detail=None):
        self.path = str(path)
        self.detail = detail
        msg = f"unsupported image format: {self.path}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class CorruptImageError(HueRankError):
    """The image header parsed but the pixel data could not be read."""

    def __init__(self, path, detail=None):
        self.path = str(path)
        self.detail = detail
        msg = f"corrupt image file: {self.path}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class EmptyPlaneError(HueRankError):
    """A statistic was requested over a plane with no samples."""


class NoImagesFoundError(HueRankError):
    """An index build found zero decodable images."""

    def __init__(self, directory):
        self.directory = str(directory)
        super().__init__(f"no decodable images found in {self.directory}")


class MalformedFeatureFileError(HueRankError):
    """A feature CSV failed to parse; ``line`` is 1-based."""

    def __init__(self, path, line, reason):
        self.path = str(path)
        self.line = line
        self.reason = reason
        super().__init__(f"{self.path}:{line}: {reason}")


class UnknownImageError(HueRankError):
    """A name was requested that is not present in the index."""

    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown image: {name}")


class EmptyGroupError(HueRankError):
    """A group-scoped query found no indexed image sharing its threshold."""

    def __init__(self, threshold):
        self.threshold = threshold
        super().__init__(
            f"no indexed image shares threshold {threshold}; "
            "retry with scope=corpus"
        )


class InvalidQuerySpecError(HueRankError):
    """A query spec violates the method/channel/df rules."""
