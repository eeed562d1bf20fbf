"""Feature database: build from a directory, persist as CSV, partition by threshold.

The on-disk format is a UTF-8 CSV with a fixed 13-column header and rows
sorted by name; reals carry six decimal places, so a saved file is
byte-identical across re-runs on unchanged inputs. Threshold groups are
derived data and are rebuilt from the threshold column on load.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional

from .errors import (
    HueRankError,
    MalformedFeatureFileError,
    NoImagesFoundError,
    UnknownImageError,
)
from .features import FeatureVector, extract_features
from .raster import decode

log = logging.getLogger(__name__)

SUPPORTED_EXTENSIONS = {".jpg", ".jpeg", ".png", ".bmp"}

CSV_COLUMNS = (
    "name", "width", "height", "threshold",
    "mean_r", "mean_g", "mean_b",
    "median_r", "median_g", "median_b",
    "std_r", "std_g", "std_b",
)
CSV_HEADER = ",".join(CSV_COLUMNS)

_REAL_FIELDS = CSV_COLUMNS[4:]


@dataclass(frozen=True)
class ThresholdGroup:
    """All indexed names sharing one threshold value."""

    key: int
    members: tuple[str, ...]


class IndexStore:
    """Immutable, name-ordered collection of feature vectors.

    Construction sorts entries lexicographically by name and partitions
    them into threshold groups; everything after that is read-only.
    """

    def __init__(self, features: Iterable[FeatureVector]):
        ordered = sorted(features, key=lambda fv: fv.name)
        entries: dict[str, FeatureVector] = {}
        for fv in ordered:
            if "," in fv.name:
                raise ValueError(f"image name contains a comma: {fv.name!r}")
            if fv.name in entries:
                raise ValueError(f"duplicate image name: {fv.name!r}")
            entries[fv.name] = fv
        groups: dict[int, list[str]] = {}
        for fv in entries.values():
            groups.setdefault(fv.threshold, []).append(fv.name)
        self._entries = entries
        self._groups = {
            key: ThresholdGroup(key, tuple(members))
            for key, members in sorted(groups.items())
        }

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[FeatureVector]:
        return iter(self._entries.values())

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __eq__(self, other):
        if not isinstance(other, IndexStore):
            return NotImplemented
        return self._entries == other._entries

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self._entries)

    @property
    def groups(self) -> tuple[ThresholdGroup, ...]:
        return tuple(self._groups.values())

    def get(self, name: str) -> FeatureVector:
        try:
            return self._entries[name]
        except KeyError:
            raise UnknownImageError(name) from None

    def group(self, key: int) -> Optional[ThresholdGroup]:
        """The group for a threshold value, or None if no image has it."""
        return self._groups.get(key)

    def group_of(self, name: str) -> ThresholdGroup:
        """The threshold group containing an indexed image."""
        return self._groups[self.get(name).threshold]

    def save(self, path) -> None:
        """Write the store as a deterministic CSV (see module docstring)."""
        out = Path(path)
        lines = [CSV_HEADER]
        for fv in self:
            reals = ",".join(f"{getattr(fv, f):.6f}" for f in _REAL_FIELDS)
            lines.append(
                f"{fv.name},{fv.width},{fv.height},{fv.threshold},{reals}"
            )
        out.write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path) -> "IndexStore":
        """Parse a feature CSV; groups are rebuilt from the threshold column."""
        p = Path(path)
        text = p.read_text(encoding="utf-8")
        lines = text.splitlines()
        if not lines or lines[0] != CSV_HEADER:
            raise MalformedFeatureFileError(p, 1, "missing or wrong header row")
        features = []
        seen = set()
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split(",")
            if len(parts) != len(CSV_COLUMNS):
                raise MalformedFeatureFileError(
                    p, lineno,
                    f"expected {len(CSV_COLUMNS)} columns, found {len(parts)}",
                )
            name = parts[0]
            if name in seen:
                raise MalformedFeatureFileError(p, lineno, f"duplicate name {name!r}")
            try:
                fv = FeatureVector(
                    name=name,
                    width=int(parts[1]),
                    height=int(parts[2]),
                    threshold=int(parts[3]),
                    **{f: float(v) for f, v in zip(_REAL_FIELDS, parts[4:])},
                )
            except ValueError as exc:
                raise MalformedFeatureFileError(p, lineno, str(exc)) from None
            seen.add(name)
            features.append(fv)
        return cls(features)


@dataclass
class BuildResult:
    """Outcome of an index build: the store plus the files it skipped."""

    store: IndexStore
    skipped: list[tuple[str, str]]


ProgressFn = Callable[[str, Optional[FeatureVector], Optional[Exception]], None]


def _candidate_files(root: Path, recursive: bool) -> list[tuple[str, Path]]:
    it = root.rglob("*") if recursive else root.iterdir()
    named = []
    for path in it:
        if not path.is_file() or path.suffix.lower() not in SUPPORTED_EXTENSIONS:
            continue
        name = path.relative_to(root).as_posix() if recursive else path.name
        named.append((name, path))
    named.sort(key=lambda pair: pair[0])
    return named


def build_index(
    directory,
    recursive: bool = False,
    group_check: bool = True,
    progress: Optional[ProgressFn] = None,
) -> BuildResult:
    """Decode and feature-extract every supported image under a directory.

    Files that fail to decode are skipped with a warning, never fatally.
    Extraction runs on a thread pool but results are collected in name
    order, so the resulting store (and its saved CSV) is deterministic.

    Raises ``FileNotFoundError``/``NotADirectoryError`` for a bad path and
    :class:`NoImagesFoundError` when nothing decodable is present.
    """
    root = Path(directory)
    if not root.exists():
        raise FileNotFoundError(f"no such directory: {root}")
    if not root.is_dir():
        raise NotADirectoryError(f"not a directory: {root}")

    candidates = _candidate_files(root, recursive)
    for name, _ in candidates:
        if "," in name:
            raise ValueError(f"image name contains a comma: {name!r}")

    def load_one(pair):
        name, path = pair
        try:
            return name, extract_features(decode(path), name), None
        except (HueRankError, OSError) as exc:
            return name, None, exc

    features: list[FeatureVector] = []
    skipped: list[tuple[str, str]] = []
    if candidates:
        with ThreadPoolExecutor(max_workers=min(8, len(candidates))) as pool:
            for name, fv, exc in pool.map(load_one, candidates):
                if fv is not None:
                    features.append(fv)
                else:
                    log.warning("skipping %s: %s", name, exc)
                    skipped.append((name, str(exc)))
                if progress is not None:
                    progress(name, fv, exc)

    if not features:
        raise NoImagesFoundError(root)

    store = IndexStore(features)
    if group_check and len(store) > 1 and all(
        len(g.members) == 1 for g in store.groups
    ):
        log.warning(
            "every image landed in its own threshold group; group-scoped "
            "queries will only return the query itself (pass "
            "group_check=False / --no-group-check to silence)"
        )
    return BuildResult(store, skipped)
