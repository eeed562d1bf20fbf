"""Retrieval methods: statistic selection, DF filtering, ranking.

Two ranking semantics coexist on purpose. :func:`execute` ranks candidates
by absolute distance to the query's combined statistic (the retrieval use
case), while :func:`evaluate` ranks a fixed subset by the raw ascending
statistic itself (the rank-table use case). They answer different
questions and both are part of the public surface.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyGroupError, InvalidQuerySpecError, UnknownImageError
from .features import FeatureVector, extract_features
from .index import IndexStore
from .raster import decode

METHODS = ("pm1", "pm2", "pm3", "pm4", "pm5")

# Statistic kind each method reads, and its channel arity (min, max).
_METHOD_KIND = {
    "pm1": "mean",
    "pm2": "mean",
    "pm3": "mean",
    "pm4": "median",
    "pm5": "std",
}
_METHOD_ARITY = {
    "pm1": (1, 1),
    "pm2": (2, 2),
    "pm3": (3, 3),
    "pm4": (3, 3),
    "pm5": (1, 3),
}
_ARITY_MESSAGE = {
    "pm1": "PM1 takes exactly one channel",
    "pm2": "PM2 takes exactly two channels",
    "pm3": "PM3 takes exactly three channels",
    "pm4": "PM4 takes exactly three channels",
    "pm5": "PM5 takes one to three channels",
}

SCOPES = ("group", "corpus")

# The full rank-table column set: single/paired/triple means, then the
# per-channel medians and standard deviations.
STANDARD_COLUMNS = (
    ("pm1", "r"), ("pm1", "g"), ("pm1", "b"),
    ("pm2", "rg"), ("pm2", "rb"), ("pm2", "gb"),
    ("pm3", "rgb"),
    ("pm4", "r"), ("pm4", "g"), ("pm4", "b"),
    ("pm5", "r"), ("pm5", "g"), ("pm5", "b"),
)


def _normalize_method(method: str) -> str:
    m = str(method).lower()
    if m not in METHODS:
        raise InvalidQuerySpecError(
            f"unknown method {method!r} (expected pm1..pm5)"
        )
    return m


def _normalize_channels(channels: str) -> str:
    s = str(channels).lower()
    if any(c not in "rgb" for c in s):
        raise InvalidQuerySpecError(
            f"channels must be drawn from 'rgb', got {channels!r}"
        )
    canon = "".join(c for c in "rgb" if c in s)
    if not canon:
        raise InvalidQuerySpecError("at least one channel is required")
    return canon


@dataclass(frozen=True)
class QuerySpec:
    """Validated retrieval parameters.

    ``channels`` is normalized to canonical r,g,b order; the channel count
    must match the method's arity and ``df`` is the inclusive tolerance on
    the combined-statistic difference.
    """

    method: str
    channels: str
    df: float
    scope: str = "group"

    def __post_init__(self):
        method = _normalize_method(self.method)
        channels = _normalize_channels(self.channels)
        lo, hi = _METHOD_ARITY[method]
        if not lo <= len(channels) <= hi:
            raise InvalidQuerySpecError(_ARITY_MESSAGE[method])
        df = float(self.df)
        if math.isnan(df) or df < 0:
            raise InvalidQuerySpecError("df must be a non-negative number")
        scope = str(self.scope).lower()
        if scope not in SCOPES:
            raise InvalidQuerySpecError(
                f"scope must be one of {SCOPES}, got {self.scope!r}"
            )
        object.__setattr__(self, "method", method)
        object.__setattr__(self, "channels", channels)
        object.__setattr__(self, "df", df)
        object.__setattr__(self, "scope", scope)

    @property
    def kind(self) -> str:
        """Statistic family the method reads: mean, median, or std."""
        return _METHOD_KIND[self.method]


@dataclass(frozen=True)
class RankedItem:
    name: str
    score: float
    rank: int


@dataclass(frozen=True)
class RankedList:
    """Query results ordered by ascending score with 1-based ranks.

    ``excluded`` counts the in-scope candidates dropped by the DF gate.
    """

    query_name: str
    results: tuple[RankedItem, ...]
    excluded: int = 0

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(item.name for item in self.results)


def stat_of(fv: FeatureVector, method: str, channel: str) -> float:
    """One channel's statistic under a method: mean (PM1-3), median (PM4), std (PM5)."""
    kind = _METHOD_KIND[_normalize_method(method)]
    channel = str(channel).lower()
    if channel not in ("r", "g", "b"):
        raise InvalidQuerySpecError(f"unknown channel {channel!r}")
    return float(getattr(fv, f"{kind}_{channel}"))


def _combo(fv: FeatureVector, kind: str, channels: str) -> float:
    total = sum(getattr(fv, f"{kind}_{c}") for c in channels)
    return total / len(channels)


def combo_value(fv: FeatureVector, spec: QuerySpec) -> float:
    """Arithmetic mean of the statistic over the spec's channels."""
    return _combo(fv, spec.kind, spec.channels)


def score(query_fv: FeatureVector, target_fv: FeatureVector, spec: QuerySpec) -> float:
    """Absolute difference of the two combined statistics."""
    return abs(combo_value(query_fv, spec) - combo_value(target_fv, spec))


def _resolve_query(store: IndexStore, query) -> tuple[FeatureVector, bool]:
    """An indexed name resolves to its entry; anything else must be a
    decodable image file, which is featured on the fly."""
    text = str(query)
    if text in store:
        return store.get(text), True
    if Path(text).is_file():
        return extract_features(decode(text), Path(text).name), False
    raise UnknownImageError(text)


def execute(store: IndexStore, query, spec: QuerySpec) -> RankedList:
    """Rank the in-scope candidates within DF of the query.

    Candidates are the query's threshold group when scope is ``group``
    (the whole corpus when ``corpus``), retained when their score is <= df,
    and sorted by ascending score with lexicographic name tie-breaks. An
    indexed query always heads the list at score 0; an external query file
    participates only as the reference point, never as a result.
    """
    query_fv, indexed = _resolve_query(store, query)
    if spec.scope == "group":
        if indexed:
            candidates = store.group_of(query_fv.name).members
        else:
            group = store.group(query_fv.threshold)
            if group is None:
                raise EmptyGroupError(query_fv.threshold)
            candidates = group.members
    else:
        candidates = store.names

    scored = [(score(query_fv, store.get(name), spec), name) for name in candidates]
    kept = [pair for pair in scored if pair[0] <= spec.df]
    kept.sort(
        key=lambda pair: (
            pair[0],
            0 if indexed and pair[1] == query_fv.name else 1,
            pair[1],
        )
    )
    results = tuple(
        RankedItem(name=name, score=s, rank=i)
        for i, (s, name) in enumerate(kept, start=1)
    )
    return RankedList(
        query_name=query_fv.name,
        results=results,
        excluded=len(scored) - len(kept),
    )


def column_label(method: str, channels: str) -> str:
    """Stable label for a rank-matrix column, e.g. mean_rg or std_b."""
    method = _normalize_method(method)
    return f"{_METHOD_KIND[method]}_{_normalize_channels(channels)}"


@dataclass(frozen=True)
class RankMatrix:
    """1-based ranks of a fixed image subset under each method column."""

    names: tuple[str, ...]
    labels: tuple[str, ...]
    ranks: tuple[tuple[int, ...], ...]  # ranks[row][col]

    def column(self, label: str) -> dict[str, int]:
        col = self.labels.index(label)
        return {name: self.ranks[row][col] for row, name in enumerate(self.names)}


def evaluate(store: IndexStore, names, columns=STANDARD_COLUMNS) -> RankMatrix:
    """Rank a subset by raw ascending statistic, one column per method spec.

    Unlike :func:`execute` there is no query and no DF: each column sorts
    the subset by its combined statistic value. Method arity is not
    enforced here; the table surface legitimately ranks single-channel
    medians and stds.
    """
    names = list(names)
    vectors = {name: store.get(name) for name in names}
    labels = []
    columns_ranks = []
    for method, channels in columns:
        kind = _METHOD_KIND[_normalize_method(method)]
        canon = _normalize_channels(channels)
        ordered = sorted(
            names, key=lambda n: (_combo(vectors[n], kind, canon), n)
        )
        rank_of = {name: i for i, name in enumerate(ordered, start=1)}
        labels.append(f"{kind}_{canon}")
        columns_ranks.append([rank_of[name] for name in names])
    rows = tuple(
        tuple(columns_ranks[col][row] for col in range(len(columns_ranks)))
        for row in range(len(names))
    )
    return RankMatrix(names=tuple(names), labels=tuple(labels), ranks=rows)
