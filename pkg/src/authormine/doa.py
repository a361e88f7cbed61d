"""Degree-of-authorship scoring and the file author rule.

The absolute score for a developer on a file combines three counters:
first authorship FA (1 for the file creator), deliveries DL (commits by
the developer touching the file) and acceptances AC (commits by other
developers touching the file):

    doa_abs = 3.293 + 1.098*FA + 0.164*DL - 0.321*ln(1 + AC)

The normalized score divides by the file's maximum absolute score, so
the strongest contributor(s) score exactly 1.0.  A developer is an
author of a file when doa_norm > 0.75 and doa_abs >= 3.293 (strict
inequality on the normalized floor, inclusive on the absolute floor).
All weights and floors are configurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterator, Mapping

from .ingest import DeveloperId

if TYPE_CHECKING:  # pragma: no cover
    from .snapshot import ReleaseSnapshot


@dataclass(frozen=True, slots=True)
class FileDevCounters:
    """Per (file, developer) counters feeding the scoring formula."""

    fa: int
    dl: int
    ac: int

    def __post_init__(self):
        if self.fa not in (0, 1):
            raise ValueError("fa must be 0 or 1")
        if self.dl < 0 or self.ac < 0:
            raise ValueError("dl and ac must be non-negative")


@dataclass(frozen=True, slots=True)
class DoaWeights:
    base: float = 3.293
    first_author: float = 1.098
    delivery: float = 0.164
    acceptance_log: float = 0.321


@dataclass(frozen=True, slots=True)
class DoaThresholds:
    normalized_floor: float = 0.75
    absolute_floor: float = 3.293

    def __post_init__(self):
        if not 0 < self.normalized_floor <= 1:
            raise ValueError("normalized_floor must be in (0, 1]")
        if self.absolute_floor <= 0:
            raise ValueError("absolute_floor must be positive")


DEFAULT_WEIGHTS = DoaWeights()
DEFAULT_THRESHOLDS = DoaThresholds()


def doa_absolute(counters: FileDevCounters, weights: DoaWeights = DEFAULT_WEIGHTS) -> float:
    return (weights.base
            + weights.first_author * counters.fa
            + weights.delivery * counters.dl
            - weights.acceptance_log * math.log1p(counters.ac))


def doa_normalized(developer: DeveloperId,
                   counters: Mapping[DeveloperId, FileDevCounters],
                   weights: DoaWeights = DEFAULT_WEIGHTS) -> float:
    """Absolute score of `developer` divided by the file's maximum score."""
    if developer not in counters:
        raise ValueError(f"{developer.email} never changed this file")
    peak = max(doa_absolute(c, weights) for c in counters.values())
    if peak <= 0:
        raise ValueError("maximum absolute score is not positive; "
                         "normalization is undefined for these weights")
    return doa_absolute(counters[developer], weights) / peak


def authors_of(counters: Mapping[DeveloperId, FileDevCounters],
               thresholds: DoaThresholds = DEFAULT_THRESHOLDS,
               weights: DoaWeights = DEFAULT_WEIGHTS) -> set[DeveloperId]:
    """Developers passing both floors for a file with the given counters."""
    if not counters:
        raise ValueError("file has no commits")
    scores = {dev: doa_absolute(c, weights) for dev, c in counters.items()}
    peak = max(scores.values())
    if peak <= 0:
        raise ValueError("maximum absolute score is not positive")
    return {dev for dev, score in scores.items()
            if score / peak > thresholds.normalized_floor
            and score >= thresholds.absolute_floor}


@dataclass(frozen=True, slots=True)
class DevScore:
    developer: DeveloperId
    fa: int
    dl: int
    ac: int
    doa_abs: float
    doa_norm: float
    is_author: bool


@dataclass(frozen=True)
class FileAuthorship:
    fid: int
    path: str
    scores: tuple[DevScore, ...]  # sorted by developer (email, name)
    authors: frozenset[DeveloperId]


class AuthorshipMap:
    """Scores and author sets for every live file of one snapshot."""

    def __init__(self, files: "dict[int, FileAuthorship]"):
        self.files = files
        self._by_path = {fa.path: fa.fid for fa in files.values()}
        by_dev: dict[DeveloperId, list[int]] = {}
        for fa in files.values():
            for dev in fa.authors:
                by_dev.setdefault(dev, []).append(fa.fid)
        self._authored_by = {dev: tuple(fids) for dev, fids in by_dev.items()}

    def __iter__(self) -> Iterator[FileAuthorship]:
        return iter(self.files.values())

    def __len__(self) -> int:
        return len(self.files)

    def authors_for(self, fid: int) -> frozenset[DeveloperId]:
        return self.files[fid].authors

    def for_path(self, path: str) -> FileAuthorship:
        fid = self._by_path.get(path)
        if fid is None:
            raise KeyError(path)
        return self.files[fid]

    def authored_files(self, developer: DeveloperId) -> tuple[int, ...]:
        return self._authored_by.get(developer, ())

    @property
    def all_authors(self) -> frozenset[DeveloperId]:
        return frozenset(self._authored_by)


def compute_authorship(snapshot: "ReleaseSnapshot",
                       thresholds: DoaThresholds = DEFAULT_THRESHOLDS,
                       weights: DoaWeights = DEFAULT_WEIGHTS) -> AuthorshipMap:
    """Evaluate scores and the author rule for every live file of a snapshot."""
    files: dict[int, FileAuthorship] = {}
    for path in sorted(snapshot.live):
        fid = snapshot.live[path]
        counters = snapshot.counters_for(fid)
        abs_scores = {dev: doa_absolute(c, weights) for dev, c in counters.items()}
        peak = max(abs_scores.values())
        if peak <= 0:
            raise ValueError(f"maximum absolute score for {path} is not positive; "
                             "normalization is undefined for these weights")
        scores = []
        authors = set()
        for dev in sorted(counters, key=DeveloperId.sort_key):
            c = counters[dev]
            score = abs_scores[dev]
            norm = score / peak
            is_author = norm > thresholds.normalized_floor and score >= thresholds.absolute_floor
            if is_author:
                authors.add(dev)
            scores.append(DevScore(dev, c.fa, c.dl, c.ac, score, norm, is_author))
        files[fid] = FileAuthorship(fid, path, tuple(scores), frozenset(authors))
    return AuthorshipMap(files)


@dataclass(frozen=True, slots=True)
class AuthorProportion:
    developers: int
    authors: int
    proportion: float


def author_proportion(authorship: AuthorshipMap, fids: "list[int]") -> AuthorProportion:
    """Share of developers of the given live files who author at least one."""
    if not fids:
        raise ValueError("scope contains no live files")
    developers: set[DeveloperId] = set()
    authors: set[DeveloperId] = set()
    for fid in fids:
        fa = authorship.files[fid]
        developers.update(s.developer for s in fa.scores)
        authors.update(fa.authors)
    return AuthorProportion(len(developers), len(authors), len(authors) / len(developers))
