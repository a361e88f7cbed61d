"""One-pass accumulation of per-file counters and release snapshots.

Every non-merge commit touching a file counts as one delivery for its
author on that file; acceptances are derived at read time as the file's
total commit count minus the developer's deliveries.  The creating
commit is a delivery like any other and additionally marks first
authorship.  Files are tracked as logical ids so that, with rename
following enabled, counters survive file moves; with it disabled a
rename is a delete plus a fresh creation.

Accumulation is strictly sequential.  Snapshots taken at release
boundaries are frozen copies, safe to share across threads and feed to
any number of concurrent downstream analytics.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .doa import FileDevCounters
from .errors import BoundaryNotFoundError
from .ingest import ChangeKind, CommitRecord, DeveloperId, ReleaseTag

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FileCounters:
    """Frozen per-file accumulation state: creator, commit total, deliveries."""

    creator: DeveloperId
    total_commits: int
    deliveries: Mapping[DeveloperId, int]


@dataclass(frozen=True)
class ReleaseSnapshot:
    """Immutable view of the history up to (and including) one release boundary.

    `live` maps current repo paths to logical file ids; `files` retains
    counters for every logical file ever created, including deleted
    ones.  Authorship queries are restricted to live files.
    """

    release: ReleaseTag
    live: Mapping[str, int]
    files: Mapping[int, FileCounters]
    developer_universe: frozenset[DeveloperId]

    @property
    def live_files(self) -> frozenset[int]:
        return frozenset(self.live.values())

    def changed(self, fid: int) -> frozenset[DeveloperId]:
        return frozenset(self.files[fid].deliveries)

    def counters_for(self, fid: int) -> dict[DeveloperId, FileDevCounters]:
        state = self.files[fid]
        return {
            dev: FileDevCounters(
                fa=1 if dev == state.creator else 0,
                dl=dl,
                ac=state.total_commits - dl,
            )
            for dev, dl in state.deliveries.items()
        }


class _FileState:
    __slots__ = ("creator", "total", "deliveries")

    def __init__(self, creator: DeveloperId):
        self.creator = creator
        self.total = 0
        self.deliveries: dict[DeveloperId, int] = {}


class _Accumulator:
    def __init__(self, follow_renames: bool):
        self.follow_renames = follow_renames
        self.files: dict[int, _FileState] = {}
        self.live: dict[str, int] = {}
        self.devs: set[DeveloperId] = set()
        self._next_fid = 0

    def _deliver(self, fid: int, dev: DeveloperId, delivered: set[int]) -> None:
        # at most one delivery per (commit, logical file)
        if fid in delivered:
            return
        delivered.add(fid)
        state = self.files[fid]
        state.total += 1
        state.deliveries[dev] = state.deliveries.get(dev, 0) + 1

    def _create(self, path: str, dev: DeveloperId, delivered: set[int]) -> int:
        fid = self._next_fid
        self._next_fid += 1
        self.files[fid] = _FileState(creator=dev)
        self.live[path] = fid
        self._deliver(fid, dev, delivered)
        return fid

    def _add(self, commit_id: str, path: str, dev: DeveloperId, delivered: set[int]) -> None:
        fid = self.live.get(path)
        if fid is not None:
            logger.warning("commit %s adds already-live path %s; treating as a change",
                           commit_id, path)
            self._deliver(fid, dev, delivered)
        else:
            self._create(path, dev, delivered)

    def _modify(self, commit_id: str, path: str, dev: DeveloperId, delivered: set[int]) -> None:
        fid = self.live.get(path)
        if fid is not None:
            self._deliver(fid, dev, delivered)
        else:
            logger.warning("commit %s changes unknown path %s; treating as an "
                           "implicit creation (truncated history?)", commit_id, path)
            self._create(path, dev, delivered)

    def _delete(self, commit_id: str, path: str, dev: DeveloperId, delivered: set[int]) -> None:
        fid = self.live.pop(path, None)
        if fid is not None:
            self._deliver(fid, dev, delivered)
        else:
            logger.warning("commit %s deletes unknown path %s; treating as an "
                           "implicit creation (truncated history?)", commit_id, path)
            self._create(path, dev, delivered)
            del self.live[path]

    def _rename(self, commit_id: str, new_path: str, old_path: str,
                dev: DeveloperId, delivered: set[int]) -> None:
        if not self.follow_renames:
            self._delete(commit_id, old_path, dev, delivered)
            self._add(commit_id, new_path, dev, delivered)
            return
        fid = self.live.pop(old_path, None)
        if fid is None:
            logger.warning("commit %s renames unknown path %s; treating as an "
                           "implicit creation at %s", commit_id, old_path, new_path)
            self._add(commit_id, new_path, dev, delivered)
            return
        if new_path in self.live and self.live[new_path] != fid:
            logger.warning("commit %s renames %s onto live path %s; the previous "
                           "file becomes dead", commit_id, old_path, new_path)
        self.live[new_path] = fid
        self._deliver(fid, dev, delivered)

    def feed(self, record: CommitRecord) -> None:
        self.devs.add(record.author)
        delivered: set[int] = set()
        for change in record.changes:
            if change.kind is ChangeKind.ADD:
                self._add(record.commit_id, change.path, record.author, delivered)
            elif change.kind is ChangeKind.MODIFY:
                self._modify(record.commit_id, change.path, record.author, delivered)
            elif change.kind is ChangeKind.DELETE:
                self._delete(record.commit_id, change.path, record.author, delivered)
            else:
                self._rename(record.commit_id, change.path, change.old_path,
                             record.author, delivered)

    def freeze(self, release: ReleaseTag) -> ReleaseSnapshot:
        files = {
            fid: FileCounters(state.creator, state.total, dict(state.deliveries))
            for fid, state in self.files.items()
        }
        return ReleaseSnapshot(release, dict(self.live), files, frozenset(self.devs))


def iter_snapshots(records: Iterable[CommitRecord],
                   releases: Sequence[ReleaseTag],
                   follow_renames: bool = True) -> Iterator[ReleaseSnapshot]:
    """Yield one frozen snapshot per release, in a single pass over the records.

    Records must be ordered oldest first and releases must appear in
    stream order.  Raises BoundaryNotFoundError if a boundary commit
    never shows up.
    """
    if not releases:
        return
    acc = _Accumulator(follow_renames)
    pending = list(releases)
    next_tag = pending.pop(0)
    for record in records:
        acc.feed(record)
        while next_tag is not None and record.commit_id == next_tag.boundary:
            yield acc.freeze(next_tag)
            next_tag = pending.pop(0) if pending else None
        if next_tag is None:
            return
    raise BoundaryNotFoundError(
        f"boundary commit {next_tag.boundary!r} for release {next_tag.name!r} "
        "not found in the record stream")


def snapshot_at(records: Iterable[CommitRecord], release: ReleaseTag,
                follow_renames: bool = True) -> ReleaseSnapshot:
    """Materialize the snapshot for a single release from scratch."""
    return next(iter_snapshots(records, [release], follow_renames))
