"""Commit-log ingestion: NDJSON parsing, identity resolution, path filters.

The expected input is one JSON object per line, oldest commit first:

    {"id": "<hash>", "an": "<author name>", "ae": "<author email>",
     "ts": <unix seconds>, "ch": [["A", "path"], ["M", "path"],
     ["D", "path"], ["R", "new_path", "old_path"], ...]}

Unknown keys are ignored.  Merge commits must not be present in the
stream (the exporter drops them); only commit authors are represented,
committers are not part of the schema at all.
"""

from __future__ import annotations

import json
import logging
import posixpath
import re
from dataclasses import dataclass, replace
from enum import Enum
from typing import IO, Iterable, Iterator, Mapping, Union

from .errors import ConfigError, LogParseError, LogSchemaError
from .patterns import PathMatcher

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class DeveloperId:
    """Canonical developer identity; equality is on (name, email)."""

    name: str
    email: str

    def sort_key(self) -> tuple[str, str]:
        return (self.email, self.name)


class ChangeKind(Enum):
    ADD = "A"
    MODIFY = "M"
    DELETE = "D"
    RENAME = "R"


@dataclass(frozen=True, slots=True)
class FileChange:
    kind: ChangeKind
    path: str
    old_path: str | None = None

    def __post_init__(self):
        if (self.kind is ChangeKind.RENAME) != (self.old_path is not None):
            raise ValueError("old_path must be present exactly for renames")


@dataclass(frozen=True, slots=True)
class CommitRecord:
    commit_id: str
    author: DeveloperId
    timestamp: int
    changes: tuple[FileChange, ...]


@dataclass(frozen=True, slots=True)
class ReleaseTag:
    """A named release whose history ends at (and includes) `boundary`."""

    name: str
    boundary: str


AliasMap = Mapping[tuple[str, str], DeveloperId]

_KIND_BY_CODE = {k.value: k for k in ChangeKind}


def _normalize_path(raw: object, line_no: int) -> str:
    if not isinstance(raw, str) or not raw:
        raise LogSchemaError("change path must be a non-empty string", line_no, "ch")
    path = posixpath.normpath(raw)
    if path.startswith("/") or path == "." or path == ".." or path.startswith("../"):
        raise LogSchemaError(f"illegal path {raw!r}", line_no, "ch")
    return path


def _require(obj: dict, field: str, line_no: int) -> object:
    if field not in obj:
        raise LogSchemaError("missing required field", line_no, field)
    return obj[field]


def _parse_change(entry: object, line_no: int) -> FileChange:
    if not isinstance(entry, (list, tuple)) or not entry:
        raise LogSchemaError("change entry must be a non-empty array", line_no, "ch")
    code = entry[0]
    kind = _KIND_BY_CODE.get(code) if isinstance(code, str) else None
    if kind is None:
        raise LogSchemaError(f"unknown change kind {code!r}", line_no, "ch")
    if kind is ChangeKind.RENAME:
        if len(entry) != 3:
            raise LogSchemaError("rename entry must be [\"R\", new, old]", line_no, "ch")
        return FileChange(kind, _normalize_path(entry[1], line_no),
                          _normalize_path(entry[2], line_no))
    if len(entry) != 2:
        raise LogSchemaError("change entry must be [kind, path]", line_no, "ch")
    return FileChange(kind, _normalize_path(entry[1], line_no))


def parse_commit_log(stream: Union[IO[bytes], IO[str], Iterable[bytes], Iterable[str]],
                     ) -> Iterator[CommitRecord]:
    """Parse an NDJSON commit log into CommitRecords, in stream order.

    Blank lines are skipped.  Records with an empty change list are
    dropped.  Decreasing timestamps are tolerated (git histories contain
    clock skew) and reported once as a warning.
    """
    skew_warned = False
    last_ts: int | None = None
    for line_no, raw in enumerate(stream, 1):
        if isinstance(raw, bytes):
            try:
                line = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise LogParseError(f"invalid UTF-8: {exc}", line_no) from exc
        else:
            line = raw
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LogParseError(f"invalid JSON: {exc.msg}", line_no) from exc
        if not isinstance(obj, dict):
            raise LogSchemaError("record must be a JSON object", line_no, "record")

        commit_id = _require(obj, "id", line_no)
        if not isinstance(commit_id, str) or not commit_id:
            raise LogSchemaError("must be a non-empty string", line_no, "id")
        name = _require(obj, "an", line_no)
        if not isinstance(name, str):
            raise LogSchemaError("must be a string", line_no, "an")
        email = _require(obj, "ae", line_no)
        if not isinstance(email, str):
            raise LogSchemaError("must be a string", line_no, "ae")
        ts = _require(obj, "ts", line_no)
        if isinstance(ts, bool) or not isinstance(ts, int):
            raise LogSchemaError("must be an integer", line_no, "ts")
        ch = _require(obj, "ch", line_no)
        if not isinstance(ch, list):
            raise LogSchemaError("must be an array", line_no, "ch")

        if last_ts is not None and ts < last_ts and not skew_warned:
            logger.warning(
                "commit %s at line %d has a timestamp earlier than its "
                "predecessor; further clock-skew warnings suppressed",
                commit_id, line_no)
            skew_warned = True
        last_ts = ts

        changes = tuple(_parse_change(entry, line_no) for entry in ch)
        if not changes:
            logger.debug("dropping commit %s (line %d): no file changes", commit_id, line_no)
            continue
        yield CommitRecord(commit_id, DeveloperId(name, email), ts, changes)


def resolve_aliases(records: Iterable[CommitRecord], alias_map: AliasMap,
                    ) -> Iterator[CommitRecord]:
    """Replace raw author identities with canonical ones.

    Lookup keys are (trimmed name, trimmed lowercased email).  Identities
    absent from the map pass through with the email lowercased, which is
    the only automatic normalization applied.
    """
    seen_names: dict[str, str] = {}
    collisions: set[str] = set()
    for record in records:
        raw = record.author
        key = (raw.name.strip(), raw.email.strip().lower())
        canonical = alias_map.get(key)
        if canonical is None:
            lowered = raw.email.lower()
            canonical = raw if raw.email == lowered else DeveloperId(raw.name, lowered)
        known = seen_names.setdefault(canonical.email, canonical.name)
        if known != canonical.name and canonical.email not in collisions:
            collisions.add(canonical.email)
            logger.warning(
                "email %s is used with different names (%r, %r); "
                "consider an alias map entry", canonical.email, known, canonical.name)
        yield record if canonical is raw else replace(record, author=canonical)


def apply_path_filters(records: Iterable[CommitRecord],
                       exclusion_rules: "list[str] | tuple[str, ...]",
                       ) -> Iterator[CommitRecord]:
    """Drop file changes matching any exclusion rule.

    A rename is removed when either its new or its old path matches.
    Records left without changes are dropped entirely.
    """
    matcher = PathMatcher(exclusion_rules)
    if not matcher:
        yield from records
        return
    for record in records:
        kept = tuple(
            ch for ch in record.changes
            if not (matcher.matches(ch.path)
                    or (ch.old_path is not None and matcher.matches(ch.old_path))))
        if not kept:
            continue
        if len(kept) == len(record.changes):
            yield record
        else:
            yield replace(record, changes=kept)


_ALIAS_LINE = re.compile(
    r"^(?P<rn>[^<>]*)<(?P<re>[^<>]*)>\s*=\s*(?P<cn>[^<>]*)<(?P<ce>[^<>]*)>\s*$")


def load_alias_map(path) -> dict[tuple[str, str], DeveloperId]:
    """Read an alias map file: `raw_name <raw_email> = name <email>` per line."""
    mapping: dict[tuple[str, str], DeveloperId] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            m = _ALIAS_LINE.match(stripped)
            if m is None:
                raise ConfigError(f"{path}: line {line_no}: expected "
                                  "'name <email> = name <email>'")
            key = (m["rn"].strip(), m["re"].strip().lower())
            mapping[key] = DeveloperId(m["cn"].strip(), m["ce"].strip().lower())
    return mapping


def load_releases(path) -> list[ReleaseTag]:
    """Read a release list file: `tag_name commit_id` per line, oldest first."""
    releases: list[ReleaseTag] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            fields = stripped.split()
            if len(fields) != 2:
                raise ConfigError(f"{path}: line {line_no}: expected 'tag_name commit_id'")
            name, boundary = fields
            if name in seen:
                raise ConfigError(f"{path}: line {line_no}: duplicate release {name!r}")
            seen.add(name)
            releases.append(ReleaseTag(name, boundary))
    return releases
