"""Classify repository paths into named subsystems with ordered rules."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from typing import NamedTuple

from .errors import ConfigError
from .patterns import PathRule
from .snapshot import ReleaseSnapshot


@dataclass(frozen=True)
class SubsystemRules:
    """Ordered (pattern, label) pairs; the first match wins, else `fallback`."""

    rules: tuple[tuple[PathRule, str], ...]
    fallback: str

    @property
    def labels(self) -> tuple[str, ...]:
        """All labels in declaration order, fallback last."""
        seen: list[str] = []
        for _, label in self.rules:
            if label not in seen:
                seen.append(label)
        if self.fallback not in seen:
            seen.append(self.fallback)
        return tuple(seen)

    def classify(self, path: str) -> str:
        for rule, label in self.rules:
            if rule.matches(path):
                return label
        return self.fallback


def classify(path: str, rules: SubsystemRules) -> str:
    return rules.classify(path)


def make_rules(pairs: "list[tuple[str, str]]", fallback: str) -> SubsystemRules:
    return SubsystemRules(
        tuple((PathRule.compile(pattern), label) for pattern, label in pairs),
        fallback)


def load_rules(path) -> SubsystemRules:
    """Read a rules file: tab-separated `pattern<TAB>label` lines plus a
    required `fallback<TAB>label` line; '#' starts a comment."""
    pairs: list[tuple[str, str]] = []
    fallback: str | None = None
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "\t" not in stripped:
                raise ConfigError(f"{path}: line {line_no}: expected 'pattern<TAB>label'")
            pattern, label = (part.strip() for part in stripped.split("\t", 1))
            if not label:
                raise ConfigError(f"{path}: line {line_no}: empty label")
            if pattern == "fallback":
                if fallback is not None:
                    raise ConfigError(f"{path}: line {line_no}: duplicate fallback")
                fallback = label
            else:
                pairs.append((pattern, label))
    if fallback is None:
        raise ConfigError(f"{path}: missing required 'fallback<TAB>label' line")
    return make_rules(pairs, fallback)


_default_rules: SubsystemRules | None = None


def default_rules() -> SubsystemRules:
    """The bundled seven-subsystem decomposition for Linux-like trees."""
    global _default_rules
    if _default_rules is None:
        ref = resources.files("authormine.data").joinpath("subsystem_rules.tsv")
        with resources.as_file(ref) as path:
            _default_rules = load_rules(path)
    return _default_rules


class SubsystemSize(NamedTuple):
    file_count: int
    percent: float


def subsystem_sizes(snapshot: ReleaseSnapshot, rules: SubsystemRules,
                    ) -> dict[str, SubsystemSize]:
    """Live-file counts and percentages per subsystem, every label included."""
    if not snapshot.live:
        raise ValueError("snapshot has no live files")
    counts = {label: 0 for label in rules.labels}
    for path in snapshot.live:
        counts[rules.classify(path)] += 1
    total = len(snapshot.live)
    return {label: SubsystemSize(n, 100.0 * n / total) for label, n in counts.items()}


def scope_partition(snapshot: ReleaseSnapshot, rules: SubsystemRules,
                    ) -> "dict[str | None, list[int]]":
    """Live file ids per scope: key None is the whole snapshot, then one
    key per label in rules order.  File ids are ordered by live path."""
    partition: dict[str | None, list[int]] = {None: []}
    for label in rules.labels:
        partition[label] = []
    for path in sorted(snapshot.live):
        fid = snapshot.live[path]
        partition[None].append(fid)
        partition[rules.classify(path)].append(fid)
    return partition
