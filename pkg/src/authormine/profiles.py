"""Specialist/generalist author profiles per subsystem."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .doa import AuthorshipMap
from .ingest import DeveloperId
from .subsystems import SubsystemRules


class ProfileKind(Enum):
    SPECIALIST = "specialist"
    GENERALIST = "generalist"


@dataclass(frozen=True)
class AuthorProfile:
    developer: DeveloperId
    subsystems: frozenset[str]
    kind: ProfileKind


def _subsystem_set(developer: DeveloperId, authorship: AuthorshipMap,
                   rules: SubsystemRules) -> frozenset[str]:
    fids = authorship.authored_files(developer)
    return frozenset(rules.classify(authorship.files[fid].path) for fid in fids)


def classify_author(developer: DeveloperId, authorship: AuthorshipMap,
                    rules: SubsystemRules) -> AuthorProfile:
    """Profile an author: specialist with one subsystem, generalist otherwise.

    Raises ValueError for developers who author no live file; profiles
    are defined for authors only.
    """
    labels = _subsystem_set(developer, authorship, rules)
    if not labels:
        raise ValueError(f"{developer.email} authors no live file")
    kind = ProfileKind.SPECIALIST if len(labels) == 1 else ProfileKind.GENERALIST
    return AuthorProfile(developer, labels, kind)


@dataclass(frozen=True, slots=True)
class ProfileBreakdown:
    n_authors: int
    specialists: int
    generalists: int
    specialist_pct: float
    generalist_pct: float


def profile_proportions(authorship: AuthorshipMap, rules: SubsystemRules,
                        fids: "list[int]") -> ProfileBreakdown:
    """Specialist/generalist split among the authors of the given files.

    Scope membership follows authored-file location, but each author's
    kind is judged on their global subsystem set: an author who owns a
    file here and files elsewhere is a generalist in this scope too.
    """
    members: set[DeveloperId] = set()
    for fid in fids:
        members.update(authorship.files[fid].authors)
    if not members:
        raise ValueError("scope has no authors")
    specialists = sum(
        1 for dev in members
        if len(_subsystem_set(dev, authorship, rules)) == 1)
    n = len(members)
    generalists = n - specialists
    return ProfileBreakdown(n, specialists, generalists,
                            100.0 * specialists / n, 100.0 * generalists / n)
