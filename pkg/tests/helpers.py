"""Shared test utilities: record builders and engine/oracle comparison."""

from __future__ import annotations

import json

from authormine import (AuthorshipMap, ChangeKind, CommitRecord, CoauthorGraph,
                        DeveloperId, FileChange, ReleaseSnapshot, compute_authorship)


def dev(i: int) -> DeveloperId:
    return DeveloperId(f"Dev {i}", f"d{i}@example.org")


def make_record(commit_id: str, author: DeveloperId, ts: int,
                changes: list[tuple]) -> CommitRecord:
    parsed = []
    for entry in changes:
        if entry[0] == "R":
            parsed.append(FileChange(ChangeKind.RENAME, entry[1], entry[2]))
        else:
            parsed.append(FileChange(ChangeKind(entry[0]), entry[1]))
    return CommitRecord(commit_id, author, ts, tuple(parsed))


def records_from_oracle(oracle_records: list[dict]) -> list[CommitRecord]:
    """Convert oracle-side plain records into package CommitRecords."""
    out = []
    for r in oracle_records:
        changes = tuple(
            FileChange(ChangeKind(kind), path, old)
            for kind, path, old in r["changes"])
        out.append(CommitRecord(r["id"], DeveloperId(*r["dev"]), r["ts"], changes))
    return out


def engine_view(snapshot: ReleaseSnapshot, authorship: AuthorshipMap) -> dict:
    """Engine results in the oracle's comparison shape, keyed by path/email."""
    view = {}
    for fa in authorship:
        view[fa.path] = {
            "counters": {s.developer.email: (s.fa, s.dl, s.ac) for s in fa.scores},
            "doa": {s.developer.email: (s.doa_abs, s.doa_norm) for s in fa.scores},
            "authors": {d.email for d in fa.authors},
        }
    return view


def assert_views_match(engine: dict, oracle: dict, tol: float = 1e-9) -> None:
    assert set(engine) == set(oracle), "live path sets differ"
    for path in oracle:
        e, o = engine[path], oracle[path]
        assert e["counters"] == o["counters"], f"counters differ for {path}"
        assert set(e["doa"]) == set(o["doa"])
        for email, (abs_o, norm_o) in o["doa"].items():
            abs_e, norm_e = e["doa"][email]
            assert abs(abs_e - abs_o) <= tol, f"doa_abs differs for {path}/{email}"
            assert abs(norm_e - norm_o) <= tol, f"doa_norm differs for {path}/{email}"
        assert e["authors"] == o["authors"], f"author sets differ for {path}"


def graph_from_data(vertices: list[int], edges: set) -> CoauthorGraph:
    """Build a package graph from oracle-style integer vertex data."""
    devs = {i: DeveloperId(f"Dev {i:02d}", f"d{i:02d}@example.org") for i in vertices}
    weights = {}
    for e in edges:
        u, v = sorted(e)
        weights[(devs[u], devs[v])] = 1
    return CoauthorGraph.assemble(devs.values(), weights)


def canonical_snapshot_json(snapshot: ReleaseSnapshot) -> str:
    """Deterministic serialized form for replay-determinism checks."""
    payload = {
        "release": [snapshot.release.name, snapshot.release.boundary],
        "live": {path: fid for path, fid in sorted(snapshot.live.items())},
        "files": {
            str(fid): {
                "creator": [fc.creator.name, fc.creator.email],
                "total": fc.total_commits,
                "deliveries": {
                    f"{d.name}|{d.email}": n
                    for d, n in sorted(fc.deliveries.items(),
                                       key=lambda kv: kv[0].sort_key())
                },
            }
            for fid, fc in sorted(snapshot.files.items())
        },
        "devs": sorted(f"{d.name}|{d.email}" for d in snapshot.developer_universe),
    }
    return json.dumps(payload, sort_keys=True)


def view_at(records, release, follow_renames=True):
    """Engine snapshot + authorship view for one release, from scratch."""
    from authormine import snapshot_at

    snap = snapshot_at(records, release, follow_renames=follow_renames)
    return snap, engine_view(snap, compute_authorship(snap))
