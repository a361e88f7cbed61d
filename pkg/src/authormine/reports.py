"""Report rows, CSV/JSON writers and graph exports.

All report output is deterministic: files are ordered by path,
developers by email, scopes as declared in the rules, and floats are
rendered with a fixed six-decimal format.  Metrics that are undefined
for a scope are written as "NA", never as zero.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from typing import IO, Sequence

from .doa import AuthorshipMap, DoaThresholds, DoaWeights, compute_authorship
from .network import (CoauthorGraph, assortativity, build_graph, clustering_avg_local,
                      clustering_global, mean_degree, solitary_authors)
from .profiles import profile_proportions
from .snapshot import ReleaseSnapshot
from .subsystems import SubsystemRules, scope_partition
from .workload import (adjusted_fences, files_per_author, gini, medcouple, quantile,
                       top_k_share)

SCOPE_ALL = "All"

AUTHORSHIP_HEADER = ["release", "file", "developer_email", "fa", "dl", "ac",
                     "doa_abs", "doa_norm", "is_author"]
WORKLOAD_HEADER = ["release", "scope", "n_authors", "min", "q1", "median", "q3",
                   "max", "medcouple", "fence_lo", "fence_hi", "gini",
                   "top1_share", "top10_share"]
PROFILES_HEADER = ["release", "scope", "n_authors", "specialists", "generalists",
                   "specialist_pct"]
NETWORK_HEADER = ["release", "scope", "vertices", "edges", "mean_degree",
                  "transitivity", "avg_local_clustering", "assortativity",
                  "solitary_count", "solitary_pct"]
EDGES_HEADER = ["author_a", "author_b", "shared_files"]


def fmt_float(value: "float | None") -> str:
    if value is None:
        return "NA"
    if value == 0.0:
        value = 0.0  # fold -0.0
    return f"{value:.6f}"


def scope_name(scope: "str | None") -> str:
    return SCOPE_ALL if scope is None else scope


def authorship_rows(release_name: str, authorship: AuthorshipMap) -> list[list[str]]:
    rows = []
    for fa in authorship:
        for s in fa.scores:
            rows.append([
                release_name, fa.path, s.developer.email,
                str(s.fa), str(s.dl), str(s.ac),
                fmt_float(s.doa_abs), fmt_float(s.doa_norm),
                "1" if s.is_author else "0",
            ])
    return rows


def workload_row(release_name: str, scope: "str | None",
                 authorship: AuthorshipMap, fids: "list[int]") -> list[str]:
    sample = files_per_author(authorship, fids) if fids else []
    n = len(sample)
    if n == 0:
        return [release_name, scope_name(scope), "0"] + ["NA"] * 11
    mc = fence_lo = fence_hi = None
    if n >= 3:
        mc = medcouple(sample)
        fences = adjusted_fences(sample)
        fence_lo, fence_hi = fences.lower, fences.upper
    top = top_k_share(authorship, fids, 10)
    return [
        release_name, scope_name(scope), str(n),
        fmt_float(quantile(sample, 0.0)),
        fmt_float(quantile(sample, 0.25)),
        fmt_float(quantile(sample, 0.5)),
        fmt_float(quantile(sample, 0.75)),
        fmt_float(quantile(sample, 1.0)),
        fmt_float(mc), fmt_float(fence_lo), fmt_float(fence_hi),
        fmt_float(gini(sample)),
        fmt_float(top.top1_share),
        fmt_float(None if top.top1_share is None else top.top1_share + top.next_share),
    ]


def profiles_row(release_name: str, scope: "str | None", authorship: AuthorshipMap,
                 rules: SubsystemRules, fids: "list[int]") -> list[str]:
    try:
        breakdown = profile_proportions(authorship, rules, fids) if fids else None
    except ValueError:
        breakdown = None
    if breakdown is None:
        return [release_name, scope_name(scope), "0", "0", "0", "NA"]
    return [
        release_name, scope_name(scope), str(breakdown.n_authors),
        str(breakdown.specialists), str(breakdown.generalists),
        fmt_float(breakdown.specialist_pct),
    ]


def network_row(release_name: str, scope: "str | None",
                graph: CoauthorGraph) -> list[str]:
    n = graph.n_vertices
    solitary = len(solitary_authors(graph))
    return [
        release_name, scope_name(scope), str(n), str(graph.n_edges),
        fmt_float(mean_degree(graph) if n else None),
        fmt_float(clustering_global(graph)),
        fmt_float(clustering_avg_local(graph)),
        fmt_float(assortativity(graph)),
        str(solitary),
        fmt_float(100.0 * solitary / n if n else None),
    ]


@dataclass
class ReleaseReport:
    release: str
    authorship_rows: list[list[str]]
    workload_rows: list[list[str]]
    profile_rows: list[list[str]]
    network_rows: list[list[str]]


def release_report(snapshot: ReleaseSnapshot, rules: SubsystemRules,
                   thresholds: DoaThresholds, weights: DoaWeights) -> ReleaseReport:
    """All report rows for one release, scopes ordered All-first."""
    authorship = compute_authorship(snapshot, thresholds, weights)
    partition = scope_partition(snapshot, rules)
    name = snapshot.release.name
    workload_rows = []
    profile_rows = []
    network_rows = []
    for scope, fids in partition.items():
        workload_rows.append(workload_row(name, scope, authorship, fids))
        profile_rows.append(profiles_row(name, scope, authorship, rules, fids))
        network_rows.append(network_row(name, scope, build_graph(authorship, fids)))
    return ReleaseReport(name, authorship_rows(name, authorship),
                         workload_rows, profile_rows, network_rows)


def edge_rows(graph: CoauthorGraph) -> list[list[str]]:
    return [[u.email, v.email, str(graph.weights[(u, v)])] for u, v in graph.edges]


def write_csv(fh: IO[str], header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def rows_as_objects(header: Sequence[str], rows: Sequence[Sequence[str]]) -> list[dict]:
    return [dict(zip(header, row)) for row in rows]


def write_json_mirror(fh: IO[str], header: Sequence[str],
                      rows: Sequence[Sequence[str]]) -> None:
    json.dump(rows_as_objects(header, rows), fh, indent=2, ensure_ascii=False)
    fh.write("\n")


def write_pajek(fh: IO[str], graph: CoauthorGraph) -> None:
    """Plain-text graph interchange: vertex list plus weighted edge list."""
    index = {v: i for i, v in enumerate(graph.vertices, start=1)}
    fh.write(f"*Vertices {graph.n_vertices}\n")
    for v, i in index.items():
        fh.write(f'{i} "{v.email}"\n')
    fh.write("*Edges\n")
    for u, v in graph.edges:
        fh.write(f"{index[u]} {index[v]} {graph.weights[(u, v)]}\n")


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def build_manifest(version: str, settings: dict, inputs: list[dict],
                   outputs: list[dict]) -> dict:
    """Run manifest with a content hash over settings and input digests.

    Paths are recorded as basenames so that identical inputs and
    settings produce a byte-identical manifest anywhere.
    """
    hashed = {
        "settings": settings,
        "inputs": [(item["role"], item["name"], item["sha256"]) for item in inputs],
    }
    config_hash = sha256_text(json.dumps(hashed, sort_keys=True))
    return {
        "tool": "authormine",
        "version": version,
        "settings": settings,
        "inputs": inputs,
        "outputs": outputs,
        "config_hash": config_hash,
    }


def write_manifest(fh: IO[str], manifest: dict) -> None:
    json.dump(manifest, fh, indent=2, sort_keys=True, ensure_ascii=False)
    fh.write("\n")
