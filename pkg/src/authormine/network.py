"""Co-authorship graph construction and network metrics.

Vertices are the authors in scope; an undirected edge links two authors
who share at least one authored live file.  The graph is simple (no
self-loops or multi-edges); edge weights record the number of shared
files but every metric here is unweighted.  Metrics that are undefined
for a given graph (no length-2 paths, zero degree variance) return
None rather than a fake zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .doa import AuthorshipMap
from .ingest import DeveloperId

Edge = tuple[DeveloperId, DeveloperId]


@dataclass(frozen=True)
class CoauthorGraph:
    vertices: tuple[DeveloperId, ...]
    edges: tuple[Edge, ...]
    weights: Mapping[Edge, int]
    adjacency: Mapping[DeveloperId, frozenset[DeveloperId]]

    @classmethod
    def assemble(cls, vertices: Iterable[DeveloperId],
                 weighted_edges: Mapping[Edge, int]) -> "CoauthorGraph":
        """Normalize vertices/edges into deterministic sorted order."""
        verts = tuple(sorted(set(vertices), key=DeveloperId.sort_key))
        vert_set = set(verts)
        adjacency: dict[DeveloperId, set[DeveloperId]] = {v: set() for v in verts}
        weights: dict[Edge, int] = {}
        for (u, v), w in weighted_edges.items():
            if u == v:
                raise ValueError("self-loops are not allowed")
            if u not in vert_set or v not in vert_set:
                raise ValueError("edge endpoint is not a vertex")
            a, b = sorted((u, v), key=DeveloperId.sort_key)
            weights[(a, b)] = weights.get((a, b), 0) + w
            adjacency[a].add(b)
            adjacency[b].add(a)
        edges = tuple(sorted(weights, key=lambda e: (e[0].sort_key(), e[1].sort_key())))
        frozen_adj = {v: frozenset(neigh) for v, neigh in adjacency.items()}
        return cls(verts, edges, weights, frozen_adj)

    def degree(self, vertex: DeveloperId) -> int:
        return len(self.adjacency[vertex])

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)


def build_graph(authorship: AuthorshipMap, fids: "list[int]") -> CoauthorGraph:
    """Co-authorship graph over the authors of the given live files.

    An empty scope yields an empty graph.  Solitary authors (degree 0)
    are retained as vertices.
    """
    vertices: set[DeveloperId] = set()
    weights: dict[Edge, int] = {}
    for fid in fids:
        authors = sorted(authorship.files[fid].authors, key=DeveloperId.sort_key)
        vertices.update(authors)
        for pair in combinations(authors, 2):
            weights[pair] = weights.get(pair, 0) + 1
    return CoauthorGraph.assemble(vertices, weights)


def mean_degree(graph: CoauthorGraph) -> float:
    if graph.n_vertices == 0:
        raise ValueError("mean degree of an empty graph")
    return 2.0 * graph.n_edges / graph.n_vertices


def _connected_triples(graph: CoauthorGraph) -> int:
    return sum(d * (d - 1) // 2
               for d in (graph.degree(v) for v in graph.vertices))


def clustering_global(graph: CoauthorGraph) -> "float | None":
    """Transitivity: 3 * triangles / connected triples, or None when the
    graph has no length-2 paths."""
    triples = _connected_triples(graph)
    if triples == 0:
        return None
    closed = sum(len(graph.adjacency[u] & graph.adjacency[v])
                 for u, v in graph.edges)
    return closed / triples


def clustering_avg_local(graph: CoauthorGraph) -> "float | None":
    """Mean local clustering over vertices of degree >= 2, or None when
    no vertex qualifies."""
    locals_: list[float] = []
    for v in graph.vertices:
        neighbors = graph.adjacency[v]
        d = len(neighbors)
        if d < 2:
            continue
        links = sum(1 for a, b in combinations(tuple(neighbors), 2)
                    if b in graph.adjacency[a])
        locals_.append(links / (d * (d - 1) / 2))
    if not locals_:
        return None
    return sum(locals_) / len(locals_)


def assortativity(graph: CoauthorGraph) -> "float | None":
    """Degree assortativity: Pearson correlation over the 2|E| ordered
    edge-endpoint degree pairs.  None when the graph has no edges or all
    endpoint degrees are equal (zero variance)."""
    if graph.n_edges == 0:
        return None
    xs: list[int] = []
    ys: list[int] = []
    for u, v in graph.edges:
        du, dv = graph.degree(u), graph.degree(v)
        xs.extend((du, dv))
        ys.extend((dv, du))
    n = len(xs)
    mean_x = sum(xs) / n
    mean_y = sum(ys) / n
    cov = sum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    var_x = sum((x - mean_x) ** 2 for x in xs)
    var_y = sum((y - mean_y) ** 2 for y in ys)
    if var_x == 0 or var_y == 0:
        return None
    return cov / math.sqrt(var_x * var_y)


def solitary_authors(graph: CoauthorGraph) -> frozenset[DeveloperId]:
    return frozenset(v for v in graph.vertices if graph.degree(v) == 0)
