"""Distribution statistics over files-per-author workloads.

The workload sample for a scope holds one count per author owning at
least one live file there.  On top of it we compute linear-interpolation
quantiles, the medcouple robust skewness statistic, skew-adjusted
boxplot fences, the Gini inequality coefficient and top-k author shares.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .doa import AuthorshipMap
from .ingest import DeveloperId

WorkloadSample = Sequence[float]


def files_per_author(authorship: AuthorshipMap, fids: "list[int]",
                     include_zero_file_developers: bool = False) -> list[int]:
    """Sorted authored-file counts, one entry per author in the scope.

    With `include_zero_file_developers` the sample additionally carries a
    zero for every developer who changed a scope file without authoring
    any, which biases inequality measures toward the full developer
    population.  An empty list signals a scope without authors.
    """
    counts: dict[DeveloperId, int] = {}
    changers: set[DeveloperId] = set()
    for fid in fids:
        fa = authorship.files[fid]
        changers.update(s.developer for s in fa.scores)
        for dev in fa.authors:
            counts[dev] = counts.get(dev, 0) + 1
    sample = list(counts.values())
    if include_zero_file_developers:
        sample.extend(0 for _ in range(len(changers) - len(counts)))
    sample.sort()
    return sample


def quantile(sample: WorkloadSample, p: float) -> float:
    """Order statistic at rank (n-1)*p with linear interpolation."""
    if not sample:
        raise ValueError("quantile of an empty sample")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must be in [0, 1], got {p}")
    xs = sorted(sample)
    h = (len(xs) - 1) * p
    lo = math.floor(h)
    hi = math.ceil(h)
    if lo == hi:
        return float(xs[lo])
    return xs[lo] + (h - lo) * (xs[hi] - xs[lo])


def medcouple(sample: WorkloadSample) -> float:
    """Robust skewness in [-1, 1]: the median of the couple kernel
    h(x_i, x_j) = ((x_j - m) - (m - x_i)) / (x_j - x_i) over pairs with
    x_i <= m <= x_j, where ties at the median fall back to a sign kernel.

    Evaluation is the O(n^2) kernel matrix, which is exact and adequate
    for per-scope author counts.
    """
    xs = np.sort(np.asarray(sample, dtype=np.float64))
    n = xs.size
    if n < 3:
        raise ValueError("medcouple requires at least 3 values")
    if n % 2 == 0:
        m = 0.5 * (xs[n // 2 - 1] + xs[n // 2])
    else:
        m = xs[(n - 1) // 2]
    z = xs - m
    lower = z[z <= 0.0]
    upper = z[z >= 0.0][:, None]
    denom = upper - lower
    both_zero = (lower == 0.0) & (upper == 0.0)
    denom[both_zero] = np.inf
    h = (upper + lower) / denom
    ties = int(np.count_nonzero(lower == 0.0))
    if ties:
        # sign kernel for median ties: -1 above the anti-diagonal, 0 on
        # it, +1 below; rows are the zero uppers, columns the zero lowers
        block = np.ones((ties, ties)) - np.eye(ties)
        block -= 2 * np.triu(block)
        block = np.fliplr(block)
        h[:ties, -ties:] = block
    return float(np.median(h))


@dataclass(frozen=True, slots=True)
class Fences:
    lower: float
    upper: float


def adjusted_fences(sample: WorkloadSample, whisker: float = 1.5) -> Fences:
    """Skew-adjusted boxplot fences.

    With medcouple MC >= 0 the whiskers are
    [Q1 - w*exp(-4*MC)*IQR, Q3 + w*exp(3*MC)*IQR]; for MC < 0 the
    exponents swap to -3 and 4.  MC = 0 reduces to the classic Tukey
    fences.
    """
    q1 = quantile(sample, 0.25)
    q3 = quantile(sample, 0.75)
    iqr = q3 - q1
    mc = medcouple(sample)
    if mc >= 0:
        return Fences(q1 - whisker * math.exp(-4.0 * mc) * iqr,
                      q3 + whisker * math.exp(3.0 * mc) * iqr)
    return Fences(q1 - whisker * math.exp(-3.0 * mc) * iqr,
                  q3 + whisker * math.exp(4.0 * mc) * iqr)


def outliers(sample: WorkloadSample, fences: Fences) -> list[float]:
    return [x for x in sample if x < fences.lower or x > fences.upper]


def gini(sample: WorkloadSample) -> float:
    """Gini coefficient, population convention: sum|x_i - x_j| / (2 n^2 mean).

    Computed via the sorted-index identity, which is exact for integer
    samples.  0 is perfect equality; values approach 1 with maximal
    concentration.
    """
    if not sample:
        raise ValueError("gini of an empty sample")
    xs = sorted(sample)
    if xs[0] < 0:
        raise ValueError("gini requires non-negative values")
    total = float(sum(xs))
    if total == 0:
        raise ValueError("gini is undefined for a zero-mean sample")
    n = len(xs)
    weighted = sum((2 * i - n - 1) * x for i, x in enumerate(xs, start=1))
    return weighted / (n * total)


@dataclass(frozen=True, slots=True)
class AuthorRank:
    developer: DeveloperId
    files: int
    share: float


@dataclass(frozen=True)
class TopKShare:
    """Top-k authors by authored live files within a scope.

    Shares are authored files over live files in scope; a file with
    several authors counts once per author, so shares may sum past 1.
    When the scope has fewer than k authors, all are returned and
    `truncated` is set.
    """

    ranks: tuple[AuthorRank, ...]
    top1_share: "float | None"
    next_share: "float | None"
    k: int
    truncated: bool


def top_k_share(authorship: AuthorshipMap, fids: "list[int]", k: int) -> TopKShare:
    if k < 1:
        raise ValueError("k must be positive")
    if not fids:
        raise ValueError("scope contains no live files")
    counts: dict[DeveloperId, int] = {}
    for fid in fids:
        for dev in authorship.files[fid].authors:
            counts[dev] = counts.get(dev, 0) + 1
    total = len(fids)
    ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0].sort_key()))
    ranks = tuple(AuthorRank(dev, n, n / total) for dev, n in ranked[:k])
    if not ranks:
        return TopKShare((), None, None, k, True)
    top1 = ranks[0].share
    nxt = sum(r.share for r in ranks[1:])
    return TopKShare(ranks, top1, nxt, k, len(counts) < k)
