"""Deterministic agglomerative clustering, average linkage.

Distances are 1 - similarity.  The dendrogram is cut at distance
1 - cut_threshold: merging continues while the smallest average
inter-cluster distance stays at or below the cutoff.  Ties break on the
lexicographically smallest member IRI of each cluster, which makes the
merge sequence (and therefore the result) independent of input order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from cantor.graph import Iri


@dataclass
class Cluster:
    members: list[Iri]

    @property
    def representative(self) -> str:
        return self.members[0].value

    def __len__(self):
        return len(self.members)


def cluster(resources: list[Iri], similarity: Callable[[Iri, Iri], float], cut_threshold: float) -> list[Cluster]:
    items = sorted(set(resources), key=lambda r: r.value)
    if not items:
        return []
    cutoff = 1.0 - cut_threshold

    clusters: list[list[Iri]] = [[r] for r in items]
    # distances between current clusters, keyed by (index_i, index_j), i < j
    dist: dict[tuple[int, int], float] = {}
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            dist[(i, j)] = 1.0 - similarity(items[i], items[j])

    active = set(range(len(clusters)))
    while len(active) > 1:
        best = None
        for i, j in dist:
            key = (dist[(i, j)], clusters[i][0].value, clusters[j][0].value)
            if best is None or key < best[0]:
                best = (key, i, j)
        if best is None or best[0][0] > cutoff:
            break
        _, i, j = best
        size_i, size_j = len(clusters[i]), len(clusters[j])
        merged = sorted(clusters[i] + clusters[j], key=lambda r: r.value)
        clusters[i] = merged
        active.discard(j)
        # average linkage: d(i+j, k) = (|i| d(i,k) + |j| d(j,k)) / (|i|+|j|)
        new_dist = {}
        for a, b in dist:
            if j in (a, b):
                continue
            if i in (a, b):
                k = b if a == i else a
                d_ik = dist[(min(i, k), max(i, k))]
                d_jk = dist[(min(j, k), max(j, k))]
                new_dist[(min(i, k), max(i, k))] = (size_i * d_ik + size_j * d_jk) / (size_i + size_j)
            else:
                new_dist[(a, b)] = dist[(a, b)]
        dist = new_dist

    return sorted(
        (Cluster(clusters[i]) for i in active),
        key=lambda c: c.representative,
    )
