"""Central pivot graph construction.

Union-find over all sameAs pairs collapses the link sets into
equivalence classes; each class gets one content-addressed pivot entity
(hash of the sorted member IRIs) carrying a sameAs edge to every
member.  Rebuilding from the output plus the original inputs changes
nothing, and the result does not depend on link order.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Optional

from cantor.graph import Graph, Iri, Triple
from cantor.schema import OWL_SAME_AS, RDF_TYPE

DEFAULT_PIVOT_BASE = "http://pivot.example.org"


class UnionFind:
    def __init__(self):
        self.parent: dict[Iri, Iri] = {}

    def add(self, item: Iri):
        self.parent.setdefault(item, item)

    def find(self, item: Iri) -> Iri:
        self.add(item)
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:  # path compression
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: Iri, b: Iri):
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return
        # deterministic parent choice: smaller IRI wins
        if root_b.value < root_a.value:
            root_a, root_b = root_b, root_a
        self.parent[root_b] = root_a

    def components(self) -> list[list[Iri]]:
        groups: dict[Iri, list[Iri]] = {}
        for item in self.parent:
            groups.setdefault(self.find(item), []).append(item)
        return sorted(
            (sorted(members, key=lambda i: i.value) for members in groups.values()),
            key=lambda members: members[0].value,
        )


@dataclass
class PivotEntity:
    pivot: Iri
    members: set[tuple[str, Iri]]


@dataclass
class PivotResult:
    graph: Graph
    entities: list[PivotEntity]
    warnings: list[str] = field(default_factory=list)


def _pivot_iri(members: list[Iri], base: str) -> Iri:
    digest = hashlib.sha1("\n".join(m.value for m in members).encode("utf-8")).hexdigest()
    return Iri(f"{base.rstrip('/')}/pivot/{digest}")


def build_pivot(
    linksets: Iterable,
    graphs: Optional[dict[str, Graph]] = None,
    resource_class: Optional[Iri] = None,
    schema_realises: Optional[Iri] = None,
    base: str = DEFAULT_PIVOT_BASE,
) -> PivotResult:
    """One pivot entity per sameAs equivalence class.

    ``graphs`` maps a dataset id to its graph; their expression-level
    resources are enrolled even when no link mentions them (singleton
    pivots).  Links referencing resources absent from every graph are
    reported as warnings, not failures.
    """
    graphs = graphs or {}
    uf = UnionFind()
    warnings: list[str] = []

    known: dict[Iri, str] = {}
    for dataset_id in sorted(graphs):
        graph = graphs[dataset_id]
        if resource_class is not None:
            resources = graph.subjects(RDF_TYPE, resource_class)
        elif schema_realises is not None:
            resources = graph.subjects(schema_realises, None)
        else:
            resources = graph.subjects(None, None)
        for resource in resources:
            if isinstance(resource, Iri):
                known.setdefault(resource, dataset_id)
                uf.add(resource)

    for linkset in linksets:
        for link in sorted(linkset.links, key=lambda l: (l.source.value, l.target.value)):
            for end in (link.source, link.target):
                if graphs and end not in known:
                    warnings.append(f"link references unknown resource {end.value}")
                    known.setdefault(end, "unknown")
            uf.union(link.source, link.target)

    graph = Graph()
    entities: list[PivotEntity] = []
    for members in uf.components():
        pivot = _pivot_iri(members, base)
        entity = PivotEntity(pivot, {(known.get(m, "unknown"), m) for m in members})
        entities.append(entity)
        for member in members:
            graph.add(Triple(pivot, OWL_SAME_AS, member))
    return PivotResult(graph, entities, warnings)
