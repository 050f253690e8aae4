"""End-to-end link discovery between two graphs.

Stage order: clean, profile, build documents, index, candidate
matching, clustering, key-based disambiguation, optional 1:1
extraction.  Post-processing only removes candidates, never invents
pairs, so the final link set is always a subset of the candidate set.

Resources to link are the expression-level nodes: subjects of a
``realises`` edge by default (robust to class renaming in heterogeneous
data), or an explicit class when configured.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field
from typing import Optional

from cantor.errors import ValidationError
from cantor.graph import Graph, Iri, Literal, Triple
from cantor.linking.cluster import cluster as run_clustering
from cantor.linking.keys import disambiguate, property_values, rank_keys
from cantor.linking.profiles import build_document, clean, profile
from cantor.linking.tfidf import TfIdfIndex, cross_similarity, match_candidates, similarity
from cantor.ntriples import save_ntriples
from cantor.schema import OWL_SAME_AS, RDF_TYPE, SchemaVocabulary
from cantor.text import normalize_label
from cantor.vocab import VocabularyRegistry


@dataclass
class LinkConfig:
    depth: int = 2
    candidate_threshold: float = 0.4
    cluster_cut: float = 0.8
    excluded_properties: frozenset[Iri] = frozenset()
    one_to_one: bool = True
    resource_class: Optional[Iri] = None
    schema: SchemaVocabulary = field(default_factory=SchemaVocabulary)

    def __post_init__(self):
        for name in ("candidate_threshold", "cluster_cut"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must be in [0, 1], got {value}")
        if self.depth < 1:
            raise ValidationError(f"depth must be >= 1, got {self.depth}")

    def snapshot(self) -> dict:
        return {
            "depth": self.depth,
            "candidate_threshold": self.candidate_threshold,
            "cluster_cut": self.cluster_cut,
            "excluded_properties": sorted(p.value for p in self.excluded_properties),
            "one_to_one": self.one_to_one,
            "resource_class": self.resource_class.value if self.resource_class else None,
        }


@dataclass(frozen=True)
class Link:
    source: Iri
    target: Iri
    confidence: float


@dataclass
class LinkSet:
    links: set[Link] = field(default_factory=set)
    metadata: dict = field(default_factory=dict)

    def pairs(self) -> set[tuple[Iri, Iri]]:
        return {(link.source, link.target) for link in self.links}

    def sorted_links(self) -> list[Link]:
        return sorted(self.links, key=lambda l: (l.source.value, l.target.value))

    def check_functional(self):
        sources = [l.source for l in self.links]
        targets = [l.target for l in self.links]
        if len(set(sources)) != len(sources) or len(set(targets)) != len(targets):
            raise ValidationError("link set is not functional per side")

    def to_graph(self) -> Graph:
        graph = Graph()
        for link in self.links:
            graph.add(Triple(link.source, OWL_SAME_AS, link.target))
        return graph

    def to_ntriples(self) -> str:
        return save_ntriples(self.to_graph())

    def to_tsv(self) -> str:
        return "".join(
            f"{l.source.value}\t{l.target.value}\t{l.confidence:.6f}\n" for l in self.sorted_links()
        )


def linkset_from_pairs(pairs, confidence: float = 1.0, metadata: Optional[dict] = None) -> LinkSet:
    return LinkSet({Link(s, t, confidence) for s, t in pairs}, metadata or {})


def select_resources(graph: Graph, config: LinkConfig) -> list[Iri]:
    if config.resource_class is not None:
        found = {s for s in graph.subjects(RDF_TYPE, config.resource_class) if isinstance(s, Iri)}
    else:
        found = {s for s in graph.subjects(config.schema.realises, None) if isinstance(s, Iri)}
    return sorted(found, key=lambda r: r.value)


def _greedy_one_to_one(links: set[Link]) -> set[Link]:
    order = sorted(links, key=lambda l: (-l.confidence, l.source.value, l.target.value))
    taken_s: set[Iri] = set()
    taken_t: set[Iri] = set()
    kept: set[Link] = set()
    for candidate in order:
        if candidate.source in taken_s or candidate.target in taken_t:
            continue
        taken_s.add(candidate.source)
        taken_t.add(candidate.target)
        kept.add(candidate)
    return kept


def link(
    source_graph: Graph,
    target_graph: Graph,
    registry: VocabularyRegistry,
    config: Optional[LinkConfig] = None,
) -> LinkSet:
    config = config or LinkConfig()

    source_clean = clean(source_graph, config.excluded_properties)
    target_clean = clean(target_graph, config.excluded_properties)

    source_resources = select_resources(source_clean, config)
    target_resources = select_resources(target_clean, config)
    if not source_resources or not target_resources:
        return LinkSet(set(), {"config": config.snapshot(), "note": "no resources on one side"})

    source_profiles = {r: profile(source_clean, r, config.depth) for r in source_resources}
    target_profiles = {r: profile(target_clean, r, config.depth) for r in target_resources}
    source_docs = [build_document(source_profiles[r], registry) for r in source_resources]
    target_docs = [build_document(target_profiles[r], registry) for r in target_resources]

    source_index = TfIdfIndex(source_docs)
    target_index = TfIdfIndex(target_docs)
    candidates = match_candidates(source_index, target_index, config.candidate_threshold)

    # Clustering pool and similarities come from one combined index so the
    # grouping does not depend on the candidate threshold.
    combined = TfIdfIndex(source_docs + target_docs)
    pool = source_resources + target_resources
    clusters = run_clustering(pool, lambda a, b: similarity(combined, a, b), config.cluster_cut)

    profile_values = {
        r: property_values(p, registry)
        for r, p in list(source_profiles.items()) + list(target_profiles.items())
    }
    source_set, target_set = set(source_resources), set(target_resources)
    cluster_of: dict[Iri, int] = {}
    for idx, c in enumerate(clusters):
        for member in c.members:
            cluster_of[member] = idx

    # Key-based filtering applies inside ambiguous clusters only: groups
    # where several resources of one side compete for the other side.
    allowed: dict[int, set[tuple[Iri, Iri]]] = {}
    ambiguous: set[int] = set()
    for idx, c in enumerate(clusters):
        n_sources = sum(1 for m in c.members if m in source_set)
        n_targets = sum(1 for m in c.members if m in target_set)
        if n_sources > 1 or n_targets > 1:
            ambiguous.add(idx)
            ranking = rank_keys(c.members, profile_values)
            allowed[idx] = disambiguate(c.members, ranking, profile_values, source_set, target_set)

    kept: set[Link] = set()
    for pair in candidates:
        same_cluster = cluster_of.get(pair.source) == cluster_of.get(pair.target)
        if same_cluster and cluster_of[pair.source] in ambiguous:
            if (pair.source, pair.target) not in allowed[cluster_of[pair.source]]:
                continue
        kept.add(Link(pair.source, pair.target, round(pair.score, 9)))

    if config.one_to_one:
        kept = _greedy_one_to_one(kept)

    result = LinkSet(
        kept,
        {
            "config": config.snapshot(),
            "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "source_resources": len(source_resources),
            "target_resources": len(target_resources),
            "candidates": len(candidates),
        },
    )
    if config.one_to_one:
        result.check_functional()
    return result


def baseline_exact_label(source_graph: Graph, target_graph: Graph, config: Optional[LinkConfig] = None) -> LinkSet:
    """Reference baseline: exact normalized-title equality, greedy 1:1."""
    config = config or LinkConfig()
    schema = config.schema

    def titles(graph, resource) -> frozenset[str]:
        return frozenset(
            normalize_label(o.lexical)
            for o in graph.objects(resource, schema.hasTitle)
            if isinstance(o, Literal)
        )

    source_resources = select_resources(source_graph, config)
    target_resources = select_resources(target_graph, config)
    by_title: dict[str, list[Iri]] = {}
    for target in target_resources:
        for title in titles(target_graph, target):
            by_title.setdefault(title, []).append(target)

    links: set[Link] = set()
    for source in source_resources:
        for title in sorted(titles(source_graph, source)):
            for target in by_title.get(title, ()):
                links.add(Link(source, target, 1.0))
    return LinkSet(_greedy_one_to_one(links), {"matcher": "exact-label-baseline"})
