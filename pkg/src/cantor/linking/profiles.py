"""Data cleaning, resource profiling and document building.

A profile is the sub-graph reachable from a resource over outgoing
edges up to a fixed depth, with excluded predicates pruned together
with their subtrees.  A document is the bag of normalized tokens drawn
from the profile's literals and from the labels (all languages) of any
vocabulary concepts it references; purely structural IRIs contribute
nothing.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from cantor.errors import NotFoundError
from cantor.graph import BlankNode, Graph, Iri, Literal
from cantor.text import tokenize
from cantor.vocab import VocabularyRegistry


def clean(graph: Graph, excluded_properties: Iterable[Iri]) -> Graph:
    """Graph minus every triple whose predicate is excluded."""
    excluded = set(excluded_properties)
    out = Graph(name=graph.name, prefixes=graph.prefixes)
    for triple in graph:
        if triple.predicate not in excluded:
            out.add(triple)
    return out


@dataclass
class ResourceProfile:
    resource: Iri
    triples: Graph
    depth: int


def profile(graph: Graph, resource: Iri, depth: int, excluded_properties: Iterable[Iri] = ()) -> ResourceProfile:
    """Outgoing BFS from ``resource`` to ``depth`` edges."""
    if not graph.match(resource, None, None):
        raise NotFoundError(f"{resource} is not the subject of any triple")
    excluded = set(excluded_properties)
    sub = Graph()
    visited = {resource}
    frontier = [resource]
    for _ in range(depth):
        next_frontier = []
        for node in frontier:
            for triple in graph.match(node, None, None):
                if triple.predicate in excluded:
                    continue
                sub.add(triple)
                obj = triple.object
                if isinstance(obj, (Iri, BlankNode)) and obj not in visited:
                    visited.add(obj)
                    next_frontier.append(obj)
        frontier = next_frontier
    return ResourceProfile(resource, sub, depth)


@dataclass
class Document:
    resource: Iri
    tokens: Counter

    def is_empty(self) -> bool:
        return not self.tokens


def build_document(resource_profile: ResourceProfile, registry: VocabularyRegistry) -> Document:
    tokens: Counter = Counter()
    for triple in resource_profile.triples:
        obj = triple.object
        if isinstance(obj, Literal):
            tokens.update(tokenize(obj.lexical, obj.lang))
        elif isinstance(obj, Iri):
            labels = registry.concept_labels(obj)
            if labels:
                for label in labels:
                    tokens.update(tokenize(label))
    return Document(resource_profile.resource, tokens)
