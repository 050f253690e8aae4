"""Faceted expression search and entity detail over a loaded graph.

Facets: title, composer (text match), key, genre, medium (concept IRI
or label text).  Medium is the only repeatable facet; all its filters
must match.  With narrower expansion enabled, a genre/medium concept
filter matches any concept in its narrower closure.  Result order is
(title, IRI), so paging is stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from cantor.errors import ValidationError
from cantor.extractors import matches_premiere_grammar
from cantor.graph import Graph, Iri, Literal
from cantor.schema import RDF_TYPE, SchemaVocabulary
from cantor.text import normalize_label
from cantor.vocab import VocabularyRegistry

FACETS = ("title", "composer", "key", "genre", "medium")
CONCEPT_FACETS = {"key": "hasKey", "genre": "hasGenre", "medium": "hasMediumOfPerformance"}
EXPANDABLE_FACETS = ("genre", "medium")
MAX_PAGE = 200


@dataclass(frozen=True)
class FacetFilter:
    facet: str
    value: str


@dataclass
class FacetQuery:
    filters: list[FacetFilter] = field(default_factory=list)
    expand_narrower: bool = False
    offset: int = 0
    limit: int = 50

    def validate(self):
        for f in self.filters:
            if f.facet not in FACETS:
                raise ValidationError(f"unknown facet {f.facet!r}")
        for facet in FACETS:
            if facet != "medium" and sum(1 for f in self.filters if f.facet == facet) > 1:
                raise ValidationError(f"facet {facet!r} accepts at most one filter")
        if self.limit < 1 or self.limit > MAX_PAGE:
            raise ValidationError(f"limit must be in [1, {MAX_PAGE}]")
        if self.offset < 0:
            raise ValidationError("offset must be >= 0")


def _looks_like_iri(value: str) -> bool:
    return "://" in value or value.startswith("urn:")


class FacetEngine:
    def __init__(self, graph: Graph, registry: VocabularyRegistry, schema: Optional[SchemaVocabulary] = None):
        self.graph = graph
        self.registry = registry
        self.schema = schema or SchemaVocabulary()

    # -- basic graph accessors -------------------------------------------------

    def expressions(self) -> list[Iri]:
        found = {
            s for s in self.graph.subjects(RDF_TYPE, self.schema.Expression) if isinstance(s, Iri)
        }
        return sorted(found, key=lambda e: (self._title_key(e), e.value))

    def _title_key(self, expression: Iri) -> str:
        titles = self.titles(expression)
        return normalize_label(titles[0]) if titles else ""

    def titles(self, resource: Iri) -> list[str]:
        return sorted(
            o.lexical for o in self.graph.objects(resource, self.schema.hasTitle) if isinstance(o, Literal)
        )

    def creation_events(self, expression: Iri) -> list[Iri]:
        return sorted(
            (
                s
                for s in self.graph.subjects(self.schema.createdExpression, expression)
                if isinstance(s, Iri) and self.graph.match(s, RDF_TYPE, self.schema.ExpressionCreation)
            ),
            key=lambda s: s.value,
        )

    def composers(self, expression: Iri) -> list[str]:
        out = []
        for event in self.creation_events(expression):
            for obj in self.graph.objects(event, self.schema.carriedOutBy):
                if isinstance(obj, Literal):
                    out.append(obj.lexical)
        return sorted(out)

    # -- filter matching ---------------------------------------------------------

    def _concept_closure(self, facet: str, concept: Iri, expand: bool) -> set[Iri]:
        for name in self.registry.names():
            vocab = self.registry.get(name)
            if concept in vocab:
                if expand and facet in EXPANDABLE_FACETS:
                    return vocab.narrower_closure(concept)
                return {concept}
        raise ValidationError(f"unknown concept IRI {concept.value!r}")

    def _match_concept_facet(self, expression: Iri, facet_filter: FacetFilter, expand: bool) -> bool:
        prop = self.schema.property_by_name(CONCEPT_FACETS[facet_filter.facet])
        objects = self.graph.objects(expression, prop)
        if _looks_like_iri(facet_filter.value):
            wanted = self._concept_closure(facet_filter.facet, Iri(facet_filter.value), expand)
            return any(isinstance(o, Iri) and o in wanted for o in objects)
        needle = normalize_label(facet_filter.value)
        for obj in objects:
            if isinstance(obj, Literal) and normalize_label(obj.lexical) == needle:
                return True
            if isinstance(obj, Iri):
                labels = self.registry.concept_labels(obj) or []
                if any(normalize_label(label) == needle for label in labels):
                    return True
        return False

    def matches(self, expression: Iri, facet_filter: FacetFilter, expand: bool) -> bool:
        if facet_filter.facet == "title":
            needle = normalize_label(facet_filter.value)
            return any(needle in normalize_label(t) for t in self.titles(expression))
        if facet_filter.facet == "composer":
            needle = normalize_label(facet_filter.value)
            return any(needle in normalize_label(c) for c in self.composers(expression))
        return self._match_concept_facet(expression, facet_filter, expand)

    def search(self, query: FacetQuery) -> tuple[int, list[Iri]]:
        query.validate()
        results = [
            e
            for e in self.expressions()
            if all(self.matches(e, f, query.expand_narrower) for f in query.filters)
        ]
        return len(results), results[query.offset : query.offset + query.limit]

    # -- entity detail -------------------------------------------------------------

    def concept_value(self, term) -> dict:
        if isinstance(term, Literal):
            return {"label": term.lexical, "iri": None}
        concept = self.registry.find_concept(term)
        if concept is None:
            return {"label": term.value, "iri": term.value}
        label = concept.pref_labels.get("en") or next(iter(sorted(concept.pref_labels.values())), term.value)
        return {"label": label, "iri": term.value}

    def _event_entry(self, event: Iri, label: str) -> dict:
        date = self.graph.value(event, self.schema.hasDate)
        place = self.graph.value(event, self.schema.hasPlace)
        note = self.graph.value(event, self.schema.hasNote)
        return {
            "year": date.lexical if isinstance(date, Literal) else None,
            "label": label,
            "place": place.lexical if isinstance(place, Literal) else None,
            "note": note.lexical if isinstance(note, Literal) else None,
        }

    def timeline(self, resource: Iri) -> list[dict]:
        entries = []
        for event in self.creation_events(resource):
            entries.append(self._event_entry(event, "composition"))
        # performances reach the original expression through their performed expression
        for performed in self.graph.subjects(self.schema.performedExpressionOf, resource):
            for performance in self.graph.subjects(self.schema.createdExpression, performed):
                if not self.graph.match(performance, RDF_TYPE, self.schema.Performance):
                    continue
                entry = self._event_entry(performance, "performance")
                if entry["note"] and matches_premiere_grammar(entry["note"]):
                    entry["label"] = "premiere"
                entries.append(entry)
        # a performed expression's own performance
        for performance in self.graph.subjects(self.schema.createdExpression, resource):
            if self.graph.match(performance, RDF_TYPE, self.schema.Performance):
                entry = self._event_entry(performance, "performance")
                if entry["note"] and matches_premiere_grammar(entry["note"]):
                    entry["label"] = "premiere"
                entries.append(entry)
        # publications incorporate the expression
        for publication in self.graph.subjects(self.schema.incorporates, resource):
            if not self.graph.match(publication, RDF_TYPE, self.schema.PublicationExpression):
                continue
            for event in self.graph.subjects(self.schema.createdExpression, publication):
                entries.append(self._event_entry(event, "publication"))
        # recordings incorporate the (performed) expression
        for recording in self.graph.subjects(self.schema.incorporates, resource):
            if not self.graph.match(recording, RDF_TYPE, self.schema.Recording):
                continue
            for event in self.graph.subjects(self.schema.createdExpression, recording):
                entries.append(self._event_entry(event, "recording"))
        order = {"composition": 0, "premiere": 1, "performance": 2, "publication": 3, "recording": 4}
        entries.sort(key=lambda e: (e["year"] or "9999", order.get(e["label"], 9)))
        return entries

    def detail(self, resource: Iri) -> dict:
        types = sorted(
            o.value for o in self.graph.objects(resource, RDF_TYPE) if isinstance(o, Iri)
        )
        key = self.graph.value(resource, self.schema.hasKey)
        opus = self.graph.value(resource, self.schema.hasOpus)
        catalog = self.graph.value(resource, self.schema.hasCatalogNumber)
        return {
            "iri": resource.value,
            "types": types,
            "titles": self.titles(resource),
            "composers": self.composers(resource),
            "key": self.concept_value(key) if key is not None else None,
            "genres": [
                self.concept_value(o)
                for o in sorted(self.graph.objects(resource, self.schema.hasGenre), key=str)
            ],
            "opus": opus.lexical if isinstance(opus, Literal) else None,
            "catalog_number": catalog.lexical if isinstance(catalog, Literal) else None,
            "casting": [
                self.concept_value(o)
                for o in sorted(self.graph.objects(resource, self.schema.hasMediumOfPerformance), key=str)
            ],
            "timeline": self.timeline(resource),
        }
