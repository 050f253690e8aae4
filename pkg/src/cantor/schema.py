"""Schema vocabulary for the event-centric bibliographic graph.

A small, fixed set of classes and properties modeled after the
Work / creation-event / Expression triangle and the performance and
recording chains.  All terms are minted under a single configurable base
namespace; the only exceptions are ``rdf:type`` and ``owl:sameAs``, which
keep their standard IRIs so the emitted files stay interoperable.
"""

from __future__ import annotations

from cantor.graph import Iri

RDF_TYPE = Iri("http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
OWL_SAME_AS = Iri("http://www.w3.org/2002/07/owl#sameAs")

SKOS = "http://www.w3.org/2004/02/skos/core#"
SKOS_CONCEPT = Iri(SKOS + "Concept")
SKOS_PREF_LABEL = Iri(SKOS + "prefLabel")
SKOS_ALT_LABEL = Iri(SKOS + "altLabel")
SKOS_BROADER = Iri(SKOS + "broader")
SKOS_IN_SCHEME = Iri(SKOS + "inScheme")
SKOS_EXACT_MATCH = Iri(SKOS + "exactMatch")

DEFAULT_BASE = "http://data.example.org/ontology"

_CLASSES = (
    "Work",
    "Expression",
    "PerformedExpression",
    "ExpressionCreation",
    "Performance",
    "RecordingEvent",
    "Recording",
    "PublicationExpression",
    "ManifestationSingleton",
)

_PROPERTIES = (
    "realises",
    "createdExpression",
    "createdPhysicalObject",
    "performedExpressionOf",
    "incorporates",
    "carriedOutBy",
    "hasTitle",
    "hasKey",
    "hasGenre",
    "hasOpus",
    "hasCatalogNumber",
    "hasMediumOfPerformance",
    "hasDate",
    "hasPlace",
    "hasNote",
    "wasCreatedBy",
)


class SchemaVocabulary:
    """Named IRI constants for the modeled classes and properties.

    Class constants are exposed as attributes in CamelCase (``Work``,
    ``ExpressionCreation``...), property constants in their lowerCamel
    form (``hasTitle``, ``realises``...).  ``sameAs`` resolves to
    ``owl:sameAs`` so that exported link sets use the standard predicate.
    """

    def __init__(self, base: str = DEFAULT_BASE):
        self.base = base.rstrip("/")
        for name in _CLASSES:
            setattr(self, name, Iri(f"{self.base}/class/{name}"))
        for name in _PROPERTIES:
            setattr(self, name, Iri(f"{self.base}/property/{name}"))
        self.sameAs = OWL_SAME_AS

    def classes(self) -> dict[str, Iri]:
        return {name: getattr(self, name) for name in _CLASSES}

    def properties(self) -> dict[str, Iri]:
        props = {name: getattr(self, name) for name in _PROPERTIES}
        props["sameAs"] = self.sameAs
        return props

    def property_by_name(self, name: str) -> Iri:
        if name in _PROPERTIES or name == "sameAs":
            return getattr(self, name)
        raise KeyError(name)


DEFAULT_SCHEMA = SchemaVocabulary()
