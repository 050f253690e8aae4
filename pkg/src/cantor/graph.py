"""In-memory RDF-style triple store.

Terms are immutable and hashable; a Graph is a set of triples plus three
positional indexes that are kept consistent on every insert.  Graphs are
built once and treated as read-only by the pipeline stages, which makes
them safe to share across threads after construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Union

from cantor.errors import ValidationError

# Absolute IRI: a scheme followed by "://", or one of the schemes that
# legitimately lack the authority part.
_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")
_NO_AUTHORITY_SCHEMES = ("urn:", "mailto:", "tag:")
_FORBIDDEN = set('<>"{}|^`')


@dataclass(frozen=True, order=True)
class Iri:
    value: str

    def __post_init__(self):
        v = self.value
        if not v:
            raise ValidationError("IRI must be non-empty")
        if any(c.isspace() for c in v):
            raise ValidationError(f"IRI contains whitespace: {v!r}")
        if any(c in _FORBIDDEN for c in v):
            raise ValidationError(f"IRI contains forbidden character: {v!r}")
        if "://" not in v:
            if not (_SCHEME_RE.match(v) and v.lower().startswith(_NO_AUTHORITY_SCHEMES)):
                raise ValidationError(f"not an absolute IRI: {v!r}")

    def __str__(self):
        return self.value


@dataclass(frozen=True, order=True)
class BlankNode:
    label: str

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z0-9][A-Za-z0-9._\-]*", self.label):
            raise ValidationError(f"invalid blank node label: {self.label!r}")

    def __str__(self):
        return f"_:{self.label}"


# BCP-47 shape check only; no registry lookup.
_LANG_RE = re.compile(r"^[A-Za-z]{1,8}(-[A-Za-z0-9]{1,8})*$")


@dataclass(frozen=True)
class Literal:
    lexical: str
    lang: Optional[str] = None
    datatype: Optional[Iri] = None

    def __post_init__(self):
        if self.lang is not None and self.datatype is not None:
            raise ValidationError("literal cannot carry both a language tag and a datatype")
        if self.lang is not None and not _LANG_RE.match(self.lang):
            raise ValidationError(f"malformed language tag: {self.lang!r}")
        if self.datatype is not None and self.lexical == "":
            raise ValidationError("typed literal cannot have an empty lexical form")

    def __str__(self):
        if self.lang:
            return f'"{self.lexical}"@{self.lang}'
        if self.datatype:
            return f'"{self.lexical}"^^<{self.datatype.value}>'
        return f'"{self.lexical}"'


SubjectTerm = Union[Iri, BlankNode]
ObjectTerm = Union[Iri, BlankNode, Literal]

# Sort key used everywhere ordering must be deterministic: group by term
# kind, then compare the natural fields.
_KIND_ORDER = {Iri: 0, BlankNode: 1, Literal: 2}


def term_key(term) -> tuple:
    kind = _KIND_ORDER[type(term)]
    if isinstance(term, Iri):
        return (kind, term.value)
    if isinstance(term, BlankNode):
        return (kind, term.label)
    return (kind, term.lexical, term.lang or "", term.datatype.value if term.datatype else "")


@dataclass(frozen=True)
class Triple:
    subject: SubjectTerm
    predicate: Iri
    object: ObjectTerm

    def __post_init__(self):
        if not isinstance(self.subject, (Iri, BlankNode)):
            raise ValidationError(f"triple subject must be an IRI or blank node, got {type(self.subject).__name__}")
        if not isinstance(self.predicate, Iri):
            raise ValidationError(f"triple predicate must be an IRI, got {type(self.predicate).__name__}")
        if not isinstance(self.object, (Iri, BlankNode, Literal)):
            raise ValidationError(f"triple object must be an IRI, blank node or literal, got {type(self.object).__name__}")

    def sort_key(self):
        return (term_key(self.subject), term_key(self.predicate), term_key(self.object))


class Graph:
    """Triple set with set semantics and always-consistent s/p/o indexes."""

    def __init__(self, name: Optional[Iri] = None, prefixes: Optional[dict[str, Iri]] = None):
        self.name = name
        self.prefixes: dict[str, Iri] = dict(prefixes or {})
        self._triples: set[Triple] = set()
        self._by_subject: dict[SubjectTerm, set[Triple]] = {}
        self._by_predicate: dict[Iri, set[Triple]] = {}
        self._by_object: dict[ObjectTerm, set[Triple]] = {}

    def add(self, triple: Triple) -> None:
        if not isinstance(triple, Triple):
            raise ValidationError("can only insert Triple instances")
        if triple in self._triples:
            return
        self._triples.add(triple)
        self._by_subject.setdefault(triple.subject, set()).add(triple)
        self._by_predicate.setdefault(triple.predicate, set()).add(triple)
        self._by_object.setdefault(triple.object, set()).add(triple)

    def add_all(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.add(t)

    def emit(self, subject: SubjectTerm, predicate: Iri, obj: ObjectTerm) -> None:
        self.add(Triple(subject, predicate, obj))

    def match(self, subject=None, predicate=None, obj=None) -> set[Triple]:
        """All triples matching the pattern; None slots are wildcards."""
        candidates = None
        if subject is not None:
            candidates = self._by_subject.get(subject, set())
        if predicate is not None:
            found = self._by_predicate.get(predicate, set())
            candidates = found if candidates is None else candidates & found
        if obj is not None:
            found = self._by_object.get(obj, set())
            candidates = found if candidates is None else candidates & found
        if candidates is None:
            return set(self._triples)
        return set(candidates)

    def subjects(self, predicate=None, obj=None) -> set[SubjectTerm]:
        return {t.subject for t in self.match(None, predicate, obj)}

    def objects(self, subject=None, predicate=None) -> set[ObjectTerm]:
        return {t.object for t in self.match(subject, predicate, None)}

    def value(self, subject, predicate) -> Optional[ObjectTerm]:
        """First object in canonical term order, or None."""
        found = self.objects(subject, predicate)
        if not found:
            return None
        return min(found, key=term_key)

    def copy(self) -> "Graph":
        g = Graph(name=self.name, prefixes=self.prefixes)
        g.add_all(self._triples)
        return g

    def __len__(self):
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple):
        return triple in self._triples

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples == other._triples

    def __repr__(self):
        return f"<Graph {len(self)} triples>"

    def sorted_triples(self) -> list[Triple]:
        return sorted(self._triples, key=Triple.sort_key)


def merge(graphs: list[Graph]) -> Graph:
    """Triple-set union; prefix maps merge with first-wins on conflicts."""
    out = Graph()
    for g in graphs:
        for prefix, ns in g.prefixes.items():
            out.prefixes.setdefault(prefix, ns)
        out.add_all(g)
    return out
