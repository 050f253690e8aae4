"""SKOS-style controlled vocabularies.

A Vocabulary owns a set of concepts with multilingual preferred and
alternate labels plus a broader hierarchy, and maintains a normalized
label index used both for exact lookup and as the candidate pool for
fuzzy lookup.  Vocabularies are immutable after load.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from cantor import schema
from cantor.errors import NotFoundError, ValidationError
from cantor.graph import Graph, Iri, Literal
from cantor.text import label_similarity, normalize_label
from cantor.turtle import load_turtle_subset

FUZZY_THRESHOLD = 0.82


@dataclass
class Concept:
    iri: Iri
    pref_labels: dict[str, str] = field(default_factory=dict)
    alt_labels: list[tuple[str, str]] = field(default_factory=list)
    broader: set[Iri] = field(default_factory=set)
    scheme: Optional[Iri] = None

    def labels(self) -> list[tuple[str, str, bool]]:
        """(lang, label, is_pref) for every label."""
        out = [(lang, label, True) for lang, label in sorted(self.pref_labels.items())]
        out.extend((lang, label, False) for lang, label in self.alt_labels)
        return out

    def all_label_texts(self) -> list[str]:
        return [label for _, label, _ in self.labels()]


@dataclass(frozen=True)
class LookupResult:
    iri: Iri
    score: float


class Vocabulary:
    def __init__(self, scheme: Iri, concepts: Iterable[Concept] = ()):
        self.scheme = scheme
        self.concepts: dict[Iri, Concept] = {}
        # normalized label -> {(concept iri, lang, is_pref, original label)}
        self.label_index: dict[str, set[tuple[Iri, str, bool, str]]] = {}
        self._narrower: dict[Iri, set[Iri]] = {}
        for concept in concepts:
            self._add(concept)
        self._check_acyclic()

    def _add(self, concept: Concept):
        if concept.iri in self.concepts:
            raise ValidationError(f"duplicate concept {concept.iri}")
        self.concepts[concept.iri] = concept
        for lang, label, is_pref in concept.labels():
            key = normalize_label(label, lang)
            if key:
                self.label_index.setdefault(key, set()).add((concept.iri, lang, is_pref, label))
        for parent in concept.broader:
            self._narrower.setdefault(parent, set()).add(concept.iri)

    def _check_acyclic(self):
        state: dict[Iri, int] = {}

        def visit(iri: Iri):
            state[iri] = 1
            for parent in self.concepts[iri].broader if iri in self.concepts else ():
                if parent not in self.concepts:
                    continue
                mark = state.get(parent)
                if mark == 1:
                    raise ValidationError(f"broader cycle through {parent}")
                if mark is None:
                    visit(parent)
            state[iri] = 2

        for iri in self.concepts:
            if iri not in state:
                visit(iri)

    def __len__(self):
        return len(self.concepts)

    def __contains__(self, iri: Iri):
        return iri in self.concepts

    def get(self, iri: Iri) -> Concept:
        try:
            return self.concepts[iri]
        except KeyError:
            raise NotFoundError(f"unknown concept {iri}")

    def lookup(self, text: str, lang: Optional[str] = None, threshold: float = FUZZY_THRESHOLD) -> Optional[LookupResult]:
        """Best concept for a label, or None.

        An exact hit on the normalized index scores 1.0.  Otherwise the
        closest label by normalized edit distance wins if it reaches the
        threshold.  Ties break deterministically: higher score, then
        prefLabel over altLabel, then shorter label, then smaller IRI.
        """
        needle = normalize_label(text, lang)
        if not needle:
            return None
        candidates = []
        exact = self.label_index.get(needle, ())
        for iri, label_lang, is_pref, label in exact:
            if lang is None or label_lang == lang:
                candidates.append((1.0, is_pref, label, iri))
        if not candidates:
            for key, entries in self.label_index.items():
                score = label_similarity(needle, key)
                if score >= threshold:
                    for iri, label_lang, is_pref, label in entries:
                        if lang is None or label_lang == lang:
                            candidates.append((score, is_pref, label, iri))
        if not candidates:
            return None
        best = min(candidates, key=lambda c: (-c[0], not c[1], len(c[2]), c[3].value))
        return LookupResult(best[3], best[0])

    def narrower_closure(self, iri: Iri) -> set[Iri]:
        """Transitive closure over inverse-broader, including the concept."""
        if iri not in self.concepts:
            raise NotFoundError(f"unknown concept {iri}")
        seen = {iri}
        queue = [iri]
        while queue:
            current = queue.pop()
            for child in self._narrower.get(current, ()):
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        return seen


def lookup(vocab: Vocabulary, text: str, lang: Optional[str] = None, threshold: float = FUZZY_THRESHOLD):
    return vocab.lookup(text, lang, threshold)


def narrower_closure(vocab: Vocabulary, iri: Iri) -> set[Iri]:
    return vocab.narrower_closure(iri)


def vocabulary_from_graph(graph: Graph, scheme: Optional[Iri] = None) -> Vocabulary:
    """Build a Vocabulary from SKOS triples (prefLabel, altLabel, broader,
    inScheme)."""
    concept_iris = set(graph.subjects(schema.RDF_TYPE, schema.SKOS_CONCEPT))
    concept_iris.update(graph.subjects(schema.SKOS_PREF_LABEL))
    concept_iris.update(graph.subjects(schema.SKOS_ALT_LABEL))

    if scheme is None:
        schemes = {o for o in graph.objects(None, schema.SKOS_IN_SCHEME) if isinstance(o, Iri)}
        scheme = min(schemes, key=lambda i: i.value) if schemes else Iri("http://example.org/scheme/unnamed")

    concepts = []
    for iri in sorted(concept_iris, key=lambda i: i.value):
        if not isinstance(iri, Iri):
            continue
        concept = Concept(iri=iri, scheme=scheme)
        for obj in graph.objects(iri, schema.SKOS_PREF_LABEL):
            if isinstance(obj, Literal):
                lang = obj.lang or "und"
                if lang in concept.pref_labels:
                    raise ValidationError(f"{iri} has two prefLabels for language {lang!r}")
                concept.pref_labels[lang] = obj.lexical
        alt = [
            (obj.lang or "und", obj.lexical)
            for obj in graph.objects(iri, schema.SKOS_ALT_LABEL)
            if isinstance(obj, Literal)
        ]
        concept.alt_labels = sorted(alt)
        concept.broader = {o for o in graph.objects(iri, schema.SKOS_BROADER) if isinstance(o, Iri)}
        in_scheme = {o for o in graph.objects(iri, schema.SKOS_IN_SCHEME) if isinstance(o, Iri)}
        if in_scheme:
            concept.scheme = min(in_scheme, key=lambda i: i.value)
        concepts.append(concept)
    return Vocabulary(scheme, concepts)


def load_vocabulary(path) -> Vocabulary:
    from pathlib import Path

    text = Path(path).read_text(encoding="utf-8")
    return vocabulary_from_graph(load_turtle_subset(text))


class VocabularyRegistry:
    """Named vocabularies, looked up by rule files and pipelines."""

    def __init__(self):
        self._vocabs: dict[str, Vocabulary] = {}

    def register(self, name: str, vocab: Vocabulary) -> None:
        self._vocabs[name] = vocab

    def get(self, name: str) -> Vocabulary:
        try:
            return self._vocabs[name]
        except KeyError:
            raise NotFoundError(f"unknown vocabulary {name!r}")

    def __contains__(self, name: str):
        return name in self._vocabs

    def names(self) -> list[str]:
        return sorted(self._vocabs)

    def concept_labels(self, iri: Iri) -> Optional[list[str]]:
        """All labels (all languages) if the IRI is a registered concept."""
        for vocab in self._vocabs.values():
            if iri in vocab:
                return vocab.get(iri).all_label_texts()
        return None

    def find_concept(self, iri: Iri) -> Optional[Concept]:
        for vocab in self._vocabs.values():
            if iri in vocab:
                return vocab.get(iri)
        return None

    @classmethod
    def from_directory(cls, directory) -> "VocabularyRegistry":
        """Load every *.ttl file; the vocabulary name is the file stem."""
        from pathlib import Path

        registry = cls()
        for path in sorted(Path(directory).glob("*.ttl")):
            registry.register(path.stem, load_vocabulary(path))
        return registry
