"""Heterogeneity benchmark generation.

Takes a seed graph of works and produces a re-minted twin graph with
controlled perturbations along three dimensions:

* value: spelling edits, language swaps via a word translation table,
  value reformatting;
* ontological: label/concept substitution, property-chain lengthening,
  triple deletion;
* logical: class generalization, inverse-property rewriting.

Every perturbation is drawn from a seeded RNG over canonically ordered
triples, so the same seed always yields a byte-identical benchmark.
The reference link set pairs each seed expression with its twin.
"""

from __future__ import annotations

import hashlib
import json
import random
import string
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

from cantor.errors import ValidationError
from cantor.graph import Graph, Iri, Literal, Triple
from cantor.linking.pipeline import Link, LinkSet, linkset_from_pairs
from cantor.ntriples import load_ntriples, save_ntriples
from cantor.schema import OWL_SAME_AS, RDF_TYPE, SchemaVocabulary
from cantor.text import normalize_label
from cantor.vocab import VocabularyRegistry

DEFAULT_TARGET_BASE = "http://bench-target.example.org"


@dataclass(frozen=True)
class PerturbationRates:
    spelling: float = 0.0
    language_swap: float = 0.0
    value_format: float = 0.0
    label_concept_swap: float = 0.0
    chain_lengthen: float = 0.0
    deletion: float = 0.0
    class_generalize: float = 0.0
    inverse_rewrite: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"rate {f.name} must be in [0, 1], got {value}")

    @classmethod
    def value_only(cls) -> "PerturbationRates":
        return cls(spelling=0.25, language_swap=0.25, value_format=0.25)

    @classmethod
    def defaults(cls) -> "PerturbationRates":
        return cls(
            spelling=0.25,
            language_swap=0.25,
            value_format=0.25,
            label_concept_swap=0.25,
            chain_lengthen=0.15,
            deletion=0.10,
            class_generalize=0.25,
            inverse_rewrite=0.15,
        )

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


@dataclass
class Benchmark:
    source: Graph
    target: Graph
    reference: LinkSet
    perturbation_log: list[tuple[str, str]] = field(default_factory=list)
    rng_seed: int = 0
    rates: PerturbationRates = field(default_factory=PerturbationRates)


# word-level fr/en swaps covering the synthetic title vocabulary
TRANSLATIONS = {
    "sonate": "sonata",
    "concerto": "concerto",
    "symphonie": "symphony",
    "suite": "suite",
    "trio": "trio",
    "pour": "for",
    "et": "and",
    "violon": "violin",
    "violoncelle": "cello",
    "alto": "viola",
    "contrebasse": "bass",
    "clarinette": "clarinet",
    "flute": "flute",
    "hautbois": "oboe",
    "piano": "piano",
    "clavecin": "harpsichord",
    "orchestre": "orchestra",
    "voix": "voice",
    "majeur": "major",
    "mineur": "minor",
    "no": "no",
}

_STRUCTURAL_PREDICATE_NAMES = (
    "realises",
    "createdExpression",
    "wasCreatedBy",
    "performedExpressionOf",
    "incorporates",
    "createdPhysicalObject",
)


def _sha1(text: str) -> str:
    return hashlib.sha1(text.encode("utf-8")).hexdigest()


def _segment_of(iri: Iri) -> str:
    parts = iri.value.rstrip("/").split("/")
    return parts[-2] if len(parts) >= 2 else "resource"


def _random_edit(rng: random.Random, text: str) -> str:
    """One character edit; guaranteed to differ from the input."""
    letters = string.ascii_lowercase
    if not text:
        return rng.choice(letters)
    op = rng.choice(("substitute", "insert", "delete")) if len(text) > 1 else "insert"
    pos = rng.randrange(len(text))
    if op == "substitute":
        replacement = rng.choice([c for c in letters if c != text[pos].lower()])
        return text[:pos] + replacement + text[pos + 1 :]
    if op == "insert":
        return text[:pos] + rng.choice(letters) + text[pos:]
    return text[:pos] + text[pos + 1 :]


def _swap_language(text: str) -> str:
    words = text.split(" ")
    swapped = []
    reverse = {v: k for k, v in TRANSLATIONS.items()}
    for word in words:
        key = normalize_label(word)
        if key in TRANSLATIONS:
            swapped.append(TRANSLATIONS[key])
        elif key in reverse:
            swapped.append(reverse[key])
        else:
            swapped.append(word)
    return " ".join(swapped)


def _reformat(prop_name: str, text: str) -> str:
    if len(text) == 4 and text.isdigit():
        return f"{text}-01-01"
    return text.replace(" ", "").lower()


def generate_benchmark(
    seed_graph: Graph,
    rates: PerturbationRates,
    rng_seed: int,
    registry: VocabularyRegistry,
    schema: Optional[SchemaVocabulary] = None,
    target_base: str = DEFAULT_TARGET_BASE,
) -> Benchmark:
    schema = schema or SchemaVocabulary()
    expressions = sorted(
        (s for s in seed_graph.subjects(schema.realises, None) if isinstance(s, Iri)),
        key=lambda r: r.value,
    )
    if not expressions:
        raise ValidationError("seed graph contains no work triangle (no realises edges)")

    rng = random.Random(rng_seed)
    structural_preds = {schema.property_by_name(name) for name in _STRUCTURAL_PREDICATE_NAMES}
    invertible_preds = structural_preds - {schema.realises}

    # re-mint every minted node (anything that appears as a subject)
    minted = {t.subject for t in seed_graph if isinstance(t.subject, Iri)}
    twin: dict[Iri, Iri] = {
        old: Iri(f"{target_base}/{_segment_of(old)}/{_sha1('twin:' + old.value)}") for old in minted
    }

    def map_term(term):
        if isinstance(term, Iri) and term in twin:
            return twin[term]
        return term

    target = Graph()
    log: list[tuple[str, str]] = []

    def note(subject, kind):
        log.append((subject.value if isinstance(subject, Iri) else str(subject), kind))

    chain_prop = Iri(f"{target_base}/property/value")
    generic_class = Iri(f"{target_base}/class/Entity")

    for triple in sorted(seed_graph, key=Triple.sort_key):
        subject = map_term(triple.subject)
        predicate = triple.predicate
        obj = map_term(triple.object)
        placed = False

        if isinstance(obj, Literal):
            text = obj.lexical
            if rates.spelling and rng.random() < rates.spelling:
                target.emit(subject, predicate, Literal(_random_edit(rng, text), lang=obj.lang))
                note(subject, "value:spelling")
                placed = True
            elif rates.language_swap and rng.random() < rates.language_swap:
                target.emit(subject, predicate, Literal(_swap_language(text), lang=obj.lang))
                note(subject, "value:language")
                placed = True
            elif rates.value_format and rng.random() < rates.value_format:
                target.emit(subject, predicate, Literal(_reformat(predicate.value, text), lang=obj.lang))
                note(subject, "value:format")
                placed = True
            elif rates.label_concept_swap and rng.random() < rates.label_concept_swap:
                hit = None
                for name in registry.names():
                    found = registry.get(name).lookup(text)
                    if found is not None and found.score == 1.0:
                        hit = found.iri
                        break
                if hit is not None:
                    target.emit(subject, predicate, hit)
                    note(subject, "ontological:literal-to-concept")
                    placed = True
            if not placed and rates.chain_lengthen and rng.random() < rates.chain_lengthen:
                node = Iri(f"{target_base}/node/{_sha1(subject.value + predicate.value + text)}")
                target.emit(subject, predicate, node)
                target.emit(node, chain_prop, obj)
                note(subject, "ontological:chain")
                placed = True
            if not placed and rates.deletion and rng.random() < rates.deletion:
                note(subject, "ontological:deletion")
                placed = True

        elif isinstance(obj, Iri) and registry.find_concept(obj) is not None:
            if rates.label_concept_swap and rng.random() < rates.label_concept_swap:
                labels = registry.concept_labels(obj)
                target.emit(subject, predicate, Literal(rng.choice(sorted(labels))))
                note(subject, "ontological:concept-to-literal")
                placed = True
            elif rates.deletion and rng.random() < rates.deletion:
                note(subject, "ontological:deletion")
                placed = True

        elif predicate == RDF_TYPE:
            if rates.class_generalize and rng.random() < rates.class_generalize:
                target.emit(subject, predicate, generic_class)
                note(subject, "logical:class-generalization")
                placed = True

        elif predicate in invertible_preds:
            if rates.inverse_rewrite and rng.random() < rates.inverse_rewrite:
                target.emit(obj, Iri(predicate.value + "-inverse"), subject)
                note(subject, "logical:inverse-property")
                placed = True

        if not placed:
            target.emit(subject, predicate, obj)

    reference = LinkSet(
        {Link(expr, twin[expr], 1.0) for expr in expressions},
        {"kind": "benchmark-reference", "rng_seed": rng_seed},
    )
    return Benchmark(seed_graph, target, reference, log, rng_seed, rates)


# -- seed corpus ---------------------------------------------------------------

_COMPOSERS = (
    "Ludwig van Beethoven",
    "Johannes Brahms",
    "Wolfgang Amadeus Mozart",
    "Johann Sebastian Bach",
    "Francis Poulenc",
    "Clara Schumann",
    "Gabriel Faure",
    "Maurice Ravel",
    "Franz Schubert",
    "Joseph Haydn",
)

_FORMS = ("Sonate", "Concerto", "Symphonie", "Suite", "Trio")
_FORM_GENRES = {
    "Sonate": "sonata",
    "Concerto": "concerto",
    "Symphonie": "symphony",
    "Suite": "suite",
    "Trio": "suite",
}
_INSTRUMENTS_FR = {
    "violon": "violin",
    "violoncelle": "violoncello",
    "alto": "viola",
    "contrebasse": "double-bass",
    "clarinette": "clarinet",
    "flute": "flute",
    "hautbois": "oboe",
    "piano": "piano",
    "clavecin": "harpsichord",
    "orchestre": "orchestra",
    "voix": "voice",
}
_KEYS_FR = (
    ("fa majeur", "f-major"),
    ("fa mineur", "f-minor"),
    ("sol majeur", "g-major"),
    ("sol mineur", "g-minor"),
    ("ut majeur", "c-major"),
    ("re majeur", "d-major"),
    ("re mineur", "d-minor"),
    ("mi bemol majeur", "e-flat-major"),
    ("la mineur", "a-minor"),
    ("si bemol majeur", "b-flat-major"),
)

GENRE_BASE = "http://vocab.example.org/genres/"
INSTRUMENT_BASE = "http://vocab.example.org/instruments/"
KEY_BASE = "http://vocab.example.org/keys/"


def make_seed_graph(
    n_works: int,
    rng_seed: int,
    schema: Optional[SchemaVocabulary] = None,
    base: str = "http://bench-source.example.org",
) -> Graph:
    """Deterministic synthetic corpus shaped like converter output."""
    schema = schema or SchemaVocabulary()
    rng = random.Random(rng_seed)
    graph = Graph()
    for i in range(n_works):
        form = rng.choice(_FORMS)
        instruments = rng.sample(sorted(_INSTRUMENTS_FR), k=rng.choice((1, 2)))
        key_label, key_id = rng.choice(_KEYS_FR)
        composer = rng.choice(_COMPOSERS)
        year = str(rng.randrange(1700, 1950))
        number = rng.randrange(1, 30)
        title = f"{form} pour {' et '.join(instruments)} no {number}"
        opus = f"Op. {i + 1} no {number}"

        work = Iri(f"{base}/work/{_sha1(f'seed-{i}')}")
        expression = Iri(f"{base}/expression/{_sha1(f'seed-{i}')}")
        event = Iri(f"{base}/event/{_sha1(f'seed-{i}')}")
        graph.emit(work, RDF_TYPE, schema.Work)
        graph.emit(expression, RDF_TYPE, schema.Expression)
        graph.emit(event, RDF_TYPE, schema.ExpressionCreation)
        graph.emit(event, schema.createdExpression, expression)
        graph.emit(expression, schema.wasCreatedBy, event)
        graph.emit(expression, schema.realises, work)
        graph.emit(expression, schema.hasTitle, Literal(title))
        graph.emit(expression, schema.hasKey, Iri(KEY_BASE + key_id))
        graph.emit(expression, schema.hasGenre, Iri(GENRE_BASE + _FORM_GENRES[form]))
        for instrument in instruments:
            graph.emit(expression, schema.hasMediumOfPerformance, Iri(INSTRUMENT_BASE + _INSTRUMENTS_FR[instrument]))
        graph.emit(expression, schema.hasOpus, Literal(opus))
        graph.emit(event, schema.hasDate, Literal(year))
        graph.emit(event, schema.carriedOutBy, Literal(composer))
    return graph


# -- persistence ----------------------------------------------------------------

def write_benchmark(benchmark: Benchmark, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "source.nt").write_text(save_ntriples(benchmark.source), encoding="utf-8")
    (directory / "target.nt").write_text(save_ntriples(benchmark.target), encoding="utf-8")
    (directory / "reference.nt").write_text(benchmark.reference.to_ntriples(), encoding="utf-8")
    payload = {
        "rng_seed": benchmark.rng_seed,
        "rates": benchmark.rates.as_dict(),
        "perturbations": [{"resource": r, "kind": k} for r, k in sorted(benchmark.perturbation_log)],
    }
    (directory / "log.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def read_benchmark(directory) -> Benchmark:
    directory = Path(directory)
    source = load_ntriples((directory / "source.nt").read_text(encoding="utf-8"))
    target = load_ntriples((directory / "target.nt").read_text(encoding="utf-8"))
    reference_graph = load_ntriples((directory / "reference.nt").read_text(encoding="utf-8"))
    payload = json.loads((directory / "log.json").read_text(encoding="utf-8"))
    reference = linkset_from_pairs(
        {(t.subject, t.object) for t in reference_graph if t.predicate == OWL_SAME_AS},
        metadata={"kind": "benchmark-reference", "rng_seed": payload["rng_seed"]},
    )
    return Benchmark(
        source,
        target,
        reference,
        [(entry["resource"], entry["kind"]) for entry in payload["perturbations"]],
        payload["rng_seed"],
        PerturbationRates(**payload["rates"]),
    )
