"""Pairwise thesaurus alignment and expert validation state.

Candidate mappings come from multilingual label similarity over
shared-language pairs (optionally extended through a static translation
table into a pivot language), a small structural boost when the broader
parents of a pair are themselves mapped, and a greedy best-first 1:1
extraction.  Validation decisions and manual additions are journaled
append-only so the exact alignment state can be rebuilt by replay.
"""

from __future__ import annotations

import datetime
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional

from cantor.errors import ConflictError, NotFoundError, ValidationError
from cantor.graph import Graph, Iri, Triple
from cantor.ntriples import save_ntriples
from cantor.schema import SKOS_EXACT_MATCH
from cantor.text import label_similarity, normalize_label
from cantor.vocab import Vocabulary

DEFAULT_THRESHOLD = 0.82
STRUCTURAL_BOOST = 0.1

STATUS_CANDIDATE = "candidate"
STATUS_ACCEPTED = "accepted"
STATUS_REJECTED = "rejected"
STATUS_MANUAL = "manual"
STATUSES = (STATUS_CANDIDATE, STATUS_ACCEPTED, STATUS_REJECTED, STATUS_MANUAL)


@dataclass(frozen=True)
class Mapping:
    source: Iri
    target: Iri
    confidence: float
    status: str = STATUS_CANDIDATE
    provenance: str = "automatic"
    relation: str = "exactMatch"

    def __post_init__(self):
        if not 0.0 <= self.confidence <= 1.0:
            raise ValidationError(f"confidence must be in [0, 1], got {self.confidence}")
        if self.status not in STATUSES:
            raise ValidationError(f"unknown status {self.status!r}")
        if self.status == STATUS_MANUAL and self.provenance != "expert":
            raise ValidationError("manual mappings must have expert provenance")
        if self.provenance == "expert" and self.confidence != 1.0:
            raise ValidationError("expert mappings carry confidence 1.0")


@dataclass
class Alignment:
    vocab_a: Iri
    vocab_b: Iri
    mappings: dict[tuple[Iri, Iri], Mapping] = field(default_factory=dict)
    journal: list[dict] = field(default_factory=list)
    created_at: str = field(default_factory=lambda: datetime.datetime.now(datetime.timezone.utc).isoformat())

    def get(self, source: Iri, target: Iri) -> Mapping:
        try:
            return self.mappings[(source, target)]
        except KeyError:
            raise NotFoundError(f"no mapping {source} -> {target}")

    def sorted_mappings(self) -> list[Mapping]:
        return sorted(self.mappings.values(), key=lambda m: (-m.confidence, m.source.value, m.target.value))

    def same_state(self, other: "Alignment") -> bool:
        return self.mappings == other.mappings

    def copy_base(self) -> "Alignment":
        """Copy without journal (the replay starting point)."""
        return Alignment(self.vocab_a, self.vocab_b, dict(self.mappings), [], self.created_at)


@dataclass
class AlignConfig:
    threshold: float = DEFAULT_THRESHOLD
    pivot_lang: str = "en"
    # per vocabulary pair: {(lang, label-normalized): pivot-lang label}
    translations: dict[tuple[str, str], str] = field(default_factory=dict)
    structural_boost: float = STRUCTURAL_BOOST


def _label_pool(concept, pivot_lang, translations) -> list[tuple[str, str]]:
    """(lang, normalized label) pairs, plus translated pivot-language forms."""
    pool = []
    for lang, label, _ in concept.labels():
        norm = normalize_label(label, lang)
        if not norm:
            continue
        pool.append((lang, norm))
        translated = translations.get((lang, norm))
        if translated:
            pool.append((pivot_lang, normalize_label(translated, pivot_lang)))
    return pool


def concept_similarity(concept_a, concept_b, config: AlignConfig) -> float:
    """Max label similarity over shared-language label pairs (symmetric)."""
    pool_a = _label_pool(concept_a, config.pivot_lang, config.translations)
    pool_b = _label_pool(concept_b, config.pivot_lang, config.translations)
    best = 0.0
    for lang_a, label_a in pool_a:
        for lang_b, label_b in pool_b:
            if lang_a != lang_b:
                continue
            best = max(best, label_similarity(label_a, label_b))
            if best == 1.0:
                return 1.0
    return best


def _greedy_one_to_one(scored: dict[tuple[Iri, Iri], float], threshold: float) -> dict[tuple[Iri, Iri], float]:
    """Best-first 1:1 extraction; tie-break is symmetric in the pair."""
    order = sorted(
        (item for item in scored.items() if item[1] >= threshold),
        key=lambda item: (
            -item[1],
            min(item[0][0].value, item[0][1].value),
            max(item[0][0].value, item[0][1].value),
        ),
    )
    taken_a: set[Iri] = set()
    taken_b: set[Iri] = set()
    selected: dict[tuple[Iri, Iri], float] = {}
    for (a, b), score in order:
        if a in taken_a or b in taken_b:
            continue
        taken_a.add(a)
        taken_b.add(b)
        selected[(a, b)] = score
    return selected


def align(vocab_a: Vocabulary, vocab_b: Vocabulary, config: Optional[AlignConfig] = None) -> Alignment:
    """Candidate exactMatch mappings between two vocabularies, 1:1."""
    config = config or AlignConfig()
    floor = max(0.0, config.threshold - config.structural_boost)

    base: dict[tuple[Iri, Iri], float] = {}
    for a_iri, concept_a in vocab_a.concepts.items():
        for b_iri, concept_b in vocab_b.concepts.items():
            score = concept_similarity(concept_a, concept_b, config)
            if score >= floor:
                base[(a_iri, b_iri)] = score

    def boosted(selection) -> dict[tuple[Iri, Iri], float]:
        out = {}
        for (a_iri, b_iri), score in base.items():
            parents_a = vocab_a.concepts[a_iri].broader
            parents_b = vocab_b.concepts[b_iri].broader
            parent_mapped = any((pa, pb) in selection for pa in parents_a for pb in parents_b)
            out[(a_iri, b_iri)] = min(1.0, score + config.structural_boost) if parent_mapped else score
        return out

    selection = _greedy_one_to_one(base, config.threshold)
    for _ in range(10):
        next_selection = _greedy_one_to_one(boosted(selection), config.threshold)
        if set(next_selection) == set(selection):
            selection = next_selection
            break
        selection = next_selection

    alignment = Alignment(vocab_a.scheme, vocab_b.scheme)
    for (a_iri, b_iri), score in selection.items():
        alignment.mappings[(a_iri, b_iri)] = Mapping(a_iri, b_iri, round(score, 6))
    return alignment


# -- validation and journaling ------------------------------------------------

def validate(alignment: Alignment, source: Iri, target: Iri, decision: str) -> Mapping:
    """Record an expert accept/reject decision (last write wins)."""
    if decision not in (STATUS_ACCEPTED, STATUS_REJECTED):
        raise ValidationError(f"decision must be accepted or rejected, got {decision!r}")
    mapping = alignment.get(source, target)
    updated = replace(mapping, status=decision)
    alignment.mappings[(source, target)] = updated
    alignment.journal.append({"op": "validate", "source": source.value, "target": target.value, "decision": decision})
    return updated


def add_manual(alignment: Alignment, source: Iri, target: Iri) -> Mapping:
    if (source, target) in alignment.mappings:
        raise ConflictError(f"mapping {source} -> {target} already exists")
    mapping = Mapping(source, target, confidence=1.0, status=STATUS_MANUAL, provenance="expert")
    alignment.mappings[(source, target)] = mapping
    alignment.journal.append({"op": "add_manual", "source": source.value, "target": target.value})
    return mapping


def replay_journal(base: Alignment, events: Iterable[dict]) -> Alignment:
    """Rebuild alignment state by applying journaled events to a base copy."""
    alignment = base.copy_base()
    for event in events:
        source, target = Iri(event["source"]), Iri(event["target"])
        if event["op"] == "validate":
            validate(alignment, source, target, event["decision"])
        elif event["op"] == "add_manual":
            add_manual(alignment, source, target)
        else:
            raise ValidationError(f"unknown journal op {event['op']!r}")
    return alignment


def dump_journal(events: Iterable[dict]) -> str:
    return "".join(json.dumps(event, sort_keys=True) + "\n" for event in events)


def load_journal(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


# -- exports -------------------------------------------------------------------

def export_exact_match_graph(alignment: Alignment) -> Graph:
    """skos:exactMatch triples for accepted + manual pairs only."""
    graph = Graph()
    for mapping in alignment.mappings.values():
        if mapping.status in (STATUS_ACCEPTED, STATUS_MANUAL):
            graph.add(Triple(mapping.source, SKOS_EXACT_MATCH, mapping.target))
    return graph


def export_exact_match_ntriples(alignment: Alignment) -> str:
    return save_ntriples(export_exact_match_graph(alignment))


def export_tsv(alignment: Alignment) -> str:
    """Full mapping set: source, target, confidence, status."""
    lines = [
        f"{m.source.value}\t{m.target.value}\t{m.confidence:.6f}\t{m.status}"
        for m in sorted(alignment.mappings.values(), key=lambda m: (m.source.value, m.target.value))
    ]
    return "".join(line + "\n" for line in lines)


def load_tsv(text: str, vocab_a: Optional[Iri] = None, vocab_b: Optional[Iri] = None) -> Alignment:
    alignment = Alignment(
        vocab_a or Iri("http://example.org/scheme/a"),
        vocab_b or Iri("http://example.org/scheme/b"),
    )
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ValidationError(f"alignment TSV line {line_no}: expected 4 columns, got {len(parts)}")
        source, target, confidence, status = parts
        mapping = Mapping(
            Iri(source),
            Iri(target),
            float(confidence),
            status=status,
            provenance="expert" if status == STATUS_MANUAL else "automatic",
        )
        alignment.mappings[(mapping.source, mapping.target)] = mapping
    return alignment
