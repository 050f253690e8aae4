"""Application state: data directory layout, loaded graph and
vocabularies, and the single-writer alignment store.

Data directory layout (all paths overridable via ``config.json``):

    graph.nt                  browse graph for /expressions and /resources
    vocab/*.ttl               controlled vocabularies
    alignment.tsv             current alignment (full mapping set)
    alignment.journal.jsonl   append-only decision journal
    rules/*.rules             conversion rule files
    jobs/<id>/                job artifacts
"""

from __future__ import annotations

import json
import threading
from pathlib import Path
from typing import Optional

from cantor import align as align_mod
from cantor.errors import ValidationError
from cantor.graph import Graph, Iri
from cantor.ntriples import load_ntriples
from cantor.schema import SchemaVocabulary
from cantor.service.facets import FacetEngine
from cantor.vocab import VocabularyRegistry

DEFAULTS = {
    "graph": "graph.nt",
    "vocab_dir": "vocab",
    "alignment": "alignment.tsv",
    "journal": "alignment.journal.jsonl",
}


class AlignmentStore:
    """Serialized mutations over the alignment plus its journal file."""

    def __init__(self, alignment: align_mod.Alignment, journal_path: Optional[Path]):
        self._lock = threading.Lock()
        self.alignment = alignment
        self.journal_path = journal_path

    def _append_journal(self):
        if self.journal_path is None:
            return
        entry = self.alignment.journal[-1]
        with self.journal_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, sort_keys=True) + "\n")

    def validate(self, source: Iri, target: Iri, decision: str):
        with self._lock:
            mapping = align_mod.validate(self.alignment, source, target, decision)
            self._append_journal()
            return mapping

    def add_manual(self, source: Iri, target: Iri):
        with self._lock:
            mapping = align_mod.add_manual(self.alignment, source, target)
            self._append_journal()
            return mapping

    def mappings(self, status: Optional[str] = None):
        with self._lock:
            items = self.alignment.sorted_mappings()
        if status is not None:
            if status not in align_mod.STATUSES:
                raise ValidationError(f"unknown status {status!r}")
            items = [m for m in items if m.status == status]
        return items

    def export_ntriples(self) -> str:
        with self._lock:
            return align_mod.export_exact_match_ntriples(self.alignment)

    def export_tsv(self) -> str:
        with self._lock:
            return align_mod.export_tsv(self.alignment)


class AppState:
    def __init__(self, data_dir):
        self.data_dir = Path(data_dir)
        if not self.data_dir.is_dir():
            raise ValidationError(f"data directory does not exist: {self.data_dir}")
        config_path = self.data_dir / "config.json"
        self.config = dict(DEFAULTS)
        if config_path.exists():
            self.config.update(json.loads(config_path.read_text(encoding="utf-8")))

        self.schema = SchemaVocabulary()
        graph_path = self.data_dir / self.config["graph"]
        self.graph = (
            load_ntriples(graph_path.read_text(encoding="utf-8")) if graph_path.exists() else Graph()
        )

        vocab_dir = self.data_dir / self.config["vocab_dir"]
        self.registry = (
            VocabularyRegistry.from_directory(vocab_dir) if vocab_dir.is_dir() else VocabularyRegistry()
        )
        self.facets = FacetEngine(self.graph, self.registry, self.schema)

        alignment_path = self.data_dir / self.config["alignment"]
        journal_path = self.data_dir / self.config["journal"]
        if alignment_path.exists():
            alignment = align_mod.load_tsv(alignment_path.read_text(encoding="utf-8"))
            if journal_path.exists():
                alignment = align_mod.replay_journal(
                    alignment, align_mod.load_journal(journal_path.read_text(encoding="utf-8"))
                )
        else:
            alignment = align_mod.Alignment(
                Iri("http://example.org/scheme/a"), Iri("http://example.org/scheme/b")
            )
        self.alignment_store = AlignmentStore(alignment, journal_path)

    def resolve(self, relative: str) -> Path:
        """Resolve a job-config path inside the data directory."""
        path = (self.data_dir / relative).resolve()
        if not str(path).startswith(str(self.data_dir.resolve())):
            raise ValidationError(f"path escapes the data directory: {relative!r}")
        return path

    def concept_context(self, iri_value: str) -> tuple[dict[str, str], list[str]]:
        """Labels plus broader-chain labels for a concept (review UI)."""
        concept = self.registry.find_concept(Iri(iri_value)) if _is_iri(iri_value) else None
        if concept is None:
            return {}, []
        labels = dict(sorted(concept.pref_labels.items()))
        chain = []
        seen = set()
        frontier = sorted(concept.broader, key=lambda i: i.value)
        while frontier:
            parent_iri = frontier.pop(0)
            if parent_iri in seen:
                continue
            seen.add(parent_iri)
            parent = self.registry.find_concept(parent_iri)
            if parent is None:
                continue
            label = parent.pref_labels.get("en") or next(iter(sorted(parent.pref_labels.values())), parent_iri.value)
            chain.append(label)
            frontier.extend(sorted(parent.broader, key=lambda i: i.value))
        return labels, chain


def _is_iri(value: str) -> bool:
    return "://" in value or value.startswith("urn:")
