"""Rule-driven conversion of MARC records into the event-centric graph.

Each record yields a deterministic subgraph: a Work / creation-event /
Expression triangle whenever work-level rules fire, plus optional
performance, recording and publication chains.  Node IRIs are minted as
``{base}/{segment}/{sha1(key)}`` so identical inputs always produce
byte-identical canonical output.

Vocabulary lookups replace literals with concept IRIs; misses keep the
literal and are counted per vocabulary in the conversion report.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass, field
from typing import Optional

from cantor import extractors
from cantor.errors import ConfigError
from cantor.graph import Graph, Iri, Literal
from cantor.marc import MarcRecord
from cantor.rules import ConversionRule, NodeRole, TransformKind
from cantor.schema import RDF_TYPE, SchemaVocabulary
from cantor.vocab import VocabularyRegistry

DEFAULT_RESOURCE_BASE = "http://data.example.org"


@dataclass
class ConvertConfig:
    base: str = DEFAULT_RESOURCE_BASE
    schema: SchemaVocabulary = field(default_factory=SchemaVocabulary)
    key_vocab: str = "keys"
    catalog_sigla: tuple = extractors.DEFAULT_CATALOG_SIGLA


@dataclass
class ConversionReport:
    records: int = 0
    vocab_misses: Counter = field(default_factory=Counter)
    casting_leftovers: list = field(default_factory=list)
    noise_corrections: int = 0
    warnings: list = field(default_factory=list)


@dataclass
class ConversionResult:
    graph: Graph
    report: ConversionReport


def _sha1(key: str) -> str:
    return hashlib.sha1(key.encode("utf-8")).hexdigest()


class _RecordNodes:
    """Lazily minted nodes for one record's subgraph."""

    def __init__(self, record: MarcRecord, config: ConvertConfig, graph: Graph):
        self.record = record
        self.config = config
        self.graph = graph
        self.schema = config.schema
        self._minted: dict[str, Iri] = {}

    def _mint(self, segment: str, discriminator: str = "") -> Iri:
        key = self.record.source_id + discriminator
        return Iri(f"{self.config.base.rstrip('/')}/{segment}/{_sha1(key)}")

    def _get(self, name: str, builder) -> Iri:
        if name not in self._minted:
            self._minted[name] = builder()
        return self._minted[name]

    # Triangle: creation event --createdExpression--> expression --realises--> work
    def triangle(self):
        s = self.schema

        def build():
            work = self._mint("work")
            expression = self._mint("expression")
            event = self._mint("event")
            g = self.graph
            g.emit(work, RDF_TYPE, s.Work)
            g.emit(expression, RDF_TYPE, s.Expression)
            g.emit(event, RDF_TYPE, s.ExpressionCreation)
            g.emit(event, s.createdExpression, expression)
            g.emit(expression, s.wasCreatedBy, event)
            g.emit(expression, s.realises, work)
            self._minted["work"] = work
            self._minted["expression"] = expression
            self._minted["event"] = event
            return work

        self._get("work", build)
        return self._minted["work"], self._minted["expression"], self._minted["event"]

    def performance(self) -> tuple[Iri, Iri]:
        s = self.schema

        def build():
            perf = self._mint("performance", "#performance")
            performed = self._mint("expression", "#performed-expression")
            g = self.graph
            g.emit(perf, RDF_TYPE, s.Performance)
            g.emit(performed, RDF_TYPE, s.PerformedExpression)
            g.emit(perf, s.createdExpression, performed)
            g.emit(performed, s.wasCreatedBy, perf)
            self._minted["performed"] = performed
            return perf

        return self._get("performance", build), self._minted["performed"]

    def recording(self) -> tuple[Iri, Iri]:
        s = self.schema

        def build():
            event = self._mint("event", "#recording-event")
            recording = self._mint("recording", "#recording")
            g = self.graph
            g.emit(event, RDF_TYPE, s.RecordingEvent)
            g.emit(recording, RDF_TYPE, s.Recording)
            g.emit(event, s.createdExpression, recording)
            g.emit(recording, s.wasCreatedBy, event)
            self._minted["recording"] = recording
            return event

        return self._get("recording_event", build), self._minted["recording"]

    def publication(self) -> tuple[Iri, Iri]:
        s = self.schema

        def build():
            event = self._mint("event", "#publication-event")
            pub = self._mint("publication", "#publication-expression")
            g = self.graph
            g.emit(event, RDF_TYPE, s.ExpressionCreation)
            g.emit(pub, RDF_TYPE, s.PublicationExpression)
            g.emit(event, s.createdExpression, pub)
            g.emit(pub, s.wasCreatedBy, event)
            self._minted["publication_expression"] = pub
            return event

        return self._get("publication_event", build), self._minted["publication_expression"]

    def link_chains(self):
        """Connect chains once all rules have fired."""
        s = self.schema
        g = self.graph
        expression = self._minted.get("expression")
        performed = self._minted.get("performed")
        if expression is not None and performed is not None:
            g.emit(performed, s.performedExpressionOf, expression)
        recording = self._minted.get("recording")
        if recording is not None:
            incorporated = performed if performed is not None else expression
            if incorporated is not None:
                g.emit(recording, s.incorporates, incorporated)
        publication = self._minted.get("publication_expression")
        if publication is not None and expression is not None:
            g.emit(publication, s.incorporates, expression)


# Properties that describe the activity rather than its product.
_EVENT_SIDE_PROPS = {"hasDate", "hasPlace", "carriedOutBy", "hasNote"}


def _validate_rules(rules, vocabs: VocabularyRegistry):
    for rule in rules:
        if rule.transform.kind == TransformKind.VOCAB_LOOKUP and rule.transform.arg not in vocabs:
            raise ConfigError(
                f"rule for {rule.selector.tag} ${rule.selector.code} references "
                f"unknown vocabulary {rule.transform.arg!r}"
            )


def convert(
    records: list[MarcRecord],
    rules: list[ConversionRule],
    vocabs: VocabularyRegistry,
    config: Optional[ConvertConfig] = None,
) -> ConversionResult:
    config = config or ConvertConfig()
    _validate_rules(rules, vocabs)
    graph = Graph()
    report = ConversionReport()
    for record in records:
        _convert_record(record, rules, vocabs, config, graph, report)
        report.records += 1
    return ConversionResult(graph, report)


def _convert_record(record, rules, vocabs, config, graph, report):
    nodes = _RecordNodes(record, config, graph)
    schema = config.schema

    def target_node(role: NodeRole, prop: str) -> Iri:
        if role in (NodeRole.WORK, NodeRole.EXPRESSION, NodeRole.EVENT):
            work, expression, event = nodes.triangle()
            return {NodeRole.WORK: work, NodeRole.EXPRESSION: expression, NodeRole.EVENT: event}[role]
        if role == NodeRole.PERFORMANCE:
            perf, performed = nodes.performance()
            return perf if prop in _EVENT_SIDE_PROPS else performed
        if role == NodeRole.RECORDING:
            event, recording = nodes.recording()
            return event if prop in _EVENT_SIDE_PROPS else recording
        event, publication = nodes.publication()
        return event if prop in _EVENT_SIDE_PROPS else publication

    def emit(role: NodeRole, prop: str, obj):
        graph.emit(target_node(role, prop), schema.property_by_name(prop), obj)

    def apply_rule(rule: ConversionRule, value: str):
        kind = rule.transform.kind
        prop = rule.prop
        if kind == TransformKind.VERBATIM:
            prop, obj = _verbatim(rule, value)
            emit(rule.role, prop, obj)
        elif kind == TransformKind.VOCAB_LOOKUP:
            vocab = vocabs.get(rule.transform.arg)
            hit = vocab.lookup(value)
            if hit is not None:
                emit(rule.role, prop, hit.iri)
                return
            if prop == "hasKey":
                fixed = extractors.correct_noise("key", value, vocabs, config.key_vocab, config.catalog_sigla)
                if isinstance(fixed.value, Iri):
                    report.noise_corrections += 1
                    emit(rule.role, prop, fixed.value)
                    return
            report.vocab_misses[rule.transform.arg] += 1
            emit(rule.role, prop, Literal(value))
        elif kind == TransformKind.DATE_PARSE:
            year = extractors.parse_year(value)
            emit(rule.role, prop, Literal(year if year else value))
        else:
            _apply_extractor(rule, value)

    def _verbatim(rule: ConversionRule, value: str):
        """Opus/catalog values get re-classified when their pattern says so."""
        kind_by_prop = {"hasOpus": "opus", "hasCatalogNumber": "catalog"}
        if rule.prop in kind_by_prop:
            fixed = extractors.correct_noise(
                kind_by_prop[rule.prop], value, vocabs, config.key_vocab, config.catalog_sigla
            )
            if fixed.changed:
                report.noise_corrections += 1
            prop = {"opus": "hasOpus", "catalog": "hasCatalogNumber"}[fixed.kind]
            return prop, fixed.value if isinstance(fixed.value, Iri) else Literal(fixed.value)
        return rule.prop, Literal(value)

    def _apply_extractor(rule: ConversionRule, value: str):
        name = rule.transform.arg
        if name == "casting":
            vocab = vocabs.get("instruments") if "instruments" in vocabs else None
            if vocab is None:
                raise ConfigError("casting extractor needs an 'instruments' vocabulary")
            result = extractors.extract_casting(value, vocab)
            for entry in result.entries:
                emit(rule.role, rule.prop, entry.medium)
            for token in result.leftovers:
                report.casting_leftovers.append((record.source_id, token))
                emit(rule.role, rule.prop, Literal(token))
        elif name == "first_publication":
            info = extractors.extract_first_publication(value)
            role = rule.role
            if info.year is not None:
                emit(role, "hasDate", Literal(str(info.year)))
                if info.place:
                    emit(role, "hasPlace", Literal(info.place))
                if info.publisher:
                    emit(role, "carriedOutBy", Literal(info.publisher))
            emit(role, "hasNote", Literal(value))
        elif name == "premiere":
            info = extractors.extract_premiere(value)
            role = rule.role
            if info.year is not None:
                emit(role, "hasDate", Literal(str(info.year)))
                if info.place:
                    emit(role, "hasPlace", Literal(info.place))
            emit(role, "hasNote", Literal(value))
        else:
            raise ConfigError(f"unknown extractor {name!r}")

    for datafield in record.data_fields:
        for rule in rules:
            if rule.selector.matches_field(record.dialect, datafield.tag, datafield.ind1, datafield.ind2):
                for subfield in datafield.subfields:
                    if subfield.code == rule.selector.code:
                        apply_rule(rule, subfield.value)

    nodes.link_chains()
