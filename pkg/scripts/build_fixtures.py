#!/usr/bin/env python3
"""Regenerate the committed MARC/graph fixtures.

Run from the repository root:

    python scripts/build_fixtures.py

Output is deterministic; re-running must leave the tree unchanged.
"""

from __future__ import annotations

import sys
import xml.etree.ElementTree as ET
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from cantor.convert import ConvertConfig, convert
from cantor.marc import DEFAULT_LEADER, DataField, Dialect, MarcRecord, Subfield, serialize_iso2709
from cantor.ntriples import save_ntriples
from cantor.rules import load_rule_file
from cantor.vocab import VocabularyRegistry

FIXTURES = ROOT / "fixtures"


def df(tag, *subfields, ind1=" ", ind2=" "):
    return DataField(tag, ind1, ind2, tuple(Subfield(code, value) for code, value in subfields))


def record(source_id, dialect, fields):
    return MarcRecord(
        leader=DEFAULT_LEADER,
        control_fields=[("001", source_id)],
        data_fields=fields,
        dialect=dialect,
        source_id=source_id,
    )


def beethoven_record():
    return record(
        "bnf-vc-sonata-1",
        Dialect.INTERMARC,
        [
            df("100", ("a", "Ludwig van Beethoven")),
            df("144", ("a", "Sonate pour violoncelle et piano no 1")),
            df("245", ("a", "Sonate pour violoncelle et piano no 1 en fa majeur")),
            df("245", ("a", "Sonata in F")),
            df("245", ("a", "Sonates")),
            df("444", ("k", "fa majeur"), ("g", "sonate"), ("o", "Op. 5 no 1")),
            df("448", ("a", "Violoncelle, piano")),
            df("460", ("a", "1796")),
            df("461", ("a", "Créée à Berlin, en 1796")),
            df("462", ("a", "Première publication : Vienne, 1797")),
        ],
    )


def corpus_records():
    return [
        beethoven_record(),
        record(
            "bnf-vc-sonata-2",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Ludwig van Beethoven")),
                df("144", ("a", "Sonate pour violoncelle et piano no 2")),
                df("444", ("k", "sol mineur"), ("g", "sonate"), ("o", "Op. 5 no 2")),
                df("448", ("a", "Violoncelle, piano")),
                df("460", ("a", "1796")),
            ],
        ),
        record(
            "pp-cl-sonata-1",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Johannes Brahms")),
                df("144", ("a", "Sonate pour clarinette et piano no 1")),
                df("444", ("k", "fa mineur"), ("g", "sonate"), ("o", "Op. 120 no 1")),
                df("448", ("a", "Clarinette, piano")),
                df("460", ("a", "1894")),
            ],
        ),
        record(
            "pp-cl-sonata-2",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Johannes Brahms")),
                df("144", ("a", "Sonate pour clarinette et piano no 2")),
                df("444", ("k", "mi bémol majeur"), ("g", "sonate"), ("o", "Op. 120 no 2")),
                df("448", ("a", "Clarinette, piano")),
                df("460", ("a", "1894")),
            ],
        ),
        record(
            "rf-fl-sonata",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Francis Poulenc")),
                df("144", ("a", "Sonate pour flûte et piano")),
                df("444", ("g", "sonate"), ("q", "FP 164")),
                df("448", ("a", "Flûte, piano")),
                df("460", ("a", "1957")),
            ],
        ),
        record(
            "bnf-vn-concerto",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Ludwig van Beethoven")),
                df("144", ("a", "Concerto pour violon")),
                df("444", ("k", "ré majeur"), ("g", "concerto"), ("o", "Op. 61")),
                df("448", ("a", "Violon, orchestre")),
                df("460", ("a", "1806")),
            ],
        ),
        record(
            "pp-sym-41",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Wolfgang Amadeus Mozart")),
                df("144", ("a", "Symphonie no 41")),
                df("444", ("k", "ut majeur"), ("g", "symphonie"), ("q", "K. 551")),
                df("448", ("a", "Orchestre")),
                df("460", ("a", "1788")),
            ],
        ),
        record(
            "bnf-vc-suite",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Johann Sebastian Bach")),
                df("144", ("a", "Suite pour violoncelle seul no 1")),
                # "sol majr" is two edits from the real key label; "BWV 1007"
                # sits in the opus subfield on purpose (noise-correction cases)
                df("444", ("k", "sol majr"), ("g", "suite"), ("o", "BWV 1007")),
                df("448", ("a", "Violoncelle")),
                df("460", ("a", "1717")),
            ],
        ),
        record(
            "bnf-nocturne",
            Dialect.INTERMARC,
            [
                df("100", ("a", "Frédéric Chopin")),
                df("144", ("a", "Nocturne")),
                # "Op. 9 no 2" in the catalog subfield: re-classified to opus
                df("444", ("k", "mi bémol majeur"), ("g", "nocturne"), ("q", "Op. 9 no 2")),
                df("448", ("a", "Piano")),
                df("460", ("a", "1832")),
            ],
        ),
    ]


def coltrane_record():
    return record(
        "rf-coltrane-mft",
        Dialect.UNIMARC,
        [
            df("200", ("a", "My Favorite Things")),
            df("500", ("a", "My Favorite Things"), ("d", "1959")),
            df("700", ("a", "Rogers & Hammerstein")),
            df("701", ("a", "John Coltrane Quartet")),
            df("610", ("d", "2 June 1962"), ("p", "Birdland, New York"), ("g", "jazz")),
            df("611", ("d", "1962"), ("b", "Vee Jay records")),
        ],
    )


def twin_records():
    def twin(source_id, opus):
        return record(
            source_id,
            Dialect.INTERMARC,
            [
                df("100", ("a", "Ludwig van Beethoven")),
                df("144", ("a", "Sonate pour violoncelle et piano")),
                df("444", ("k", "fa majeur"), ("g", "sonate"), ("o", opus)),
                df("448", ("a", "Violoncelle, piano")),
                df("460", ("a", "1796")),
            ],
        )

    return [twin("twin-a", "Op. 5 no 1"), twin("twin-b", "Op. 5 no 2")]


def to_marcxml(records) -> str:
    collection = ET.Element("collection")
    for rec in records:
        rec_el = ET.SubElement(collection, "record")
        ET.SubElement(rec_el, "leader").text = rec.leader
        for tag, value in rec.control_fields:
            cf = ET.SubElement(rec_el, "controlfield", tag=tag)
            cf.text = value
        for field in rec.data_fields:
            df_el = ET.SubElement(rec_el, "datafield", tag=field.tag, ind1=field.ind1, ind2=field.ind2)
            for sf in field.subfields:
                sf_el = ET.SubElement(df_el, "subfield", code=sf.code)
                sf_el.text = sf.value
    ET.indent(collection)
    return ET.tostring(collection, encoding="unicode") + "\n"


def main():
    marc_dir = FIXTURES / "marc"
    golden_dir = FIXTURES / "golden"
    marc_dir.mkdir(parents=True, exist_ok=True)
    golden_dir.mkdir(parents=True, exist_ok=True)

    beethoven = [beethoven_record()]
    coltrane = [coltrane_record()]
    (marc_dir / "beethoven.mrc").write_bytes(serialize_iso2709(beethoven))
    (marc_dir / "beethoven.xml").write_text(to_marcxml(beethoven), encoding="utf-8")
    (marc_dir / "coltrane.mrc").write_bytes(serialize_iso2709(coltrane))
    (marc_dir / "coltrane.xml").write_text(to_marcxml(coltrane), encoding="utf-8")
    (marc_dir / "corpus.mrc").write_bytes(serialize_iso2709(corpus_records()))
    (marc_dir / "twins.mrc").write_bytes(serialize_iso2709(twin_records()))

    vocabs = VocabularyRegistry.from_directory(FIXTURES / "vocab")
    intermarc_rules = load_rule_file(FIXTURES / "rules" / "intermarc.rules")
    unimarc_rules = load_rule_file(FIXTURES / "rules" / "unimarc.rules")

    beethoven_graph = convert(beethoven, intermarc_rules, vocabs, ConvertConfig()).graph
    (golden_dir / "beethoven.nt").write_text(save_ntriples(beethoven_graph), encoding="utf-8")

    corpus_graph = convert(corpus_records(), intermarc_rules, vocabs, ConvertConfig()).graph
    coltrane_graph = convert(coltrane, unimarc_rules, vocabs, ConvertConfig()).graph
    (golden_dir / "corpus.nt").write_text(save_ntriples(corpus_graph), encoding="utf-8")
    (golden_dir / "coltrane.nt").write_text(save_ntriples(coltrane_graph), encoding="utf-8")

    print("fixtures written under", FIXTURES)


if __name__ == "__main__":
    main()
