"""Command-line interface.

Each subcommand parses arguments and delegates to the same library
functions the HTTP service uses, so CLI output and service artifacts
are interchangeable.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from cantor import align as align_mod
from cantor.convert import ConvertConfig, convert
from cantor.errors import CantorError
from cantor.graph import Graph, Iri, merge
from cantor.linking import (
    PerturbationRates,
    evaluate,
    generate_benchmark,
    link,
    make_seed_graph,
    write_benchmark,
)
from cantor.linking.pipeline import LinkConfig, linkset_from_pairs
from cantor.marc import Dialect, parse_iso2709, parse_marcxml
from cantor.ntriples import load_ntriples, save_ntriples
from cantor.pivot import build_pivot
from cantor.rules import load_rule_file
from cantor.schema import OWL_SAME_AS, SchemaVocabulary
from cantor.turtle import load_turtle_subset
from cantor.vocab import VocabularyRegistry, load_vocabulary


def load_graph_file(path) -> Graph:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix.lower() in (".ttl", ".turtle"):
        return load_turtle_subset(text)
    return load_ntriples(text)


def _write_output(text: str, output):
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text, encoding="utf-8")


# -- graph ----------------------------------------------------------------------

def cmd_graph(args) -> int:
    graphs = [load_graph_file(p) for p in args.files]
    if args.action == "stats":
        for path, graph in zip(args.files, graphs):
            subjects = {t.subject for t in graph}
            predicates = {t.predicate for t in graph}
            objects = {t.object for t in graph}
            print(f"{path}: {len(graph)} triples, {len(subjects)} subjects, "
                  f"{len(predicates)} predicates, {len(objects)} objects")
        return 0
    merged = merge(graphs)
    _write_output(save_ntriples(merged), args.output)
    return 0


# -- marc -----------------------------------------------------------------------

def cmd_marc_dump(args) -> int:
    path = Path(args.file)
    dialect = Dialect(args.dialect)
    if path.suffix.lower() == ".xml":
        records = parse_marcxml(path.read_text(encoding="utf-8"), dialect)
    else:
        records = parse_iso2709(path.read_bytes(), dialect)
    for record in records:
        print(f"=== {record.source_id} ({record.dialect.value}, {record.encoding})")
        print(f"LDR {record.leader}")
        for tag, value in record.control_fields:
            print(f"{tag}    {value}")
        for field in record.data_fields:
            subfields = " ".join(f"${sf.code} {sf.value}" for sf in field.subfields)
            print(f"{field.tag} {field.ind1}{field.ind2} {subfields}")
    return 0


# -- convert ----------------------------------------------------------------------

def cmd_convert(args) -> int:
    path = Path(args.input)
    dialect = Dialect(args.dialect)
    if path.suffix.lower() == ".xml":
        records = parse_marcxml(path.read_text(encoding="utf-8"), dialect)
    else:
        records = parse_iso2709(path.read_bytes(), dialect)
    rules = load_rule_file(args.rules)
    registry = VocabularyRegistry.from_directory(args.vocab_dir)
    result = convert(records, rules, registry, ConvertConfig(base=args.base))
    _write_output(save_ntriples(result.graph), args.output)
    report = result.report
    print(
        f"converted {report.records} records; vocabulary misses: "
        f"{dict(report.vocab_misses) or 'none'}; noise corrections: {report.noise_corrections}",
        file=sys.stderr,
    )
    return 0


# -- vocab ------------------------------------------------------------------------

def cmd_vocab_align(args) -> int:
    vocab_a = load_vocabulary(args.vocab_a)
    vocab_b = load_vocabulary(args.vocab_b)
    alignment = align_mod.align(vocab_a, vocab_b, align_mod.AlignConfig(threshold=args.threshold))
    _write_output(align_mod.export_tsv(alignment), args.output)
    return 0


def cmd_vocab_lookup(args) -> int:
    vocab = load_vocabulary(args.vocab)
    hit = vocab.lookup(args.text, lang=args.lang)
    if hit is None:
        print("no match")
        return 1
    print(f"{hit.iri.value}\t{hit.score:.6f}")
    return 0


def cmd_vocab_export(args) -> int:
    alignment = align_mod.load_tsv(Path(args.alignment).read_text(encoding="utf-8"))
    if args.journal:
        events = align_mod.load_journal(Path(args.journal).read_text(encoding="utf-8"))
        alignment = align_mod.replay_journal(alignment, events)
    if args.format == "nt":
        _write_output(align_mod.export_exact_match_ntriples(alignment), args.output)
    else:
        _write_output(align_mod.export_tsv(alignment), args.output)
    return 0


# -- link / bench -------------------------------------------------------------------

def _link_config_from_file(path) -> LinkConfig:
    if path is None:
        return LinkConfig()
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    data = tomllib.loads(Path(path).read_text(encoding="utf-8"))
    return LinkConfig(
        depth=data.get("depth", 2),
        candidate_threshold=data.get("candidate_threshold", 0.4),
        cluster_cut=data.get("cluster_cut", 0.8),
        excluded_properties=frozenset(Iri(p) for p in data.get("excluded_properties", [])),
        one_to_one=data.get("one_to_one", True),
        resource_class=Iri(data["resource_class"]) if "resource_class" in data else None,
    )


def cmd_link(args) -> int:
    source = load_graph_file(args.source)
    target = load_graph_file(args.target)
    registry = VocabularyRegistry.from_directory(args.vocab_dir)
    config = _link_config_from_file(args.config)
    result = link(source, target, registry, config)
    _write_output(result.to_ntriples(), args.output)
    if args.tsv:
        Path(args.tsv).write_text(result.to_tsv(), encoding="utf-8")
    print(f"{len(result.links)} links", file=sys.stderr)
    return 0


def cmd_bench_gen(args) -> int:
    registry = VocabularyRegistry.from_directory(args.vocab_dir)
    if args.seed_graph:
        seed = load_graph_file(args.seed_graph)
    else:
        seed = make_seed_graph(args.works, args.rng_seed)
    rates = {
        "value": PerturbationRates.value_only,
        "all": PerturbationRates.defaults,
        "none": PerturbationRates,
    }[args.rates]()
    benchmark = generate_benchmark(seed, rates, args.perturbation_seed, registry)
    write_benchmark(benchmark, args.out_dir)
    print(f"benchmark written to {args.out_dir}", file=sys.stderr)
    return 0


def _linkset_from_file(path):
    graph = load_graph_file(path)
    return linkset_from_pairs({(t.subject, t.object) for t in graph if t.predicate == OWL_SAME_AS})


def cmd_bench_eval(args) -> int:
    report = evaluate(_linkset_from_file(args.links), _linkset_from_file(args.reference))
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    else:
        print(f"precision={report.precision:.4f} recall={report.recall:.4f} f1={report.f1:.4f} "
              f"(tp={report.true_positives} fp={report.false_positives} fn={report.false_negatives})")
    return 0


# -- pivot ---------------------------------------------------------------------------

def cmd_pivot(args) -> int:
    linksets = [_linkset_from_file(p) for p in args.linksets]
    graphs = {}
    for spec in args.graph or []:
        if "=" not in spec:
            raise CantorError(f"--graph expects name=path, got {spec!r}")
        name, path = spec.split("=", 1)
        graphs[name] = load_graph_file(path)
    schema = SchemaVocabulary()
    result = build_pivot(linksets, graphs or None, schema_realises=schema.realises)
    _write_output(save_ntriples(result.graph), args.output)
    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    print(f"{len(result.entities)} pivot entities", file=sys.stderr)
    return 0


# -- serve ----------------------------------------------------------------------------

def cmd_serve(args) -> int:
    import uvicorn

    from cantor.service import create_app

    app = create_app(args.data_dir)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cantor", description="Music-metadata integration toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_graph = sub.add_parser("graph", help="triple file utilities")
    p_graph.add_argument("action", choices=("cat", "merge", "stats"))
    p_graph.add_argument("files", nargs="+")
    p_graph.add_argument("-o", "--output", default=None)
    p_graph.set_defaults(func=cmd_graph)

    p_marc = sub.add_parser("marc", help="MARC file utilities")
    marc_sub = p_marc.add_subparsers(dest="marc_command", required=True)
    p_dump = marc_sub.add_parser("dump", help="print records human-readably")
    p_dump.add_argument("file")
    p_dump.add_argument("--dialect", choices=("unimarc", "intermarc"), required=True)
    p_dump.set_defaults(func=cmd_marc_dump)

    p_convert = sub.add_parser("convert", help="convert MARC records to N-Triples")
    p_convert.add_argument("input")
    p_convert.add_argument("--rules", required=True)
    p_convert.add_argument("--vocab-dir", required=True)
    p_convert.add_argument("--dialect", choices=("unimarc", "intermarc"), required=True)
    p_convert.add_argument("--base", default="http://data.example.org")
    p_convert.add_argument("-o", "--output", default=None)
    p_convert.set_defaults(func=cmd_convert)

    p_vocab = sub.add_parser("vocab", help="vocabulary tools")
    vocab_sub = p_vocab.add_subparsers(dest="vocab_command", required=True)
    p_valign = vocab_sub.add_parser("align", help="align two vocabularies")
    p_valign.add_argument("vocab_a")
    p_valign.add_argument("vocab_b")
    p_valign.add_argument("--threshold", type=float, default=0.82)
    p_valign.add_argument("-o", "--output", default=None)
    p_valign.set_defaults(func=cmd_vocab_align)
    p_vlookup = vocab_sub.add_parser("lookup", help="look a label up in a vocabulary")
    p_vlookup.add_argument("text")
    p_vlookup.add_argument("--vocab", required=True)
    p_vlookup.add_argument("--lang", default=None)
    p_vlookup.set_defaults(func=cmd_vocab_lookup)
    p_vexport = vocab_sub.add_parser("export", help="replay a journal and export mappings")
    p_vexport.add_argument("--alignment", required=True)
    p_vexport.add_argument("--journal", default=None)
    p_vexport.add_argument("--format", choices=("nt", "tsv"), default="nt")
    p_vexport.add_argument("-o", "--output", default=None)
    p_vexport.set_defaults(func=cmd_vocab_export)

    p_link = sub.add_parser("link", help="discover sameAs links between two graphs")
    p_link.add_argument("source")
    p_link.add_argument("target")
    p_link.add_argument("--config", default=None, help="TOML link configuration")
    p_link.add_argument("--vocab-dir", required=True)
    p_link.add_argument("--tsv", default=None)
    p_link.add_argument("-o", "--output", default=None)
    p_link.set_defaults(func=cmd_link)

    p_bench = sub.add_parser("bench", help="benchmark utilities")
    bench_sub = p_bench.add_subparsers(dest="bench_command", required=True)
    p_bgen = bench_sub.add_parser("gen", help="generate a heterogeneity benchmark")
    p_bgen.add_argument("--works", type=int, default=50)
    p_bgen.add_argument("--rng-seed", type=int, default=7)
    p_bgen.add_argument("--perturbation-seed", type=int, default=11)
    p_bgen.add_argument("--rates", choices=("value", "all", "none"), default="value")
    p_bgen.add_argument("--seed-graph", default=None)
    p_bgen.add_argument("--vocab-dir", required=True)
    p_bgen.add_argument("--out-dir", required=True)
    p_bgen.set_defaults(func=cmd_bench_gen)
    p_beval = bench_sub.add_parser("eval", help="evaluate links against a reference")
    p_beval.add_argument("--links", required=True)
    p_beval.add_argument("--reference", required=True)
    p_beval.add_argument("--json", action="store_true")
    p_beval.set_defaults(func=cmd_bench_eval)

    p_pivot = sub.add_parser("pivot", help="build the pivot graph from link sets")
    p_pivot.add_argument("linksets", nargs="+")
    p_pivot.add_argument("--graph", action="append", metavar="NAME=PATH")
    p_pivot.add_argument("-o", "--output", default=None)
    p_pivot.set_defaults(func=cmd_pivot)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--data-dir", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CantorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
