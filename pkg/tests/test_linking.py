import math
import random
from collections import Counter

import pytest

from cantor.convert import ConvertConfig, convert
from cantor.graph import Graph, Iri, Literal, Triple
from cantor.linking import (
    Document,
    LinkConfig,
    TfIdfIndex,
    baseline_exact_label,
    build_document,
    clean,
    cluster,
    cross_similarity,
    disambiguate,
    link,
    match_candidates,
    profile,
    property_values,
    rank_keys,
    similarity,
)
from cantor.errors import NotFoundError, ValidationError
from cantor.linking.pipeline import linkset_from_pairs
from cantor.linking.evaluate import evaluate
from cantor.marc import Dialect, parse_iso2709
from cantor.schema import SchemaVocabulary
from cantor.text import tokenize

SCHEMA = SchemaVocabulary()


def iri(n):
    return Iri(f"http://example.org/r/{n}")


def doc(name, words):
    return Document(iri(name), Counter(words))


# -- clean / profile ----------------------------------------------------------

class TestCleanProfile:
    def build_graph(self):
        g = Graph()
        g.emit(iri("a"), SCHEMA.hasTitle, Literal("alpha"))
        g.emit(iri("a"), SCHEMA.hasNote, Literal("local-id-1"))
        g.emit(iri("a"), SCHEMA.wasCreatedBy, iri("ev"))
        g.emit(iri("ev"), SCHEMA.hasDate, Literal("1800"))
        g.emit(iri("ev"), SCHEMA.carriedOutBy, Literal("Someone"))
        return g

    def test_clean_empty_exclusions_is_identity(self):
        g = self.build_graph()
        assert clean(g, set()) == g

    def test_clean_removes_excluded_predicate(self):
        g = clean(self.build_graph(), {SCHEMA.hasNote})
        assert not g.match(None, SCHEMA.hasNote, None)

    def test_clean_count_matches_predicate_histogram(self):
        g = self.build_graph()
        histogram = Counter(t.predicate for t in g)
        cleaned = clean(g, {SCHEMA.hasNote, SCHEMA.hasDate})
        assert len(g) - len(cleaned) == histogram[SCHEMA.hasNote] + histogram[SCHEMA.hasDate]

    def test_profile_depth_1_is_direct_triples(self):
        g = self.build_graph()
        p = profile(g, iri("a"), 1)
        assert p.triples == clean(Graph(), set()) or len(p.triples) == 3
        assert not p.triples.match(iri("ev"), None, None)

    def test_profile_depth_2_reaches_event(self):
        g = self.build_graph()
        p = profile(g, iri("a"), 2)
        assert p.triples.match(iri("ev"), SCHEMA.hasDate, None)

    def test_profile_prunes_excluded_subtree(self):
        g = self.build_graph()
        p = profile(g, iri("a"), 2, excluded_properties={SCHEMA.wasCreatedBy})
        assert not p.triples.match(iri("ev"), None, None)

    def test_profile_unknown_resource(self):
        with pytest.raises(NotFoundError):
            profile(self.build_graph(), iri("nope"), 1)

    def test_profile_equals_bfs_oracle_on_random_graphs(self):
        rng = random.Random(5)
        nodes = [iri(f"n{i}") for i in range(15)]
        preds = [Iri(f"http://example.org/p/{i}") for i in range(4)]
        g = Graph()
        for _ in range(120):
            g.add(Triple(rng.choice(nodes), rng.choice(preds), rng.choice(nodes)))
        for start in nodes:
            if not g.match(start, None, None):
                continue
            for depth in (1, 2, 3):
                got = profile(g, start, depth).triples
                # independent BFS oracle
                expected = set()
                frontier = {start}
                seen = {start}
                for _ in range(depth):
                    nxt = set()
                    for node in frontier:
                        for t in g.match(node, None, None):
                            expected.add(t)
                            if isinstance(t.object, Iri) and t.object not in seen:
                                seen.add(t.object)
                                nxt.add(t.object)
                    frontier = nxt
                assert set(got) == expected


# -- documents ----------------------------------------------------------------

class TestDocuments:
    def test_empty_profile_empty_document(self, vocab_registry):
        g = Graph()
        g.emit(iri("a"), SCHEMA.realises, iri("w"))
        d = build_document(profile(g, iri("a"), 1), vocab_registry)
        assert d.is_empty()

    def test_beethoven_tokens(self, fixtures_dir, vocab_registry, intermarc_rules):
        records = parse_iso2709((fixtures_dir / "marc" / "beethoven.mrc").read_bytes(), Dialect.INTERMARC)
        graph = convert(records, intermarc_rules, vocab_registry).graph
        expression = next(iter(graph.subjects(SCHEMA.realises, None)))
        d = build_document(profile(graph, expression, 2), vocab_registry)
        for token in ("sonate", "violoncelle", "piano", "f", "majeur", "major", "sonata"):
            assert token in d.tokens, token

    def test_token_multiset_matches_hand_oracle(self, vocab_registry):
        g = Graph()
        g.emit(iri("a"), SCHEMA.hasTitle, Literal("Sonate pour piano"))
        g.emit(iri("a"), SCHEMA.hasKey, Iri("http://vocab.example.org/keys/f-major"))
        g.emit(iri("a"), SCHEMA.realises, iri("w"))  # structural: contributes nothing
        d = build_document(profile(g, iri("a"), 2), vocab_registry)
        expected = Counter(tokenize("Sonate pour piano"))
        expected.update(tokenize("F major"))
        expected.update(tokenize("fa majeur"))
        assert d.tokens == expected


# -- tf-idf -------------------------------------------------------------------

class TestTfIdf:
    def test_identical_documents_similarity_one(self):
        index = TfIdfIndex([doc("a", ["x", "y", "x"]), doc("b", ["x", "y", "x"])])
        assert similarity(index, iri("a"), iri("b")) == pytest.approx(1.0, abs=1e-12)

    def test_disjoint_documents_zero(self):
        index = TfIdfIndex([doc("a", ["x"]), doc("b", ["y"])])
        assert similarity(index, iri("a"), iri("b")) == 0.0

    def test_two_empty_documents_zero(self):
        index = TfIdfIndex([doc("a", []), doc("b", [])])
        assert similarity(index, iri("a"), iri("b")) == 0.0

    def test_symmetry(self):
        index = TfIdfIndex([doc("a", ["x", "y"]), doc("b", ["y", "z"])])
        assert similarity(index, iri("a"), iri("b")) == similarity(index, iri("b"), iri("a"))

    def test_cosines_match_dense_oracle(self):
        rng = random.Random(3)
        vocabulary = [f"t{i}" for i in range(30)]
        docs = [doc(f"d{i}", [rng.choice(vocabulary) for _ in range(rng.randrange(1, 12))]) for i in range(10)]
        index = TfIdfIndex(docs)
        n = len(docs)
        df = Counter(t for d in docs for t in set(d.tokens))
        for a in docs:
            for b in docs:
                # dense brute-force cosine
                terms = sorted(set(a.tokens) | set(b.tokens) | set(df))
                va = [a.tokens.get(t, 0) * (math.log(n / df[t]) + 1) for t in terms]
                vb = [b.tokens.get(t, 0) * (math.log(n / df[t]) + 1) for t in terms]
                na = math.sqrt(sum(x * x for x in va))
                nb = math.sqrt(sum(x * x for x in vb))
                expected = 0.0 if na == 0 or nb == 0 else sum(x * y for x, y in zip(va, vb)) / (na * nb)
                assert similarity(index, a.resource, b.resource) == pytest.approx(expected, abs=1e-9)

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValidationError):
            TfIdfIndex([])


def random_corpus(rng, prefix, size, vocab_size=40, max_len=10):
    vocabulary = [f"w{i}" for i in range(vocab_size)]
    return [
        doc(f"{prefix}{i}", [rng.choice(vocabulary) for _ in range(rng.randrange(0, max_len))])
        for i in range(size)
    ]


def brute_force_pairs(source_docs, target_docs, threshold):
    """All-pairs dual-index cosine filter, dense computation."""
    ns = len(source_docs)
    nt = len(target_docs)
    df_s = Counter(t for d in source_docs for t in set(d.tokens))
    df_t = Counter(t for d in target_docs for t in set(d.tokens))

    def weights(d, n, df):
        return {t: c * (math.log(n / df[t]) + 1) for t, c in d.tokens.items()}

    out = set()
    for a in source_docs:
        wa = weights(a, ns, df_s)
        na = math.sqrt(sum(x * x for x in wa.values()))
        for b in target_docs:
            wb = weights(b, nt, df_t)
            nb = math.sqrt(sum(x * x for x in wb.values()))
            if na == 0 or nb == 0:
                score = 0.0
            else:
                score = sum(w * wb[t] for t, w in wa.items() if t in wb) / (na * nb)
            if score >= threshold:
                out.add((a.resource, b.resource, round(score, 12)))
    return out


class TestMatchCandidates:
    def test_threshold_zero_returns_all_pairs(self):
        rng = random.Random(1)
        source = random_corpus(rng, "s", 5)
        target = random_corpus(rng, "t", 7)
        pairs = match_candidates(TfIdfIndex(source), TfIdfIndex(target), 0.0)
        assert len(pairs) == 35

    def test_threshold_above_one_only_exact_duplicates(self):
        source = [doc("s0", ["x", "y"]), doc("s1", ["z"])]
        target = [doc("t0", ["x", "y"]), doc("t1", ["q"])]
        pairs = match_candidates(TfIdfIndex(source), TfIdfIndex(target), 1.0)
        assert {(p.source.value, p.target.value) for p in pairs} == {
            ("http://example.org/r/s0", "http://example.org/r/t0")
        }

    def test_matches_brute_force_oracle(self):
        rng = random.Random(9)
        for trial in range(5):
            source = random_corpus(rng, "s", rng.randrange(2, 25))
            target = random_corpus(rng, "t", rng.randrange(2, 25))
            threshold = rng.choice([0.0, 0.3, 0.5, 0.8])
            got = {
                (p.source, p.target, round(p.score, 12))
                for p in match_candidates(TfIdfIndex(source), TfIdfIndex(target), threshold)
            }
            expected = brute_force_pairs(source, target, threshold)
            assert {(s, t) for s, t, _ in got} == {(s, t) for s, t, _ in expected}
            exp_scores = {(s, t): score for s, t, score in expected}
            for s, t, score in got:
                assert score == pytest.approx(exp_scores[(s, t)], abs=1e-9)

    def test_invalid_threshold(self):
        index = TfIdfIndex([doc("a", ["x"])])
        with pytest.raises(ValidationError):
            match_candidates(index, index, 1.5)


# -- clustering ---------------------------------------------------------------

class TestClustering:
    def test_zero_similarity_gives_singletons(self):
        items = [iri(c) for c in "abcd"]
        result = cluster(items, lambda a, b: 0.0, 0.8)
        assert [len(c) for c in result] == [1, 1, 1, 1]

    def test_duplicates_cluster_outlier_alone(self):
        sims = {
            frozenset({iri("a"), iri("b")}): 1.0,
        }

        def sim(a, b):
            return sims.get(frozenset({a, b}), 0.0)

        result = cluster([iri("a"), iri("b"), iri("c")], sim, 0.8)
        assert sorted(len(c) for c in result) == [1, 2]

    def test_eight_point_hand_merge_oracle(self):
        # Hand-traced average-linkage agglomeration, cutoff distance 0.2:
        #   merge A-B (0.05), C-D (0.08), E-F (0.10), then {A,B}+{C,D} at
        #   exactly 0.20; everything else stays apart.
        names = ["A", "B", "C", "D", "E", "F", "G", "H"]
        d = {}
        for x in names:
            for y in names:
                if x < y:
                    d[(x, y)] = 0.5
        d[("A", "B")] = 0.05
        d[("C", "D")] = 0.08
        d[("E", "F")] = 0.10
        for x, y in ((("A", "C")), (("A", "D")), (("B", "C")), (("B", "D"))):
            d[(x, y)] = 0.2
        for other in "ABCDEF":
            d[tuple(sorted((other, "G")))] = 0.9
            d[tuple(sorted((other, "H")))] = 0.95
        d[("G", "H")] = 0.85

        def sim(a, b):
            x = a.value.rsplit("/", 1)[-1]
            y = b.value.rsplit("/", 1)[-1]
            return 1.0 - d[tuple(sorted((x, y)))]

        result = cluster([iri(n) for n in names], sim, 0.8)
        got = [tuple(m.value.rsplit("/", 1)[-1] for m in c.members) for c in result]
        assert got == [("A", "B", "C", "D"), ("E", "F"), ("G",), ("H",)]

    def test_deterministic_under_input_order(self):
        rng = random.Random(2)
        items = [iri(f"x{i}") for i in range(12)]
        sims = {}
        for i, a in enumerate(items):
            for b in items[i + 1 :]:
                sims[frozenset({a, b})] = rng.random()

        def sim(a, b):
            return sims[frozenset({a, b})]

        expected = cluster(items, sim, 0.6)
        shuffled = items[:]
        rng.shuffle(shuffled)
        assert cluster(shuffled, sim, 0.6) == expected


# -- key ranking / disambiguation ----------------------------------------------

class TestKeys:
    def make_profiles(self, opus_values):
        values = {}
        for name, opus in opus_values.items():
            values[iri(name)] = {
                SCHEMA.hasTitle: frozenset({"sonate pour violoncelle et piano"}),
                SCHEMA.hasKey: frozenset({"http://vocab.example.org/keys/f-major", "f major", "fa majeur"}),
                SCHEMA.hasOpus: frozenset({opus}),
            }
        return values

    def test_two_member_cluster_equal_opus_links(self):
        values = self.make_profiles({"s1": "op 5 no 1", "t1": "op 5 no 1"})
        members = [iri("s1"), iri("t1")]
        ranking = rank_keys(members, values)
        links = disambiguate(members, ranking, values, {iri("s1")}, {iri("t1")})
        assert links == {(iri("s1"), iri("t1"))}

    def test_opus_ranked_top_and_cross_pairs_rejected(self):
        values = self.make_profiles(
            {"s1": "op 5 no 1", "s2": "op 5 no 2", "t1": "op 5 no 1", "t2": "op 5 no 2"}
        )
        members = [iri(n) for n in ("s1", "s2", "t1", "t2")]
        ranking = rank_keys(members, values)
        assert ranking.entries[0][0] == SCHEMA.hasOpus
        links = disambiguate(members, ranking, values, {iri("s1"), iri("s2")}, {iri("t1"), iri("t2")})
        assert links == {(iri("s1"), iri("t1")), (iri("s2"), iri("t2"))}

    def test_ranking_matches_brute_force_discriminativity(self):
        values = self.make_profiles(
            {"s1": "op 5 no 1", "s2": "op 5 no 2", "t1": "op 5 no 1", "t2": "op 5 no 2"}
        )
        members = [iri(n) for n in ("s1", "s2", "t1", "t2")]
        ranking = dict(rank_keys(members, values).entries)
        for prop in (SCHEMA.hasTitle, SCHEMA.hasKey, SCHEMA.hasOpus):
            holders = [m for m in members if prop in values[m]]
            distinct = len({values[m][prop] for m in holders})
            expected = (distinct / len(holders)) * (len(holders) / len(members))
            assert ranking[prop] == pytest.approx(expected)

    def test_unresolved_pair_yields_no_link(self):
        values = {
            iri("s1"): {SCHEMA.hasOpus: frozenset({"op 1"})},
            iri("t1"): {SCHEMA.hasKey: frozenset({"f major"})},
        }
        members = [iri("s1"), iri("t1")]
        ranking = rank_keys(members, values)
        assert disambiguate(members, ranking, values, {iri("s1")}, {iri("t1")}) == set()


# -- evaluation -----------------------------------------------------------------

class TestEvaluate:
    def test_identical_sets(self):
        ref = linkset_from_pairs({(iri("a"), iri("b"))})
        report = evaluate(ref, ref)
        assert (report.precision, report.recall, report.f1) == (1.0, 1.0, 1.0)

    def test_empty_linkset(self):
        got = linkset_from_pairs(set())
        ref = linkset_from_pairs({(iri("a"), iri("b"))})
        report = evaluate(got, ref)
        assert (report.precision, report.recall, report.f1) == (0.0, 0.0, 0.0)

    def test_hand_counted_case(self):
        reference = linkset_from_pairs({(iri(f"s{i}"), iri(f"t{i}")) for i in range(10)})
        links = {(iri(f"s{i}"), iri(f"t{i}")) for i in range(8)}
        links |= {(iri("s8"), iri("t9")), (iri("s9"), iri("t8"))}  # two wrong
        report = evaluate(linkset_from_pairs(links), reference)
        assert report.precision == pytest.approx(0.8)
        assert report.recall == pytest.approx(0.8)
        assert report.true_positives == 8
        assert report.false_positives == 2
        assert report.false_negatives == 2
