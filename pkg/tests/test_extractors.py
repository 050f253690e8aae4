import pytest

from cantor.extractors import (
    CastingEntry,
    correct_noise,
    extract_casting,
    extract_first_publication,
    extract_premiere,
)
from cantor.graph import Iri
from cantor.text import edit_distance, normalize_label

INSTR = "http://vocab.example.org/instruments/"
KEYS = "http://vocab.example.org/keys/"


@pytest.fixture(scope="module")
def instruments(vocab_registry):
    return vocab_registry.get("instruments")


class TestCasting:
    def test_empty_note(self, instruments):
        result = extract_casting("", instruments)
        assert result.entries == [] and result.leftovers == []

    def test_cello_piano(self, instruments):
        result = extract_casting("Violoncelle, piano", instruments)
        assert result.entries == [
            CastingEntry(Iri(INSTR + "violoncello"), 1),
            CastingEntry(Iri(INSTR + "piano"), 1),
        ]
        assert result.leftovers == []

    def test_leading_counts_and_plural(self, instruments):
        result = extract_casting("2 violons, alto", instruments)
        assert result.entries == [
            CastingEntry(Iri(INSTR + "violin"), 2),
            CastingEntry(Iri(INSTR + "viola"), 1),
        ]

    def test_et_and_separators(self, instruments):
        result = extract_casting("flûte et piano; voix and orchestre", instruments)
        assert [e.medium for e in result.entries] == [
            Iri(INSTR + "flute"),
            Iri(INSTR + "piano"),
            Iri(INSTR + "voice"),
            Iri(INSTR + "orchestra"),
        ]

    def test_unresolved_goes_to_leftovers(self, instruments):
        result = extract_casting("Violoncelle, ondes Martenot", instruments)
        assert [e.medium for e in result.entries] == [Iri(INSTR + "violoncello")]
        assert result.leftovers == ["ondes Martenot"]


class TestFirstPublication:
    def test_empty(self):
        info = extract_first_publication("")
        assert (info.year, info.place, info.publisher) == (None, None, None)

    def test_vienna_1797(self):
        info = extract_first_publication("Première publication : Vienne, 1797")
        assert (info.year, info.place, info.publisher) == (1797, "Vienne", None)

    def test_publisher_segment(self):
        info = extract_first_publication("Première publication : Leipzig, Breitkopf, 1801")
        assert (info.year, info.place, info.publisher) == (1801, "Leipzig", "Breitkopf")

    def test_year_only(self):
        info = extract_first_publication("1st publication 1801")
        assert (info.year, info.place, info.publisher) == (1801, None, None)

    def test_no_prefix_is_all_absent(self):
        info = extract_first_publication("Publié à Vienne en 1797")
        assert (info.year, info.place, info.publisher) == (None, None, None)


class TestPremiere:
    def test_berlin_1796(self):
        info = extract_premiere("Créée à Berlin, en 1796")
        assert (info.year, info.place) == (1796, "Berlin")

    def test_english_variant(self):
        info = extract_premiere("Premiered in London, 1913")
        assert (info.year, info.place) == (1913, "London")

    def test_no_year(self):
        assert extract_premiere("Créée à Berlin").year is None


class TestNoise:
    def test_opus_value_unchanged(self, vocab_registry):
        result = correct_noise("opus", "Op. 5 no 1", vocab_registry)
        assert (result.kind, result.value) == ("opus", "Op. 5 no 1")

    def test_opus_in_catalog_field_reclassified(self, vocab_registry):
        result = correct_noise("catalog", "Op. 5 no 1", vocab_registry)
        assert (result.kind, result.value) == ("opus", "Op. 5 no 1")

    def test_catalog_in_opus_field_reclassified(self, vocab_registry):
        result = correct_noise("opus", "BWV 1007", vocab_registry)
        assert (result.kind, result.value) == ("catalog", "BWV 1007")

    def test_misspelled_key_resolves(self, vocab_registry):
        result = correct_noise("key", "fa majur", vocab_registry)
        assert result.kind == "key"
        assert result.value == Iri(KEYS + "f-major")

    def test_key_oracle_exhaustive_scan(self, vocab_registry):
        keys = vocab_registry.get("keys")
        for noisy in ("fa majur", "sol majr", "ut  Majeur", "mi bemol majeur"):
            result = correct_noise("key", noisy, vocab_registry)
            needle = normalize_label(noisy)
            best = None
            for label_key, entries in keys.label_index.items():
                d = edit_distance(needle, label_key)
                if d <= 2:
                    for iri, _lang, is_pref, label in entries:
                        rank = (d, not is_pref, len(label), iri.value)
                        if best is None or rank < best[0]:
                            best = (rank, iri)
            if best is None:
                assert isinstance(result.value, str)
            else:
                assert result.value == best[1], noisy

    def test_distant_key_left_alone(self, vocab_registry):
        result = correct_noise("key", "dorian mode", vocab_registry)
        assert (result.kind, result.value) == ("key", "dorian mode")

    def test_idempotent(self, vocab_registry):
        cases = [("opus", "Op. 5 no 1"), ("catalog", "Op. 5 no 1"), ("opus", "BWV 1007"),
                 ("key", "fa majur"), ("key", "dorian mode"), ("catalog", "K. 551")]
        for kind, value in cases:
            once = correct_noise(kind, value, vocab_registry)
            twice = correct_noise(once.kind, once.value, vocab_registry)
            assert (twice.kind, twice.value) == (once.kind, once.value), (kind, value)
