"""Free-text extraction and noise correction for the converter.

Legacy catalog records bury structured information in notes; these
helpers recover casting (medium of performance), premiere and first
publication facts, and repair two recurring defects of the source data:
misspelled key labels and opus/catalog numbers filed under each other's
field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Union

from cantor.errors import ValidationError
from cantor.graph import Iri
from cantor.text import edit_distance, normalize_label
from cantor.vocab import Vocabulary, VocabularyRegistry

# -- casting notes ----------------------------------------------------------

# "Violoncelle, piano", "2 violons ; alto et basse continue"
_CASTING_SPLIT_RE = re.compile(r",|;|\bet\b|\band\b", re.IGNORECASE)
_LEADING_COUNT_RE = re.compile(r"^(\d+)\s+(.*)$")


@dataclass(frozen=True)
class CastingEntry:
    medium: Iri
    quantity: int = 1

    def __post_init__(self):
        if self.quantity < 1:
            raise ValidationError(f"casting quantity must be >= 1, got {self.quantity}")


@dataclass
class CastingResult:
    entries: list[CastingEntry] = field(default_factory=list)
    leftovers: list[str] = field(default_factory=list)


def extract_casting(note: str, vocab: Vocabulary) -> CastingResult:
    """Split a casting note into medium-of-performance entries.

    Tokens split on comma, semicolon, " et ", " and "; a leading integer
    becomes the quantity ("2 violons" -> violin x2).  Tokens that resolve
    in no vocabulary label end up in ``leftovers`` instead of being
    dropped.
    """
    result = CastingResult()
    for raw_token in _CASTING_SPLIT_RE.split(note):
        token = raw_token.strip()
        if not token:
            continue
        quantity = 1
        m = _LEADING_COUNT_RE.match(token)
        name = token
        if m:
            quantity = int(m.group(1))
            name = m.group(2).strip()
        hit = vocab.lookup(name)
        if hit is None and name.lower().endswith("s"):
            hit = vocab.lookup(name[:-1])  # naive singular for fr/en plurals
        if hit is None:
            result.leftovers.append(token)
        else:
            result.entries.append(CastingEntry(hit.iri, quantity))
    return result


# -- first-publication and premiere notes -----------------------------------

_YEAR_RE = re.compile(r"\b(1[0-9]{3}|20[0-9]{2})\b")
_PUBLICATION_PREFIX_RE = re.compile(
    r"^\s*(premi[eè]re\s+publication|1(?:st|ère|ere)?\s+publication|first\s+publication)\s*:?\s*",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class PublicationInfo:
    year: Optional[int] = None
    place: Optional[str] = None
    publisher: Optional[str] = None


def extract_first_publication(note: str) -> PublicationInfo:
    """Parse "Première publication : <place>?, <year>[, <publisher>]".

    Returns all-None when the note does not carry the expected prefix or
    contains no plausible year; the caller keeps the raw note in that
    case.
    """
    m = _PUBLICATION_PREFIX_RE.match(note)
    if not m:
        return PublicationInfo()
    body = note[m.end():].strip().rstrip(".")
    if not body:
        return PublicationInfo()
    segments = [s.strip() for s in body.split(",")]
    year = None
    year_index = None
    before_year_text = ""
    for i, segment in enumerate(segments):
        ym = _YEAR_RE.search(segment)
        if ym:
            year = int(ym.group(1))
            year_index = i
            before_year_text = segment[: ym.start()].strip()
            break
    if year is None:
        return PublicationInfo()
    place_parts = [s for s in segments[:year_index] if s]
    if before_year_text:
        place_parts.append(before_year_text)
    place = place_parts[0] if place_parts else None
    publisher_parts = place_parts[1:] + [s for s in segments[year_index + 1 :] if s]
    publisher = ", ".join(publisher_parts) if publisher_parts else None
    return PublicationInfo(year=year, place=place, publisher=publisher)


_PREMIERE_PREFIX_RE = re.compile(
    r"^\s*(cr[eé][eé]e?|premi[eè]re|premiered|first\s+perform(?:ed|ance))\b\s*",
    re.IGNORECASE,
)
_PREMIERE_BODY_RE = re.compile(
    r"^(?:[:,]\s*)?(?:à|at|in)?\s*(?P<place>[^,]*?)\s*,?\s*(?:en|in)?\s*(?P<year>1[0-9]{3}|20[0-9]{2})",
    re.IGNORECASE,
)


@dataclass(frozen=True)
class PremiereInfo:
    year: Optional[int] = None
    place: Optional[str] = None


def extract_premiere(note: str) -> PremiereInfo:
    """Parse "Créée à <place>, en <year>" and close variants."""
    m = _PREMIERE_PREFIX_RE.match(note)
    if not m:
        return PremiereInfo()
    body = note[m.end():].strip().rstrip(".")
    bm = _PREMIERE_BODY_RE.match(body)
    if not bm:
        return PremiereInfo()
    place = bm.group("place").strip() or None
    return PremiereInfo(year=int(bm.group("year")), place=place)


def matches_premiere_grammar(note: str) -> bool:
    return extract_premiere(note).year is not None


def parse_year(value: str) -> Optional[str]:
    m = _YEAR_RE.search(value)
    return m.group(1) if m else None


# -- key / opus / catalog noise ---------------------------------------------

OPUS_PATTERN = re.compile(r"^Op\.?\s*\d+(\s*n[o°]\s*\d+)?", re.IGNORECASE)
DEFAULT_CATALOG_SIGLA = ("BWV", "KV", "K", "D", "Hob", "RV", "FP")

KEY_EDIT_DISTANCE_MAX = 2


@dataclass(frozen=True)
class NoiseResult:
    kind: str
    value: Union[str, Iri]
    changed: bool = False


def _catalog_pattern(sigla) -> re.Pattern:
    alternatives = "|".join(sorted(sigla, key=len, reverse=True))
    return re.compile(rf"^({alternatives})\.?\s*\d+", re.IGNORECASE)


def correct_noise(
    field_kind: str,
    value: Union[str, Iri],
    vocabs: VocabularyRegistry,
    key_vocab: str = "keys",
    catalog_sigla=DEFAULT_CATALOG_SIGLA,
) -> NoiseResult:
    """Repair key misspellings and opus/catalog misclassification.

    * key values within edit distance <= 2 of a key-vocabulary label
      resolve to that concept;
    * an opus-shaped value in a catalog field is re-classified as opus,
      and a catalog-sigla value in an opus field as catalog;
    * anything else passes through unchanged.

    Idempotent: feeding a result back in never changes it again.
    """
    if field_kind not in ("key", "opus", "catalog"):
        raise ValidationError(f"unknown noise field kind: {field_kind!r}")
    if isinstance(value, Iri):
        return NoiseResult(field_kind, value)

    if field_kind == "key":
        if key_vocab not in vocabs:
            return NoiseResult(field_kind, value)
        vocab = vocabs.get(key_vocab)
        needle = normalize_label(value)
        best = None
        for label_key, entries in vocab.label_index.items():
            distance = edit_distance(needle, label_key)
            if distance > KEY_EDIT_DISTANCE_MAX:
                continue
            for iri, _lang, is_pref, label in entries:
                rank = (distance, not is_pref, len(label), iri.value)
                if best is None or rank < best[0]:
                    best = (rank, iri)
        if best is not None:
            return NoiseResult("key", best[1], changed=True)
        return NoiseResult("key", value)

    catalog_re = _catalog_pattern(catalog_sigla)
    if field_kind == "catalog" and OPUS_PATTERN.match(value.strip()):
        return NoiseResult("opus", value, changed=True)
    if field_kind == "opus" and catalog_re.match(value.strip()) and not OPUS_PATTERN.match(value.strip()):
        return NoiseResult("catalog", value, changed=True)
    return NoiseResult(field_kind, value)
