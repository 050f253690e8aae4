"""Label normalization and string distance helpers."""

from __future__ import annotations

import unicodedata


def normalize_label(text: str, lang: str | None = None) -> str:
    """Normalize a label for matching.

    Unicode compatibility decomposition, diacritics stripped, lowercased,
    punctuation replaced by spaces, whitespace collapsed.  The language
    tag does not affect the result; it is accepted so callers can pass
    (label, lang) pairs through unchanged.
    """
    decomposed = unicodedata.normalize("NFKD", text)
    out = []
    for ch in decomposed:
        cat = unicodedata.category(ch)
        if cat.startswith("M"):
            continue  # combining mark: the diacritic being stripped
        if cat.startswith("P") or cat.startswith("S"):
            out.append(" ")
        else:
            out.append(ch)
    return " ".join("".join(out).lower().split())


def tokenize(text: str, lang: str | None = None) -> list[str]:
    return normalize_label(text, lang).split()


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance, O(len(a) * len(b))."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,  # deletion
                    current[j - 1] + 1,  # insertion
                    previous[j - 1] + (ca != cb),  # substitution
                )
            )
        previous = current
    return previous[-1]


def label_similarity(a: str, b: str) -> float:
    """1 - normalized edit distance over the longer string, in [0, 1]."""
    if not a and not b:
        return 1.0
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - edit_distance(a, b) / longest
