"""Deterministic text normalization: tokenization, lemmatization, n-grams.

Everything here is pure and rule-based so that the same text produces the
same lemmas and n-grams on every platform and in every run. Lemmas are
normalization keys for counting, not guaranteed dictionary citation forms;
what matters downstream is that the same surface form always collapses to
the same key in every corpus.
"""

from __future__ import annotations

import csv
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Mapping, Sequence

_WORD_RE = re.compile(r"[^\W_]+", re.UNICODE)
_VOWELS = frozenset("aeiouy")
_DIGITS = frozenset("0123456789")

POS_TAGS = ("verb", "noun", "adjective", "determiner", "other")


@dataclass(frozen=True)
class Token:
    """A word with its normalized lemma and a coarse part-of-speech guess."""

    surface: str
    lemma: str
    coarse_pos: str = "other"


@dataclass
class NGramCounts:
    """Occurrence counts of n-grams plus the number of contributing documents.

    Counts merge by addition, so partial counts from document shards can be
    combined in any order.
    """

    counts: Counter = field(default_factory=Counter)
    doc_count: int = 0

    def merge(self, other: "NGramCounts") -> "NGramCounts":
        merged = NGramCounts(Counter(self.counts), self.doc_count)
        merged.counts.update(other.counts)
        merged.doc_count += other.doc_count
        return merged

    def __add__(self, other: "NGramCounts") -> "NGramCounts":
        return self.merge(other)


def _fold_ascii(text: str) -> str:
    return unicodedata.normalize("NFKD", text).encode("ascii", "ignore").decode("ascii")


def tokenize(text: str) -> list[str]:
    """Segment text into lowercase ASCII-folded word tokens.

    Splits on any non-word character, so hyphenated compounds come apart
    ("state-of-the-art" -> state, of, the, art). Tokens whose ASCII fold is
    empty are dropped.
    """
    tokens = []
    for match in _WORD_RE.finditer(text):
        folded = _fold_ascii(match.group(0).lower())
        if folded:
            tokens.append(folded)
    return tokens


def _load_packaged(name: str) -> str:
    return resources.files("aisci.data").joinpath(name).read_text(encoding="utf-8")


def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Load the stopword list, one lemma per line; blank lines ignored."""
    if path is None:
        text = _load_packaged("stopwords.txt")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


def load_lemma_exceptions(path: str | None = None) -> dict[str, str]:
    """Load the irregular-form table (surface,lemma CSV with header)."""
    if path is None:
        text = _load_packaged("lemma_exceptions.csv")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    table = {}
    reader = csv.DictReader(text.splitlines())
    for row in reader:
        table[row["surface"].strip().lower()] = row["lemma"].strip().lower()
    return table


_DEFAULT_EXCEPTIONS: dict[str, str] | None = None


def _exceptions() -> dict[str, str]:
    global _DEFAULT_EXCEPTIONS
    if _DEFAULT_EXCEPTIONS is None:
        _DEFAULT_EXCEPTIONS = load_lemma_exceptions()
    return _DEFAULT_EXCEPTIONS


def _has_vowel(word: str) -> bool:
    return any(c in _VOWELS for c in word)


def _vowel_groups(word: str) -> int:
    groups = 0
    prev_vowel = False
    for c in word:
        is_vowel = c in _VOWELS
        if is_vowel and not prev_vowel:
            groups += 1
        prev_vowel = is_vowel
    return groups


def _undouble(stem: str) -> str:
    # "runn" -> "run" but "fall"/"pass"/"buzz" stay; "controll" -> "control"
    # because the doubled-l spelling only arises from suffixation when the
    # word has more than one syllable.
    if len(stem) < 4 or stem[-1] != stem[-2] or stem[-1] in _VOWELS:
        return stem
    if stem[-1] == "l":
        return stem[:-1] if _vowel_groups(stem[:-1]) >= 2 else stem
    if stem[-1] in "sz":
        return stem
    return stem[:-1]


def _restore_e(stem: str) -> str:
    # After stripping -ing/-ed, put back a final "e" that the suffixation
    # removed: "us" -> "use", "mak" -> "make", "comput" -> "compute",
    # "sampl" -> "sample", "sens" -> "sense". Stems like "train", "model"
    # or "focus" are left alone.
    if len(stem) < 2:
        return stem
    last, prev = stem[-1], stem[-2]
    if last in _VOWELS or last in "wxy":
        return stem
    if last == "l":
        return stem + "e" if prev not in _VOWELS else stem
    if last == "s":
        if len(stem) == 2 and prev in _VOWELS:
            return stem + "e"
        return stem if prev in "su" else stem + "e"
    if prev not in _VOWELS:
        return stem
    if len(stem) == 2 or stem[-3] not in _VOWELS:
        return stem + "e"
    return stem


def _apply_rules(word: str, table: Mapping[str, str]) -> str:
    if word in table:
        return table[word]

    # plurals
    if word.endswith("ies") and len(word) > 4:
        return word[:-3] + "y"
    if word.endswith(("sses", "xes", "zes", "ches", "shes")):
        return word[:-2]
    if word.endswith("s") and not word.endswith(("ss", "us", "is")) and len(word) > 3:
        return word[:-1]

    # -ing
    if word.endswith("ing") and len(word) >= 5:
        stem = word[:-3]
        if _has_vowel(stem):
            shorter = _undouble(stem)
            return shorter if shorter != stem else _restore_e(stem)
        return word

    # -ed
    if word.endswith("ied") and len(word) >= 4:
        return word[:-3] + "y" if len(word) > 4 else word[:-1]
    if word.endswith("ed") and not word.endswith("eed") and len(word) >= 4:
        stem = word[:-2]
        if _has_vowel(stem):
            shorter = _undouble(stem)
            return shorter if shorter != stem else _restore_e(stem)
        return word

    # comparatives/superlatives; deliberately conservative because agentive
    # -er nouns (classifier, encoder) dominate research text, so plain -er
    # is only stripped when the consonant was doubled.
    if word.endswith("ier") and 5 <= len(word) <= 7:
        return word[:-3] + "y"
    if word.endswith("iest") and 6 <= len(word) <= 8:
        return word[:-4] + "y"
    if word.endswith("er") and len(word) >= 5:
        stem = word[:-2]
        shorter = _undouble(stem)
        if shorter != stem:
            return shorter
    if word.endswith("est") and len(word) >= 6:
        stem = word[:-3]
        shorter = _undouble(stem)
        if shorter != stem:
            return shorter

    return word


def lemmatize(word: str, exceptions: Mapping[str, str] | None = None) -> str:
    """Reduce an inflected word to its normalization lemma.

    The irregular-form table is consulted first, then guarded suffix rules
    for plurals (-s/-es/-ies), -ing, -ed and comparative/superlative forms.
    Rule layers apply repeatedly until the word stops changing, so the
    result is a fixed point: lemmatize(lemmatize(w)) == lemmatize(w).
    """
    word = word.lower()
    table = _exceptions() if exceptions is None else exceptions
    for _ in range(5):
        reduced = _apply_rules(word, table)
        if reduced == word:
            return word
        word = reduced
    return word


def lemmas(text: str, exceptions: Mapping[str, str] | None = None) -> list[str]:
    """Tokenize and lemmatize in one pass."""
    return [lemmatize(t, exceptions) for t in tokenize(text)]


def normalize_term(term: str, exceptions: Mapping[str, str] | None = None) -> str:
    """Normalize a multi-word term to its space-joined lemma form.

    Used on configured term lists (concept terms, blocklists, key phrases)
    so they live in the same key space as extracted n-grams.
    """
    return " ".join(lemmas(term, exceptions))


def _clean_window(window: Sequence[str], stopwords: frozenset[str]) -> bool:
    if window[0] in stopwords or window[-1] in stopwords:
        return False
    return all(not (_DIGITS & set(w)) for w in window)


def extract_ngrams(lemma_seq: Sequence[str], stopwords: frozenset[str]) -> list[str]:
    """All contiguous bigrams and trigrams over a lemma sequence.

    Windows that start or end with a stopword, or contain a token with a
    digit, are excluded; interior stopwords are fine ("learn to rank").
    Returned as space-joined strings, with multiplicity.
    """
    grams = []
    n = len(lemma_seq)
    for size in (2, 3):
        for i in range(n - size + 1):
            window = lemma_seq[i : i + size]
            if _clean_window(window, stopwords):
                grams.append(" ".join(window))
    return grams


def count_ngrams(
    documents: Iterable[Sequence[str]],
    stopwords: frozenset[str],
    exceptions: Mapping[str, str] | None = None,
    unique_per_doc: bool = False,
) -> NGramCounts:
    """Count n-grams over documents, each given as a list of text fields.

    Fields are normalized independently so no n-gram spans a field
    boundary. Every occurrence counts unless unique_per_doc is set, in
    which case each distinct n-gram counts once per document. doc_count
    includes documents that contribute no n-grams.
    """
    result = NGramCounts()
    for fields in documents:
        doc_grams: list[str] = []
        for text in fields:
            doc_grams.extend(extract_ngrams(lemmas(text, exceptions), stopwords))
        if unique_per_doc:
            result.counts.update(set(doc_grams))
        else:
            result.counts.update(doc_grams)
        result.doc_count += 1
    return result
