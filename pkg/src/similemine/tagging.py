"""Tokenization and coarse POS tagging.

The tag set is deliberately small: the downstream pattern matcher only
needs to tell verbs, adjectives and nouns apart and to spot the
comparison connector and the reflexive particle. Tagging is a cascade:
hard overrides for the connector forms and "se", then an exact lexicon
lookup, then a longest-suffix guess, then a default.

``load_tagged``/``export_tagged`` provide a plain-text interchange format
so any external tagger can be substituted for the built-in one.
"""

from __future__ import annotations

import enum
import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path


class Tag(enum.Enum):
    V = "V"  # verb
    A = "A"  # adjective
    N = "N"  # noun
    C = "C"  # comparison connector
    P = "P"  # reflexive particle "se"
    O = "O"  # anything else


CONNECTOR_FORMS = frozenset({"kao", "ko", "k'o"})
PARTICLE_FORM = "se"

_SENTENCE_ENDERS = frozenset(".!?")
_APOSTROPHES = frozenset("'’")

# Serbian Cyrillic -> Latin, the standard 30-letter alphabet.
_CYR_LOWER = {
    "а": "a", "б": "b", "в": "v", "г": "g", "д": "d", "ђ": "đ", "е": "e",
    "ж": "ž", "з": "z", "и": "i", "ј": "j", "к": "k", "л": "l", "љ": "lj",
    "м": "m", "н": "n", "њ": "nj", "о": "o", "п": "p", "р": "r", "с": "s",
    "т": "t", "ћ": "ć", "у": "u", "ф": "f", "х": "h", "ц": "c", "ч": "č",
    "џ": "dž", "ш": "š",
}
_CYR_MAP = dict(_CYR_LOWER)
_CYR_MAP.update({k.upper(): v.capitalize() for k, v in _CYR_LOWER.items()})


@dataclass(frozen=True)
class TaggedToken:
    surface: str
    lower: str
    tag: Tag
    sentence_index: int
    token_index: int


@dataclass
class Lexicon:
    """Word-form lookup with suffix-guess fallback.

    ``suffix_rules`` are tried longest-suffix-first; ties keep file order.
    """

    entries: dict[str, Tag] = field(default_factory=dict)
    suffix_rules: list[tuple[str, Tag]] = field(default_factory=list)
    default_tag: Tag = Tag.O

    def __post_init__(self):
        self._ordered_suffixes = sorted(
            enumerate(self.suffix_rules), key=lambda p: (-len(p[1][0]), p[0])
        )

    def guess(self, lower: str) -> Tag:
        hit = self.entries.get(lower)
        if hit is not None:
            return hit
        for _, (suffix, tag) in self._ordered_suffixes:
            if lower.endswith(suffix):
                return tag
        return self.default_tag


def transliterate(text: str) -> str:
    """Map Serbian Cyrillic letters to their Latin counterparts."""
    if not any(ch in _CYR_MAP for ch in text):
        return text
    return "".join(_CYR_MAP.get(ch, ch) for ch in text)


def tokenize(text: str) -> list[list[str]]:
    """Split text into sentences of word tokens.

    Sentences break on runs of ``.``, ``!``, ``?``. Tokens break on
    whitespace and punctuation, except that an apostrophe between two
    word characters stays inside the token (so "k'o" survives).
    Punctuation never becomes a token; empty sentences are dropped.
    """
    sentences: list[list[str]] = []
    tokens: list[str] = []
    word: list[str] = []

    def flush_word():
        if word:
            tokens.append("".join(word))
            word.clear()

    def flush_sentence():
        flush_word()
        if tokens:
            sentences.append(list(tokens))
            tokens.clear()

    chars = text
    n = len(chars)
    for i, ch in enumerate(chars):
        if ch.isalnum():
            word.append(ch)
        elif ch in _APOSTROPHES and word and i + 1 < n and chars[i + 1].isalnum():
            word.append("'")
        elif ch in _SENTENCE_ENDERS:
            flush_sentence()
        else:
            flush_word()
    flush_sentence()
    return sentences


def tag_tokens(sentence: list[str], lex: Lexicon, sentence_index: int = 0) -> list[TaggedToken]:
    """Tag one tokenized sentence. Overrides beat the lexicon, always."""
    out = []
    for idx, surface in enumerate(sentence):
        lower = surface.lower()
        if lower in CONNECTOR_FORMS:
            tag = Tag.C
        elif lower == PARTICLE_FORM:
            tag = Tag.P
        else:
            tag = lex.guess(lower)
        out.append(TaggedToken(surface, lower, tag, sentence_index, idx))
    return out


def tag_text(text: str, lex: Lexicon, cyrillic: bool = True) -> list[list[TaggedToken]]:
    """tokenize + tag over a whole document."""
    if cyrillic:
        text = transliterate(text)
    return [tag_tokens(s, lex, i) for i, s in enumerate(tokenize(text))]


def load_lexicon(lexicon_path, suffix_path=None, default_tag: Tag = Tag.O) -> Lexicon:
    """Load ``form<TAB>tag`` entries and optional ``suffix<TAB>tag`` rules.

    The first entry for a form wins; later duplicates are ignored.
    """
    entries: dict[str, Tag] = {}
    with open(lexicon_path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            form, _, tag = line.partition("\t")
            form = form.strip().lower()
            if form and form not in entries:
                entries[form] = Tag(tag.strip())
    rules: list[tuple[str, Tag]] = []
    if suffix_path is not None:
        with open(suffix_path, encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                suffix, _, tag = line.partition("\t")
                if suffix.strip():
                    rules.append((suffix.strip().lower(), Tag(tag.strip())))
    return Lexicon(entries, rules, default_tag)


def default_lexicon() -> Lexicon:
    """The starter lexicon shipped with the package."""
    data = importlib.resources.files("similemine.data")
    with importlib.resources.as_file(data.joinpath("lexicon.tsv")) as lex_path:
        with importlib.resources.as_file(data.joinpath("suffixes.tsv")) as suf_path:
            return load_lexicon(lex_path, suf_path)


def lexicon_from_dir(directory) -> Lexicon:
    """Load ``lexicon.tsv`` (+ optional ``suffixes.tsv``) from a directory."""
    d = Path(directory)
    suffixes = d / "suffixes.tsv"
    return load_lexicon(d / "lexicon.tsv", suffixes if suffixes.exists() else None)


@dataclass
class TaggedFile:
    sentences: list[list[TaggedToken]]
    unknown_tags: int = 0
    skipped_lines: int = 0


def load_tagged(path) -> TaggedFile:
    """Read ``surface<TAB>tag`` lines; a blank line ends a sentence.

    Unknown tag strings map to O and are counted; malformed lines are
    skipped and counted. An unreadable file raises.
    """
    sentences: list[list[TaggedToken]] = []
    current: list[TaggedToken] = []
    unknown = 0
    skipped = 0

    def close_sentence():
        nonlocal current
        if current:
            sentences.append(current)
            current = []

    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip():
                close_sentence()
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0]:
                skipped += 1
                continue
            surface, tag_str = parts
            lower = surface.lower()
            if lower in CONNECTOR_FORMS:
                tag = Tag.C
            elif lower == PARTICLE_FORM:
                tag = Tag.P
            else:
                try:
                    tag = Tag(tag_str)
                except ValueError:
                    tag = Tag.O
                    unknown += 1
            current.append(TaggedToken(surface, lower, tag, len(sentences), len(current)))
    close_sentence()
    return TaggedFile(sentences, unknown, skipped)


def export_tagged(path, sentences: list[list[TaggedToken]]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for sentence in sentences:
            for token in sentence:
                fh.write(f"{token.surface}\t{token.tag.value}\n")
            fh.write("\n")
