"""Candidate simile extraction over tagged sentences.

A candidate is a verb or adjective (the verb optionally followed by the
reflexive particle), then a connector token, then a run of adjectives and
nouns that ends at a noun. Matching is leftmost; the right side is as
long as possible: the run of A/N tokens is consumed up to the last noun
before the first non-A/N token or the sentence end. After a match,
scanning resumes after its last token, so matches never overlap.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .tagging import CONNECTOR_FORMS, Lexicon, Tag, TaggedToken, tag_text

CANONICAL_CONNECTOR = "kao"


@dataclass
class CandidateSimile:
    left: str
    connector: str
    connector_surface: str
    right: str
    phrase: str
    kind: str  # "adjectival" | "verbal"
    doc_url: str = ""
    sentence_index: int = 0
    span: tuple[int, int] = (0, 0)  # token indices, end inclusive
    count: int = 1

    def to_dict(self) -> dict:
        d = asdict(self)
        d["span"] = list(self.span)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CandidateSimile":
        d = dict(d)
        d["span"] = tuple(d.get("span", (0, 0)))
        return cls(**d)


def normalize_connector(surface: str) -> str:
    """Fold any connector form ("kao", "ko", "k'o", any case) to "kao"."""
    if surface.lower() not in CONNECTOR_FORMS:
        raise ValueError(f"not a connector form: {surface!r}")
    return CANONICAL_CONNECTOR


def match_candidates(sentence: list[TaggedToken]) -> list[CandidateSimile]:
    """All non-overlapping pattern matches in one sentence, leftmost first."""
    out: list[CandidateSimile] = []
    n = len(sentence)
    i = 0
    while i < n:
        head = sentence[i]
        if head.tag not in (Tag.V, Tag.A):
            i += 1
            continue
        j = i + 1
        left_tokens = [head]
        if head.tag is Tag.V and j < n and sentence[j].tag is Tag.P:
            left_tokens.append(sentence[j])
            j += 1
        if j >= n or sentence[j].tag is not Tag.C or sentence[j].lower not in CONNECTOR_FORMS:
            i += 1
            continue
        connector = sentence[j]
        k = j + 1
        last_noun = -1
        while k < n and sentence[k].tag in (Tag.A, Tag.N):
            if sentence[k].tag is Tag.N:
                last_noun = k
            k += 1
        if last_noun < j + 1:
            i += 1
            continue
        right_tokens = sentence[j + 1 : last_noun + 1]
        left = " ".join(t.surface for t in left_tokens)
        right = " ".join(t.surface for t in right_tokens)
        out.append(
            CandidateSimile(
                left=left,
                connector=CANONICAL_CONNECTOR,
                connector_surface=connector.surface,
                right=right,
                phrase=f"{left} {connector.surface} {right}",
                kind="adjectival" if head.tag is Tag.A else "verbal",
                sentence_index=head.sentence_index,
                span=(i, last_noun),
            )
        )
        i = last_noun + 1
    return out


@dataclass
class ExtractReport:
    documents: int = 0
    failed_documents: int = 0
    candidates: int = 0
    duplicates_folded: int = 0


def extract_document(text: str, lex: Lexicon, cyrillic: bool = True) -> list[CandidateSimile]:
    """Tokenize, tag and match a single document's text."""
    candidates: list[CandidateSimile] = []
    for sentence in tag_text(text, lex, cyrillic=cyrillic):
        candidates.extend(match_candidates(sentence))
    return candidates


def extract_corpus(documents, lex: Lexicon, report: ExtractReport | None = None,
                   cyrillic: bool = True):
    """Yield candidates for a stream of documents.

    Exact-duplicate phrases within one document are folded into a single
    candidate with a count. Per-document failures are counted and skipped.
    """
    if report is None:
        report = ExtractReport()
    for doc in documents:
        report.documents += 1
        try:
            found = extract_document(doc.text, lex, cyrillic=cyrillic)
        except Exception:
            report.failed_documents += 1
            continue
        by_phrase: dict[str, CandidateSimile] = {}
        for cand in found:
            cand.doc_url = doc.url
            if cand.phrase in by_phrase:
                by_phrase[cand.phrase].count += 1
                report.duplicates_folded += 1
            else:
                by_phrase[cand.phrase] = cand
        for cand in by_phrase.values():
            report.candidates += 1
            yield cand
