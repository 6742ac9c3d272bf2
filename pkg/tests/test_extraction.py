from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import enumerate_candidates, span_matches_pattern
from similemine.extraction import (
    CandidateSimile,
    ExtractReport,
    extract_corpus,
    match_candidates,
    normalize_connector,
)
from similemine.harvest import Document
from similemine.tagging import Tag, TaggedToken, load_tagged

FIXTURE = Path(__file__).parent / "data" / "extraction_fixture.tsv"

# hand enumeration of the 25-sentence fixture: (sentence, span, phrase, kind)
FIXTURE_EXPECTED = {
    (0, (0, 2), "lep kao cvet", "adjectival"),
    (1, (0, 2), "radi kao konj", "verbal"),
    (2, (0, 2), "smoren kao zmaj", "adjectival"),
    (3, (0, 3), "boji se kao zec", "verbal"),
    (4, (0, 4), "spava kao velika crna mačka", "verbal"),
    (5, (0, 2), "hladan k'o krastavac", "adjectival"),
    (6, (0, 2), "brz ko munja", "adjectival"),
    (10, (0, 2), "radi kao konj", "verbal"),
    (10, (4, 6), "spava kao beba", "verbal"),
    (11, (0, 2), "vredan kao mrav", "adjectival"),
    (11, (3, 5), "radi kao konj", "verbal"),
    (12, (0, 2), "jak kao bik", "adjectival"),
    (15, (0, 4), "smeje se kao lud čovek", "verbal"),
    (18, (0, 3), "brz kao munja grom", "adjectival"),
    (19, (2, 4), "radio kao konj", "verbal"),
    (20, (0, 2), "Ljut Ko ris", "adjectival"),
    (21, (0, 2), "peva kao slavuj", "verbal"),
    (24, (0, 2), "gladan kao vuk", "adjectival"),
}


def fixture_sentences():
    loaded = load_tagged(FIXTURE)
    assert loaded.skipped_lines == 0 and loaded.unknown_tags == 0
    assert len(loaded.sentences) == 25
    return loaded.sentences


def tag_sentence(pairs, sentence_index=0):
    return [
        TaggedToken(surface, surface.lower(), Tag(tag), sentence_index, i)
        for i, (surface, tag) in enumerate(pairs)
    ]


class TestPaperExamples:
    def test_adjectival(self):
        s = tag_sentence([("lep", "A"), ("kao", "C"), ("cvet", "N")])
        (cand,) = match_candidates(s)
        assert cand.phrase == "lep kao cvet"
        assert cand.kind == "adjectival"
        assert (cand.left, cand.connector, cand.right) == ("lep", "kao", "cvet")

    def test_verbal_profession_still_extracted(self):
        # "radi kao pravnik" matches the pattern; rejecting it is the
        # classifier's job, not the extractor's
        s = tag_sentence([("radi", "V"), ("kao", "C"), ("pravnik", "N")])
        (cand,) = match_candidates(s)
        assert cand.phrase == "radi kao pravnik"
        assert cand.kind == "verbal"

    def test_preposition_truncates_right_side(self):
        s = tag_sentence(
            [("smoren", "A"), ("kao", "C"), ("zmaj", "N"),
             ("u", "O"), ("vatrogasnoj", "A"), ("stanici", "N")]
        )
        (cand,) = match_candidates(s)
        assert cand.phrase == "smoren kao zmaj"
        assert cand.span == (0, 2)

    def test_connector_without_left_side(self):
        s = tag_sentence([("kao", "C"), ("konj", "N")])
        assert match_candidates(s) == []


class TestNormalizeConnector:
    @pytest.mark.parametrize("surface", ["k'o", "kao", "Ko", "KAO", "K'O"])
    def test_folds_to_kao(self, surface):
        assert normalize_connector(surface) == "kao"

    def test_rejects_other_words(self):
        with pytest.raises(ValueError):
            normalize_connector("konj")


class TestFixture:
    def test_hand_enumeration(self):
        got = set()
        for idx, sentence in enumerate(fixture_sentences()):
            for cand in match_candidates(sentence):
                got.add((idx, cand.span, cand.phrase, cand.kind))
        assert got == FIXTURE_EXPECTED

    def test_matches_brute_force_oracle(self):
        for sentence in fixture_sentences():
            expected_spans = enumerate_candidates(sentence)
            got_spans = [c.span for c in match_candidates(sentence)]
            assert got_spans == expected_spans

    def test_soundness_every_span_satisfies_predicate(self):
        for sentence in fixture_sentences():
            for cand in match_candidates(sentence):
                assert span_matches_pattern(sentence, *cand.span)

    def test_phrase_composition_invariant(self):
        for sentence in fixture_sentences():
            for cand in match_candidates(sentence):
                assert cand.phrase == f"{cand.left} {cand.connector_surface} {cand.right}"
                assert cand.connector == "kao"


def random_tagged_sentences():
    tag = st.sampled_from(list(Tag))

    def surface_for(t, rnd_word):
        if t is Tag.C:
            return rnd_word[0:1] and ["kao", "ko", "k'o"][len(rnd_word) % 3]
        if t is Tag.P:
            return "se"
        return rnd_word

    plain_word = st.text("bdgmnrtvz", min_size=1, max_size=5)

    @st.composite
    def sentence(draw):
        tags = draw(st.lists(tag, min_size=0, max_size=10))
        tokens = []
        for i, t in enumerate(tags):
            word = surface_for(t, draw(plain_word))
            tokens.append(TaggedToken(word, word.lower(), t, 0, i))
        return tokens

    return sentence()


class TestOracleEquivalence:
    @given(random_tagged_sentences())
    def test_random_sentences_match_oracle(self, sentence):
        got = [c.span for c in match_candidates(sentence)]
        assert got == enumerate_candidates(sentence)

    @given(random_tagged_sentences())
    def test_no_overlapping_spans(self, sentence):
        spans = [c.span for c in match_candidates(sentence)]
        for (a1, b1), (a2, b2) in zip(spans, spans[1:]):
            assert b1 < a2


class TestExtractCorpus:
    def docs(self, *texts):
        return [
            Document(url=f"http://x.invalid/{i}", site_id="x", fetched_at="t", text=t)
            for i, t in enumerate(texts)
        ]

    def test_single_document(self, lexicon):
        cands = list(extract_corpus(self.docs("Radi kao konj."), lexicon))
        assert [c.phrase for c in cands] == ["Radi kao konj"]
        assert cands[0].doc_url == "http://x.invalid/0"

    def test_empty_stream(self, lexicon):
        assert list(extract_corpus([], lexicon)) == []

    def test_duplicates_folded_with_count(self, lexicon):
        report = ExtractReport()
        cands = list(
            extract_corpus(
                self.docs("Radi kao konj. Radi kao konj."), lexicon, report=report
            )
        )
        assert len(cands) == 1
        assert cands[0].count == 2
        assert report.duplicates_folded == 1

    def test_ten_document_fixture_manual_enumeration(self, lexicon):
        texts = [
            "Radi kao konj.",
            "Lep kao cvet, zaista.",
            "Nema poredjenja ovde.",
            "Spava kao beba. Jak kao bik.",
            "Hladan k'o krastavac.",
            "Vredan kao mrav, kažu.",
            "On radi kao pravnik u gradu.",
            "Gladan kao vuk danas.",
            "Brz ko zec.",
            "Ništa ni ovde.",
        ]
        cands = list(extract_corpus(self.docs(*texts), lexicon))
        phrases = sorted(c.phrase.lower() for c in cands)
        assert phrases == sorted(
            [
                "radi kao konj",
                "lep kao cvet",
                "spava kao beba",
                "jak kao bik",
                "hladan k'o krastavac",
                "vredan kao mrav",
                "radi kao pravnik",
                "gladan kao vuk",
                "brz ko zec",
            ]
        )

    def test_cyrillic_transliterated(self, lexicon):
        cands = list(extract_corpus(self.docs("Ради као коњ."), lexicon))
        assert [c.phrase for c in cands] == ["Radi kao konj"]

    def test_candidate_round_trips_through_dict(self, lexicon):
        (cand,) = extract_corpus(self.docs("Radi kao konj."), lexicon)
        assert CandidateSimile.from_dict(cand.to_dict()) == cand
