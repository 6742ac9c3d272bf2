import pytest
from hypothesis import given
from hypothesis import strategies as st

from similemine.stemming import (
    StemmerError,
    StemRuleSet,
    StripRule,
    default_rules,
    load_rules,
    stem,
    stem_phrase,
)

SERBIAN_LETTERS = "abcdefghijklmnoprstuvzćčđšž"

words = st.text(alphabet=SERBIAN_LETTERS + "'", min_size=1, max_size=16)


def test_paper_goldens(rules):
    assert stem("radi", rules) == "rad"
    assert stem("kao", rules) == "ka"
    assert stem("konj", rules) == "konj"
    assert stem_phrase("radi kao konj", rules) == "rad ka konj"


def test_gender_variants_share_a_stem(rules):
    stems = {stem(w, rules) for w in ("beo", "bela", "belo")}
    assert len(stems) == 1


def test_single_token_noop(rules):
    assert stem_phrase("konj", rules) == "konj"


def test_empty_inputs_rejected(rules):
    with pytest.raises(StemmerError):
        stem("", rules)
    with pytest.raises(StemmerError):
        stem_phrase("   ", rules)


@given(words)
def test_idempotent(word):
    rules = default_rules()
    once = stem(word, rules)
    assert stem(once, rules) == once


@given(words)
def test_never_longer_than_input(word):
    rules = default_rules()
    assert len(stem(word, rules)) <= len(word)


@given(st.lists(words, min_size=1, max_size=5))
def test_phrase_stemming_idempotent(tokens):
    rules = default_rules()
    phrase = " ".join(tokens)
    once = stem_phrase(phrase, rules)
    assert stem_phrase(once, rules) == once


def test_min_stem_len_guard():
    rules = StemRuleSet(strip_rules=(StripRule("a", "", 3),))
    assert stem("da", rules) == "da"  # would leave a 1-char stem
    assert stem("vrata", rules) == "vrat"


def test_longest_suffix_wins():
    rules = StemRuleSet(strip_rules=(StripRule("a", "", 2), StripRule("ama", "", 2)))
    assert stem("knjigama", rules) == "knjig"


def test_rule_file_round_trip(tmp_path):
    path = tmp_path / "rules.tsv"
    path.write_text(
        "# comment\n[prestem]\nao\tal\n[strip]\na\t\t2\nom\t\t3\n",
        encoding="utf-8",
    )
    rules = load_rules(path)
    assert stem("graoa", rules) == "gral"  # strip exposes the rewrite
    assert stem("gradom", rules) == "grad"


def test_lengthening_strip_rejected():
    with pytest.raises(StemmerError):
        StemRuleSet(strip_rules=(StripRule("a", "xx", 1),))


def test_nonterminating_prestem_rejected():
    rules = StemRuleSet(prestem_rewrites=(("a", "e"), ("e", "a")))
    with pytest.raises(StemmerError):
        stem("banana", rules)
