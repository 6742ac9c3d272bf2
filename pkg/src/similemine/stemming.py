"""Rule-driven suffix-stripping stemmer for Serbian.

The engine is data-driven: a rule set consists of prestem rewrites
(suffix pattern -> rewrite, e.g. l-vocalization "beo" -> "bel") and strip
rules (suffix, replacement, minimum stem length). Rules are applied to a
fixpoint: at each step the first applicable rewrite wins, otherwise the
longest applicable strip wins, until nothing changes. Stripping always
shortens the word, so the loop terminates; the fixpoint makes stemming
idempotent, which the canonical corpus keys rely on.

The default rule set ships in ``data/stem_rules.tsv`` and folds common
nominal/adjectival/verbal inflection, e.g. beo/bela/belo/belog -> bel.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field


class StemmerError(ValueError):
    """Raised for contract violations and non-terminating rule sets."""


@dataclass(frozen=True)
class StripRule:
    suffix: str
    replacement: str
    min_stem_len: int


@dataclass(frozen=True)
class StemRuleSet:
    """Ordered rewrite and strip rules loaded from a rule file."""

    prestem_rewrites: tuple[tuple[str, str], ...] = ()
    strip_rules: tuple[StripRule, ...] = ()
    # longest-suffix-first, ties broken by file order
    _ordered_strips: tuple[StripRule, ...] = field(init=False, repr=False)

    def __post_init__(self):
        ordered = sorted(
            enumerate(self.strip_rules),
            key=lambda pair: (-len(pair[1].suffix), pair[0]),
        )
        object.__setattr__(self, "_ordered_strips", tuple(r for _, r in ordered))
        for rule in self.strip_rules:
            if len(rule.replacement) >= len(rule.suffix):
                raise StemmerError(
                    f"strip rule {rule.suffix!r} -> {rule.replacement!r} does not shorten"
                )


def load_rules(path) -> StemRuleSet:
    """Parse a rule file.

    Strip rules are ``suffix<TAB>replacement<TAB>min_stem_len`` lines;
    a ``[prestem]`` marker opens the rewrite section (``pattern<TAB>rewrite``
    lines), ``[strip]`` switches back. ``#`` starts a comment.
    """
    prestem: list[tuple[str, str]] = []
    strips: list[StripRule] = []
    section = "strip"
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            if line.strip() == "[prestem]":
                section = "prestem"
                continue
            if line.strip() == "[strip]":
                section = "strip"
                continue
            cols = line.split("\t")
            if section == "prestem":
                if len(cols) != 2 or not cols[0]:
                    raise StemmerError(f"bad prestem line: {raw!r}")
                prestem.append((cols[0], cols[1]))
            else:
                if len(cols) != 3 or not cols[0]:
                    raise StemmerError(f"bad strip line: {raw!r}")
                strips.append(StripRule(cols[0], cols[1], int(cols[2])))
    return StemRuleSet(tuple(prestem), tuple(strips))


def default_rules() -> StemRuleSet:
    """The rule set shipped with the package."""
    ref = importlib.resources.files("similemine.data").joinpath("stem_rules.tsv")
    with importlib.resources.as_file(ref) as path:
        return load_rules(path)


def _step(word: str, rules: StemRuleSet) -> str:
    for pattern, rewrite in rules.prestem_rewrites:
        if word.endswith(pattern):
            return word[: len(word) - len(pattern)] + rewrite
    for rule in rules._ordered_strips:
        if word.endswith(rule.suffix):
            stem = word[: len(word) - len(rule.suffix)] + rule.replacement
            if len(stem) >= rule.min_stem_len:
                return stem
    return word


def stem(word: str, rules: StemRuleSet) -> str:
    """Stem a single case-folded word; unchanged when no rule applies."""
    if not word:
        raise StemmerError("cannot stem an empty word")
    limit = 4 * len(word) + 8
    current = word
    for _ in range(limit):
        nxt = _step(current, rules)
        if nxt == current:
            return current
        current = nxt
    raise StemmerError(f"rule set does not terminate on {word!r}")


def stem_phrase(phrase: str, rules: StemRuleSet) -> str:
    """Stem every whitespace-separated token and re-join with single spaces."""
    words = phrase.split()
    if not words:
        raise StemmerError("cannot stem an empty phrase")
    return " ".join(stem(w, rules) for w in words)
