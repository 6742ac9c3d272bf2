"""Lexical features for the simile classifier.

Each candidate becomes exactly six namespaced string features: the whole
phrase, the left part and the right part, each in surface and stemmed
form. Feature values are binary presence; the namespaces keep equal
strings in different roles distinct.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extraction import CandidateSimile
from .stemming import StemRuleSet, stem_phrase

FeatureVector = frozenset  # of namespaced feature strings

NAMESPACES = ("full", "full_stem", "left", "left_stem", "right", "right_stem")


@dataclass(frozen=True)
class LabeledExample:
    vector: FeatureVector
    label: int  # 1 = simile, 0 = not a simile


def featurize(candidate: CandidateSimile, rules: StemRuleSet) -> FeatureVector:
    """The six features of a candidate, case-folded."""
    left = candidate.left.lower()
    right = candidate.right.lower()
    full = candidate.phrase.lower()
    return frozenset(
        {
            f"full:{full}",
            f"full_stem:{stem_phrase(full, rules)}",
            f"left:{left}",
            f"left_stem:{stem_phrase(left, rules)}",
            f"right:{right}",
            f"right_stem:{stem_phrase(right, rules)}",
        }
    )


def featurize_parts(left: str, connector_surface: str, right: str,
                    rules: StemRuleSet) -> FeatureVector:
    """featurize() for a phrase given as its three parts."""
    cand = CandidateSimile(
        left=left,
        connector="kao",
        connector_surface=connector_surface,
        right=right,
        phrase=f"{left} {connector_surface} {right}",
        kind="unknown",
    )
    return featurize(cand, rules)


def load_labeled(path, rules: StemRuleSet) -> list[LabeledExample]:
    """Read ``label<TAB>left<TAB>connector<TAB>right`` lines (label 1/0)."""
    out: list[LabeledExample] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 4 or parts[0] not in ("0", "1"):
                raise ValueError(f"{path}:{lineno}: bad labeled line {line!r}")
            label, left, connector, right = parts
            out.append(LabeledExample(featurize_parts(left, connector, right, rules), int(label)))
    return out


def write_labeled(path, rows: list[tuple[int, str, str, str]]) -> None:
    """Write (label, left, connector, right) rows in the labeled-data format."""
    with open(path, "w", encoding="utf-8") as fh:
        for label, left, connector, right in rows:
            fh.write(f"{label}\t{left}\t{connector}\t{right}\n")
