"""Synthetic labeled data for classifier benchmarks.

The real hand-labeled set is not redistributable, so benchmarks run on
generated phrases with class-correlated right sides: comparison vehicles
("konj", "sneg", ...) for positives, professions and roles for negatives,
a shared pool of left-side verbs/adjectives, and a configurable fraction
of flipped labels. Pool sizes are balanced so that each right-side noun
recurs often enough for its statistics to survive the label noise.
"""

from __future__ import annotations

import random

from .features import LabeledExample, featurize_parts
from .stemming import StemRuleSet

POSITIVE_RIGHT = """konj mrav sneg cvet zmaj ris med kamen pero vuk
zec krv vampir ovca munja""".split()

NEGATIVE_RIGHT = """pravnik lekar inženjer učitelj direktor student vozač kuvar
konobar novinar glumac zidar sudija pekar vojnik""".split()

LEFT_VERBS = """radi spava jede trči peva skače vozi piše gleda ćuti juri pliva
leti stoji pada viče plače igra hoda kuva laje sija sanja svira misli nosi priča
vuče žuri beži""".split()

LEFT_ADJS = """lep brz hladan jak vredan gladan bela crven tvrd mudar visok tih
bled ljut sladak mek star mlad čist prazan spor slab nov dobar velik mali dug
kratak debeo vruć""".split()

CONNECTORS = ["kao", "kao", "kao", "k'o", "ko"]


def make_synthetic(n_pos: int = 300, n_neg: int = 300, noise: float = 0.10,
                   seed: int = 7) -> list[tuple[int, str, str, str]]:
    """(label, left, connector, right) rows; labels carry `noise` flips."""
    rng = random.Random(seed)
    lefts = LEFT_VERBS + LEFT_ADJS
    rows: list[tuple[int, str, str, str]] = []
    for true_label, count in ((1, n_pos), (0, n_neg)):
        pool = POSITIVE_RIGHT if true_label == 1 else NEGATIVE_RIGHT
        for _ in range(count):
            label = true_label if rng.random() >= noise else 1 - true_label
            rows.append((label, rng.choice(lefts), rng.choice(CONNECTORS), rng.choice(pool)))
    rng.shuffle(rows)
    return rows


def synthetic_examples(rules: StemRuleSet, n_pos: int = 300, n_neg: int = 300,
                       noise: float = 0.10, seed: int = 7) -> list[LabeledExample]:
    return [
        LabeledExample(featurize_parts(left, conn, right, rules), label)
        for label, left, conn, right in make_synthetic(n_pos, n_neg, noise, seed)
    ]
