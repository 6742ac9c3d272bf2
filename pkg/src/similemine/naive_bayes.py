"""Multinomial Naive Bayes over binary-presence string features.

Counts are computed per class with additive smoothing over the union
vocabulary; parameters are kept in log space. Features never seen in
training are ignored at prediction time, so an input with no vocabulary
overlap falls back to the class priors. A feature that is in the
vocabulary but absent from one class keeps a strictly positive smoothed
likelihood there.
"""

from __future__ import annotations

import math
from collections import Counter

from .features import FeatureVector, LabeledExample
from .models import NbModel, TrainedModel


def train_nb(data: list[LabeledExample], alpha: float = 1.0) -> TrainedModel:
    """Fit NB parameters; requires both classes and alpha > 0."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    labels = {ex.label for ex in data}
    if labels != {0, 1}:
        raise ValueError("training data must contain both classes")

    n_pos = sum(1 for ex in data if ex.label == 1)
    n_neg = len(data) - n_pos
    counts = {1: Counter(), 0: Counter()}
    for ex in data:
        counts[ex.label].update(ex.vector)

    vocab = sorted(set(counts[1]) | set(counts[0]))
    total = {c: sum(counts[c].values()) for c in (1, 0)}
    denom = {c: total[c] + alpha * len(vocab) for c in (1, 0)}

    log_likelihood = {
        f: (
            math.log((counts[1][f] + alpha) / denom[1]),
            math.log((counts[0][f] + alpha) / denom[0]),
        )
        for f in vocab
    }
    nb = NbModel(
        alpha=alpha,
        log_prior_pos=math.log(n_pos / len(data)),
        log_prior_neg=math.log(n_neg / len(data)),
        log_likelihood=log_likelihood,
    )
    return TrainedModel(kind="nb", nb=nb)


def nb_scores(nb: NbModel, vector: FeatureVector) -> tuple[float, float]:
    """Unnormalized class log-scores (log prior + log likelihoods)."""
    score_pos = nb.log_prior_pos
    score_neg = nb.log_prior_neg
    for f in vector:
        pair = nb.log_likelihood.get(f)
        if pair is not None:
            score_pos += pair[0]
            score_neg += pair[1]
    return score_pos, score_neg


def nb_posteriors(nb: NbModel, vector: FeatureVector) -> tuple[float, float]:
    """Normalized class posteriors; they sum to 1."""
    sp, sn = nb_scores(nb, vector)
    m = max(sp, sn)
    zp, zn = math.exp(sp - m), math.exp(sn - m)
    z = zp + zn
    return zp / z, zn / z
