"""Trained-model container, prediction, and file round-trip.

Models are saved as versioned JSON; Python's float repr round-trips
doubles exactly, so a saved model predicts bit-identically after reload.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .features import FeatureVector

MODEL_FORMAT_VERSION = 1


@dataclass
class NbModel:
    alpha: float
    log_prior_pos: float
    log_prior_neg: float
    log_likelihood: dict[str, tuple[float, float]]  # feature -> (pos, neg)


@dataclass
class SvmModel:
    kernel: str  # "linear" | "polynomial"
    degree: int
    c_param: float
    tol: float
    bias: float
    sv_coef: list[float]  # alpha_i * y_i per support vector
    sv_features: list[list[int]]  # sorted feature ids per support vector
    feature_index: dict[str, int]


@dataclass
class TrainedModel:
    kind: str  # "nb" | "svm"
    nb: NbModel | None = None
    svm: SvmModel | None = None


def predict(model: TrainedModel, vector: FeatureVector) -> tuple[int, float]:
    """Return (label, score).

    NB score is the log-posterior margin, SVM score the decision value;
    either way the label is 1 iff the score is strictly positive, so
    exact ties are discarded rather than kept.
    """
    if model.kind == "nb":
        from .naive_bayes import nb_scores

        sp, sn = nb_scores(model.nb, vector)
        score = sp - sn
    elif model.kind == "svm":
        from .svm import svm_decision

        score = svm_decision(model.svm, vector)
    else:
        raise ValueError(f"unknown model kind {model.kind!r}")
    return (1 if score > 0 else 0), score


def save_model(model: TrainedModel, path) -> None:
    doc: dict = {"version": MODEL_FORMAT_VERSION, "kind": model.kind}
    if model.kind == "nb":
        nb = model.nb
        doc["nb"] = {
            "alpha": nb.alpha,
            "log_prior_pos": nb.log_prior_pos,
            "log_prior_neg": nb.log_prior_neg,
            "log_likelihood": {f: list(v) for f, v in nb.log_likelihood.items()},
        }
    elif model.kind == "svm":
        svm = model.svm
        doc["svm"] = {
            "kernel": svm.kernel,
            "degree": svm.degree,
            "c_param": svm.c_param,
            "tol": svm.tol,
            "bias": svm.bias,
            "sv_coef": svm.sv_coef,
            "sv_features": svm.sv_features,
            "feature_index": svm.feature_index,
        }
    else:
        raise ValueError(f"unknown model kind {model.kind!r}")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, ensure_ascii=False, sort_keys=True)


def load_model(path) -> TrainedModel:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("version") != MODEL_FORMAT_VERSION:
        raise ValueError(f"unsupported model file version {doc.get('version')!r}")
    kind = doc["kind"]
    if kind == "nb":
        raw = doc["nb"]
        return TrainedModel(
            kind="nb",
            nb=NbModel(
                alpha=raw["alpha"],
                log_prior_pos=raw["log_prior_pos"],
                log_prior_neg=raw["log_prior_neg"],
                log_likelihood={f: (v[0], v[1]) for f, v in raw["log_likelihood"].items()},
            ),
        )
    if kind == "svm":
        raw = doc["svm"]
        return TrainedModel(
            kind="svm",
            svm=SvmModel(
                kernel=raw["kernel"],
                degree=raw["degree"],
                c_param=raw["c_param"],
                tol=raw["tol"],
                bias=raw["bias"],
                sv_coef=list(raw["sv_coef"]),
                sv_features=[list(f) for f in raw["sv_features"]],
                feature_index=dict(raw["feature_index"]),
            ),
        )
    raise ValueError(f"unknown model kind {kind!r}")
