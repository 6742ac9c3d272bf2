"""Binary SVM trained with simplified sequential minimal optimization.

The dual problem is optimized over pairs of multipliers: the first index
sweeps all examples and is taken when it violates the KKT conditions
beyond the tolerance, the second is drawn at random. The loop stops after
a configured number of consecutive sweeps without a change, i.e. when no
multiplier violates KKT by more than tol.

Kernels: linear x.y and polynomial (x.y + 1)^degree. Pipeline vectors are
sparse binary (sets of feature ids); the trainer also accepts dense
numeric rows, which the unit fixtures use.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .features import FeatureVector, LabeledExample
from .models import SvmModel, TrainedModel


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


def kernel_matrix(x: np.ndarray, kernel: str, degree: int) -> np.ndarray:
    gram = x @ x.T
    if kernel == "linear":
        return gram
    if kernel == "polynomial":
        return (gram + 1.0) ** degree
    raise ValueError(f"unknown kernel {kernel!r}")


@dataclass
class SmoResult:
    alpha: np.ndarray
    bias: float
    sweeps: int
    max_kkt_residual: float


def kkt_residuals(k: np.ndarray, y: np.ndarray, alpha: np.ndarray, bias: float,
                  c_param: float, cut: float = 1e-8) -> np.ndarray:
    """Per-example violation of the KKT optimality conditions."""
    margins = y * (k @ (alpha * y) + bias)
    res = np.zeros(len(y))
    at_zero = alpha <= cut
    at_c = alpha >= c_param - cut
    inside = ~(at_zero | at_c)
    res[at_zero] = np.maximum(0.0, 1.0 - margins[at_zero])
    res[at_c] = np.maximum(0.0, margins[at_c] - 1.0)
    res[inside] = np.abs(1.0 - margins[inside])
    return res


def smo(k: np.ndarray, y: np.ndarray, c_param: float, tol: float = 1e-3,
        max_passes: int = 10, max_sweeps: int = 20000, seed: int = 0) -> SmoResult:
    """Optimize the dual on a precomputed kernel matrix."""
    n = len(y)
    alpha = np.zeros(n)
    bias = 0.0
    rng = random.Random(seed)
    passes = 0
    sweeps = 0

    def err(idx: int) -> float:
        return float(k[idx] @ (alpha * y) + bias - y[idx])

    while passes < max_passes:
        if sweeps >= max_sweeps:
            res = kkt_residuals(k, y, alpha, bias, c_param)
            raise ConvergenceError(
                f"SMO did not converge within {max_sweeps} sweeps",
                {
                    "sweeps": sweeps,
                    "max_kkt_residual": float(res.max()) if n else 0.0,
                    "violations": int((res > tol).sum()),
                    "alpha": alpha.copy(),
                    "bias": bias,
                },
            )
        sweeps += 1
        changed = 0
        for i in range(n):
            e_i = err(i)
            if not ((y[i] * e_i < -tol and alpha[i] < c_param)
                    or (y[i] * e_i > tol and alpha[i] > 0)):
                continue
            j = rng.randrange(n - 1)
            if j >= i:
                j += 1
            e_j = err(j)
            a_i_old, a_j_old = alpha[i], alpha[j]
            if y[i] == y[j]:
                low = max(0.0, a_i_old + a_j_old - c_param)
                high = min(c_param, a_i_old + a_j_old)
            else:
                low = max(0.0, a_j_old - a_i_old)
                high = min(c_param, c_param + a_j_old - a_i_old)
            if low == high:
                continue
            eta = 2.0 * k[i, j] - k[i, i] - k[j, j]
            if eta >= 0:
                continue
            a_j = a_j_old - y[j] * (e_i - e_j) / eta
            a_j = min(high, max(low, a_j))
            if abs(a_j - a_j_old) < 1e-7:
                continue
            a_i = a_i_old + y[i] * y[j] * (a_j_old - a_j)
            alpha[i], alpha[j] = a_i, a_j
            b1 = bias - e_i - y[i] * (a_i - a_i_old) * k[i, i] - y[j] * (a_j - a_j_old) * k[i, j]
            b2 = bias - e_j - y[i] * (a_i - a_i_old) * k[i, j] - y[j] * (a_j - a_j_old) * k[j, j]
            if 0 < a_i < c_param:
                bias = b1
            elif 0 < a_j < c_param:
                bias = b2
            else:
                bias = (b1 + b2) / 2.0
            changed += 1
        passes = passes + 1 if changed == 0 else 0

    res = kkt_residuals(k, y, alpha, bias, c_param)
    return SmoResult(alpha, float(bias), sweeps, float(res.max()) if n else 0.0)


def train_svm_dense(x: np.ndarray, labels: np.ndarray, c_param: float = 1.0,
                    kernel: str = "polynomial", degree: int = 2, tol: float = 1e-3,
                    max_passes: int = 10, max_sweeps: int = 20000, seed: int = 0) -> tuple[SmoResult, np.ndarray]:
    """SMO over dense rows; labels in {0,1} or {-1,+1}."""
    y = np.where(np.asarray(labels) > 0, 1.0, -1.0)
    k = kernel_matrix(np.asarray(x, dtype=float), kernel, degree)
    return smo(k, y, c_param, tol, max_passes, max_sweeps, seed), y


def train_svm(data: list[LabeledExample], c_param: float = 1.0,
              kernel: str = "polynomial", degree: int = 2, tol: float = 1e-3,
              max_passes: int = 10, max_sweeps: int = 20000, seed: int = 0) -> TrainedModel:
    """Train on string-feature examples and keep only the support vectors."""
    if degree < 1:
        raise ValueError("degree must be >= 1")
    if c_param <= 0 or tol <= 0:
        raise ValueError("c_param and tol must be positive")
    if {ex.label for ex in data} != {0, 1}:
        raise ValueError("training data must contain both classes")

    feature_index = {f: i for i, f in enumerate(sorted(set().union(*(ex.vector for ex in data))))}
    x = np.zeros((len(data), len(feature_index)))
    for row, ex in enumerate(data):
        for f in ex.vector:
            x[row, feature_index[f]] = 1.0
    result, y = train_svm_dense(x, np.array([ex.label for ex in data]),
                                c_param, kernel, degree, tol, max_passes, max_sweeps, seed)

    keep = np.nonzero(result.alpha > 1e-12)[0]
    svm = SvmModel(
        kernel=kernel,
        degree=degree,
        c_param=c_param,
        tol=tol,
        bias=result.bias,
        sv_coef=[float(result.alpha[i] * y[i]) for i in keep],
        sv_features=[sorted(int(c) for c in np.nonzero(x[i])[0]) for i in keep],
        feature_index=feature_index,
    )
    return TrainedModel(kind="svm", svm=svm)


def svm_decision(svm: SvmModel, vector: FeatureVector) -> float:
    """Decision value for a string-feature vector; unknown features are dropped."""
    ids = {svm.feature_index[f] for f in vector if f in svm.feature_index}
    value = svm.bias
    for coef, sv in zip(svm.sv_coef, svm.sv_features):
        dot = float(len(ids.intersection(sv)))
        if svm.kernel == "polynomial":
            value += coef * (dot + 1.0) ** svm.degree
        else:
            value += coef * dot
    return value
