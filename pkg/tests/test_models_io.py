import pytest

from similemine.features import LabeledExample
from similemine.models import load_model, predict, save_model
from similemine.naive_bayes import train_nb
from similemine.svm import train_svm

DATA = [
    LabeledExample(frozenset({"right:konj", "left:radi", "full:radi kao konj"}), 1),
    LabeledExample(frozenset({"right:mrav", "left:vredan"}), 1),
    LabeledExample(frozenset({"right:sneg", "left:beo"}), 1),
    LabeledExample(frozenset({"right:pravnik", "left:radi"}), 0),
    LabeledExample(frozenset({"right:lekar", "left:vredan"}), 0),
    LabeledExample(frozenset({"right:zidar", "left:slab"}), 0),
]

QUERIES = [ex.vector for ex in DATA] + [
    frozenset({"right:konj"}),
    frozenset({"right:xyzzy"}),
    frozenset(),
]


@pytest.mark.parametrize("kind", ["nb", "svm"])
def test_round_trip_predicts_bit_identically(tmp_path, kind):
    if kind == "nb":
        model = train_nb(DATA, alpha=0.7)
    else:
        model = train_svm(DATA, c_param=3.0, kernel="polynomial", degree=2, tol=1e-4)
    path = tmp_path / f"{kind}.model.json"
    save_model(model, path)
    reloaded = load_model(path)
    for query in QUERIES:
        assert predict(reloaded, query) == predict(model, query)


def test_nb_fields_preserved(tmp_path):
    model = train_nb(DATA, alpha=0.7)
    path = tmp_path / "m.json"
    save_model(model, path)
    reloaded = load_model(path)
    assert reloaded.nb.alpha == model.nb.alpha
    assert reloaded.nb.log_prior_pos == model.nb.log_prior_pos
    assert reloaded.nb.log_likelihood == model.nb.log_likelihood


def test_svm_fields_preserved(tmp_path):
    model = train_svm(DATA, c_param=3.0, kernel="polynomial", degree=2, tol=1e-4)
    path = tmp_path / "m.json"
    save_model(model, path)
    reloaded = load_model(path)
    assert reloaded.svm.kernel == model.svm.kernel
    assert reloaded.svm.degree == model.svm.degree
    assert reloaded.svm.c_param == model.svm.c_param
    assert reloaded.svm.bias == model.svm.bias
    assert reloaded.svm.sv_coef == model.svm.sv_coef
    assert reloaded.svm.sv_features == model.svm.sv_features
    assert reloaded.svm.feature_index == model.svm.feature_index


def test_unknown_version_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"version": 99, "kind": "nb"}', encoding="utf-8")
    with pytest.raises(ValueError):
        load_model(path)
