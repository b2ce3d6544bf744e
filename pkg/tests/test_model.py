import json

import pytest

from symplectic_filtered import CORPUS, ModelError, bundled_model, load_model, resolve_model
from symplectic_filtered.exterior import Form

KT = {
    "name": "kt copy",
    "dimension": 4,
    "generators": ["x", "y", "z", "w"],
    "d": {"w": [[1, ["y", "z"]]]},
    "omega": [[1, ["x", "y"]], [1, ["z", "w"]]],
}

# Betti numbers: tori are binomial; the nilmanifolds match the published tables
BETTI = {
    "kt": (1, 3, 4, 3, 1),
    "t4": (1, 4, 6, 4, 1),
    "t6": (1, 6, 15, 20, 15, 6, 1),
    "n6": (1, 4, 9, 12, 9, 4, 1),
    "n6b": (1, 3, 8, 12, 8, 3, 1),
}


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_betti(name):
    model = bundled_model(name)
    assert model.betti == BETTI[name]
    assert sum((-1) ** k * b for k, b in enumerate(model.betti)) == 0


def test_differential_on_kt(kt):
    e = lambda *i: Form.monomial(4, i)
    assert kt.d(e(4)) == e(2, 3)
    assert kt.d(e(1, 4)) == -e(1, 2, 3)
    assert not kt.d(e(2, 4))


def test_renamed_generators_give_same_cohomology():
    model = load_model(json.dumps(KT))
    assert model.betti == BETTI["kt"]


def test_identity_is_content_hash():
    a = load_model(json.dumps(KT))
    b = load_model(json.dumps(KT))
    assert a.identity == b.identity and len(a.identity) == 64


def test_integration_of_volume(kt):
    assert kt.integrate(Form.monomial(4, (1, 2, 3, 4))) == 1


@pytest.mark.parametrize("patch, message", [
    ({"d": {"x": [[1, ["z", "w"]]], "z": [[1, ["x", "y"]]]}}, r"d\^2 != 0"),
    ({"omega": [[1, ["x", "y"]]]}, "degenerate"),
    ({"omega": [[1, ["x", "w"]], [1, ["y", "z"]]]}, "not closed"),
    ({"dimension": 3}, "even"),
    ({"generators": ["x", "y", "z"]}, "distinct"),
    ({"d": {"q": []}}, "unknown generator"),
    ({"d": {"w": [[1, ["y"]]]}}, "2-form"),
    ({"d": {"w": [["a", ["y", "z"]]]}}, "bad coefficient"),
])
def test_invalid_models_rejected(patch, message):
    doc = dict(KT, **patch)
    with pytest.raises(ModelError, match=message):
        load_model(json.dumps(doc))


def test_malformed_json_reports_location():
    with pytest.raises(ModelError, match="line 1"):
        load_model('{"name": ')


def test_resolve_unknown():
    with pytest.raises(ModelError):
        resolve_model("no-such-model")


def test_resolve_path(tmp_path):
    path = tmp_path / "m.model"
    path.write_text(json.dumps(KT))
    assert resolve_model(str(path)).name == "kt copy"
