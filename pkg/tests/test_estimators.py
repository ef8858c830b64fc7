import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from padicembed import PadicEmbedder, PrimitiveElementFinder
from padicembed.errors import FieldMismatch, PreconditionViolated, ZeroElement
from padicembed.estimators import check_elements
from padicembed.numfield import NumberField


@pytest.fixture(scope="module")
def biquad():
    K = NumberField([1, 0, -10, 0, 1])
    a = K.gen
    return K, (a ** 3 - 9 * a) / 2, (11 * a - a ** 3) / 2


def test_embedder_params_and_clone():
    est = PadicEmbedder(p_max=1000, precision=16)
    assert est.get_params() == {"bound_c": 1.0, "p_max": 1000, "precision": 16, "seed": 0}
    twin = clone(est.set_params(seed=3))
    assert twin.get_params()["seed"] == 3 and not hasattr(twin, "p_")


def test_embedder_fit_transform():
    K = NumberField([-2, 0, 1])
    est = PadicEmbedder().fit([K.gen])
    assert est.p_ == 7 and est.valuations_ == {"b1": 0, "b1^-1": 0}
    imgs = est.transform([K.gen, K.rational(14)])
    assert imgs[0].residue % 7 == 3 and imgs[1].valuation == 1
    assert PadicEmbedder().fit_transform({"alpha": K.gen})[0].valuation == 0


def test_embedder_errors(biquad):
    K = NumberField([-2, 0, 1])
    with pytest.raises(NotFittedError):
        PadicEmbedder().transform([K.gen])
    with pytest.raises(ZeroElement):
        PadicEmbedder().fit([K.zero])
    with pytest.raises(PreconditionViolated):
        PadicEmbedder(precision=0).fit([K.gen])
    est = PadicEmbedder().fit([K.gen])
    with pytest.raises(FieldMismatch):
        est.transform([biquad[1]])


def test_primitive_finder(biquad):
    K, s2, s3 = biquad
    est = PrimitiveElementFinder().fit([s2, s3])
    assert est.coefficients_ == (1, 1)
    i2, i3 = est.transform([s2, s3])
    assert i2 * i2 == est.field_.rational(2) and i2 + i3 == est.field_.gen


def test_check_elements_validation(biquad):
    K, s2, s3 = biquad
    assert list(check_elements([s2, s3])) == ["b1", "b2"]
    assert list(check_elements({"r": s2})) == ["r"]
    with pytest.raises(PreconditionViolated):
        check_elements([])
    with pytest.raises(TypeError):
        check_elements([1, 2])
    with pytest.raises(FieldMismatch):
        check_elements([s2, NumberField([-2, 0, 1]).gen])
