import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from helixfact.estimators import HelicalVectorizer, SpectralFactorizer, check_field_array
from helixfact.exceptions import ShapeError


def test_params_and_clone():
    est = SpectralFactorizer(method="nd", region="lower", eps=1e-9)
    assert est.get_params() == {"method": "nd", "region": "lower", "order": None, "eps": 1e-9}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est
    assert HelicalVectorizer(order=(1, 0)).set_params(order=(0, 1)).order == (0, 1)


def test_vectorizer_round_trip(rng):
    X = rng.standard_normal((3, 4, 5))
    vec = HelicalVectorizer(order=(2, 0, 1)).fit(X)
    v = vec.transform(X)
    assert v.shape == (60,)
    np.testing.assert_array_equal(vec.inverse_transform(v), X)
    np.testing.assert_array_equal(HelicalVectorizer().fit_transform(X), X.ravel(order="F"))
    with pytest.raises(ShapeError):
        vec.transform(X[:2])
    with pytest.raises(NotFittedError):
        HelicalVectorizer().transform(X)


@pytest.mark.parametrize("method", ["helix", "nd"])
def test_factorizer_deconvolves(rng, method):
    h = np.zeros((16, 32))
    h[0, :3] = (1.0, -0.5, 0.2)
    h[1, 0] = 0.3
    s = rng.standard_normal((16, 32))
    d = np.fft.ifftn(np.fft.fftn(h) * np.fft.fftn(s)).real
    est = SpectralFactorizer(method=method).fit(d)
    assert est.factor_.shape == d.shape and est.floor_ >= 0.0
    white = est.transform(d)
    # deconvolved data has a flat spectrum on the grid the factor was fitted on
    w = white.ravel(order="F") if method == "helix" else white
    np.testing.assert_allclose(np.abs(np.fft.fftn(w)), 1.0, rtol=1e-8)
    np.testing.assert_allclose(est.inverse_transform(white), d, atol=1e-10)


def test_factorizer_validation(rng):
    with pytest.raises(ValueError):
        SpectralFactorizer(method="wilson").fit(rng.standard_normal((4, 4)))
    with pytest.raises(ValueError):
        check_field_array(np.array([[np.nan, 1.0]]))
    with pytest.raises(ShapeError):
        check_field_array(np.zeros((2, 2, 2, 2)))
    est = SpectralFactorizer().fit(rng.standard_normal((4, 4)))
    with pytest.raises(ShapeError):
        est.transform(np.zeros((4, 5)))
