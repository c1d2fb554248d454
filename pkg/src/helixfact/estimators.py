"""scikit-learn style wrappers around the helix and the spectral factorizers.

``X`` is always a single real field (a 1-, 2- or 3-D array), not a sample
matrix: these estimators learn from one data cube, as in blind
deconvolution.
"""

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .cepstral import DEFAULT_FLOOR_EPS, Region
from .exceptions import ShapeError
from .factorize import factorize_helical, factorize_nd
from .grid import MAX_NDIM, Field, HelicalOrder, HelicalVector, helical_map, helical_unmap

__all__ = ["check_field_array", "HelicalVectorizer", "SpectralFactorizer"]


def check_field_array(X, ndim=None):
    """Validate ``X`` as a finite float64 field of 1 to 3 axes."""
    X = check_array(X, ensure_2d=False, allow_nd=True, dtype=np.float64, ensure_min_samples=1)
    if not 1 <= X.ndim <= MAX_NDIM:
        raise ShapeError(f"expected a field with 1 to {MAX_NDIM} axes, got {X.ndim}")
    if ndim is not None and X.ndim != ndim:
        raise ShapeError(f"expected {ndim} axes, got {X.ndim}")
    return X


class HelicalVectorizer(TransformerMixin, BaseEstimator):
    """Map fields of a fixed shape onto their helix and back.

    Parameters
    ----------
    order : sequence of int, optional
        Axes from fastest to slowest.  Defaults to column-wise
        ``(0, 1, ..., d-1)``.
    """

    def __init__(self, order=None):
        self.order = order

    def fit(self, X, y=None):
        X = check_field_array(X)
        self.dims_ = X.shape
        self.order_ = HelicalOrder(self.order if self.order is not None else range(X.ndim))
        if self.order_.ndim != X.ndim:
            raise ShapeError(f"order {self.order_.axis_order} does not match {X.ndim} axes")
        return self

    def transform(self, X):
        check_is_fitted(self)
        X = check_field_array(X, len(self.dims_))
        if X.shape != self.dims_:
            raise ShapeError(f"fitted on {self.dims_}, got {X.shape}")
        return helical_map(Field(X), self.order_).data.copy()

    def inverse_transform(self, X):
        check_is_fitted(self)
        v = np.asarray(X, dtype=np.float64).ravel()
        return helical_unmap(HelicalVector(v, self.dims_, self.order_)).values.copy()


class SpectralFactorizer(TransformerMixin, BaseEstimator):
    """Minimum-phase (helix) or semi-minimum-phase (nd) factor of a field.

    ``fit`` estimates the factor ``factor_`` of the field's power spectrum.
    ``transform`` deconvolves a field by that factor (circularly, along the
    helix for ``method="helix"``), which for data generated as ``h * s`` with
    white ``s`` estimates the excitation; ``inverse_transform`` convolves
    back.

    Parameters
    ----------
    method : {"helix", "nd"}
    region : {"upper", "lower"} or RegionKind value
        Half-plane/space for ``method="nd"``.
    order : sequence of int, optional
        Helix order for ``method="helix"``.
    eps : float
        Relative spectral floor applied before the logarithm.
    """

    def __init__(self, method="helix", region="upper", order=None, eps=DEFAULT_FLOOR_EPS):
        self.method = method
        self.region = region
        self.order = order
        self.eps = eps

    def fit(self, X, y=None):
        X = check_field_array(X)
        if self.method == "helix":
            res = factorize_helical(Field(X), self.order, self.eps)
        elif self.method == "nd":
            res = factorize_nd(Field(X), Region.from_name(self.region, X.ndim), self.eps)
        else:
            raise ValueError(f"method must be 'helix' or 'nd', got {self.method!r}")
        self.result_ = res
        self.factor_ = res.factor.values
        self.floor_ = res.floor_report
        self._factor_dft = np.fft.fftn(res.working_field().values)
        return self

    def _apply(self, X, op):
        # Work on the grid the factor's spectrum lives on: the helix for the
        # helical route, the field itself otherwise.
        order = self.result_.order
        if order is None:
            return np.fft.ifftn(op(np.fft.fftn(X), self._factor_dft)).real
        v = helical_map(Field(X), order).data
        out = np.fft.ifft(op(np.fft.fft(v), self._factor_dft)).real
        return helical_unmap(HelicalVector(out, X.shape, order)).values.copy()

    def _check(self, X):
        check_is_fitted(self)
        X = check_field_array(X)
        if X.shape != self.factor_.shape:
            raise ShapeError(f"fitted on {self.factor_.shape}, got {X.shape}")
        return X

    def transform(self, X):
        return self._apply(self._check(X), np.divide)

    def inverse_transform(self, X):
        return self._apply(self._check(X), np.multiply)
