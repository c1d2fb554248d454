"""Power spectra, real cepstra, admissible-region windows and the inverse
homomorphic transform on the d-dimensional DFT grid.

Quefrency arrays are aliased: index ``n`` stands for every ``n + k * dims``.
Windows follow a reflection rule on that grid.  Each cell ``n`` is paired with
``-n mod dims``; a region takes exactly one member of each pair, and cells
fixed by the reflection (the origin, plus Nyquist corners for even dims)
carry weight 1/2 so that a region and its mirror always sum to one.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .exceptions import DegenerateSpectrumError, DomainError, NumericRangeError, ShapeError
from .grid import Field, as_field

__all__ = [
    "DEFAULT_FLOOR_EPS",
    "RegionKind",
    "Region",
    "PowerSpectrum",
    "Cepstrum",
    "ProjectionWindow",
    "power_spectrum",
    "spectrum_from_autocorrelation",
    "cepstrum_of_spectrum",
    "region_window",
    "project",
    "inverse_homomorphic",
    "complex_cepstrum",
    "max_phase_step",
]

DEFAULT_FLOOR_EPS = 1e-12
# exp() overflows float64 just above this.
_LOG_MAX = np.log(np.finfo(np.float64).max)


class RegionKind(enum.Enum):
    CAUSAL_1D = "causal1d"
    ANTICAUSAL_1D = "anticausal1d"
    QUADRANT = "quadrant"
    UPPER_NSHP = "upper_nshp"
    LOWER_NSHP = "lower_nshp"
    UPPER_NSHS_3D = "upper_nshs3d"
    LOWER_NSHS_3D = "lower_nshs3d"


_ARITY = {
    RegionKind.CAUSAL_1D: 1,
    RegionKind.ANTICAUSAL_1D: 1,
    RegionKind.UPPER_NSHP: 2,
    RegionKind.LOWER_NSHP: 2,
    RegionKind.UPPER_NSHS_3D: 3,
    RegionKind.LOWER_NSHS_3D: 3,
}
_MIRROR = {
    RegionKind.CAUSAL_1D: RegionKind.ANTICAUSAL_1D,
    RegionKind.ANTICAUSAL_1D: RegionKind.CAUSAL_1D,
    RegionKind.UPPER_NSHP: RegionKind.LOWER_NSHP,
    RegionKind.LOWER_NSHP: RegionKind.UPPER_NSHP,
    RegionKind.UPPER_NSHS_3D: RegionKind.LOWER_NSHS_3D,
    RegionKind.LOWER_NSHS_3D: RegionKind.UPPER_NSHS_3D,
}
_UPPER = {RegionKind.CAUSAL_1D, RegionKind.UPPER_NSHP, RegionKind.UPPER_NSHS_3D}


@dataclass(frozen=True)
class Region:
    """An admissible cepstral support.

    Half-plane/half-space regions are lexicographic in ``axes`` read from the
    slowest axis down: the upper NSHP over ``(m, n)`` is
    ``{n > 0} | {n = 0, m >= 0}``.  ``axes`` lists axes fastest to slowest and
    defaults to ``(0, 1, ..., d-1)``, which matches the column-wise helix.
    ``signs`` (one of +1/-1 per axis) is used only by quadrant regions.
    """

    kind: RegionKind
    signs: tuple = None
    axes: tuple = None

    def __post_init__(self):
        kind = RegionKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind is RegionKind.QUADRANT:
            if not self.signs:
                raise ShapeError("quadrant region needs a sign pattern")
            signs = tuple(int(s) for s in self.signs)
            if any(s not in (1, -1) for s in signs):
                raise ShapeError(f"quadrant signs must be +1 or -1, got {signs}")
            object.__setattr__(self, "signs", signs)
        elif self.signs is not None:
            raise ShapeError(f"{kind.value} region takes no sign pattern")
        if self.axes is not None:
            axes = tuple(int(a) for a in self.axes)
            if sorted(axes) != list(range(len(axes))) or len(axes) != self.arity:
                raise ShapeError(f"axes {axes} is not a permutation of the region's {self.arity} axes")
            object.__setattr__(self, "axes", axes)

    @property
    def arity(self) -> int:
        if self.kind is RegionKind.QUADRANT:
            return len(self.signs)
        return _ARITY[self.kind]

    def mirror(self) -> "Region":
        if self.kind is RegionKind.QUADRANT:
            return Region(self.kind, tuple(-s for s in self.signs), self.axes)
        return Region(_MIRROR[self.kind], None, self.axes)

    @classmethod
    def causal(cls) -> "Region":
        return cls(RegionKind.CAUSAL_1D)

    @classmethod
    def upper_nshp(cls, axes=None) -> "Region":
        return cls(RegionKind.UPPER_NSHP, None, axes)

    @classmethod
    def lower_nshp(cls, axes=None) -> "Region":
        return cls(RegionKind.LOWER_NSHP, None, axes)

    @classmethod
    def upper_nshs(cls, axes=None) -> "Region":
        return cls(RegionKind.UPPER_NSHS_3D, None, axes)

    @classmethod
    def lower_nshs(cls, axes=None) -> "Region":
        return cls(RegionKind.LOWER_NSHS_3D, None, axes)

    @classmethod
    def quadrant(cls, *signs) -> "Region":
        return cls(RegionKind.QUADRANT, signs)

    @classmethod
    def upper_for(cls, ndim: int, axes=None) -> "Region":
        """The default 'upper' region for a field of ``ndim`` axes."""
        if ndim == 1:
            return cls.causal()
        if ndim == 2:
            return cls.upper_nshp(axes)
        if ndim == 3:
            return cls.upper_nshs(axes)
        raise ShapeError(f"no default region for {ndim} axes")

    @classmethod
    def from_name(cls, name: str, ndim: int, axes=None) -> "Region":
        """``"upper"`` / ``"lower"`` resolved for ``ndim`` axes, or a kind value."""
        if name == "upper":
            return cls.upper_for(ndim, axes)
        if name == "lower":
            return cls.upper_for(ndim, axes).mirror()
        return cls(RegionKind(name), None, axes)


@dataclass(frozen=True, eq=False)
class PowerSpectrum:
    values: np.ndarray
    floor_applied: float = 0.0

    @property
    def dims(self):
        return self.values.shape


@dataclass(frozen=True, eq=False)
class Cepstrum:
    """Real cepstrum on the aliased quefrency grid.

    ``floor_applied`` is the absolute spectral floor that was substituted for
    small bins (0.0 when no bin was floored); ``n_floored`` counts those bins.
    """

    values: np.ndarray
    floor_applied: float = 0.0
    n_floored: int = 0

    @property
    def dims(self):
        return self.values.shape


@dataclass(frozen=True, eq=False)
class ProjectionWindow:
    weights: np.ndarray

    @property
    def dims(self):
        return self.weights.shape


def power_spectrum(f) -> PowerSpectrum:
    """``|DFT_d(f)|**2`` on the full DFT grid of ``f``."""
    f = as_field(f)
    F = np.fft.fftn(f.values)
    return PowerSpectrum(F.real**2 + F.imag**2)


def spectrum_from_autocorrelation(autocorr, dims) -> PowerSpectrum:
    """Power spectrum of a centred autocorrelation embedded on a DFT grid.

    ``autocorr`` has odd length along every axis with lag zero in the middle.
    Lags are wrapped circularly onto ``dims``.
    """
    r = np.atleast_1d(np.asarray(autocorr, dtype=np.float64))
    dims = tuple(int(n) for n in dims)
    if r.ndim != len(dims):
        raise ShapeError(f"autocorrelation has {r.ndim} axes, dims has {len(dims)}")
    if any(n % 2 == 0 for n in r.shape):
        raise ShapeError(f"autocorrelation must have odd length per axis, got {r.shape}")
    if any(n > d for n, d in zip(r.shape, dims)):
        raise ShapeError(f"autocorrelation {r.shape} does not fit in dims {dims}")
    if not np.allclose(r, r[(slice(None, None, -1),) * r.ndim], rtol=1e-12, atol=1e-14):
        raise DomainError("autocorrelation is not even-symmetric")
    grid = np.zeros(dims)
    lags = np.indices(r.shape).reshape(r.ndim, -1) - (np.array(r.shape)[:, None] // 2)
    idx = tuple(lag % d for lag, d in zip(lags, dims))
    np.add.at(grid, idx, r.ravel())
    S = np.fft.fftn(grid).real
    smax = np.max(np.abs(S))
    if np.min(S) < -1e-10 * smax:
        raise DomainError("autocorrelation is not non-negative definite on this grid")
    return PowerSpectrum(np.maximum(S, 0.0))


def cepstrum_of_spectrum(S, floor_eps: float = DEFAULT_FLOOR_EPS) -> Cepstrum:
    """Real cepstrum ``IDFT(log(max(S, floor_eps * max(S))))``."""
    values = S.values if isinstance(S, PowerSpectrum) else np.asarray(S, dtype=np.float64)
    if floor_eps < 0:
        raise ValueError(f"floor_eps must be non-negative, got {floor_eps}")
    if np.any(values < 0) or not np.all(np.isfinite(values)):
        raise DomainError("power spectrum must be finite and non-negative")
    smax = float(np.max(values))
    if smax <= 0.0:
        raise DegenerateSpectrumError("power spectrum is identically zero")
    threshold = floor_eps * smax
    low = values < threshold
    n_floored = int(np.count_nonzero(low))
    if threshold == 0.0 and np.any(values == 0.0):
        raise DegenerateSpectrumError("power spectrum has zero bins and no floor was allowed")
    logS = np.log(np.maximum(values, threshold))
    c = np.fft.ifftn(logS).real
    return Cepstrum(c, threshold if n_floored else 0.0, n_floored)


def _axis_signs(n: int) -> np.ndarray:
    """+1 / -1 / 0 for the positive, negative and self-conjugate bins of an axis."""
    k = np.arange(n)
    sign = np.where(2 * k < n, 1, -1)
    sign[0] = 0
    if n % 2 == 0:
        sign[n // 2] = 0
    return sign


def region_window(region: Region, dims) -> ProjectionWindow:
    dims = tuple(int(n) for n in dims)
    if region.arity != len(dims):
        raise ShapeError(f"{region.kind.value} region needs {region.arity} axes, dims {dims} has {len(dims)}")
    ndim = len(dims)
    grids = np.meshgrid(*[_axis_signs(n) for n in dims], indexing="ij")

    if region.kind is RegionKind.QUADRANT:
        w = np.ones(dims)
        for g, s in zip(grids, region.signs):
            w = w * np.where(g == 0, 0.5, (g * s > 0).astype(float))
        return ProjectionWindow(w)

    axes = region.axes or tuple(range(ndim))
    # Sign of the first non-self-conjugate coordinate, scanning slowest axis first.
    lead = np.zeros(dims, dtype=int)
    for ax in reversed(axes):
        lead = np.where(lead == 0, grids[ax], lead)
    want = 1 if region.kind in _UPPER else -1
    w = np.where(lead == want, 1.0, 0.0)
    w[lead == 0] = 0.5
    return ProjectionWindow(w)


def project(c: Cepstrum, w: ProjectionWindow) -> Cepstrum:
    if c.dims != w.dims:
        raise ShapeError(f"cepstrum dims {c.dims} do not match window dims {w.dims}")
    return Cepstrum(c.values * w.weights, c.floor_applied, c.n_floored)


def inverse_homomorphic(c, steps=None, return_residue: bool = False):
    """``IDFT(exp(DFT(c)))`` as a real :class:`~helixfact.grid.Field`.

    With ``return_residue`` the largest discarded imaginary part is returned
    as well.
    """
    values = c.values if isinstance(c, Cepstrum) else np.asarray(c, dtype=np.float64)
    C = np.fft.fftn(values)
    if not np.all(np.isfinite(C)) or np.max(C.real) > _LOG_MAX:
        raise NumericRangeError(f"cepstral log-magnitude {np.max(C.real):.4g} overflows exp()")
    out = np.fft.ifftn(np.exp(C))
    field = Field(out.real, steps)
    if return_residue:
        return field, float(np.max(np.abs(out.imag)))
    return field


def _unwrap_nd(phase: np.ndarray) -> np.ndarray:
    # Unwrap every axis-0 line, then make line offsets consistent by
    # recursively unwrapping the k0 = 0 hyperplane.
    phase = np.unwrap(phase, axis=0)
    if phase.ndim == 1:
        return phase
    plane = phase[0]
    return phase + (_unwrap_nd(plane) - plane)[np.newaxis]


def max_phase_step(f) -> float:
    """Largest phase change between neighbouring DFT bins of ``f``, in radians.

    Line-by-line unwrapping in :func:`complex_cepstrum` is trustworthy only
    when this stays well below pi.
    """
    F = np.fft.fftn(as_field(f).values)
    step = 0.0
    for ax in range(F.ndim):
        ratio = F * np.conj(np.roll(F, 1, axis=ax))
        step = max(step, float(np.max(np.abs(np.angle(ratio)))))
    return step


def complex_cepstrum(f) -> np.ndarray:
    """Complex cepstrum of a real field with smooth, zero-winding phase.

    Phase is unwrapped along grid lines, which is reliable only when the
    phase changes by much less than pi between adjacent bins (see
    :func:`max_phase_step`).  Intended for checking causality of computed
    factors, not for general signals.
    """
    f = as_field(f)
    F = np.fft.fftn(f.values)
    mag = np.abs(F)
    if np.any(mag == 0):
        raise DegenerateSpectrumError("spectrum has exact zeros; complex cepstrum undefined")
    log_f = np.log(mag) + 1j * _unwrap_nd(np.angle(F))
    return np.fft.ifftn(log_f).real
