"""Cepstral spectral factorization of d-D fields, directly and through the helix.

``factorize_nd`` projects the d-D cepstrum of a field's power spectrum onto a
non-symmetric half plane/space.  ``factorize_helical`` vectorizes the field,
keeps the causal half of the 1-D cepstrum of the helix and maps the result
back.  ``compare`` and ``sweep_equivalence`` measure how close the two
solutions are as the bounded axis grows.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .cepstral import (
    DEFAULT_FLOOR_EPS,
    Cepstrum,
    PowerSpectrum,
    Region,
    cepstrum_of_spectrum,
    complex_cepstrum,
    inverse_homomorphic,
    power_spectrum,
    project,
    region_window,
    spectrum_from_autocorrelation,
)
from .exceptions import CorrelationUndefinedError, ShapeError
from .grid import Field, HelicalOrder, HelicalVector, _resolve_order, as_field, helical_map, helical_unmap
from .synth import PlaneWaveParams, RickerParams, plane_wave, ricker_response, synth_data, white_excitation

__all__ = [
    "FactorizationResult",
    "EquivalenceMetrics",
    "SweepConfig",
    "SweepRow",
    "BackpropResult",
    "factorize_spectrum",
    "factorize_nd",
    "factorize_helical",
    "factorize_autocorrelation",
    "causality_residual",
    "magnitude_residual",
    "pearson",
    "compare",
    "ricker_synthetic",
    "equivalence_row",
    "sweep_equivalence",
    "sweep_to_csv",
    "backprop_experiment",
    "CSV_HEADER",
]

CSV_HEADER = "M,e_tot,e_tot_norm,pearson_r"


@dataclass(frozen=True, eq=False)
class FactorizationResult:
    """A spectral factor plus what produced it.

    ``spectrum`` is the power spectrum that was factored: d-D for the direct
    route, 1-D (over the helix) for the helical route, in which case
    ``order`` records the helix used.
    """

    factor: Field
    cepstrum_used: Cepstrum
    region: Region
    spectrum: PowerSpectrum
    order: Optional[HelicalOrder] = None
    imag_residue: float = 0.0

    @property
    def floor_report(self) -> float:
        return self.cepstrum_used.floor_applied

    @property
    def floor_fired(self) -> bool:
        return self.cepstrum_used.n_floored > 0

    def working_field(self) -> Field:
        """The factor on the grid its spectrum lives on (the helix for the helical route)."""
        if self.order is None:
            return self.factor
        return Field(helical_map(self.factor, self.order).data)

    def magnitude_residual(self) -> float:
        return magnitude_residual(self.working_field(), self.spectrum)

    def causality_residual(self) -> float:
        return causality_residual(self.working_field(), self.region)


@dataclass(frozen=True)
class EquivalenceMetrics:
    """Distance between two factors read along the same helix.

    ``e_tot`` is the raw squared L2 distance, ``e_tot_norm`` divides it by the
    energy of the first factor.
    """

    e_tot: float
    e_tot_norm: float
    pearson_r: float


def factorize_spectrum(S: PowerSpectrum, region: Region, eps: float = DEFAULT_FLOOR_EPS, steps=None):
    """Factor a power spectrum by projecting its cepstrum onto ``region``."""
    c = cepstrum_of_spectrum(S, eps)
    c_plus = project(c, region_window(region, S.dims))
    factor, residue = inverse_homomorphic(c_plus, steps=steps, return_residue=True)
    return FactorizationResult(factor, c_plus, region, S, None, residue)


def factorize_nd(d_field, region: Optional[Region] = None, eps: float = DEFAULT_FLOOR_EPS) -> FactorizationResult:
    """Semi-minimum-phase factor of a field's power spectrum.

    ``region`` defaults to the upper NSHP (2-D) or upper NSHS (3-D).
    """
    d_field = as_field(d_field)
    if region is None:
        region = Region.upper_for(d_field.ndim)
    if region.arity != d_field.ndim:
        raise ShapeError(f"{region.kind.value} region needs {region.arity} axes, field has {d_field.ndim}")
    return factorize_spectrum(power_spectrum(d_field), region, eps, d_field.steps)


def factorize_helical(d_field, order=None, eps: float = DEFAULT_FLOOR_EPS) -> FactorizationResult:
    """Minimum-phase factor of the helix of ``d_field``, mapped back to its grid."""
    d_field = as_field(d_field)
    order = _resolve_order(order, d_field.ndim)
    helix = helical_map(d_field, order)
    S = power_spectrum(Field(helix.data))
    res = factorize_spectrum(S, Region.causal(), eps)
    factor = helical_unmap(HelicalVector(res.factor.values, d_field.dims, order, d_field.steps))
    return replace(res, factor=factor, order=order)


def factorize_autocorrelation(autocorr, dims, region: Optional[Region] = None, eps: float = DEFAULT_FLOOR_EPS):
    """Factor the spectrum of a centred autocorrelation embedded on ``dims``."""
    S = spectrum_from_autocorrelation(autocorr, dims)
    if region is None:
        region = Region.upper_for(len(S.dims))
    return factorize_spectrum(S, region, eps)


def magnitude_residual(f, S: PowerSpectrum) -> float:
    """Relative L-infinity gap between ``|DFT(f)|**2`` and ``S``."""
    got = power_spectrum(f).values
    if got.shape != S.dims:
        raise ShapeError(f"factor dims {got.shape} do not match spectrum dims {S.dims}")
    return float(np.max(np.abs(got - S.values)) / np.max(S.values))


def causality_residual(f, region: Region) -> float:
    """Share of complex-cepstral energy of ``f`` outside ``region``.

    Cells owned by the mirror region (window weight 0) count; self-conjugate
    cells, which both regions share, do not.  Meaningful only when the factor's
    spectral phase is smooth enough to unwrap (see ``max_phase_step``).
    """
    c = complex_cepstrum(f)
    w = region_window(region, c.shape).weights
    total = float(np.sum(c**2))
    if total == 0.0:
        return 0.0
    return float(np.sum(c[w == 0.0] ** 2) / total)


def pearson(a, b) -> float:
    a = np.asarray(a.values if isinstance(a, Field) else a, dtype=np.float64).ravel()
    b = np.asarray(b.values if isinstance(b, Field) else b, dtype=np.float64).ravel()
    if a.shape != b.shape:
        raise ShapeError(f"sizes differ: {a.size} vs {b.size}")
    a = a - a.mean()
    b = b - b.mean()
    saa, sbb = np.dot(a, a), np.dot(b, b)
    if saa == 0.0 or sbb == 0.0:
        raise CorrelationUndefinedError("correlation is undefined for a zero-variance input")
    # sqrt(x * x) == x in floating point, so identical inputs give exactly 1
    return float(np.clip(np.dot(a, b) / np.sqrt(saa * sbb), -1.0, 1.0))


def _as_factor(x) -> Field:
    return x.factor if isinstance(x, FactorizationResult) else as_field(x)


def compare(a, b, order=None) -> EquivalenceMetrics:
    """Helix-ordered squared distance and Pearson correlation of two factors."""
    fa, fb = _as_factor(a), _as_factor(b)
    if fa.dims != fb.dims:
        raise ShapeError(f"dims differ: {fa.dims} vs {fb.dims}")
    order = _resolve_order(order, fa.ndim)
    ha = helical_map(fa, order).data
    hb = helical_map(fb, order).data
    e_tot = float(np.sum((ha - hb) ** 2))
    energy = float(np.sum(ha**2))
    e_norm = e_tot / energy if energy > 0 else (0.0 if e_tot == 0 else math.inf)
    return EquivalenceMetrics(e_tot, e_norm, pearson(ha, hb))


@dataclass(frozen=True)
class SweepConfig:
    """Inputs of an equivalence sweep over the number of space samples."""

    M_values: Sequence[int] = (16, 32, 64, 128)
    N: int = 256
    seed: int = 7
    kind: str = "ricker"
    eps: float = DEFAULT_FLOOR_EPS
    dirac: bool = True
    ricker: RickerParams = field(default_factory=RickerParams)
    jobs: int = 1


class SweepRow(NamedTuple):
    M: int
    e_tot: float
    e_tot_norm: float
    pearson_r: float


def ricker_synthetic(params: RickerParams, M: int, N: int, seed: int, dirac: bool = False):
    """``(h, s, d)`` for the Ricker response driven by white noise or a Dirac."""
    h = ricker_response(params, M, N)
    if dirac:
        s = np.zeros((M, N))
        s[0, 0] = 1.0
        s = Field(s, h.steps)
    else:
        s = white_excitation(seed, M, N, steps=h.steps)
    return h, s, synth_data(h, s)


def equivalence_row(config: SweepConfig, M: int) -> SweepRow:
    if config.kind != "ricker":
        raise ValueError(f"unknown generator kind {config.kind!r}")
    _, _, d = ricker_synthetic(config.ricker, M, config.N, config.seed, config.dirac)
    nd = factorize_nd(d, Region.upper_nshp(), config.eps)
    hx = factorize_helical(d, HelicalOrder((0, 1)), config.eps)
    m = compare(nd, hx, HelicalOrder((0, 1)))
    return SweepRow(int(M), m.e_tot, m.e_tot_norm, m.pearson_r)


def sweep_equivalence(config: SweepConfig) -> list:
    """One :class:`SweepRow` per M, sorted by M, deterministic per seed."""
    Ms = sorted(int(M) for M in config.M_values)
    if config.jobs > 1 and len(Ms) > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            rows = list(pool.map(lambda M: equivalence_row(config, M), Ms))
    else:
        rows = [equivalence_row(config, M) for M in Ms]
    return rows


def sweep_to_csv(rows) -> str:
    lines = [CSV_HEADER]
    lines += [f"{r.M},{r.e_tot!r},{r.e_tot_norm!r},{r.pearson_r!r}" for r in rows]
    return "\n".join(lines) + "\n"


class BackpropResult(NamedTuple):
    r_forward: float
    r_backward: float


def backprop_experiment(
    params: PlaneWaveParams,
    dims=(128, 512),
    order=None,
    include_backward: bool = True,
    eps: float = DEFAULT_FLOOR_EPS,
) -> BackpropResult:
    """Correlate the helical factor of a forward+backward wave with each part.

    The default column-wise order periodizes over space (axis 0), which is
    where cancellation of the backward wave is expected.
    """
    if params.alpha == 0 or params.beta == 0:
        warnings.warn("undamped plane wave: spectrum is marginal, factor is not strictly minimum phase", RuntimeWarning, stacklevel=2)
    M, N = dims
    fwd = plane_wave(params, M, N, "forward")
    bwd = plane_wave(params, M, N, "backward")
    data = fwd.values + bwd.values if include_backward else fwd.values
    res = factorize_helical(Field(data, fwd.steps), order, eps)
    return BackpropResult(pearson(res.factor, fwd), pearson(res.factor, bwd))
