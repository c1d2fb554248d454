"""Z-domain ground truth.

Root-finding minimum-phase factorization for short 1-D autocorrelations, and
analytic pole/zero catalogs of the sampled damped plane wave before and after
column-wise helical mapping.  Catalogs list only non-trivial roots: the
poles at ``z = 0`` that every finite causal sequence carries are omitted, and
a pole cancelled by a zero of the truncation numerator is removed together
with that zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .exceptions import DomainError, MarginalSpectrumError, ShapeError
from .synth import PlaneWaveParams

__all__ = [
    "PoleZeroSet",
    "minphase_oracle_1d",
    "plane_wave_pz",
    "helical_pz",
    "separable_zero_map",
    "classify",
    "numeric_roots",
    "match_roots",
]

MAX_ORACLE_DEGREE = 64
UNIT_CIRCLE_TOL = 1e-8
PAIR_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PoleZeroSet:
    """Poles and zeros (repeated entries encode multiplicity) and a gain."""

    zeros: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    poles: np.ndarray = field(default_factory=lambda: np.zeros(0, complex))
    gain: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "zeros", np.atleast_1d(np.asarray(self.zeros, dtype=complex)))
        object.__setattr__(self, "poles", np.atleast_1d(np.asarray(self.poles, dtype=complex)))

    def moduli(self) -> np.ndarray:
        return np.abs(np.concatenate([self.zeros, self.poles]))

    def max_modulus(self) -> float:
        m = self.moduli()
        return float(m.max()) if m.size else 0.0


def classify(values, tol: float = 1e-12) -> np.ndarray:
    """-1 inside, 0 on, +1 outside the unit circle."""
    r = np.abs(np.asarray(values)) - 1.0
    out = np.sign(r).astype(int)
    out[np.abs(r) <= tol] = 0
    return out


def numeric_roots(coeffs) -> np.ndarray:
    """Polynomial roots as companion-matrix eigenvalues (highest power first)."""
    return np.roots(coeffs)


def match_roots(analytic, numeric) -> float:
    """Largest distance from a root to its partner under a greedy nearest match."""
    a = list(np.asarray(analytic, dtype=complex))
    b = list(np.asarray(numeric, dtype=complex))
    if len(a) != len(b):
        raise ShapeError(f"root counts differ: {len(a)} vs {len(b)}")
    worst = 0.0
    for z in a:
        j = int(np.argmin([abs(z - w) for w in b]))
        worst = max(worst, abs(z - b.pop(j)))
    return worst


def minphase_oracle_1d(autocorr) -> np.ndarray:
    """Minimum-phase spectral factor of a centred 1-D autocorrelation.

    Roots of ``z**q * R(z)`` come in pairs ``(r, 1/conj(r))``; the factor is
    built from the roots inside the unit circle and scaled so that its
    autocorrelation reproduces ``autocorr``.  The leading coefficient is
    positive.

    >>> np.round(minphase_oracle_1d([0.5, 1.25, 0.5]), 12)
    array([1. , 0.5])
    """
    r = np.asarray(autocorr, dtype=np.float64).ravel()
    if r.size % 2 == 0:
        raise ShapeError(f"autocorrelation needs odd length (lags -q..q), got {r.size}")
    scale = np.max(np.abs(r)) if r.size else 0.0
    if scale == 0.0 or not np.all(np.isfinite(r)):
        raise DomainError("autocorrelation must be finite and not identically zero")
    if not np.allclose(r, r[::-1], rtol=1e-12, atol=1e-14 * scale):
        raise DomainError("autocorrelation is not even-symmetric")
    while r.size > 1 and r[0] == 0.0 and r[-1] == 0.0:
        r = r[1:-1]
    q = r.size // 2
    if 2 * q > MAX_ORACLE_DEGREE:
        raise ShapeError(f"oracle degree {2 * q} exceeds cap {MAX_ORACLE_DEGREE}")

    w = np.linspace(0, np.pi, 8193)
    lags = np.arange(1, q + 1)
    spectrum = r[q] + 2 * np.cos(np.outer(w, lags)) @ r[q + 1 :] if q else np.full(w.shape, r[0])
    if np.min(spectrum) < -1e-12 * np.max(np.abs(spectrum)):
        raise DomainError("autocorrelation is not positive definite (negative spectrum)")
    if q == 0:
        return np.array([np.sqrt(r[0])])
    if np.min(spectrum) <= 1e-12 * np.max(spectrum):
        raise MarginalSpectrumError("spectrum vanishes on the unit circle")

    roots = numeric_roots(r)
    moduli = np.abs(roots)
    if np.any(np.abs(moduli - 1.0) < UNIT_CIRCLE_TOL):
        raise MarginalSpectrumError("autocorrelation polynomial has roots on the unit circle")
    inside = roots[moduli < 1.0]
    outside = roots[moduli > 1.0]
    if inside.size != q:
        raise MarginalSpectrumError(f"expected {q} roots inside the unit circle, found {inside.size}")
    partners = 1.0 / np.conj(inside)
    for z in partners:
        if np.min(np.abs(outside - z)) > PAIR_TOL * abs(z):
            raise DomainError("roots do not form reciprocal pairs")

    a = np.real(np.poly(inside))
    ra = np.convolve(a, a[::-1])
    gain = np.sqrt(np.dot(r, ra) / np.dot(ra, ra))
    return gain * a


def _per_axis(pole: complex, length) -> PoleZeroSet:
    # Truncation to `length` samples turns 1/(1 - pole z^-1) into
    # (1 - pole^L z^-L)/(1 - pole z^-1): the pole cancels against k = 0.
    if length is None:
        return PoleZeroSet(zeros=[], poles=[pole])
    k = np.arange(1, int(length))
    return PoleZeroSet(zeros=pole * np.exp(2j * np.pi * k / length), poles=[])


def _time_pole(p: PlaneWaveParams, direction: str) -> complex:
    if direction == "forward":
        return p.time_pole
    if direction == "backward":
        return complex(np.exp(p.beta * p.dt) * np.exp(1j * p.omega * p.dt))
    raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")


def plane_wave_pz(p: PlaneWaveParams, M=None, N=None, direction: str = "forward") -> dict:
    """Per-axis catalogs ``{"space": ..., "time": ...}`` of the sampled wave.

    ``M`` / ``N`` bound the space / time axis; ``None`` leaves the axis
    unbounded, in which case its pole survives.  The backward wave has time
    pole ``exp(beta T) exp(i omega T)``, outside the unit circle.
    """
    return {
        "space": _per_axis(p.space_pole, M),
        "time": _per_axis(_time_pole(p, direction), N),
    }


def _mth_roots(c: complex, m: int) -> np.ndarray:
    base = np.abs(c) ** (1.0 / m) * np.exp(1j * np.angle(c) / m)
    return base * np.exp(2j * np.pi * np.arange(m) / m)


def helical_pz(p: PlaneWaveParams, M: int, N=None, direction: str = "forward") -> PoleZeroSet:
    """Catalog of the 1-D column-wise helix ``F(z, z**M)`` of the wave.

    Each time-axis pole ``c`` becomes the ``M`` roots of ``z**M = c`` (modulus
    ``|c|**(1/M)``).  With ``N`` bounded those poles cancel and the ``M (N-1)``
    remaining ``MN``-th roots of ``c**N`` are zeros.
    """
    M = int(M)
    if M < 1:
        raise ShapeError(f"helix needs a bounded space axis, got M={M}")
    space = _per_axis(p.space_pole, M)
    c = _time_pole(p, direction)
    if N is None:
        return PoleZeroSet(zeros=space.zeros, poles=_mth_roots(c, M))
    N = int(N)
    base = np.abs(c) ** (1.0 / M) * np.exp(1j * np.angle(c) / M)
    j = np.arange(M * N)
    j = j[j % N != 0]
    time_zeros = base * np.exp(2j * np.pi * j / (M * N))
    return PoleZeroSet(zeros=np.concatenate([space.zeros, time_zeros]), poles=[])


def separable_zero_map(alpha: complex, Nx: int) -> np.ndarray:
    """The ``Nx`` helix images of a zero ``alpha`` of a slower axis.

    These are the roots of ``z**Nx = alpha``; each has modulus
    ``|alpha|**(1/Nx)``, so inside/outside classification is preserved.
    """
    Nx = int(Nx)
    if Nx < 1:
        raise ValueError(f"Nx must be >= 1, got {Nx}")
    return _mth_roots(complex(alpha), Nx)
