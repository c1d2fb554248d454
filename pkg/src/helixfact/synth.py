"""Synthetic propagating-wave data.

Ricker impulse responses with hyperbolic moveout, Gaussian white excitation,
their circular convolution, and closed-form damped plane waves of the viscous
1-D wave equation sampled on a lattice.

Random numbers
--------------
:func:`white_excitation` draws from ``numpy.random.Generator(PCG64(seed))``
with ``standard_normal`` (NumPy's ziggurat sampler), generating
``prod(dims)`` values that fill the field in canonical layout (first axis
fastest).  Outputs are therefore bit-reproducible for a given seed, NumPy
version and platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ShapeError
from .grid import Field, as_field

__all__ = [
    "RickerParams",
    "PlaneWaveParams",
    "ricker_response",
    "white_excitation",
    "synth_data",
    "plane_wave",
    "plane_wave_lattice",
]


@dataclass(frozen=True)
class RickerParams:
    """Ricker impulse response of a point source at distance ``R``.

    Time and space steps default to 20 ms and 5 m, width to 0.01 s.  The
    default geometry (``R = 100 m``, ``v = 1500 m/s``) gives an impulse
    response compact enough in space for the helical and half-plane factors
    to converge over ``M = 16 ... 256`` at ``N = 256``.
    """

    sigma: float = 0.01
    R: float = 100.0
    v: float = 1500.0
    dt: float = 0.02
    dx: float = 5.0

    def __post_init__(self):
        for name in ("sigma", "R", "v", "dt", "dx"):
            if not getattr(self, name) > 0:
                raise ValueError(f"RickerParams.{name} must be positive")


@dataclass(frozen=True)
class PlaneWaveParams:
    """Damped plane wave ``A0 exp(-alpha x - beta t) exp(i (k x - omega t))``.

    ``alpha`` (1/m) and ``beta`` (1/s) must be positive for the sampled
    causal solution to be strictly minimum phase.
    """

    A0: float = 1.0
    alpha: float = 0.05
    beta: float = 0.05
    k: float = 0.3
    omega: float = 0.2
    dx: float = 1.0
    dt: float = 1.0

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ValueError("attenuations alpha and beta must be non-negative")
        if not (self.dx > 0 and self.dt > 0):
            raise ValueError("steps dx and dt must be positive")

    @property
    def space_pole(self) -> complex:
        return complex(np.exp(-self.alpha * self.dx) * np.exp(1j * self.k * self.dx))

    @property
    def time_pole(self) -> complex:
        return complex(np.exp(-self.beta * self.dt) * np.exp(-1j * self.omega * self.dt))


def _check_dims(dims) -> tuple:
    dims = tuple(int(n) for n in dims)
    if not dims or any(n <= 0 for n in dims):
        raise ShapeError(f"grid dims must be positive, got {dims}")
    return dims


def ricker_response(p: RickerParams, *dims: int, normalize: bool = True) -> Field:
    """Sample the Ricker response on a (space..., time) grid.

    ``dims`` is ``(M, N)`` for a line of receivers or ``(L, M, N)`` for a
    plane; the last axis is time.  Receiver ``i`` sits at ``i * dx`` along
    each space axis.  Normalized to unit peak absolute value by default.
    """
    dims = _check_dims(dims)
    if len(dims) not in (2, 3):
        raise ShapeError(f"ricker_response needs (M, N) or (L, M, N), got {dims}")
    space = np.meshgrid(*[np.arange(n) * p.dx for n in dims[:-1]], indexing="ij")
    dist = np.sqrt(sum(x**2 for x in space) + p.R**2)
    tau = dist / p.v
    t = np.arange(dims[-1]) * p.dt
    u = (t - tau[..., np.newaxis]) / p.sigma
    h = (1.0 - u**2) * np.exp(-0.5 * u**2) / (np.sqrt(2 * np.pi) * p.sigma**2)
    if normalize:
        h = h / np.max(np.abs(h))
    steps = (p.dx,) * (len(dims) - 1) + (p.dt,)
    return Field(h, steps)


def white_excitation(seed: int, *dims: int, steps=None) -> Field:
    """I.i.d. standard normal field, deterministic per ``seed``."""
    dims = _check_dims(dims)
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    data = rng.standard_normal(int(np.prod(dims)))
    return Field.from_canonical(data, dims, steps)


def synth_data(h, s) -> Field:
    """Circular convolution ``h * s`` computed as a DFT product.

    Convolution with a unit impulse at the origin returns the other operand
    unchanged, bit for bit.
    """
    h, s = as_field(h), as_field(s)
    if h.dims != s.dims:
        raise ShapeError(f"dims differ: {h.dims} vs {s.dims}")
    if _is_unit_impulse(s.values):
        return Field(h.values, h.steps)
    if _is_unit_impulse(h.values):
        return Field(s.values, h.steps)
    d = np.fft.ifftn(np.fft.fftn(h.values) * np.fft.fftn(s.values)).real
    return Field(d, h.steps)


def _is_unit_impulse(a: np.ndarray) -> bool:
    origin = (0,) * a.ndim
    return a[origin] == 1.0 and np.count_nonzero(a) == 1


def plane_wave_lattice(p: PlaneWaveParams, M: int, N: int, direction: str = "forward") -> np.ndarray:
    """Complex samples of the damped plane wave on an ``M x N`` (space, time) grid.

    The backward wave is the forward field reversed in time on the periodic
    grid, ``n -> (N - n) mod N``.
    """
    M, N = _check_dims((M, N))
    m = np.arange(M)[:, np.newaxis]
    n = np.arange(N)[np.newaxis, :]
    x, t = m * p.dx, n * p.dt
    f = p.A0 * np.exp(-p.alpha * x - p.beta * t) * np.exp(1j * (p.k * x - p.omega * t))
    if direction == "forward":
        return f
    if direction == "backward":
        return f[:, (-np.arange(N)) % N]
    raise ValueError(f"direction must be 'forward' or 'backward', got {direction!r}")


def plane_wave(p: PlaneWaveParams, M: int, N: int, direction: str = "forward") -> Field:
    """Real part of :func:`plane_wave_lattice`."""
    return Field(plane_wave_lattice(p, M, N, direction).real, (p.dx, p.dt))
