"""Multidimensional cepstral spectral factorization and the helical shortcut."""

from .cepstral import (
    Cepstrum,
    PowerSpectrum,
    ProjectionWindow,
    Region,
    RegionKind,
    cepstrum_of_spectrum,
    inverse_homomorphic,
    power_spectrum,
    project,
    region_window,
)
from .estimators import HelicalVectorizer, SpectralFactorizer
from .factorize import (
    EquivalenceMetrics,
    FactorizationResult,
    SweepConfig,
    backprop_experiment,
    compare,
    factorize_helical,
    factorize_nd,
    sweep_equivalence,
)
from .grid import Field, HelicalOrder, HelicalVector, helical_index, helical_map, helical_unmap, unfold
from .synth import PlaneWaveParams, RickerParams, plane_wave, ricker_response, synth_data, white_excitation
from .zoracle import PoleZeroSet, helical_pz, minphase_oracle_1d, plane_wave_pz, separable_zero_map

__version__ = "0.1.0"

__all__ = [
    "Cepstrum",
    "PowerSpectrum",
    "ProjectionWindow",
    "Region",
    "RegionKind",
    "cepstrum_of_spectrum",
    "inverse_homomorphic",
    "power_spectrum",
    "project",
    "region_window",
    "EquivalenceMetrics",
    "FactorizationResult",
    "SweepConfig",
    "backprop_experiment",
    "compare",
    "factorize_helical",
    "factorize_nd",
    "sweep_equivalence",
    "HelicalVectorizer",
    "SpectralFactorizer",
    "Field",
    "HelicalOrder",
    "HelicalVector",
    "helical_index",
    "helical_map",
    "helical_unmap",
    "unfold",
    "PlaneWaveParams",
    "RickerParams",
    "plane_wave",
    "ricker_response",
    "synth_data",
    "white_excitation",
    "PoleZeroSet",
    "helical_pz",
    "minphase_oracle_1d",
    "plane_wave_pz",
    "separable_zero_map",
]
