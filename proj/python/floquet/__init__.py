"""Spectral stability of periodic traveling waves.

Thin wrapper over the compiled core: build a model by id, then compute
monodromy data, on-axis multiplicities, bifurcation index zeros, or a
Fourier-Floquet-Hill spectrum.

>>> import floquet
>>> m = floquet.make_model("bbm")
>>> r = floquet.sweep(m, -1, 1, grid=201)
"""
from ._core import (
    Model,
    NoPeriodicOrbit,
    SingularParameterError,
    UnknownModel,
    WaveProfile,
    default_params,
    elliptic_K,
    hill_spectrum,
    kawahara_mstar,
    make_model,
    model_ids,
    monodromy,
    sample_axis,
    sweep,
    symmetry_residuals,
)

__all__ = [
    "Model",
    "NoPeriodicOrbit",
    "SingularParameterError",
    "UnknownModel",
    "WaveProfile",
    "default_params",
    "elliptic_K",
    "hill_spectrum",
    "kawahara_mstar",
    "make_model",
    "model_ids",
    "monodromy",
    "sample_axis",
    "sweep",
    "symmetry_residuals",
]
