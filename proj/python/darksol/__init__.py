"""Dark-soliton chains of the 1D defocusing NLS in hydrodynamical variables.

Thin Python layer over the C++ core: traveling-wave profiles, energy and
momentum functionals, spectra of the linearized operator, RK4 pseudo-spectral
time integration, and the modulation-parameter decomposition.
"""

from _darksol import (  # noqa: F401
    BadOrdering,
    BadPolynomial,
    BlowUpDetected,
    ConfigError,
    DefocusingViolated,
    Grid,
    GridTooSmall,
    H3Violated,
    HydroField,
    NoConvergence,
    Nonlinearity,
    NoZero,
    VacuumBreach,
    build_chain,
    build_profile,
    decompose,
    energy,
    essential_spectrum_floor,
    evolve,
    find_xi,
    low_spectrum,
    momentum,
    momentum_derivative,
    sound_speed,
    soliton_momentum,
    transonic_constants,
    x_norm,
    xi_derivative,
)

__all__ = [
    "Grid",
    "HydroField",
    "Nonlinearity",
    "sound_speed",
    "transonic_constants",
    "find_xi",
    "xi_derivative",
    "build_profile",
    "build_chain",
    "soliton_momentum",
    "momentum_derivative",
    "energy",
    "momentum",
    "x_norm",
    "evolve",
    "decompose",
    "low_spectrum",
    "essential_spectrum_floor",
    "DefocusingViolated",
    "H3Violated",
    "NoZero",
    "GridTooSmall",
    "VacuumBreach",
    "BadOrdering",
    "NoConvergence",
    "BlowUpDetected",
    "BadPolynomial",
    "ConfigError",
]

__version__ = "0.1.0"
