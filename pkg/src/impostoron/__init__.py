"""Dielectric mixing of solvated electrons in polar liquids.

The package models how a dilute gas of bound electrons shifts the complex
permittivity of its host liquid, locates the resulting polaron resonance
(the zero crossing of the real permittivity), inverts measured permittivity
back to a concentration, matches resonances across different liquids, and
synthesizes/extracts the oscillatory part of two-dimensional THz pump-probe
maps. Frequencies are in THz, times in ps, concentrations in micromolar at
every public interface.
"""

__version__ = "0.1.0"

from .constants import CONSTANTS, PhysicalConstants
from .dielectric import (
    DebyeModel,
    LiquidModel,
    TabulatedModel,
    eval_neat,
    eval_neat_derivative,
    load_liquid_file,
    loads_liquid,
    validity_range,
)
from .errors import (
    DataFileError,
    DegenerateLineshapeError,
    DomainError,
    EdgePeakError,
    GridError,
    ImpostoronError,
    NoConsistentLossError,
    NoProfileMatchError,
    NoResonanceError,
    NoSignalError,
    ParseError,
    PeakError,
    RangeError,
    SingularityError,
    StepFitError,
    UnboundedWidthError,
    UnreachableFrequencyError,
)
from .matching import (
    ImpostoronSolution,
    ce_for_nu0,
    concentration_difference,
    match_frequency,
    match_profiles,
)
from .mixing import (
    Concentration,
    DopedLiquid,
    alpha_el,
    cm_invert_concentration,
    cm_mix,
)
from .polaron import (
    PolaronResonance,
    Spectrum,
    eps_doped,
    eps_imag_at_nu0,
    find_nu0,
    lineshape,
    lorentz_lineshape,
)
from .signal import (
    ExtractionResult,
    FieldMap2D,
    PeakReport,
    StepModel,
    TimeTrace,
    add_noise,
    cut_at_max,
    extract,
    fourier_filter_2d,
    gaussian_probe,
    peak_report,
    read_map_csv,
    read_spectrum_csv,
    read_trace_csv,
    remove_step,
    spectrum_of,
    synth_map,
    synth_oscillation,
    write_map_csv,
    write_spectrum_csv,
    write_trace_csv,
)

__all__ = [
    "__version__",
    "CONSTANTS",
    "PhysicalConstants",
    "DebyeModel",
    "TabulatedModel",
    "LiquidModel",
    "eval_neat",
    "eval_neat_derivative",
    "load_liquid_file",
    "loads_liquid",
    "validity_range",
    "ImpostoronError",
    "DomainError",
    "RangeError",
    "ParseError",
    "DataFileError",
    "SingularityError",
    "NoResonanceError",
    "NoConsistentLossError",
    "UnreachableFrequencyError",
    "NoProfileMatchError",
    "DegenerateLineshapeError",
    "GridError",
    "NoSignalError",
    "StepFitError",
    "PeakError",
    "EdgePeakError",
    "UnboundedWidthError",
    "Concentration",
    "DopedLiquid",
    "alpha_el",
    "cm_mix",
    "cm_invert_concentration",
    "Spectrum",
    "PolaronResonance",
    "eps_doped",
    "find_nu0",
    "eps_imag_at_nu0",
    "lineshape",
    "lorentz_lineshape",
    "ImpostoronSolution",
    "ce_for_nu0",
    "concentration_difference",
    "match_frequency",
    "match_profiles",
    "TimeTrace",
    "FieldMap2D",
    "StepModel",
    "PeakReport",
    "ExtractionResult",
    "synth_oscillation",
    "synth_map",
    "gaussian_probe",
    "add_noise",
    "fourier_filter_2d",
    "cut_at_max",
    "remove_step",
    "spectrum_of",
    "peak_report",
    "extract",
    "read_trace_csv",
    "write_trace_csv",
    "read_spectrum_csv",
    "write_spectrum_csv",
    "read_map_csv",
    "write_map_csv",
]
