"""Polaron resonance of a doped liquid: the rising zero crossing of eps'.

The observable line shape is the energy-loss function -Im[1/eps] =
eps'' / (eps'^2 + eps''^2). Near the zero crossing nu0 it is close to a
Lorentzian of half width eps''(nu0)/B, where B = d(eps')/d(nu) at nu0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dielectric import DERIVATIVE_STEP, eval_neat
from .errors import (
    DegenerateLineshapeError,
    DomainError,
    NoConsistentLossError,
    NoResonanceError,
    SingularityError,
)
from .mixing import Concentration, DopedLiquid, cm_mix

#: Number of pre-scan points used to bracket sign changes of eps'.
SCAN_POINTS = 400

#: Default search bracket (THz) and bisection tolerance (THz).
DEFAULT_BRACKET = (0.1, 3.0)
DEFAULT_TOL = 1e-6


@dataclass(frozen=True)
class Spectrum:
    """Real-valued samples on a strictly increasing frequency grid (THz)."""

    frequencies: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        freqs = np.array(self.frequencies, dtype=float)
        vals = np.array(self.values, dtype=float)
        freqs.setflags(write=False)
        vals.setflags(write=False)
        object.__setattr__(self, "frequencies", freqs)
        object.__setattr__(self, "values", vals)
        if freqs.ndim != 1 or freqs.size < 2:
            raise DomainError("spectrum needs at least two samples")
        if vals.shape != freqs.shape:
            raise DomainError("frequency and value arrays must have equal length")
        if np.any(np.diff(freqs) <= 0):
            raise DomainError("spectrum frequencies must be strictly increasing")
        if not (np.all(np.isfinite(freqs)) and np.all(np.isfinite(vals))):
            raise DomainError("spectrum samples must be finite")


@dataclass(frozen=True)
class PolaronResonance:
    """Zero-crossing frequency with the local quantities of the doped medium."""

    nu0: float  # THz
    eps_imag_at_nu0: float
    slope_B: float  # d(eps')/d(nu) at nu0, 1/THz
    ce: Concentration
    #: further rising crossings found in the bracket, lowest first
    alternatives: tuple[float, ...] = ()


def eps_doped(doped: DopedLiquid, nu):
    """Complex permittivity of the doped liquid at nu (THz, scalar or array)."""
    return cm_mix(eval_neat(doped.liquid, nu), doped.ce, nu)


def find_nu0(
    doped: DopedLiquid,
    bracket: tuple[float, float] = DEFAULT_BRACKET,
    tol: float = DEFAULT_TOL,
    n_scan: int = SCAN_POINTS,
    h: float = DERIVATIVE_STEP,
) -> PolaronResonance:
    """Lowest rising zero crossing of eps'(nu) inside the bracket.

    A uniform pre-scan locates sign changes from negative to non-negative;
    each is refined by bisection to tol (THz). The lowest crossing is
    returned, any further ones are listed in `alternatives`.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo <= 0 or hi <= lo:
        raise DomainError(f"bad bracket [{lo}, {hi}] THz")
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if n_scan < 2:
        raise DomainError("need at least 2 scan points")

    grid = np.linspace(lo, hi, n_scan)
    f = np.real(eps_doped(doped, grid))

    roots = []
    for i in range(n_scan - 1):
        if not (f[i] < 0.0 <= f[i + 1]):
            continue
        a, b = grid[i], grid[i + 1]
        while (b - a) > tol:
            mid = 0.5 * (a + b)
            if float(np.real(eps_doped(doped, mid))) >= 0.0:
                b = mid
            else:
                a = mid
        # grid points are numpy scalars; keep roots as plain floats so the
        # result repr round-trips through the CSV writers
        roots.append(float(0.5 * (a + b)))

    if not roots:
        raise NoResonanceError(f"no polaron resonance in range [{lo:g}, {hi:g}] THz")

    nu0 = roots[0]
    eps_at = complex(eps_doped(doped, nu0))
    slope = (
        float(np.real(eps_doped(doped, nu0 + h)))
        - float(np.real(eps_doped(doped, nu0 - h)))
    ) / (2.0 * h)
    return PolaronResonance(
        nu0=nu0,
        eps_imag_at_nu0=eps_at.imag,
        slope_B=slope,
        ce=doped.ce,
        alternatives=tuple(roots[1:]),
    )


def eps_imag_at_nu0(neat_at_nu0: complex) -> float:
    """Loss of the doped liquid at its own zero crossing, fixed by the neat value.

    At the crossing eps = i*eps2, consistency of the mixing relation forces
    eps2/(eps2^2 + 4) = R with R = eps2_neat / |eps_neat + 2|^2; the smaller
    root of the resulting quadratic is the physical branch (it vanishes with
    the neat loss). Requires 0 <= R <= 1/4.
    """
    neat = complex(neat_at_nu0)
    denom = abs(neat) ** 2 + 4.0 * neat.real + 4.0  # |neat + 2|^2
    if denom <= 0:
        raise SingularityError("local-field ratio diverges: permittivity too close to -2")
    r = neat.imag / denom
    if r < 0:
        raise DomainError(f"neat loss must be >= 0, got eps'' = {neat.imag}")
    if r > 0.25:
        raise NoConsistentLossError(
            f"no consistent eps'' at the zero crossing: R = {r:.6g} exceeds 1/4"
        )
    if r == 0.0:
        return 0.0
    # algebraically (1 - sqrt(1 - 16 R^2)) / (2 R); this form avoids
    # cancellation for small R
    return 8.0 * r / (1.0 + math.sqrt(1.0 - 16.0 * r * r))


def lineshape(doped: DopedLiquid, frequencies) -> Spectrum:
    """Energy-loss function -Im[1/eps] = eps''/(eps'^2 + eps''^2) on a grid (THz)."""
    freqs = np.asarray(frequencies, dtype=float)
    eps = np.asarray(eps_doped(doped, freqs))
    mag2 = np.abs(eps) ** 2
    tiny = np.abs(eps) < 1e-12
    if np.any(tiny):
        nu_bad = float(freqs[np.nonzero(tiny)[0][0]])
        raise SingularityError(f"singular line shape: |eps| < 1e-12 at nu = {nu_bad:g} THz")
    return Spectrum(frequencies=freqs, values=eps.imag / mag2)


def lorentz_lineshape(resonance: PolaronResonance, frequencies) -> Spectrum:
    """Lorentzian approximation of the line shape around the zero crossing.

    (1/eps2) / (1 + (B*(nu - nu0)/eps2)^2) with eps2 = eps''(nu0). Zero loss
    at the crossing means a delta-like line and is rejected.
    """
    eps2 = resonance.eps_imag_at_nu0
    if eps2 <= 0:
        raise DegenerateLineshapeError(
            "line shape degenerates to a delta: eps''(nu0) = 0"
        )
    freqs = np.asarray(frequencies, dtype=float)
    det = resonance.slope_B * (freqs - resonance.nu0) / eps2
    return Spectrum(frequencies=freqs, values=(1.0 / eps2) / (1.0 + det * det))
