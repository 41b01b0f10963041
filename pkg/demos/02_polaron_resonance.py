"""Doping a polar liquid with electrons and finding the polaron resonance.

A dilute gas of quasi-free electrons adds a large negative polarizability to
the liquid. Mixed through the local-field (Clausius-Mossotti) relation, the
real permittivity is pulled down until it crosses zero at some nu0; at that
crossing the energy-loss function -Im[1/eps] peaks, which is the polaron
resonance this package is about.

Run:  python3 demos/02_polaron_resonance.py
"""

import numpy as np

from impostoron import (
    Concentration,
    DopedLiquid,
    alpha_el,
    cm_mix,
    eval_neat,
    find_nu0,
    lineshape,
    load_liquid_file,
    lorentz_lineshape,
)
from impostoron.cli import data_dir

water = load_liquid_file(data_dir() / "water.liq")

print("electron polarizability (real part, no damping)")
for nu in (0.3, 0.7, 1.5):
    print(f"  alpha_el({nu} THz) = {alpha_el(nu).real:.4e} m^3")
print("it is negative and falls off as 1/nu^2, so low frequencies feel it most\n")

print("real permittivity of doped water at 0.7 THz vs concentration")
neat = eval_neat(water, 0.7)
for uM in (0, 10, 20, 30, 40, 50):
    ce = Concentration.from_micromolar(float(uM))
    eps = cm_mix(neat, ce, 0.7)
    print(f"  ce = {uM:3d} uM   eps' = {eps.real:+8.3f}   eps'' = {eps.imag:7.3f}")

doped = DopedLiquid(water, Concentration.from_micromolar(40.0))
res = find_nu0(doped, (0.1, 3.0), 1e-9)
print(f"\nat 40 uM the crossing sits at nu0 = {res.nu0:.4f} THz")
print(f"  loss at the crossing  eps''(nu0) = {res.eps_imag_at_nu0:.5f}")
print(f"  slope of eps'         B = {res.slope_B:.4f} per THz")

# nu0 grows with the square root of concentration; doubling the frequency
# therefore takes four times the electrons
res4 = find_nu0(
    DopedLiquid(water, Concentration.from_micromolar(160.0)), (0.1, 3.0), 1e-9
)
print(f"  at 4x the concentration: nu0 = {res4.nu0:.4f} THz "
      f"(ratio {res4.nu0 / res.nu0:.4f}, sqrt law predicts 2)")

print("\nexact energy-loss line shape vs its Lorentz approximation")
fwhm = 2.0 * res.eps_imag_at_nu0 / res.slope_B
grid = np.linspace(res.nu0 - fwhm, res.nu0 + fwhm, 9)
exact = lineshape(doped, grid).values
lor = lorentz_lineshape(res, grid).values
print("nu_THz     exact     Lorentz")
for nu, e, l in zip(grid, exact, lor):
    print(f"{nu:6.3f}   {e:8.4f}   {l:8.4f}")
print(f"(half width at half maximum eps''(nu0)/B = {fwhm / 2:.4f} THz)")
