"""Physical constants (CODATA 2018) shared by every formula in the package.

The values are pinned as literals rather than imported from scipy.constants:
scipy tracks the newest CODATA adjustment, which would silently change
reference numbers between environments.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class PhysicalConstants:
    elementary_charge: float = 1.602176634e-19  # C, exact
    electron_mass: float = 9.1093837015e-31  # kg
    vacuum_permittivity: float = 8.8541878128e-12  # F/m
    avogadro: float = 6.02214076e23  # 1/mol, exact


#: Single shared instance; treat as read-only.
CONSTANTS = PhysicalConstants()
