"""Cold magnetized plasma susceptibilities, the Hermitian permittivity tensor and plasma length scales.

The ambient field is B0 along z. All quantities are SI.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from qlamax.constants import AMU, E_CHARGE, EPS0, H_PLANCK, K_B, M_E, MU0

RESONANCE_GUARD = 1e-9


class ResonanceError(ValueError):
    """omega sits inside the guard band around a cyclotron resonance."""


@dataclass(frozen=True)
class PlasmaSpecies:
    charge_number: float
    mass: float
    density: float

    def __post_init__(self):
        if not self.mass > 0:
            raise ValueError("species mass must be positive")
        if self.density < 0:
            raise ValueError("species density must be non-negative")

    @classmethod
    def ion(cls, Z: float, mass_amu: float, density: float) -> "PlasmaSpecies":
        return cls(Z, mass_amu * AMU, density)

    def plasma_frequency(self) -> float:
        return math.sqrt(self.charge_number ** 2 * E_CHARGE ** 2 * self.density / (EPS0 * self.mass))

    def cyclotron_frequency(self, B0: float) -> float:
        return abs(self.charge_number) * E_CHARGE * B0 / self.mass


@dataclass(frozen=True)
class PlasmaState:
    B0: float
    electron_density: float
    ions: tuple[PlasmaSpecies, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.B0 < 0:
            raise ValueError("B0 must be non-negative")
        if self.electron_density < 0:
            raise ValueError("electron density must be non-negative")
        object.__setattr__(self, "ions", tuple(self.ions))

    @property
    def electron(self) -> PlasmaSpecies:
        return PlasmaSpecies(-1.0, M_E, self.electron_density)

    @property
    def omega_pe(self) -> float:
        return self.electron.plasma_frequency()

    @property
    def omega_ce(self) -> float:
        return self.electron.cyclotron_frequency(self.B0)

    def ion_frequencies(self) -> list[tuple[float, float]]:
        """(omega_pi, omega_ci) per ion species."""
        return [(s.plasma_frequency(), s.cyclotron_frequency(self.B0)) for s in self.ions]


def susceptibilities_from_frequencies(omega: float, omega_pe: float, omega_ce: float,
                                      ions: Sequence[tuple[float, float]] = (),
                                      guard: float | None = RESONANCE_GUARD) -> tuple[float, float, float]:
    """chi11, chi12, chi33 from the characteristic frequencies.

    ``guard=None`` skips the positivity and resonance checks (used for formal
    evaluation, e.g. at negative omega).
    """
    if guard is not None:
        if not omega > 0:
            raise ValueError("omega must be positive")
        named = [("omega_ce", omega_ce)] + [(f"omega_ci[{k}]", wc) for k, (_, wc) in enumerate(ions)]
        for name, wc in named:
            if wc > 0 and abs(omega - wc) <= guard * wc:
                raise ResonanceError(f"omega={omega:.6e} rad/s is within {guard:g} of resonance {name}={wc:.6e} rad/s")
    w2 = omega * omega
    e_res = omega_pe ** 2 / (w2 - omega_ce ** 2)
    chi11 = -e_res
    chi12 = -(omega_ce / omega) * e_res
    chi33 = -omega_pe ** 2 / w2
    for wp, wc in ions:
        i_res = wp ** 2 / (w2 - wc ** 2)
        chi11 -= i_res
        chi12 += (wc / omega) * i_res
        chi33 -= wp ** 2 / w2
    return chi11, chi12, chi33


def susceptibilities(omega: float, st: PlasmaState, guard: float | None = RESONANCE_GUARD) -> tuple[float, float, float]:
    return susceptibilities_from_frequencies(omega, st.omega_pe, st.omega_ce, st.ion_frequencies(), guard)


@dataclass(frozen=True)
class PermittivityTensor:
    matrix: np.ndarray
    relative: bool = False

    def hermiticity_residual(self) -> float:
        m = self.matrix
        scale = max(float(np.max(np.abs(m))), np.finfo(float).tiny)
        return float(np.max(np.abs(m - m.conj().T))) / scale


def permittivity_tensor(omega: float, st: PlasmaState, relative: bool = False) -> PermittivityTensor:
    chi11, chi12, chi33 = susceptibilities(omega, st)
    m = np.array([[1 + chi11, -1j * chi12, 0],
                  [1j * chi12, 1 + chi11, 0],
                  [0, 0, 1 + chi33]], dtype=complex)
    return PermittivityTensor(m if relative else EPS0 * m, relative)


def dielectric_speed(eps_scalar: float) -> float:
    """Light speed 1 / sqrt(eps mu0) in a uniform dielectric of permittivity ``eps_scalar`` (F/m)."""
    if not eps_scalar > 0:
        raise ValueError("permittivity must be positive")
    return 1.0 / math.sqrt(eps_scalar * MU0)


def interparticle_distance(n: float) -> float:
    if not n > 0:
        raise ValueError("density must be positive")
    return (6.0 / (math.pi * n)) ** (1.0 / 3.0)


def de_broglie_wavelength(T: float) -> float:
    if not T > 0:
        raise ValueError("temperature must be positive")
    return H_PLANCK / math.sqrt(2.0 * K_B * T * M_E)


def debye_length(n: float, T: float) -> float:
    if not (n > 0 and T > 0):
        raise ValueError("density and temperature must be positive")
    return math.sqrt(EPS0 * K_B * T / (E_CHARGE ** 2 * n))


def plasma_scales(n: float, T: float) -> tuple[float, float, float]:
    """(interparticle distance, electron de Broglie wavelength, Debye length) in meters."""
    return interparticle_distance(n), de_broglie_wavelength(T), debye_length(n, T)
