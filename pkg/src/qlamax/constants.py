"""SI constants (CODATA, via scipy.constants) used across the package."""

from scipy import constants as _sc

EPS0 = _sc.epsilon_0  # F/m
MU0 = _sc.mu_0  # H/m
C = _sc.c  # m/s
E_CHARGE = _sc.e  # C
M_E = _sc.m_e  # kg
H_PLANCK = _sc.h  # J s
K_B = _sc.k  # J/K
AMU = _sc.atomic_mass  # kg
