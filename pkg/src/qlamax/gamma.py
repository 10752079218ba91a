"""Gamma matrices, the continuum Schroedinger-form generator and its reference solver.

Everything here is in lattice units (eps0 = mu0 = c = 1). The 2D generator is

    d psi / dt = -gamma1 d psi/dx - gamma2 d psi/dy

with the gamma3 (d/dz) term absent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from qlamax.fields import EMField, FieldGrid, energy_and_norm, grid_from_fields

RHS_MIN_GRID = 8


class GammaSet(NamedTuple):
    gamma0: np.ndarray
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray


def build_gammas() -> GammaSet:
    i = 1j
    g0 = np.eye(4, dtype=complex)
    g1 = np.array([[0, 0, 1, 0],
                   [0, 0, 0, 1],
                   [1, 0, 0, 0],
                   [0, 1, 0, 0]], dtype=complex)
    g2 = np.array([[0, 0, -i, 0],
                   [0, 0, 0, -i],
                   [i, 0, 0, 0],
                   [0, i, 0, 0]], dtype=complex)
    g3 = np.diag([1, 1, -1, -1]).astype(complex)
    return GammaSet(g0, g1, g2, g3)


def gamma_identity_residuals(g: GammaSet) -> dict[str, float]:
    """Max absolute entry deviation for each algebraic identity, keyed by a label."""
    eye = np.eye(4)
    out: dict[str, float] = {}
    for mu, m in enumerate(g):
        out[f"(γ{mu})² = I"] = float(np.max(np.abs(m @ m - eye)))
        out[f"γ{mu} Hermitian"] = float(np.max(np.abs(m - m.conj().T)))
        out[f"γ{mu} unitary"] = float(np.max(np.abs(m @ m.conj().T - eye)))
    g1, g2, g3 = g.gamma1, g.gamma2, g.gamma3
    for (a, b, c, (la, lb, lc)) in ((g1, g2, g3, "123"), (g2, g3, g1, "231"), (g3, g1, g2, "312")):
        out[f"γ{la} γ{lb} = i γ{lc}"] = float(np.max(np.abs(a @ b - 1j * c)))
        out[f"γ{la} γ{lb} = -γ{lb} γ{la}"] = float(np.max(np.abs(a @ b + b @ a)))
    return out


def check_gamma_algebra(g: GammaSet) -> float:
    return max(gamma_identity_residuals(g).values())


def _d4(f: np.ndarray, axis: int, dx: float) -> np.ndarray:
    """Fourth-order central difference with periodic wrap."""
    n = f.shape[axis]
    ext = np.concatenate([np.take(f, range(n - 2, n), axis), f, np.take(f, range(2), axis)], axis)

    def sl(a, b):
        idx = [slice(None)] * f.ndim
        idx[axis] = slice(a, n + b)
        return ext[tuple(idx)]

    return (8.0 * (sl(3, 3) - sl(1, 1)) - (sl(4, 4) - sl(0, 0))) / (12.0 * dx)


def continuum_rhs_array(psi: np.ndarray, dx: float, gammas: GammaSet | None = None) -> np.ndarray:
    g = gammas or _GAMMAS
    # gamma matrices are constant, so they can act before differentiation
    return -(_d4(psi @ g.gamma1.T, 0, dx) + _d4(psi @ g.gamma2.T, 1, dx))


def continuum_rhs(g: FieldGrid) -> FieldGrid:
    if g.nx < RHS_MIN_GRID or g.ny < RHS_MIN_GRID:
        raise ValueError(f"continuum_rhs needs at least {RHS_MIN_GRID}x{RHS_MIN_GRID} sites, got {g.nx}x{g.ny}")
    return g.with_psi(continuum_rhs_array(g.psi, g.dx))


class InstabilityError(RuntimeError):
    pass


def reference_evolve(g: FieldGrid, t_final: float, dt: float) -> FieldGrid:
    """Classic RK4 in time with the fourth-order stencil of ``continuum_rhs``.

    The number of steps is ``ceil(t_final / dt)`` and the step is shrunk so the
    last one lands exactly on ``t_final``.
    """
    if t_final < 0:
        raise ValueError("t_final must be non-negative")
    if not 0 < dt <= 0.5 * g.dx:
        raise ValueError(f"dt={dt} outside (0, 0.5*dx={0.5 * g.dx}]")
    if g.nx < RHS_MIN_GRID or g.ny < RHS_MIN_GRID:
        raise ValueError(f"reference_evolve needs at least {RHS_MIN_GRID}x{RHS_MIN_GRID} sites")
    if t_final == 0:
        return g.with_psi(g.psi.copy())
    nsteps = math.ceil(t_final / dt - 1e-12)
    h = t_final / nsteps
    psi = g.psi.copy()
    dx = g.dx
    norm0, _ = energy_and_norm(g)
    for n in range(nsteps):
        k1 = continuum_rhs_array(psi, dx)
        k2 = continuum_rhs_array(psi + 0.5 * h * k1, dx)
        k3 = continuum_rhs_array(psi + 0.5 * h * k2, dx)
        k4 = continuum_rhs_array(psi + h * k3, dx)
        psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if norm0 > 0 and (n % 64 == 63 or n == nsteps - 1):
            norm = float(np.sum(np.abs(psi) ** 2))
            if not math.isfinite(norm) or norm > 1.1 * norm0:
                raise InstabilityError(
                    f"reference solver unstable at step {n + 1}/{nsteps}: norm^2 grew "
                    f"from {norm0:.6g} to {norm:.6g} (dt={h:.3g}, dx={dx:.3g})"
                )
    return g.with_psi(psi)


@dataclass(frozen=True)
class PlaneWaveSpec:
    """Vacuum plane wave ``Re(amplitude * exp(i(k.r - |k| t)))``.

    ``polarization`` is ``"Ez"`` (E along z, B in plane) or ``"Bz"`` (B along
    z, E in plane). ``k`` is in radians per lattice length unit.
    """

    k: tuple[float, float]
    amplitude: complex = 1.0
    polarization: str = "Ez"

    def __post_init__(self):
        if self.polarization not in ("Ez", "Bz"):
            raise ValueError(f"polarization must be 'Ez' or 'Bz', got {self.polarization!r}")

    @classmethod
    def from_modes(cls, mx: int, my: int, length_x: float, length_y: float | None = None,
                   amplitude: complex = 1.0, polarization: str = "Ez") -> "PlaneWaveSpec":
        length_y = length_x if length_y is None else length_y
        return cls((2 * math.pi * mx / length_x, 2 * math.pi * my / length_y), amplitude, polarization)

    @property
    def omega(self) -> float:
        return math.hypot(*self.k)

    @property
    def period(self) -> float:
        return 2 * math.pi / self.omega

    def time_derivative(self) -> "PlaneWaveSpec":
        """A PlaneWaveSpec whose state equals d/dt of this one (the field is linear in amplitude)."""
        return replace(self, amplitude=-1j * self.omega * self.amplitude)


def _check_commensurate(spec: PlaneWaveSpec, nx: int, ny: int, dx: float, tol: float = 1e-9):
    for kk, n, axis in ((spec.k[0], nx, "x"), (spec.k[1], ny, "y")):
        m = kk * n * dx / (2 * math.pi)
        if abs(m - round(m)) > tol:
            raise ValueError(
                f"k{axis}={kk} is not commensurate with the periodic box "
                f"(k * L / 2pi = {m:.6g}, L = {n * dx:g})"
            )


def grid_coordinates(nx: int, ny: int, dx: float) -> tuple[np.ndarray, np.ndarray]:
    return np.meshgrid(np.arange(nx) * dx, np.arange(ny) * dx, indexing="ij")


def plane_wave_fields(spec: PlaneWaveSpec, t: float, x: np.ndarray, y: np.ndarray) -> EMField:
    kx, ky = spec.k
    k = math.hypot(kx, ky)
    wave = np.real(spec.amplitude * np.exp(1j * (kx * x + ky * y - k * t)))
    E = np.zeros(np.shape(wave) + (3,))
    B = np.zeros_like(E)
    if k == 0:
        # static uniform field; no in-plane partner is defined
        (E if spec.polarization == "Ez" else B)[..., 2] = wave
        return EMField(E, B)
    ux, uy = kx / k, ky / k
    if spec.polarization == "Ez":
        E[..., 2] = wave
        B[..., 0] = uy * wave
        B[..., 1] = -ux * wave
    else:
        B[..., 2] = wave
        E[..., 0] = -uy * wave
        E[..., 1] = ux * wave
    return EMField(E, B)


def plane_wave_state(spec: PlaneWaveSpec, t: float, nx: int, ny: int, dx: float) -> FieldGrid:
    _check_commensurate(spec, nx, ny, dx)
    x, y = grid_coordinates(nx, ny, dx)
    return grid_from_fields(plane_wave_fields(spec, t, x, y), dx)


def gaussian_pulse_state(nx: int, ny: int, dx: float, center: tuple[float, float],
                         width: float, k: tuple[float, float], amplitude: complex = 1.0) -> FieldGrid:
    """Gaussian-modulated Ez pulse with an exactly solenoidal in-plane B.

    Ez = Re(a g e^{i k.r}) and B = curl(A z) with A = Re(a g e^{i k.r} / (i |k|)),
    so B reduces to the plane-wave partner of Ez where the envelope is flat and
    the pulse travels along +k. ``k = (0, 0)`` gives a pulse with B = 0.
    Displacements from ``center`` use the minimum periodic image.
    """
    if width <= 0:
        raise ValueError("width must be positive")
    x, y = grid_coordinates(nx, ny, dx)
    lx, ly = nx * dx, ny * dx
    rx = (x - center[0] + lx / 2) % lx - lx / 2
    ry = (y - center[1] + ly / 2) % ly - ly / 2
    env = np.exp(-(rx ** 2 + ry ** 2) / (2 * width ** 2))
    kx, ky = k
    kk = math.hypot(kx, ky)
    carrier = amplitude * env * np.exp(1j * (kx * x + ky * y))
    E = np.zeros((nx, ny, 3))
    B = np.zeros_like(E)
    E[..., 2] = carrier.real
    if kk > 0:
        # grad of (g e^{ik.r}) = (-r/w^2 + i k) g e^{ik.r}
        dax = (-rx / width ** 2 + 1j * kx) * carrier / (1j * kk)
        day = (-ry / width ** 2 + 1j * ky) * carrier / (1j * kk)
        B[..., 0] = day.real
        B[..., 1] = -dax.real
    return grid_from_fields(EMField(E, B), dx)


_GAMMAS = build_gammas()
