"""Conversions between (E, B), the RSW vector F+ and the four-qubit site state.

Arrays carry the vector index last, so a single field is shape ``(3,)`` and a
grid of fields is ``(nx, ny, 3)``; qubit states are ``(..., 4)``.

Conversions take ``eps0``/``mu0`` keywords defaulting to SI values. Lattice
code passes ``eps0=mu0=1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from qlamax.constants import EPS0, MU0

MIN_GRID = 4


class ConstraintViolation(ValueError):
    """Raised when a state is not of the form produced by ``encode_state``."""


@dataclass(frozen=True)
class EMField:
    E: np.ndarray
    B: np.ndarray

    def __post_init__(self):
        E = np.asarray(self.E, dtype=float)
        B = np.asarray(self.B, dtype=float)
        if E.shape != B.shape or E.shape[-1:] != (3,):
            raise ValueError(f"E and B must share a (..., 3) shape, got {E.shape} and {B.shape}")
        if not (np.all(np.isfinite(E)) and np.all(np.isfinite(B))):
            raise ValueError("EMField components must be finite")
        object.__setattr__(self, "E", E)
        object.__setattr__(self, "B", B)


@dataclass(frozen=True)
class RswVector:
    fplus: np.ndarray
    fminus: np.ndarray | None = None

    def __post_init__(self):
        fp = np.asarray(self.fplus, dtype=complex)
        if fp.shape[-1:] != (3,):
            raise ValueError(f"fplus must have a trailing axis of length 3, got {fp.shape}")
        object.__setattr__(self, "fplus", fp)
        if self.fminus is not None:
            object.__setattr__(self, "fminus", np.asarray(self.fminus, dtype=complex))


@dataclass(frozen=True)
class FieldGrid:
    """Periodic ``nx`` x ``ny`` lattice of qubit states with spacing ``dx``.

    ``psi[i, j, c]`` is component ``c`` at site ``(x_i, y_j) = (i*dx, j*dx)``.
    """

    psi: np.ndarray
    dx: float = 1.0
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=np.complex128)
        if psi.ndim != 3 or psi.shape[2] != 4:
            raise ValueError(f"psi must have shape (nx, ny, 4), got {psi.shape}")
        if psi.shape[0] < MIN_GRID or psi.shape[1] < MIN_GRID:
            raise ValueError(f"grid must be at least {MIN_GRID}x{MIN_GRID}, got {psi.shape[:2]}")
        if not self.dx > 0:
            raise ValueError("dx must be positive")
        object.__setattr__(self, "psi", psi)

    @property
    def nx(self) -> int:
        return self.psi.shape[0]

    @property
    def ny(self) -> int:
        return self.psi.shape[1]

    def site(self, i: int, j: int) -> np.ndarray:
        return self.psi[i % self.nx, j % self.ny]

    def with_psi(self, psi: np.ndarray) -> "FieldGrid":
        return FieldGrid(psi, self.dx, dict(self.meta))

    @classmethod
    def zeros(cls, nx: int, ny: int, dx: float = 1.0) -> "FieldGrid":
        return cls(np.zeros((nx, ny, 4), dtype=np.complex128), dx)


def pairwise_sum(values: np.ndarray) -> float:
    """Sum in row-major order with a fixed pairwise tree.

    Level by level, adjacent entries are added (a[0]+a[1], a[2]+a[3], ...);
    an odd tail is carried to the next level unchanged. The result depends
    only on the array contents and shape.
    """
    a = np.ascontiguousarray(values).ravel()
    if a.size == 0:
        return 0.0
    while a.size > 1:
        if a.size % 2:
            a = np.concatenate([a[:-1:2] + a[1::2], a[-1:]])
        else:
            a = a[0::2] + a[1::2]
    return a[0].item()


def em_to_rsw(f: EMField, eps0: float = EPS0, mu0: float = MU0) -> RswVector:
    """F+- = (sqrt(eps0) E +- i B / sqrt(mu0)) / sqrt(2)."""
    re = np.sqrt(eps0) * f.E
    im = f.B / np.sqrt(mu0)
    fplus = (re + 1j * im) / np.sqrt(2.0)
    return RswVector(fplus, np.conj(fplus))


def rsw_to_em(r: RswVector, eps0: float = EPS0, mu0: float = MU0) -> EMField:
    fp = r.fplus
    return EMField(np.sqrt(2.0 / eps0) * fp.real, np.sqrt(2.0 * mu0) * fp.imag)


def encode_state(r: RswVector | np.ndarray) -> np.ndarray:
    """Pack F+ into (-Fx + iFy, Fz, Fz, Fx + iFy)."""
    fp = r.fplus if isinstance(r, RswVector) else np.asarray(r, dtype=complex)
    fx, fy, fz = fp[..., 0], fp[..., 1], fp[..., 2]
    return np.stack([-fx + 1j * fy, fz, fz.copy(), fx + 1j * fy], axis=-1)


def decode_state(s: np.ndarray, tol: float = 1e-12) -> RswVector:
    s = np.asarray(s, dtype=complex)
    q0, q1, q2, q3 = (s[..., k] for k in range(4))
    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(s) ** 2, axis=-1)))
    mismatch = np.abs(q1 - q2)
    if np.any(mismatch > tol * scale):
        worst = float(np.max(mismatch / scale))
        raise ConstraintViolation(
            f"q1 and q2 differ by {worst:.3e} (relative), above tol={tol:g}; "
            "the state has left the divergence-free subspace"
        )
    fx = (q3 - q0) / 2
    fy = (q3 + q0) / 2j
    fz = (q1 + q2) / 2
    return RswVector(np.stack([fx, fy, fz], axis=-1))


def grid_from_fields(f: EMField, dx: float, eps0: float = 1.0, mu0: float = 1.0) -> FieldGrid:
    """Encode a ``(nx, ny, 3)`` EMField sample into a FieldGrid (lattice units by default)."""
    return FieldGrid(encode_state(em_to_rsw(f, eps0, mu0)), dx)


def energy_and_norm(g: FieldGrid) -> tuple[float, float]:
    """Return ``(sum |psi|^2, sum |psi|^2 / 2 * dx^2)``."""
    site = np.sum(g.psi.real ** 2 + g.psi.imag ** 2, axis=-1)
    norm_sq = pairwise_sum(site)
    return norm_sq, 0.5 * norm_sq * g.dx ** 2


def _central_diff(f: np.ndarray, axis: int, dx: float) -> np.ndarray:
    return (np.roll(f, -1, axis) - np.roll(f, 1, axis)) / (2 * dx)


def gauss_residual(g: FieldGrid) -> tuple[float, float]:
    """Algebraic (q1 vs q2) and differential (discrete div F+) Gauss-law residuals.

    The differential part uses second-order central differences of the Fx, Fy
    components recovered from q0 and q3, so it does not require q1 == q2.
    """
    psi = g.psi
    site_norm = np.sqrt(np.sum(np.abs(psi) ** 2, axis=-1))
    algebraic = float(np.max(np.abs(psi[..., 1] - psi[..., 2])) / max(1.0, float(site_norm.max())))
    fx = (psi[..., 3] - psi[..., 0]) / 2
    fy = (psi[..., 3] + psi[..., 0]) / 2j
    div = _central_diff(fx, 0, g.dx) + _central_diff(fy, 1, g.dx)
    return algebraic, float(np.max(np.abs(div)))
