"""Minkowski metric, x-boosts, the field tensor and covariant Maxwell residuals.

Index conventions: x^0 = c t, signature (+, -, -, -). Contravariant tensors
transform as F' = L F L^T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from qlamax.constants import C
from qlamax.fields import EMField

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def minkowski_metric() -> np.ndarray:
    return ETA.copy()


def interval(a, b) -> float:
    """Squared interval (b - a)^T eta (b - a); positive is timelike."""
    d = np.asarray(b, dtype=float) - np.asarray(a, dtype=float)
    return float(d[0] ** 2 - d[1] ** 2 - d[2] ** 2 - d[3] ** 2)


def classify_interval(s2: float, tol: float = 0.0) -> str:
    if s2 > tol:
        return "timelike"
    if s2 < -tol:
        return "spacelike"
    return "lightlike"


@dataclass(frozen=True)
class LorentzBoost:
    matrix: np.ndarray
    beta: float
    gamma: float

    def apply(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)


def boost_x(beta: float) -> LorentzBoost:
    if not abs(beta) < 1:
        raise ValueError(f"|beta| must be < 1, got {beta}")
    g = 1.0 / math.sqrt(1.0 - beta * beta)
    m = np.array([[g, -g * beta, 0, 0],
                  [-g * beta, g, 0, 0],
                  [0, 0, 1, 0],
                  [0, 0, 0, 1]], dtype=float)
    return LorentzBoost(m, beta, g)


def boost_along(axis: int, beta: float) -> LorentzBoost:
    """Boost along spatial axis 1, 2 or 3, built as P boost_x P^T with a coordinate swap P."""
    if axis not in (1, 2, 3):
        raise ValueError("axis must be 1, 2 or 3")
    bx = boost_x(beta)
    perm = np.eye(4)
    if axis != 1:
        perm[[1, axis]] = perm[[axis, 1]]
    return LorentzBoost(perm @ bx.matrix @ perm.T, beta, bx.gamma)


def lorentz_residuals(L: LorentzBoost) -> tuple[float, float]:
    """(max |L^T eta L - eta|, |det L - 1|)."""
    m = L.matrix
    return float(np.max(np.abs(m.T @ ETA @ m - ETA))), abs(float(np.linalg.det(m)) - 1.0)


def build_field_tensor(f: EMField, c: float = C) -> np.ndarray:
    """Contravariant F^{mu nu}; works on a single field or a stack (..., 4, 4)."""
    ex, ey, ez = (f.E[..., k] / c for k in range(3))
    bx, by, bz = (f.B[..., k] for k in range(3))
    z = np.zeros_like(ex)
    rows = [[z, -ex, -ey, -ez],
            [ex, z, -bz, by],
            [ey, bz, z, -bx],
            [ez, -by, bx, z]]
    return np.stack([np.stack(r, axis=-1) for r in rows], axis=-2)


def field_from_tensor(F: np.ndarray, c: float = C) -> EMField:
    F = np.asarray(F, dtype=float)
    E = c * np.stack([F[..., 1, 0], F[..., 2, 0], F[..., 3, 0]], axis=-1)
    B = np.stack([F[..., 3, 2], F[..., 1, 3], F[..., 2, 1]], axis=-1)
    return EMField(E, B)


def lower_field_tensor(F: np.ndarray) -> np.ndarray:
    return ETA @ np.asarray(F, dtype=float) @ ETA


def boost_field_tensor(F: np.ndarray, L: LorentzBoost) -> np.ndarray:
    return L.matrix @ np.asarray(F, dtype=float) @ L.matrix.T


FieldSampler = Callable[[float, float, float, float], EMField]

# the four independent cyclic index triples of the homogeneous equations
CYCLIC_TRIPLES = ((1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2))


def maxwell_residuals(sampler: FieldSampler, point, h: float, c: float = C) -> tuple[np.ndarray, np.ndarray]:
    """Second-order central-difference residuals of the source-free covariant equations.

    ``sampler(t, x, y, z)`` returns the EMField at an event; ``point`` is
    ``(t, x, y, z)`` and ``h`` is the step in each coordinate x^mu (the time
    step is therefore ``h / c``). Returns ``(d_mu F^{mu nu}, cyclic sums)``
    with the cyclic sums ordered as ``CYCLIC_TRIPLES``. The (1, 2, 3) entry
    equals -div B.
    """
    if not h > 0:
        raise ValueError("h must be positive")
    t, x, y, z = (float(v) for v in point)
    base = np.array([c * t, x, y, z])

    def tensor_at(xmu: np.ndarray) -> np.ndarray:
        return build_field_tensor(sampler(xmu[0] / c, xmu[1], xmu[2], xmu[3]), c)

    dF = np.empty((4, 4, 4))  # dF[mu] = d_mu F^{..}
    for mu in range(4):
        step_vec = np.zeros(4)
        step_vec[mu] = h
        dF[mu] = (tensor_at(base + step_vec) - tensor_at(base - step_vec)) / (2 * h)
    inhomog = np.einsum("mmn->n", dF)
    dF_low = np.einsum("ab,mbc,cd->mad", ETA, dF, ETA)
    homog = np.array([dF_low[m, n, r] + dF_low[n, r, m] + dF_low[r, m, n] for m, n, r in CYCLIC_TRIPLES])
    return inhomog, homog
