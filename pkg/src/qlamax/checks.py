"""Identity suites bundled for the ``checks`` and ``covariant-check`` commands.

Each suite returns a list of ``(label, passed, detail)`` tuples.
"""

from __future__ import annotations

import math

import numpy as np

from qlamax import gates, plasma, relativity
from qlamax.fields import EMField
from qlamax.gamma import build_gammas, gamma_identity_residuals

CheckRow = tuple[str, bool, str]

BOOST_BETAS = (0.1, 0.6, 0.99)


def gamma_suite() -> list[CheckRow]:
    return [(label, r == 0.0, f"residual={r:.3g}") for label, r in gamma_identity_residuals(build_gammas()).items()]


def lorentz_suite(tol: float = 1e-12) -> list[CheckRow]:
    rows = []
    a = np.array([0.3, -1.2, 0.7, 2.0])
    b = np.array([2.5, 0.4, -0.9, 1.1])
    for beta in BOOST_BETAS:
        L = relativity.boost_x(beta)
        metric, det = relativity.lorentz_residuals(L)
        rows.append((f"boost_x({beta}) L^T eta L = eta", metric <= tol, f"residual={metric:.3g}"))
        rows.append((f"boost_x({beta}) det L = 1", det <= tol, f"residual={det:.3g}"))
        s2 = relativity.interval(a, b)
        s2b = relativity.interval(L.apply(a), L.apply(b))
        err = abs(s2b - s2)
        rows.append((f"boost_x({beta}) interval invariant", err <= tol * max(1.0, abs(s2)), f"|ds2|={err:.3g}"))
    return rows


def maxwell_slope_check(h_values=(0.2, 0.1, 0.05)) -> tuple[float, list[float]]:
    """Observed order of the covariant residuals for a vacuum plane wave (c = 1)."""
    # oblique, so the time and space truncation errors do not cancel
    kx, ky = 1.3, 0.7
    w = math.hypot(kx, ky)

    def sampler(t, x, y, z):
        c = math.cos(kx * x + ky * y - w * t)
        E = np.array([0.0, 0.0, c])
        B = np.array([ky / w * c, -kx / w * c, 0.0])
        return EMField(E, B)

    point = (0.4, 0.7, 0.0, 0.0)
    norms = []
    for h in h_values:
        inh, hom = relativity.maxwell_residuals(sampler, point, h, c=1.0)
        norms.append(max(np.max(np.abs(inh)), np.max(np.abs(hom))))
    slope = float(np.polyfit(np.log(h_values), np.log(norms), 1)[0])
    return slope, norms


def covariant_suite() -> list[CheckRow]:
    rows = lorentz_suite()
    slope, norms = maxwell_slope_check()
    rows.append(("plane-wave covariant residual slope ~ 2", 1.8 <= slope <= 2.2,
                 f"slope={slope:.3f} residuals={', '.join(f'{n:.2e}' for n in norms)}"))
    F = relativity.build_field_tensor(EMField([1.0, 2.0, 3.0], [0.5, -0.25, 0.125]), c=1.0)
    Fb = relativity.boost_field_tensor(F, relativity.boost_x(0.6))
    rows.append(("boosted field tensor antisymmetric", bool(np.max(np.abs(Fb + Fb.T)) <= 1e-15), ""))
    return rows


def permittivity_suite(tol: float = 1e-14) -> list[CheckRow]:
    rng = np.random.default_rng(1234)
    worst = 0.0
    for _ in range(20):
        st = plasma.PlasmaState(
            B0=float(rng.uniform(0.1, 5.0)),
            electron_density=float(10 ** rng.uniform(16, 20)),
            ions=(plasma.PlasmaSpecies.ion(1, 2.014, float(10 ** rng.uniform(16, 20))),),
        )
        omega = float(rng.uniform(1.5, 4.0)) * st.omega_ce
        worst = max(worst, plasma.permittivity_tensor(omega, st).hermiticity_residual())
    rows = [("permittivity tensor Hermitian (20 random states)", worst <= tol, f"residual={worst:.3g}")]
    chi = plasma.susceptibilities_from_frequencies(2.0, 1.0, 1.0)
    want = (-1 / 3, -1 / 6, -1 / 4)
    err = max(abs(a - b) for a, b in zip(chi, want))
    rows.append(("electrons only, wpe = wce, w = 2 wce", err <= 1e-12, f"chi={tuple(round(c, 15) for c in chi)}"))
    return rows


def gates_suite() -> list[CheckRow]:
    rows = []
    cnot_rows = {"00": "00", "01": "01", "10": "11", "11": "10"}
    for src, dst in cnot_rows.items():
        ok = np.array_equal(gates.apply_cnot(gates.basis(src)), gates.basis(dst))
        rows.append((f"CNOT|{src}> = |{dst}>", ok, ""))
    s = gates.SQRT_HALF
    for bit, want in (("0", np.array([s, s])), ("1", np.array([s, -s]))):
        ok = np.array_equal(gates.apply_hadamard(gates.basis(bit)), want.astype(complex))
        rows.append((f"H|{bit}>", ok, ""))
    decode_map = {"Psi+": "00", "Psi-": "10", "Phi+": "01", "Phi-": "11"}
    for name, v in gates.bell_states().items():
        out = gates.bell_decode(v)
        ok = np.allclose(out, gates.basis(decode_map[name]), rtol=0, atol=1e-15)
        rows.append((f"bell_decode({name}) = |{decode_map[name]}>", ok, ""))
    rows.append(("CNOT, H unitary and self-inverse",
                 gates.is_unitary(gates.CNOT) and gates.is_unitary(gates.HADAMARD)
                 and np.allclose(gates.HADAMARD @ gates.HADAMARD, np.eye(2), atol=1e-15)
                 and np.array_equal(gates.CNOT @ gates.CNOT, np.eye(4)), ""))
    return rows


def all_suites() -> dict[str, list[CheckRow]]:
    return {
        "gamma algebra": gamma_suite(),
        "lorentz": lorentz_suite(),
        "permittivity": permittivity_suite(),
        "gates": gates_suite(),
    }
