import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qlamax.constants import C, EPS0, MU0
from qlamax.fields import (
    ConstraintViolation,
    EMField,
    FieldGrid,
    RswVector,
    decode_state,
    em_to_rsw,
    encode_state,
    energy_and_norm,
    gauss_residual,
    grid_from_fields,
    pairwise_sum,
    rsw_to_em,
)
from qlamax.gamma import PlaneWaveSpec, plane_wave_state

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)
vec3 = arrays(np.float64, 3, elements=finite)
cvec3 = st.tuples(vec3, vec3).map(lambda t: t[0] + 1j * t[1])


def test_em_to_rsw_unit_ex():
    r = em_to_rsw(EMField([1.0, 0, 0], [0, 0, 0]))
    np.testing.assert_allclose(r.fplus, [np.sqrt(EPS0 / 2), 0, 0], rtol=1e-15)


def test_em_to_rsw_zero():
    r = em_to_rsw(EMField(np.zeros(3), np.zeros(3)))
    assert np.all(r.fplus == 0)


def test_em_to_rsw_vacuum_wave_pair():
    e0 = 3.0
    r = em_to_rsw(EMField([0, 0, e0], [0, e0 / C, 0]))
    a = e0 * np.sqrt(EPS0 / 2)
    np.testing.assert_allclose(r.fplus, [0, 1j * a, a], rtol=1e-8)  # CODATA c vs 1/sqrt(eps0 mu0)


def test_em_to_rsw_rejects_nonfinite():
    with pytest.raises(ValueError):
        EMField([np.nan, 0, 0], [0, 0, 0])
    with pytest.raises(ValueError):
        EMField([0, 0, 0], [0, np.inf, 0])


def test_rsw_to_em_examples():
    f = rsw_to_em(RswVector([np.sqrt(EPS0 / 2), 0, 0]))
    np.testing.assert_allclose(f.E, [1, 0, 0], rtol=1e-15)
    assert np.all(f.B == 0)
    z = rsw_to_em(RswVector(np.zeros(3)))
    assert np.all(z.E == 0) and np.all(z.B == 0)


@given(vec3, vec3)
def test_rsw_round_trip(E, B):
    f = rsw_to_em(em_to_rsw(EMField(E, B)))
    scale = max(1.0, np.abs(E).max(), np.abs(B).max())
    np.testing.assert_allclose(f.E, E, rtol=0, atol=1e-14 * scale)
    np.testing.assert_allclose(f.B, B, rtol=0, atol=1e-14 * scale)


@given(vec3, vec3)
def test_fminus_is_conjugate_for_real_fields(E, B):
    r = em_to_rsw(EMField(E, B))
    assert np.array_equal(r.fminus, np.conj(r.fplus))


def test_encode_examples():
    np.testing.assert_array_equal(encode_state(RswVector([1, 2, 3])), [-1 + 2j, 3, 3, 1 + 2j])
    np.testing.assert_array_equal(encode_state(RswVector([0, 0, 0])), [0, 0, 0, 0])
    np.testing.assert_array_equal(encode_state(RswVector([1, 0, 0])), [-1, 0, 0, 1])


def test_decode_examples():
    np.testing.assert_array_equal(decode_state(np.array([-1 + 2j, 3, 3, 1 + 2j])).fplus, [1, 2, 3])
    np.testing.assert_array_equal(decode_state(np.zeros(4)).fplus, [0, 0, 0])


def test_decode_rejects_q1_q2_mismatch():
    tol = 1e-9
    with pytest.raises(ConstraintViolation):
        decode_state(np.array([0, 1, 1 + 2 * tol, 0]), tol=tol)


@given(cvec3)
def test_encode_invariants(F):
    psi = encode_state(F)
    assert psi[1] == psi[2]
    np.testing.assert_allclose(np.sum(np.abs(psi) ** 2), 2 * np.sum(np.abs(F) ** 2), rtol=1e-13)
    back = decode_state(psi).fplus
    np.testing.assert_allclose(back, F, rtol=1e-15, atol=1e-15 * max(1.0, np.abs(F).max()))


@given(cvec3, cvec3, st.complex_numbers(max_magnitude=10), st.complex_numbers(max_magnitude=10))
def test_encode_linear(F, G, a, b):
    lhs = encode_state(a * F + b * G)
    rhs = a * encode_state(F) + b * encode_state(G)
    scale = max(1.0, np.abs(lhs).max())
    np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-12 * scale)


def test_grid_validation():
    with pytest.raises(ValueError):
        FieldGrid(np.zeros((3, 8, 4)))
    with pytest.raises(ValueError):
        FieldGrid(np.zeros((8, 8, 3)))
    with pytest.raises(ValueError):
        FieldGrid(np.zeros((8, 8, 4)), dx=0.0)


def test_grid_periodic_site():
    psi = np.random.default_rng(0).normal(size=(5, 6, 4)) + 0j
    g = FieldGrid(psi)
    np.testing.assert_array_equal(g.site(7, -1), psi[2, 5])


def test_pairwise_sum_matches_fsum():
    import math

    rng = np.random.default_rng(1)
    for n in (1, 2, 7, 1000, 4097):
        x = rng.normal(size=n)
        assert pairwise_sum(x) == pytest.approx(math.fsum(x), rel=1e-13, abs=1e-13)
    assert pairwise_sum(np.array([])) == 0.0


def test_pairwise_sum_is_order_defined():
    x = np.array([1e16, 1.0, -1e16, 1.0])
    # (1e16 + 1) + (-1e16 + 1) rounds to 0 in the fixed tree
    assert pairwise_sum(x) == (1e16 + 1.0) + (-1e16 + 1.0)


def test_energy_and_norm_examples():
    assert energy_and_norm(FieldGrid.zeros(4, 4)) == (0.0, 0.0)
    psi = np.zeros((4, 4, 4), complex)
    psi[1, 2] = [-1, 0, 0, 1]
    assert energy_and_norm(FieldGrid(psi, 1.0)) == (2.0, 1.0)


def test_energy_matches_field_energy_density():
    rng = np.random.default_rng(7)
    E = rng.normal(size=(8, 6, 3))
    B = rng.normal(size=(8, 6, 3)) * 1e-8
    dx = 0.01
    g = FieldGrid(encode_state(em_to_rsw(EMField(E, B))), dx)
    u = 0.5 * (EPS0 * np.sum(E ** 2, -1) + np.sum(B ** 2, -1) / MU0)
    _, energy = energy_and_norm(g)
    assert energy == pytest.approx(np.sum(u) * dx ** 2, rel=1e-13)


def test_gauss_residual_trivial_cases():
    assert gauss_residual(FieldGrid.zeros(6, 6)) == (0.0, 0.0)
    psi = np.broadcast_to(np.array([1 + 1j, 2, 2, -3j]), (6, 5, 4)).copy()
    assert gauss_residual(FieldGrid(psi)) == (0.0, 0.0)


def test_gauss_residual_algebraic_reports_mismatch():
    psi = np.zeros((6, 6, 4), complex)
    psi[2, 3] = [0, 1, 1.5, 0]
    alg, _ = gauss_residual(FieldGrid(psi))
    assert alg == pytest.approx(0.5 / max(1, np.sqrt(1 + 1.5 ** 2)))


def test_gauss_residual_differential_second_order():
    # modes (2, 1): the discrete divergence of this solenoidal wave is O(dx^2), not identically 0
    L = 2 * np.pi
    spec = PlaneWaveSpec.from_modes(2, 1, L)
    res = []
    ns = (32, 64, 128)
    for n in ns:
        res.append(gauss_residual(plane_wave_state(spec, 0.3, n, n, L / n))[1])
    slope = np.polyfit(np.log([L / n for n in ns]), np.log(res), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.05)


def test_grid_from_fields_in_lattice_units():
    E = np.zeros((4, 4, 3))
    E[..., 0] = 1.0
    g = grid_from_fields(EMField(E, np.zeros_like(E)), dx=1.0)
    np.testing.assert_allclose(g.psi[0, 0], np.array([-1, 0, 0, 1]) / np.sqrt(2))
