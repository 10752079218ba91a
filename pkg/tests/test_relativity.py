import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qlamax.fields import EMField
from qlamax.relativity import (
    CYCLIC_TRIPLES,
    ETA,
    boost_along,
    boost_x,
    build_field_tensor,
    classify_interval,
    field_from_tensor,
    interval,
    lorentz_residuals,
    lower_field_tensor,
    maxwell_residuals,
    minkowski_metric,
    boost_field_tensor,
)

betas = st.floats(-0.999, 0.999)
events = st.lists(st.floats(-1e3, 1e3), min_size=4, max_size=4)


def test_metric():
    np.testing.assert_array_equal(minkowski_metric(), np.diag([1, -1, -1, -1]))
    m = minkowski_metric()
    m[0, 0] = 5
    assert ETA[0, 0] == 1


def test_interval_examples():
    assert interval([0, 0, 0, 0], [2, 1, 0, 0]) == 3.0
    assert interval([0, 0, 0, 0], [1, 1, 0, 0]) == 0.0
    assert classify_interval(3.0) == "timelike"
    assert classify_interval(-1.0) == "spacelike"
    assert classify_interval(0.0) == "lightlike"


def test_interval_invariant_under_boost_example():
    L = boost_x(0.6)
    a, b = np.zeros(4), np.array([2.0, 1.0, 0, 0])
    assert interval(L.apply(a), L.apply(b)) == pytest.approx(3.0, abs=1e-12)


def test_boost_x_entries():
    L = boost_x(0.6)
    assert L.gamma == pytest.approx(1.25, rel=1e-15)
    assert L.matrix[0, 1] == pytest.approx(-0.75, rel=1e-15)
    np.testing.assert_array_equal(boost_x(0.0).matrix, np.eye(4))


@pytest.mark.parametrize("beta", [1.0, -1.0, 1.5, float("nan")])
def test_boost_rejects_superluminal(beta):
    with pytest.raises(ValueError):
        boost_x(beta)


@pytest.mark.parametrize("beta", [0.1, 0.6, 0.99])
@pytest.mark.parametrize("axis", [1, 2, 3])
def test_boosts_preserve_metric(beta, axis):
    metric, det = lorentz_residuals(boost_along(axis, beta))
    assert metric <= 1e-12 and det <= 1e-12


@settings(max_examples=50)
@given(betas, events, events)
def test_interval_invariance_property(beta, a, b):
    L = boost_x(beta)
    s = interval(a, b)
    scale = max(1.0, float(np.sum(np.square(np.subtract(b, a))))) * L.gamma ** 2
    assert interval(L.apply(a), L.apply(b)) == pytest.approx(s, abs=1e-13 * scale)


@settings(max_examples=50)
@given(betas, betas)
def test_velocity_addition(b1, b2):
    L = boost_x(b1).matrix @ boost_x(b2).matrix
    combined = (b1 + b2) / (1 + b1 * b2)
    np.testing.assert_allclose(L, boost_x(combined).matrix, rtol=1e-9, atol=1e-9 * L.max())


def test_inverse_boost():
    np.testing.assert_allclose(boost_x(0.6).matrix @ boost_x(-0.6).matrix, np.eye(4), atol=1e-15)


def test_boost_along_y_moves_y():
    L = boost_along(2, 0.6)
    assert L.matrix[0, 2] == pytest.approx(-0.75) and L.matrix[0, 1] == 0


def test_field_tensor_entries():
    f = EMField([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
    F = build_field_tensor(f, c=1.0)
    np.testing.assert_array_equal(F[0], [0, -1, -2, -3])
    assert F[1, 2] == -6 and F[1, 3] == 5 and F[2, 3] == -4
    np.testing.assert_array_equal(F, -F.T)
    back = field_from_tensor(F, c=1.0)
    np.testing.assert_array_equal(back.E, f.E)
    np.testing.assert_array_equal(back.B, f.B)


def test_field_tensor_physical_c():
    F = build_field_tensor(EMField([3.0e8, 0, 0], [0, 0, 0]), c=3.0e8)
    assert F[1, 0] == 1.0


def test_lowering():
    F = build_field_tensor(EMField([1.0, 2.0, 3.0], [4.0, 5.0, 6.0]), c=1.0)
    Fl = lower_field_tensor(F)
    assert Fl[0, 1] == -F[0, 1]
    assert Fl[1, 2] == F[1, 2]
    np.testing.assert_array_equal(lower_field_tensor(Fl), F)


def test_boost_keeps_parallel_e():
    F = build_field_tensor(EMField([2.0, 0, 0], [0, 0, 0]), c=1.0)
    Fp = field_from_tensor(boost_field_tensor(F, boost_x(0.6)), c=1.0)
    np.testing.assert_allclose(Fp.E, [2.0, 0, 0], atol=1e-15)
    np.testing.assert_allclose(Fp.B, 0, atol=1e-15)


def test_boost_transverse_e_generates_b():
    c = 1.0
    L = boost_x(0.6)
    Fp = field_from_tensor(boost_field_tensor(build_field_tensor(EMField([0, 1.0, 0], [0, 0, 0]), c), L), c)
    assert Fp.E[1] == pytest.approx(L.gamma)
    assert abs(Fp.B[2]) == pytest.approx(L.gamma * L.beta / c)


@settings(max_examples=30)
@given(betas, st.lists(st.floats(-10, 10), min_size=6, max_size=6))
def test_field_invariants_preserved(beta, v):
    f = EMField(v[:3], v[3:])
    F = build_field_tensor(f, c=1.0)
    Fp = boost_field_tensor(F, boost_x(beta))
    g = field_from_tensor(Fp, c=1.0)
    scale = boost_x(beta).gamma ** 2 * (1 + np.sum(np.square(v)))
    assert np.dot(g.E, g.B) == pytest.approx(np.dot(f.E, f.B), abs=1e-12 * scale)
    inv = np.dot(f.B, f.B) - np.dot(f.E, f.E)
    assert np.dot(g.B, g.B) - np.dot(g.E, g.E) == pytest.approx(inv, abs=1e-12 * scale)


def test_maxwell_residuals_static_uniform_field():
    inh, hom = maxwell_residuals(lambda t, x, y, z: EMField([1.0, 2, 3], [0.5, 0, -1]), (0, 0, 0, 0), 0.1, c=1.0)
    assert np.all(inh == 0) and np.all(hom == 0)


def test_maxwell_residuals_rejects_bad_step():
    with pytest.raises(ValueError):
        maxwell_residuals(lambda t, x, y, z: EMField(np.zeros(3), np.zeros(3)), (0, 0, 0, 0), 0.0)


def test_first_cyclic_sum_is_minus_div_b():
    assert CYCLIC_TRIPLES[0] == (1, 2, 3)

    # B = (x, 0, 0): div B = 1, linear so central differences are exact
    _, hom = maxwell_residuals(lambda t, x, y, z: EMField(np.zeros(3), [x, 0, 0]), (0, 0.3, 0, 0), 0.1, c=1.0)
    assert hom[0] == pytest.approx(-1.0, abs=1e-12)


def test_gauss_violation_shows_in_divergence():
    # E = (x, 0, 0) has div E = 1, so d_mu F^{mu 0} = 1/c
    inh, _ = maxwell_residuals(lambda t, x, y, z: EMField([x, 0, 0], np.zeros(3)), (0, 0.1, 0, 0), 0.1, c=1.0)
    assert inh[0] == pytest.approx(1.0, abs=1e-12)
    assert np.all(inh[1:] == 0)


def _oblique_wave(kx, ky, c):
    k = math.hypot(kx, ky)

    def sampler(t, x, y, z):
        ph = kx * x + ky * y - c * k * t
        E = [0.0, 0.0, math.cos(ph)]
        B = [ky / k * math.cos(ph) / c, -kx / k * math.cos(ph) / c, 0.0]
        return EMField(E, B)

    return sampler


@pytest.mark.parametrize("c", [1.0, 3.0])
def test_plane_wave_residuals_second_order(c):
    s = _oblique_wave(1.3, 0.7, c)
    hs = [0.2, 0.1, 0.05]
    res = []
    for h in hs:
        inh, hom = maxwell_residuals(s, (0.1, 0.2, -0.3, 0.0), h, c=c)
        res.append(max(np.max(np.abs(inh)), np.max(np.abs(hom))))
    slope = np.polyfit(np.log(hs), np.log(res), 1)[0]
    assert slope == pytest.approx(2.0, abs=0.1)
