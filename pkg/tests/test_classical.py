"""Classical sphere map: orbits, tangent maps, stability, Lyapunov."""

import numpy as np
import pytest

from kickedtop import classical

RNG = np.random.default_rng(5)


def raw_step(p, k):
    x, y, z = p
    c, s = np.cos(k * x), np.sin(k * x)
    return np.array([z * c + y * s, -z * s + y * c, -x])


def test_fixed_points():
    for kappa0 in (0.0, 1.3, 6.6):
        assert np.allclose(classical.classical_step([0, 1, 0], kappa0), [0, 1, 0], atol=1e-14)
        assert np.allclose(classical.classical_step([0, -1, 0], kappa0), [0, -1, 0], atol=1e-14)


def test_period_four_orbit():
    o = classical.orbit([0, 0, 1], 2.9, 8)
    expected = np.array([[1, 0, 0], [0, 0, -1], [-1, 0, 0], [0, 0, 1]] * 2, dtype=float)
    assert np.allclose(o, expected, atol=1e-14)


def test_zero_torsion_is_rotation_four_cycle():
    pt = np.array([0.3, 0.5, np.sqrt(1 - 0.34)])
    o = classical.orbit(pt, 0.0, 4)
    assert np.allclose(o[3], pt, atol=1e-12)


def test_norm_preservation():
    pt = np.array([0.3, -0.2, np.sqrt(1 - 0.13)])
    o = classical.orbit(pt, 5.5, 200)
    assert np.abs(np.linalg.norm(o, axis=1) - 1.0).max() < 1e-12


def test_point_validation():
    with pytest.raises(ValueError):
        classical.classical_step([1.0, 1.0, 0.0], 1.0)
    with pytest.raises(ValueError):
        classical.orbit([0, 0, 1], 1.0, 0)


def test_jacobian_matches_finite_differences():
    h = 1e-6
    for _ in range(10):
        v = RNG.standard_normal(3)
        v /= np.linalg.norm(v)
        kappa0 = RNG.uniform(0, 7)
        j = classical.jacobian(v, kappa0)
        fd = np.zeros((3, 3))
        for col in range(3):
            e = np.zeros(3)
            e[col] = h
            fd[:, col] = (raw_step(v + e, kappa0) - raw_step(v - e, kappa0)) / (2 * h)
        assert np.abs(j - fd).max() < 1e-6
        assert np.linalg.det(j) == pytest.approx(1.0, abs=1e-9)


def test_jacobian_at_zero_torsion_is_rotation():
    j = classical.jacobian([0.2, 0.5, np.sqrt(1 - 0.29)], 0.0)
    assert np.allclose(j, [[0, 0, 1], [0, 1, 0], [-1, 0, 0]], atol=1e-14)


def test_fixed_point_stability_transition():
    assert classical.fixed_point_stability(1.0)[0]
    assert not classical.fixed_point_stability(3.0)[0]
    _, mult = classical.fixed_point_stability(2.0)
    assert abs(mult[0] + mult[1]) == pytest.approx(2.0, abs=1e-9)
    stable, mult = classical.fixed_point_stability(0.5)
    assert stable and all(abs(abs(m) - 1.0) < 1e-12 for m in mult)


def test_stability_boundary_bisection():
    assert classical.stability_boundary(tol=1e-7) == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(ValueError):
        classical.stability_boundary(lo=3.0, hi=4.0)


def test_lyapunov_regimes():
    chaotic = classical.lyapunov([0.6, 0.0, 0.8], 7.0, seed=2)
    assert chaotic > 0.3
    regular = classical.lyapunov([0.1, np.sqrt(1 - 0.02), 0.1], 1.0, seed=2)
    assert abs(regular) < 0.05
