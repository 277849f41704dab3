"""Floquet operator, coherent states, and evolution tests against the full
2^N Kronecker-product oracle."""

import numpy as np
import pytest

import oracles
from kickedtop.top import (
    TopParams,
    build_j_ops,
    coherent_state,
    evolve,
    evolve_series,
    evolve_stream,
    fidelity,
    floquet_unitary,
    husimi_grid,
    parity_operator,
)

RNG = np.random.default_rng(7)


def test_j_ops_algebra():
    for two_j in (1, 3, 4, 7):
        jy, jz = build_j_ops(two_j)
        j = two_j / 2.0
        # commutator [jz, jy] = -i jx and Casimir via jx = i[jz, jy]
        jx = 1j * (jz @ jy - jy @ jz)
        casimir = jx @ jx + jy @ jy + jz @ jz
        assert np.allclose(casimir, j * (j + 1) * np.eye(two_j + 1), atol=1e-10)
        assert np.allclose(jx @ jy - jy @ jx, 1j * jz, atol=1e-10)


def test_floquet_matches_full_space_oracle():
    for n, kappa0 in ((3, 0.7), (4, 2.3), (5, 1.1)):
        u = floquet_unitary(TopParams(n, kappa0))
        t = oracles.dicke_isometry(n)
        u_full = oracles.full_floquet(n, kappa0)
        assert np.allclose(t.conj().T @ u_full @ t, u, atol=1e-10)
        # symmetric subspace is invariant
        assert np.allclose(u_full @ t, t @ u, atol=1e-10)


def test_ising_form_differs_by_global_phase():
    n, kappa0 = 4, 1.9
    t = oracles.dicke_isometry(n)
    u_spin = t.conj().T @ oracles.full_floquet(n, kappa0) @ t
    u_ising = t.conj().T @ oracles.full_ising_floquet(n, kappa0) @ t
    assert np.allclose(u_ising, np.exp(0.25j * kappa0) * u_spin, atol=1e-10)


def test_floquet_is_unitary():
    u = floquet_unitary(TopParams(6, 3.3))
    assert np.allclose(u @ u.conj().T, np.eye(7), atol=1e-12)


def test_kappa0_out_of_range_warns():
    with pytest.warns(UserWarning):
        TopParams(3, 20.0)
    with pytest.raises(ValueError):
        TopParams(0, 1.0)


def test_coherent_state_is_product_state():
    for n in (1, 3, 4):
        theta0, phi0 = RNG.uniform(0, np.pi), RNG.uniform(-np.pi, np.pi)
        embedded = oracles.symmetric_to_full(coherent_state(n, theta0, phi0))
        product = oracles.full_coherent(n, theta0, phi0)
        assert abs(np.vdot(embedded, product)) ** 2 == pytest.approx(1.0, abs=1e-12)


def test_coherent_state_poles():
    c = coherent_state(4, 0.0, 1.3)
    assert np.allclose(c, [1, 0, 0, 0, 0])
    c = coherent_state(4, np.pi, 0.0)
    assert abs(c[-1]) == pytest.approx(1.0)


def test_plus_y_state_is_jy_eigenvector():
    for two_j in (3, 4):
        jy, _ = build_j_ops(two_j)
        c = coherent_state(two_j, np.pi / 2.0, -np.pi / 2.0)
        assert np.allclose(jy @ c, (two_j / 2.0) * c, atol=1e-12)


def test_evolution_routes_agree():
    u = floquet_unitary(TopParams(5, 1.7))
    psi = coherent_state(5, 1.0, 0.4)
    series = evolve_series(psi, u, 40)
    stream = list(evolve_stream(psi, u, 40))
    for n in (0, 1, 13, 40):
        assert np.allclose(series[n], evolve(psi, u, n), atol=1e-10)
        if n > 0:
            assert np.allclose(series[n], stream[n - 1], atol=1e-10)


def test_evolve_dimension_mismatch():
    u = floquet_unitary(TopParams(3, 1.0))
    with pytest.raises(ValueError):
        evolve(np.ones(5), u, 1)


def test_husimi_normalization_and_peaks():
    psi = coherent_state(4, 1.2, 0.5)
    thetas, phis, q = husimi_grid(psi, 181, 361)
    # (2j+1)/(4 pi) * integral Q dOmega = 1
    w = np.sin(thetas)
    trapezoid = getattr(np, "trapezoid", np.trapz)
    integral = trapezoid(trapezoid(q, phis, axis=1) * w, thetas) * 5 / (4 * np.pi)
    assert integral == pytest.approx(1.0, abs=1e-3)
    it = np.argmin(np.abs(thetas - 1.2))
    ip = np.argmin(np.abs(phis - 0.5))
    assert q[it, ip] == pytest.approx(1.0, abs=1e-3)
    # antipodal point is dark
    it2 = np.argmin(np.abs(thetas - (np.pi - 1.2)))
    ip2 = np.argmin(np.abs(phis - (0.5 - np.pi)))
    assert q[it2, ip2] < 1e-6


def test_husimi_grid_validation():
    with pytest.raises(ValueError):
        husimi_grid(np.ones(4) / 2.0, 1, 10)


def test_parity_commutes_and_squares():
    for two_j in (3, 4):
        u = floquet_unitary(TopParams(two_j, 2.1))
        par = parity_operator(two_j)
        assert np.linalg.norm(par @ u - u @ par) < 1e-10
        sign = (-1.0) ** two_j
        assert np.allclose(par @ par, sign * np.eye(two_j + 1), atol=1e-10)


def test_fidelity_phase_insensitive():
    a = coherent_state(3, 0.3, 0.2)
    assert fidelity(a, np.exp(1j * 0.9) * a) == pytest.approx(1.0)
