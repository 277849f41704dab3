"""Four-qubit closed-form solution, tunneling, and averages against
brute-force evolution."""

import numpy as np
import pytest

import oracles
from kickedtop import exact4
from kickedtop.entanglement import linear_entropy_series
from kickedtop.numerics import unitary_power
from kickedtop.top import TopParams, coherent_state, evolve_series, fidelity, floquet_unitary

RNG = np.random.default_rng(41)
KAPPAS = (0.1, 0.7, np.pi, 2.5)


def qubit_gauge_floquet(kappa0):
    return np.exp(0.25j * kappa0) * floquet_unitary(TopParams(4, kappa0))


def test_parity_basis_orthonormal_and_parity_adapted():
    b = exact4.parity_basis4()
    assert np.allclose(b.conj().T @ b, np.eye(5), atol=1e-12)
    t = oracles.dicke_isometry(4)
    par = t.conj().T @ oracles.kron_all([oracles.SY] * 4) @ t
    signs = [1, 1, 1, -1, -1]
    for i, s in enumerate(signs):
        assert np.allclose(par @ b[:, i], s * b[:, i], atol=1e-12)


def test_blocks_reconstruct_floquet():
    for kappa0 in RNG.uniform(0.05, 6.0, 50):
        b = exact4.parity_basis4()
        u = b.conj().T @ qubit_gauge_floquet(kappa0) @ b
        u0, uplus, uminus = exact4.u4_blocks(kappa0)
        off = u.copy()
        off[0, 0] = 0
        off[1:3, 1:3] = 0
        off[3:, 3:] = 0
        assert np.abs(off).max() < 1e-10
        assert abs(u[0, 0] - u0) < 1e-10
        assert np.allclose(u[1:3, 1:3], uplus, atol=1e-10)
        assert np.allclose(u[3:, 3:], uminus, atol=1e-10)


def test_frozen_eigenvector():
    for kappa0 in (0.2, 1.7, 5.0):
        u0, _, _ = exact4.u4_blocks(kappa0)
        assert u0 == -1.0
        phi1p = exact4.parity_basis4()[:, 0]
        assert np.allclose(qubit_gauge_floquet(kappa0) @ phi1p, -phi1p, atol=1e-10)


def test_block_powers_match_matrix_powers():
    for kappa0 in (0.3, 2.2):
        _, uplus, uminus = exact4.u4_blocks(kappa0)
        for n in (0, 1, 3, 8, 100, 999):
            bp = exact4.u4_block_pow(kappa0, n)
            assert np.allclose(bp.plus_matrix, np.linalg.matrix_power(uplus, n), atol=1e-11)
            assert np.allclose(bp.minus_matrix, np.linalg.matrix_power(uminus, n), atol=1e-11)
            assert bp.zero_power == (-1.0) ** n


def test_block_powers_at_tunneling_scale():
    # closed form stays accurate at n ~ 10^6 (repeated-squaring oracle)
    kappa0, n = 0.1, 10**6
    _, uplus, _ = exact4.u4_blocks(kappa0)
    assert np.allclose(exact4.u4_block_pow(kappa0, n).plus_matrix,
                       unitary_power(uplus, n), atol=1e-8)


@pytest.mark.parametrize("theta0,phi0", [(0.0, 0.0), (np.pi / 2, -np.pi / 2), (1.3, 0.6)])
def test_state_series_matches_numeric_evolution(theta0, phi0):
    for kappa0 in (0.4, 2.8):
        u = floquet_unitary(TopParams(4, kappa0))
        numeric = evolve_series(coherent_state(4, theta0, phi0), u, 60)
        analytic = exact4.state4_series(theta0, phi0, 60, kappa0)
        for n in range(61):
            assert fidelity(numeric[n], analytic[n]) == pytest.approx(1.0, abs=1e-11)


def test_state4_scalar_matches_series():
    s = exact4.state4_series(0.8, -0.4, 150, 1.1)
    for n in (0, 1, 149, 150):
        assert np.allclose(exact4.state4(0.8, -0.4, n, 1.1), s[n], atol=1e-12)


def test_entropy_0000_closed_form_vs_brute():
    for kappa0 in KAPPAS:
        u = floquet_unitary(TopParams(4, kappa0))
        s_num = linear_entropy_series(evolve_series(coherent_state(4, 0, 0), u, 1000))
        s_ana = exact4.entropy4_0000_series(1000, kappa0)
        assert np.abs(s_num - s_ana).max() < 1e-9
        for n in (0, 4, 7, 100, 999):
            assert exact4.entropy4_0000(n, kappa0) == pytest.approx(s_num[n], abs=1e-9)


def test_entropy_plus_closed_form_vs_brute():
    psi = coherent_state(4, np.pi / 2, -np.pi / 2)
    for kappa0 in KAPPAS:
        u = floquet_unitary(TopParams(4, kappa0))
        s_num = linear_entropy_series(evolve_series(psi, u, 1000))
        s_ana = exact4.entropy4_plus_series(1000, kappa0)
        assert np.abs(s_num - s_ana).max() < 1e-9
        assert exact4.entropy4_plus(357, kappa0) == pytest.approx(s_num[357], abs=1e-9)


def test_plus_sector_overlap_is_frozen():
    # |<phi1+|psi_n>| = 1/sqrt(2) for all n when starting from x4 |+>_y
    phi1p = exact4.parity_basis4()[:, 0]
    for n in (0, 3, 10, 500):
        psi = exact4.state4(np.pi / 2, -np.pi / 2, n, 0.3)
        assert abs(np.vdot(phi1p, psi)) == pytest.approx(1 / np.sqrt(2), abs=1e-12)


def test_average_formulas():
    assert exact4.avg_entropy4("zero_state", np.pi) == pytest.approx(3 / 8, abs=1e-14)
    assert exact4.avg_entropy4("plus_y_state", np.pi) == pytest.approx(3 / 8, abs=1e-14)
    assert exact4.avg_entropy4("plus_y_state", 1e-8) == pytest.approx(1 / 4, abs=1e-8)
    with pytest.warns(UserWarning):
        exact4.avg_entropy4("zero_state", 0.0)
    with pytest.raises(ValueError):
        exact4.avg_entropy4("nope", 1.0)


def test_average_formulas_vs_long_numeric_average():
    u = floquet_unitary(TopParams(4, np.pi))
    for (theta0, phi0), label in (
        ((0.0, 0.0), "zero_state"),
        ((np.pi / 2, -np.pi / 2), "plus_y_state"),
    ):
        st = evolve_series(coherent_state(4, theta0, phi0), u, 100000)
        avg = float(np.mean(linear_entropy_series(st[1:])))
        assert avg == pytest.approx(exact4.avg_entropy4(label, np.pi), abs=2e-3)


def test_gamma_minus_cubic_approximation():
    for kappa0 in (0.05, 0.1, 0.2):
        g = exact4.gamma_minus(kappa0)
        assert abs(g - np.pi) == pytest.approx(kappa0**3 / 128.0, rel=0.02)


def test_tunneling_time_numbers():
    est = exact4.tunneling_time(0.1)
    assert round(est.n_star_approx) == 402124
    assert est.n_star_exact == pytest.approx(np.pi / abs(np.pi - est.gamma_minus))
    with pytest.raises(ValueError):
        exact4.tunneling_time(0.0)
    with pytest.warns(UserWarning):
        exact4.tunneling_time(2.0)


def test_tunneling_overlaps():
    est = exact4.tunneling_time(0.1)
    best_n, best_p = exact4.tunnel_overlap_scan(0.1)
    assert best_p > 0.99
    assert abs(best_n - est.n_star_exact) < 0.05 * est.n_star_exact + 1
    _, _, p_ghz = exact4.tunnel_overlaps(0.1, round(est.n_star_exact / 2))
    assert p_ghz > 0.99
    # probability bookkeeping and approximate 2 n* recurrence
    for n in (0, 1000, 123456):
        p_plus, p_minus, _ = exact4.tunnel_overlaps(0.1, n)
        assert p_plus + p_minus <= 1.0 + 1e-12
    p0, _, _ = exact4.tunnel_overlaps(0.1, 0)
    p2, _, _ = exact4.tunnel_overlaps(0.1, round(2 * est.n_star_exact))
    assert p2 == pytest.approx(p0, abs=1e-3)


def test_tunneling_condition_gate():
    assert exact4.tunneling_condition(4, np.pi / 2)
    assert exact4.tunneling_condition(8, np.pi / 2)
    assert not exact4.tunneling_condition(3, np.pi / 2)
    assert exact4.tunneling_condition(3, 2 * np.pi / 3)
    with pytest.raises(ValueError):
        exact4.tunneling_condition(0, np.pi / 2)
    with pytest.raises(ValueError):
        exact4.tunneling_condition(4, 0.0)
