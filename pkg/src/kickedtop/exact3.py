"""Closed-form solution of the 3-qubit (j = 3/2) kicked top at p = pi/2.

The parity-adapted basis {phi1+, phi2+, phi1-, phi2-} block-diagonalizes the
one-period unitary into two 2x2 blocks whose powers are Chebyshev pairs
(alpha_n, beta_n) with chi = sin(2 kappa)/2, kappa = kappa0/6.  All block
expressions here are in the qubit gauge (the spin-basis Floquet matrix differs
by the global phase e^{-i kappa0/4}).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .entanglement import linear_entropy, rdm1
from .numerics import cheb_t, cheb_t_series, cheb_u, cheb_u_series
from .top import coherent_state, fidelity


def parity_basis3():
    """Columns phi1+, phi2+, phi1-, phi2- as Dicke amplitude vectors."""
    s = 1.0 / np.sqrt(2.0)
    b = np.zeros((4, 4), dtype=complex)
    b[:, 0] = s * np.array([1, 0, 0, -1j])  # (|000> - i|111>)/sqrt2
    b[:, 1] = s * np.array([0, 1, 1j, 0])   # (|W> + i|Wbar>)/sqrt2
    b[:, 2] = s * np.array([1, 0, 0, 1j])
    b[:, 3] = s * np.array([0, 1, -1j, 0])
    return b


def u3_block(parity, kappa0):
    """The 2x2 parity block of the one-period unitary, kappa = kappa0/6."""
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    k = kappa0 / 6.0
    p = parity
    pre = p * np.exp(-1j * p * np.pi / 4) * np.exp(-1j * k)
    return pre * np.array(
        [
            [0.5j * np.exp(-2j * k), -p * (np.sqrt(3) / 2) * np.exp(-2j * k)],
            [p * (np.sqrt(3) / 2) * np.exp(2j * k), -0.5j * np.exp(2j * k)],
        ]
    )


@dataclass(frozen=True)
class BlockPower3:
    """Chebyshev pair realizing the n-th power of a 3-qubit parity block."""

    kappa: float
    n: int
    alpha_n: complex
    beta_n: complex
    parity: int
    prefactor: complex

    @property
    def matrix(self):
        p = self.parity
        return self.prefactor * np.array(
            [
                [self.alpha_n, -p * np.conj(self.beta_n)],
                [p * self.beta_n, np.conj(self.alpha_n)],
            ]
        )


def _alpha_beta3(kappa0, n):
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    t = cheb_t(chi, n)
    u = cheb_u(chi, n - 1)
    alpha = t + 0.5j * u * np.cos(2.0 * k)
    beta = (np.sqrt(3.0) / 2.0) * u * np.exp(2j * k)
    return k, alpha, beta


def u3_block_pow(parity, kappa0, n):
    """Exact n-th power of a parity block via the Chebyshev closed form."""
    if parity not in (1, -1):
        raise ValueError("parity must be +1 or -1")
    if n < 0:
        raise ValueError("n must be non-negative")
    k, alpha, beta = _alpha_beta3(kappa0, n)
    pre = (parity) ** n * np.exp(-1j * n * (parity * np.pi / 4 + k))
    return BlockPower3(kappa=k, n=n, alpha_n=alpha, beta_n=beta, parity=parity, prefactor=pre)


def _alpha_beta3_series(kappa0, n_max):
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    t = cheb_t_series(chi, n_max)
    u = cheb_u_series(chi, n_max)
    alpha = t + 0.5j * u * np.cos(2.0 * k)
    beta = (np.sqrt(3.0) / 2.0) * u * np.exp(2j * k)
    return k, alpha, beta


def coherent_coeffs3(theta0, phi0):
    """Coefficients (a1, a2, b1, b2) of a coherent state in the parity basis."""
    c = coherent_state(3, theta0, phi0)
    return parity_basis3().conj().T @ c


def state3_series(theta0, phi0, n_max, kappa0):
    """Closed-form evolved coherent states for n = 0..n_max, Dicke basis,
    qubit gauge, common phase e^{-i n (pi/4 + kappa)} dropped.

    Coefficient propagation: a1n = a1 alpha_n - a2 beta_n*, a2n = a1 beta_n +
    a2 alpha_n*, b1n = (-i)^n (b1 alpha_n + b2 beta_n*), b2n = (-i)^n
    (b2 alpha_n* - b1 beta_n).  The relative phase between the parity sectors
    is (-i)^n; the i^n variant differs only by the (local) parity operator.
    """
    a1, a2, b1, b2 = coherent_coeffs3(theta0, phi0)
    k, alpha, beta = _alpha_beta3_series(kappa0, n_max)
    i_n = (-1j) ** np.arange(n_max + 1)
    a1n = a1 * alpha - a2 * np.conj(beta)
    a2n = a1 * beta + a2 * np.conj(alpha)
    b1n = i_n * (b1 * alpha + b2 * np.conj(beta))
    b2n = i_n * (b2 * np.conj(alpha) - b1 * beta)
    coeffs = np.stack([a1n, a2n, b1n, b2n], axis=1)
    return coeffs @ parity_basis3().T


def state3(theta0, phi0, n, kappa0):
    """Closed-form evolved coherent state at step n (up to a global phase)."""
    return state3_series(theta0, phi0, n, kappa0)[n]


def entropy3_000(n, kappa0):
    """Exact single-qubit linear entropy of the evolved |000> state.

    For odd n the even-neighbor value S(n+1) is returned (local equivalence
    of consecutive odd/even steps).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2 == 1:
        n += 1
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    lam = 0.5 * cheb_u(chi, n - 1) ** 2
    return 2.0 * lam * (1.0 - lam)


def entropy3_000_series(n_max, kappa0):
    """entropy3_000 for n = 0..n_max as an array."""
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    n = np.arange(n_max + 2)
    n_eff = np.where(n % 2 == 1, n + 1, n)[: n_max + 1]
    # u[m] stores U_{m-1}, so U_{n_eff - 1} is u[n_eff]
    u = cheb_u_series(chi, n_max + 1)
    lam = 0.5 * u[n_eff] ** 2
    return 2.0 * lam * (1.0 - lam)


def concurrence3_000(n, kappa0):
    """Exact two-qubit concurrence of the evolved |000> state (odd n mapped
    to the even neighbor)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2 == 1:
        n += 1
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    u = abs(cheb_u(chi, n - 1))
    return u * abs(0.5 * u - np.sqrt(max(1.0 - 0.75 * u * u, 0.0)))


def concurrence3_000_series(n_max, kappa0):
    """concurrence3_000 for n = 0..n_max as an array."""
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    n = np.arange(n_max + 1)
    n_eff = np.where(n % 2 == 1, n + 1, n)
    u = np.abs(cheb_u_series(chi, n_max + 1))[n_eff]
    return u * np.abs(0.5 * u - np.sqrt(np.clip(1.0 - 0.75 * u * u, 0.0, None)))


def entropy3_plus(n, kappa0):
    """Exact single-qubit linear entropy of the evolved (pi/2, -pi/2) state
    (the +1 eigenstate of the y rotation, entirely in the + parity sector)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    u2 = cheb_u(chi, n - 1) ** 2
    return 4.0 * chi**2 * u2 * (1.0 - 2.0 * chi**2 * u2)


def entropy3_plus_series(n_max, kappa0):
    """entropy3_plus for n = 0..n_max as an array."""
    k = kappa0 / 6.0
    chi = np.sin(2.0 * k) / 2.0
    u2 = cheb_u_series(chi, n_max) ** 2
    return 4.0 * chi**2 * u2 * (1.0 - 2.0 * chi**2 * u2)


def avg_entropy3(initial, kappa0):
    """Infinite-time averaged linear entropy, s0 = sin^2(kappa0/3).

    initial: 'zero_state' for (0,0), 'plus_y_state' for (pi/2, -pi/2).
    The formulas hold for kappa0 > 0; at exactly 0 the analytic limit is
    returned with a warning (the kappa0 = 0 dynamics itself is entanglement
    free for the zero state).
    """
    s0 = np.sin(kappa0 / 3.0) ** 2
    if kappa0 == 0.0:
        warnings.warn("kappa0 = 0: returning the kappa0 -> 0+ limit value", stacklevel=2)
    if initial == "zero_state":
        return (5.0 - 2.0 * s0) / (4.0 - s0) ** 2
    if initial == "plus_y_state":
        return s0 * (8.0 - 5.0 * s0) / (4.0 - s0) ** 2
    raise ValueError("initial must be 'zero_state' or 'plus_y_state'")


def avg_entropy3_special(theta0, phi0):
    """Time-averaged linear entropy at kappa0 = 3pi/2 for an arbitrary
    coherent state; value lies in [7/24, 1/3]."""
    return (
        15.0
        + np.cos(4.0 * theta0)
        + (1.0 + 3.0 * np.cos(2.0 * theta0)) * np.sin(theta0) ** 4 * np.sin(2.0 * phi0) ** 2
    ) / 48.0


def entropy3_general(theta0, phi0, n, kappa0):
    """Exact linear entropy for any coherent initial state via the parity
    coefficient propagation."""
    return entropy3_general_series(theta0, phi0, n, kappa0)[n]


def entropy3_general_series(theta0, phi0, n_max, kappa0):
    """entropy3_general for n = 0..n_max as an array.

    Uses rho1 = [[r, s], [s*, 1-r]] with r, s expressed through the
    propagated coefficients (a1n, a2n, b1n, b2n); S = 2[r(1-r) - |s|^2].
    """
    a1, a2, b1, b2 = coherent_coeffs3(theta0, phi0)
    k, alpha, beta = _alpha_beta3_series(kappa0, n_max)
    i_n = (-1j) ** np.arange(n_max + 1)
    a1n = a1 * alpha - a2 * np.conj(beta)
    a2n = a1 * beta + a2 * np.conj(alpha)
    b1n = i_n * (b1 * alpha + b2 * np.conj(beta))
    b2n = i_n * (b2 * np.conj(alpha) - b1 * beta)
    r = 0.5 + np.real(a1n * np.conj(b1n) + a2n * np.conj(b2n) / 3.0)
    s = (
        np.real(a1n * np.conj(b2n) + b1n * np.conj(a2n)) / np.sqrt(3.0)
        + 1j * np.imag(a1n * np.conj(a2n) + b1n * np.conj(b2n)) / np.sqrt(3.0)
        - (1j / 3.0) * (a2n + b2n) * (np.conj(a2n) - np.conj(b2n))
    )
    return 2.0 * (r * (1.0 - r) - np.abs(s) ** 2)


def local_equivalence_check(n_even, kappa0, tol=1e-9):
    """Check that the step-(n_even - 1) state of the evolved |000> is a local
    unitary applied to the step-n_even state.

    Undoing the torsion on the even-step state acts as (e^{+-i kappa sz})^x3;
    the remaining inverse rotation is local as well, so psi_(2m-1) =
    R^(-1) (V x V x V) psi_(2m) with R the one-period y rotation.
    """
    if n_even <= 0 or n_even % 2 != 0:
        raise ValueError("n_even must be a positive even integer")
    from .numerics import herm_eig
    from .top import build_j_ops

    k = kappa0 / 6.0
    psi_even = state3(0.0, 0.0, n_even, kappa0)
    psi_odd = state3(0.0, 0.0, n_even - 1, kappa0)
    jy, _ = build_j_ops(3)
    w, v = herm_eig(jy)
    rot_inv = (v * np.exp(1j * (np.pi / 2) * w)) @ v.conj().T
    kk = np.arange(4)
    for sign in (1.0, -1.0):
        local = np.exp(1j * sign * k * (3 - 2 * kk))  # (e^{i sign k sz})^x3 on Dicke
        if fidelity(psi_odd, rot_inv @ (local * psi_even)) > 1.0 - tol:
            return True
    return False
