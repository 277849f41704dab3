"""Closed-form solution of the 4-qubit (j = 2) kicked top at p = pi/2.

The 5-dim symmetric space splits into 1 + 2 + 2 parity subspaces: phi1+ is a
fixed eigenvector with eigenvalue -1 for every kappa0, and the two 2x2 blocks
have exact Chebyshev powers with chi = sin(kappa)/2, kappa = kappa0/2.  The
near-degeneracy of the phi1+ branch with one eigenphase of the + block gives
the slow tunneling between the two y-polarized product states.  Blocks are in
the qubit gauge (spin-basis Floquet differs by the global phase e^{-i kappa0/4}).
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .entanglement import linear_entropy, rdm1
from .numerics import cheb_t, cheb_t_series, cheb_u, cheb_u_series
from .top import coherent_state, fidelity


def parity_basis4():
    """Columns phi1+, phi2+, phi3+, phi1-, phi2- as Dicke amplitude vectors.

    Dicke index is the excitation count: |W> = k=1, |0011>-type = k=2,
    |Wbar> = k=3.
    """
    s = 1.0 / np.sqrt(2.0)
    b = np.zeros((5, 5), dtype=complex)
    b[:, 0] = s * np.array([0, 1, 0, -1, 0])  # (|W> - |Wbar>)/sqrt2
    b[:, 1] = s * np.array([1, 0, 0, 0, 1])   # (|0000> + |1111>)/sqrt2
    b[:, 2] = np.array([0, 0, 1, 0, 0])
    b[:, 3] = s * np.array([0, 1, 0, 1, 0])
    b[:, 4] = s * np.array([1, 0, 0, 0, -1])
    return b


def u4_blocks(kappa0):
    """(u0, U+, U-) parity blocks, kappa = kappa0/2.

    u0 = -1 acts on phi1+; U+ on {phi2+, phi3+}; U- on {phi1-, phi2-}.
    """
    k = kappa0 / 2.0
    r3 = np.sqrt(3.0)
    uplus = -1j * np.exp(-0.5j * k) * np.array(
        [
            [0.5j * np.exp(-1j * k), 0.5j * r3 * np.exp(-1j * k)],
            [0.5j * r3 * np.exp(1j * k), -0.5j * np.exp(1j * k)],
        ]
    )
    uminus = np.exp(-0.75j * k) * np.array(
        [
            [0.0, np.exp(0.75j * k)],
            [-np.exp(-0.75j * k), 0.0],
        ]
    )
    return -1.0, uplus, uminus


@dataclass(frozen=True)
class BlockPower4:
    """Closed-form n-th powers of the 4-qubit parity blocks."""

    kappa: float
    n: int
    alpha_n: complex
    beta_n: complex

    @property
    def plus_matrix(self):
        pre = np.exp(-0.5j * self.n * (np.pi + self.kappa))
        return pre * np.array(
            [
                [self.alpha_n, 1j * np.conj(self.beta_n)],
                [1j * self.beta_n, np.conj(self.alpha_n)],
            ]
        )

    @property
    def minus_matrix(self):
        k, n = self.kappa, self.n
        c = np.cos(n * np.pi / 2.0)
        s = np.sin(n * np.pi / 2.0)
        return np.exp(-0.75j * n * k) * np.array(
            [
                [c, np.exp(0.75j * k) * s],
                [-np.exp(-0.75j * k) * s, c],
            ]
        )

    @property
    def zero_power(self):
        return (-1.0) ** self.n


def u4_block_pow(kappa0, n):
    """Exact closed-form powers of the 4-qubit blocks at step n."""
    if n < 0:
        raise ValueError("n must be non-negative")
    k = kappa0 / 2.0
    chi = np.sin(k) / 2.0
    t = cheb_t(chi, n)
    u = cheb_u(chi, n - 1)
    alpha = t + 0.5j * u * np.cos(k)
    beta = (np.sqrt(3.0) / 2.0) * u * np.exp(1j * k)
    return BlockPower4(kappa=k, n=n, alpha_n=alpha, beta_n=beta)


def _alpha_beta4_series(kappa0, n_max):
    k = kappa0 / 2.0
    chi = np.sin(k) / 2.0
    t = cheb_t_series(chi, n_max)
    u = cheb_u_series(chi, n_max)
    alpha = t + 0.5j * u * np.cos(k)
    beta = (np.sqrt(3.0) / 2.0) * u * np.exp(1j * k)
    return k, alpha, beta


def coherent_coeffs4(theta0, phi0):
    """Parity-basis coefficients (c1+, c2+, c3+, c1-, c2-) of a coherent state."""
    c = coherent_state(4, theta0, phi0)
    return parity_basis4().conj().T @ c


def state4_series(theta0, phi0, n_max, kappa0):
    """Closed-form evolved coherent states for n = 0..n_max in the Dicke
    basis (qubit gauge), built from the 1+2+2 block powers."""
    c1p, c2p, c3p, c1m, c2m = coherent_coeffs4(theta0, phi0)
    k, alpha, beta = _alpha_beta4_series(kappa0, n_max)
    n = np.arange(n_max + 1)
    sign = (-1.0) ** n
    pre_p = np.exp(-0.5j * n * (np.pi + k))
    # + block [[alpha, i beta*], [i beta, alpha*]] on (c2p, c3p)
    c2p_n = pre_p * (alpha * c2p + 1j * np.conj(beta) * c3p)
    c3p_n = pre_p * (1j * beta * c2p + np.conj(alpha) * c3p)
    cn = np.cos(n * np.pi / 2.0)
    sn = np.sin(n * np.pi / 2.0)
    pre_m = np.exp(-0.75j * n * k)
    c1m_n = pre_m * (cn * c1m + np.exp(0.75j * k) * sn * c2m)
    c2m_n = pre_m * (-np.exp(-0.75j * k) * sn * c1m + cn * c2m)
    coeffs = np.stack([sign * c1p * np.ones_like(c2p_n), c2p_n, c3p_n, c1m_n, c2m_n], axis=1)
    return coeffs @ parity_basis4().T


def state4(theta0, phi0, n, kappa0):
    """Closed-form evolved coherent state at step n, O(1) in n."""
    c1p, c2p, c3p, c1m, c2m = coherent_coeffs4(theta0, phi0)
    bp = u4_block_pow(kappa0, n)
    c2p_n, c3p_n = bp.plus_matrix @ np.array([c2p, c3p])
    c1m_n, c2m_n = bp.minus_matrix @ np.array([c1m, c2m])
    coeffs = np.array([bp.zero_power * c1p, c2p_n, c3p_n, c1m_n, c2m_n])
    return parity_basis4() @ coeffs


def entropy4_0000(n, kappa0):
    """Exact single-qubit linear entropy of the evolved |0000> state.

    Even n uses the diagonal-RDM formula; odd n goes through the closed-form
    state and the Dicke-basis partial trace (no 3-qubit-style local shortcut
    is available here).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n % 2 == 0:
        bp = u4_block_pow(kappa0, n)
        # phase e^{i n kappa/4} with kappa = kappa0/2, in this block gauge
        x = np.real(bp.alpha_n * np.exp(1j * n * kappa0 / 8.0))
        return 0.5 * (1.0 - x * x)
    return linear_entropy(rdm1(state4(0.0, 0.0, n, kappa0)))


def entropy4_0000_series(n_max, kappa0):
    """entropy4_0000 for n = 0..n_max as an array (via the closed-form states)."""
    from .entanglement import linear_entropy_series

    return linear_entropy_series(state4_series(0.0, 0.0, n_max, kappa0))


def entropy4_plus(n, kappa0):
    """Exact single-qubit linear entropy of the evolved (pi/2, -pi/2) state.

    rho1 = [[1/2, s], [s*, 1/2]] with |s| = (1/2)|sin(delta) U_{n-1}(chi)
    cos(kappa0/2) - T_n(chi) cos(delta)|, delta = n(2pi + kappa0)/4 in this
    gauge.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    k = kappa0 / 2.0
    chi = np.sin(k) / 2.0
    delta = n * (2.0 * np.pi + kappa0) / 4.0
    s = 0.5 * (np.sin(delta) * cheb_u(chi, n - 1) * np.cos(k) - cheb_t(chi, n) * np.cos(delta))
    return 0.5 - 2.0 * s * s


def entropy4_plus_series(n_max, kappa0):
    """entropy4_plus for n = 0..n_max as an array."""
    k, alpha, beta = _alpha_beta4_series(kappa0, n_max)
    n = np.arange(n_max + 1)
    chi = np.sin(k) / 2.0
    t = cheb_t_series(chi, n_max)
    u = cheb_u_series(chi, n_max)
    delta = n * (2.0 * np.pi + kappa0) / 4.0
    s = 0.5 * (np.sin(delta) * u * np.cos(k) - t * np.cos(delta))
    return 0.5 - 2.0 * s * s


def avg_entropy4(initial, kappa0):
    """Long-time averaged linear entropy, s0 = cos^2(kappa0/2).

    Valid for kappa0 not in {0, 2pi}; at the degenerate points the analytic
    limit is returned with a warning.  For small kappa0 the plus_y average is
    reached only over horizons beyond the tunneling time.
    """
    if kappa0 in (0.0, 2.0 * np.pi):
        warnings.warn(
            f"kappa0 = {kappa0}: degenerate parameter, returning the limit value",
            stacklevel=2,
        )
    s0 = np.cos(kappa0 / 2.0) ** 2
    if initial == "zero_state":
        return (9.0 + 2.0 * s0) / (8.0 * (3.0 + s0))
    if initial == "plus_y_state":
        return (9.0 - s0) / (8.0 * (3.0 + s0))
    raise ValueError("initial must be 'zero_state' or 'plus_y_state'")


def gamma_minus(kappa0):
    """Eigenphase of the + block that is pi at kappa0 = 0; the splitting
    |gamma_minus - pi| ~ kappa0^3/128 drives the tunneling."""
    if kappa0 < 0:
        raise ValueError("kappa0 must be >= 0")
    return kappa0 / 4.0 + np.pi - np.arcsin(0.5 * np.sin(kappa0 / 2.0))


@dataclass(frozen=True)
class TunnelingEstimate:
    """Tunneling time between the two y-polarized product states."""

    kappa0: float
    gamma_minus: float
    n_star_exact: float
    n_star_approx: float


def tunneling_time(kappa0):
    """Phase-slip time n* between the frozen phi1+ branch and the e^{i gamma}
    branch; n_star_exact = pi/|pi - gamma_minus|, n_star_approx = 128 pi/kappa0^3."""
    if kappa0 <= 0:
        raise ValueError("kappa0 = 0: tunneling time diverges")
    if kappa0 > 1.0:
        warnings.warn(
            "kappa0 > 1: the cubic tunneling-time approximation is unreliable",
            stacklevel=2,
        )
    g = gamma_minus(kappa0)
    return TunnelingEstimate(
        kappa0=kappa0,
        gamma_minus=g,
        n_star_exact=np.pi / abs(np.pi - g),
        n_star_approx=128.0 * np.pi / kappa0**3,
    )


def tunnel_overlaps(kappa0, n):
    """Squared overlaps of the evolved (pi/2, -pi/2) product state with the
    two y-polarized product states and their GHZ superposition.

    Returns (p_plus, p_minus, p_ghz); all computed in O(1) from block powers.
    """
    psi = state4(np.pi / 2.0, -np.pi / 2.0, n, kappa0)
    plus = coherent_state(4, np.pi / 2.0, -np.pi / 2.0)
    minus = coherent_state(4, np.pi / 2.0, np.pi / 2.0)
    ghz = (plus - 1j * minus) / np.sqrt(2.0)
    return fidelity(plus, psi), fidelity(minus, psi), fidelity(ghz, psi)


def tunnel_overlap_scan(kappa0, window=0.05, num=201):
    """Scan p_minus over a +-window fraction around n_star_exact; returns
    (best_n, best_p_minus)."""
    est = tunneling_time(kappa0)
    lo = int(est.n_star_exact * (1.0 - window))
    hi = int(est.n_star_exact * (1.0 + window)) + 1
    ns = np.unique(np.linspace(lo, hi, num).astype(int))
    best_n, best_p = lo, -1.0
    for n in ns:
        _, p_minus, _ = tunnel_overlaps(kappa0, int(n))
        if p_minus > best_p:
            best_n, best_p = int(n), p_minus
    return best_n, best_p


def tunneling_condition(num_qubits, p):
    """True when num_qubits * p is a multiple of 2 pi, the degeneracy
    condition for tunneling between the y-polarized product states."""
    if num_qubits < 1:
        raise ValueError("num_qubits must be >= 1")
    if not (0.0 < p < 2.0 * np.pi):
        raise ValueError("p must lie in (0, 2 pi)")
    phase = num_qubits * p / (2.0 * np.pi)
    return abs(phase - round(phase)) < 1e-12
