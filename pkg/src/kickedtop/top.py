"""Spin-j operators, the kicked-top Floquet unitary, coherent states, and
time evolution in the (2j+1)-dimensional permutation-symmetric subspace.

State vectors are complex numpy arrays of length two_j + 1 indexed by the
excitation count k (m = j - k, so k = 0 is the all-|0> state).  All global
phases are kept; comparisons should use phase-insensitive fidelity.
"""

import warnings
from dataclasses import dataclass
from math import comb

import numpy as np

from .numerics import herm_eig, unitary_power


@dataclass(frozen=True)
class TopParams:
    """Kicked-top parameters: number of qubits N = two_j, torsion kappa0,
    rotation angle p (default pi/2)."""

    two_j: int
    kappa0: float
    p: float = np.pi / 2

    def __post_init__(self):
        if self.two_j < 1:
            raise ValueError("two_j must be a positive integer")
        if self.kappa0 < 0 or self.kappa0 > np.pi * self.two_j / 2:
            warnings.warn(
                f"kappa0={self.kappa0} outside the recommended interval "
                f"[0, pi*j] = [0, {np.pi * self.two_j / 2:.4f}]",
                stacklevel=2,
            )

    @property
    def dim(self):
        return self.two_j + 1


def build_j_ops(two_j):
    """Angular momentum matrices (Jy, Jz) for spin j = two_j/2.

    Basis ordering is m = j..-j, i.e. excitation count k = 0..two_j.
    """
    if two_j < 1:
        raise ValueError("two_j must be >= 1")
    j = two_j / 2.0
    m = j - np.arange(two_j + 1)
    jz = np.diag(m.astype(complex))
    # J- |j,m> = sqrt(j(j+1) - m(m-1)) |j,m-1>; m decreases as k increases
    lower = np.sqrt(j * (j + 1) - m[:-1] * (m[:-1] - 1))
    jm = np.zeros((two_j + 1, two_j + 1), dtype=complex)
    jm[np.arange(1, two_j + 1), np.arange(two_j)] = lower
    jp = jm.conj().T
    jy = (jp - jm) / 2j
    return jy, jz


def floquet_unitary(params):
    """One-period unitary: torsion exp(-i kappa0 Jz^2 / two_j) then rotation
    exp(-i p Jy), as a dense (two_j+1)-dim matrix."""
    jy, jz = build_j_ops(params.two_j)
    w, v = herm_eig(jy)
    rot = (v * np.exp(-1j * params.p * w)) @ v.conj().T
    m = np.real(np.diag(jz))
    torsion = np.exp(-1j * params.kappa0 * m**2 / params.two_j)
    return torsion[:, None] * rot


def coherent_state(two_j, theta0, phi0):
    """Spin coherent state |theta0, phi0> as Dicke amplitudes.

    amps_k = sqrt(C(2j,k)) cos^(2j-k)(theta0/2) (e^{-i phi0} sin(theta0/2))^k
    """
    k = np.arange(two_j + 1)
    binom = np.array([comb(two_j, int(kk)) for kk in k], dtype=float)
    c = np.cos(theta0 / 2.0)
    s = np.sin(theta0 / 2.0) * np.exp(-1j * phi0)
    amps = np.sqrt(binom) * c ** (two_j - k) * s**k
    return amps / np.linalg.norm(amps)


def evolve(state, u, n):
    """Apply u^n to a state (repeated-squaring power, one matvec)."""
    state = np.asarray(state, dtype=complex)
    if u.shape[1] != state.shape[0]:
        raise ValueError("dimension mismatch between state and unitary")
    if n == 0:
        return state.copy()
    return unitary_power(u, n) @ state


def evolve_stream(state, u, n):
    """Yield the state after 1, 2, ..., n sequential applications of u."""
    state = np.asarray(state, dtype=complex)
    if u.shape[1] != state.shape[0]:
        raise ValueError("dimension mismatch between state and unitary")
    for _ in range(n):
        state = u @ state
        yield state


def evolve_series(state, u, horizon):
    """States u^n @ state for n = 0..horizon as a (horizon+1, dim) array.

    Uses the spectral decomposition of the (normal) unitary so the cost is
    O(horizon * dim) after one small eigenproblem; this is the fast numeric
    route for long-horizon averages, independent of any closed form.
    """
    state = np.asarray(state, dtype=complex)
    lam, v = np.linalg.eig(u)
    c = np.linalg.solve(v, state)
    n = np.arange(horizon + 1)
    # lam^n via the eigenphase, exact modulus for unitary input
    phases = np.angle(lam)
    powers = np.exp(1j * np.outer(n, phases))
    return (powers * c[None, :]) @ v.T


def husimi_grid(state, n_theta, n_phi):
    """Husimi function Q(theta, phi) = |<theta,phi|psi>|^2 on a uniform grid.

    Returns (thetas, phis, Q) with Q of shape (n_theta, n_phi).
    """
    if n_theta < 2 or n_phi < 2:
        raise ValueError("grid sizes must be >= 2")
    state = np.asarray(state, dtype=complex)
    two_j = state.shape[0] - 1
    thetas = np.linspace(0.0, np.pi, n_theta)
    phis = np.linspace(-np.pi, np.pi, n_phi)
    k = np.arange(two_j + 1)
    binom = np.sqrt(np.array([comb(two_j, int(kk)) for kk in k], dtype=float))
    ct = np.cos(thetas / 2.0)[:, None] ** (two_j - k)[None, :]
    st = np.sin(thetas / 2.0)[:, None] ** k[None, :]
    # overlap: <coh|psi> = sum_k conj(coh_k) psi_k; coh_k carries e^{-i k phi}
    radial = binom[None, :] * ct * st  # (n_theta, dim)
    phase = np.exp(1j * np.outer(k, phis))  # conj(e^{-i k phi}) = e^{+i k phi}
    amp = (radial * state[None, :]) @ phase  # (n_theta, n_phi)
    return thetas, phis, np.abs(amp) ** 2


def parity_operator(two_j):
    """The pi rotation about y, exp(-i pi Jy); commutes with the Floquet map."""
    jy, _ = build_j_ops(two_j)
    w, v = herm_eig(jy)
    return (v * np.exp(-1j * np.pi * w)) @ v.conj().T


def fidelity(a, b):
    """Phase-insensitive overlap |<a|b>|^2 between pure states."""
    return abs(np.vdot(a, b)) ** 2
