"""Reduced density matrices of permutation-symmetric states and the
entanglement measures built on them (linear entropy, Wootters concurrence).

RDMs are computed directly in the Dicke basis using the splitting
|D^N_k> = sqrt((N-k)/N) |0>|D^(N-1)_k> + sqrt(k/N) |1>|D^(N-1)_(k-1)>,
which keeps the cost O(N) per matrix entry and enables scans up to N ~ 100.
"""

import numpy as np

from .numerics import psd_sqrt

_EIG_CLAMP = -1e-9


def _validate_rdm(rho, tol=1e-8):
    if abs(np.trace(rho).real - 1.0) > tol or np.linalg.norm(rho - rho.conj().T) > tol:
        raise ValueError("invalid reduced density matrix")
    return rho


def rdm1(state):
    """Single-qubit reduced density matrix of a symmetric N-qubit state."""
    c = np.asarray(state, dtype=complex)
    n = c.shape[0] - 1
    k = np.arange(n + 1)
    p = np.abs(c) ** 2
    r00 = np.sum((n - k) / n * p)
    r11 = np.sum(k / n * p)
    kk = np.arange(n)
    r01 = np.sum(np.sqrt((n - kk) * (kk + 1)) / n * c[:-1] * np.conj(c[1:]))
    rho = np.array([[r00, r01], [np.conj(r01), r11]])
    return _validate_rdm(rho)


def rdm1_series(states):
    """Vectorized rdm1 over a (num, dim) stack of states; returns (r00, r01)
    arrays (r11 = 1 - r00)."""
    c = np.asarray(states, dtype=complex)
    n = c.shape[1] - 1
    k = np.arange(n + 1)
    p = np.abs(c) ** 2
    r00 = p @ ((n - k) / n)
    kk = np.arange(n)
    w = np.sqrt((n - kk) * (kk + 1)) / n
    r01 = np.sum(w[None, :] * c[:, :-1] * np.conj(c[:, 1:]), axis=1)
    return np.real(r00), r01


def rdm2(state):
    """Two-qubit reduced density matrix (4x4, basis |00>,|01>,|10>,|11>)."""
    c = np.asarray(state, dtype=complex)
    n = c.shape[0] - 1
    if n < 2:
        raise ValueError("need at least two qubits")
    # a[q, m]: amplitude on (two-qubit basis state q) x |D^(N-2)_m>
    a = np.zeros((4, n - 1), dtype=complex)
    denom = n * (n - 1)
    for k in range(n + 1):
        if c[k] == 0:
            continue
        if k <= n - 2:
            a[0, k] += c[k] * np.sqrt((n - k) * (n - k - 1) / denom)
        if 1 <= k <= n - 1:
            w = c[k] * np.sqrt(k * (n - k) / denom)
            a[1, k - 1] += w
            a[2, k - 1] += w
        if k >= 2:
            a[3, k - 2] += c[k] * np.sqrt(k * (k - 1) / denom)
    rho = a @ a.conj().T
    return _validate_rdm(rho)


def rdm2_series(states):
    """Vectorized rdm2 over a (num, dim) stack; returns (num, 4, 4)."""
    c = np.asarray(states, dtype=complex)
    n = c.shape[1] - 1
    if n < 2:
        raise ValueError("need at least two qubits")
    m = np.arange(n - 1)
    denom = n * (n - 1)
    a = np.zeros((c.shape[0], 4, n - 1), dtype=complex)
    a[:, 0, :] = c[:, : n - 1] * np.sqrt((n - m) * (n - m - 1) / denom)
    w = c[:, 1:n] * np.sqrt((m + 1) * (n - m - 1) / denom)
    a[:, 1, :] = w
    a[:, 2, :] = w
    a[:, 3, :] = c[:, 2:] * np.sqrt((m + 2) * (m + 1) / denom)
    return a @ a.conj().transpose(0, 2, 1)


def concurrence_general_series(rhos):
    """Batched concurrence_general over a (num, 4, 4) stack of states."""
    rhos = np.asarray(rhos, dtype=complex)
    w, v = np.linalg.eigh(rhos)
    if w.min() < -1e-8:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w.min():.2e})")
    w = np.clip(w, 0.0, None)
    root = (v * np.sqrt(w)[:, None, :]) @ v.conj().transpose(0, 2, 1)
    sy2 = np.zeros((4, 4))
    sy2[0, 3] = sy2[3, 0] = -1.0
    sy2[1, 2] = sy2[2, 1] = 1.0
    sv = np.linalg.svd(root @ sy2 @ root.conj(), compute_uv=False)
    return np.clip(sv[:, 0] - sv[:, 1] - sv[:, 2] - sv[:, 3], 0.0, None)


def linear_entropy(rho):
    """1 - Tr rho^2 of a density matrix."""
    rho = np.asarray(rho, dtype=complex)
    return float(np.real(1.0 - np.trace(rho @ rho)))


def linear_entropy_series(states):
    """Single-qubit linear entropy for each state in a (num, dim) stack."""
    r00, r01 = rdm1_series(states)
    return 2.0 * (r00 * (1.0 - r00) - np.abs(r01) ** 2)


def concurrence_general(rho):
    """Wootters concurrence of a two-qubit density matrix.

    The sqrt-eigenvalues of rho (sy x sy) rho* (sy x sy) are evaluated as the
    singular values of sqrt(rho) (sy x sy) sqrt(rho)*, which is the same
    spectrum but numerically stable near zero.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("concurrence requires a 4x4 density matrix")
    sy2 = np.zeros((4, 4))
    sy2[0, 3] = sy2[3, 0] = -1.0
    sy2[1, 2] = sy2[2, 1] = 1.0
    root = psd_sqrt(rho)
    sv = np.linalg.svd(root @ sy2 @ root.conj(), compute_uv=False)
    return float(max(0.0, sv[0] - sv[1] - sv[2] - sv[3]))


def concurrence_xstate(rho, tol=1e-9):
    """Closed-form concurrence for an X-shaped two-qubit density matrix:
    2 max(0, |rho_23| - sqrt(rho_11 rho_44), |rho_14| - sqrt(rho_22 rho_33)).
    """
    rho = np.asarray(rho, dtype=complex)
    off = [(0, 1), (0, 2), (1, 3), (2, 3)]
    for i, j in off:
        if abs(rho[i, j]) > tol or abs(rho[j, i]) > tol:
            raise ValueError("density matrix is not X-shaped")
    d = np.real(np.diag(rho))
    c1 = abs(rho[1, 2]) - np.sqrt(max(d[0] * d[3], 0.0))
    c2 = abs(rho[0, 3]) - np.sqrt(max(d[1] * d[2], 0.0))
    return float(2.0 * max(0.0, c1, c2))


def time_average(series):
    """Arithmetic mean of a (non-empty) series."""
    series = np.asarray(series, dtype=float)
    if series.size == 0:
        raise ValueError("empty series")
    return float(np.mean(series))


def running_average(series):
    """Running means of the series (convergence diagnostic)."""
    series = np.asarray(series, dtype=float)
    if series.size == 0:
        raise ValueError("empty series")
    return np.cumsum(series) / np.arange(1, series.size + 1)
