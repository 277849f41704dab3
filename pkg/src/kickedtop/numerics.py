"""Dense complex linear algebra and Chebyshev helpers used across the package.

Eigendecompositions are delegated to LAPACK via numpy; everything here is a
pure function of its inputs.
"""

import numpy as np

# Beyond this order the three-term recurrence is replaced by the trigonometric
# form cos(n*arccos x); our arguments stay well inside (-1, 1) so the arccos
# branch is harmless and evaluation stays O(1) for tunneling-scale n.
_RECURRENCE_MAX = 1024

_DOMAIN_TOL = 1e-12


def _check_domain(x):
    if abs(x) > 1.0 + _DOMAIN_TOL:
        raise ValueError(f"Chebyshev argument out of domain: |{x}| > 1")
    return min(1.0, max(-1.0, x))


def cheb_t(x, n):
    """First-kind Chebyshev polynomial T_n(x) = cos(n*arccos x), |x| <= 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = _check_domain(x)
    if n > _RECURRENCE_MAX:
        return np.cos(n * np.arccos(x))
    if n == 0:
        return 1.0
    t_prev, t_cur = 1.0, x
    for _ in range(n - 1):
        t_prev, t_cur = t_cur, 2.0 * x * t_cur - t_prev
    return t_cur


def cheb_u(x, n_minus_1):
    """Second-kind Chebyshev polynomial U_{n-1}(x); U_{-1} = 0, U_0 = 1."""
    if n_minus_1 < -1:
        raise ValueError("index must be >= -1")
    x = _check_domain(x)
    if n_minus_1 == -1:
        return 0.0
    if n_minus_1 > _RECURRENCE_MAX:
        theta = np.arccos(x)
        s = np.sin(theta)
        if s < 1e-12:
            # U_{n-1}(+-1) = (+-1)^(n-1) * n
            n = n_minus_1 + 1
            return float(n if x > 0 else (-1) ** n_minus_1 * n)
        return np.sin((n_minus_1 + 1) * theta) / s
    if n_minus_1 == 0:
        return 1.0
    u_prev, u_cur = 1.0, 2.0 * x
    for _ in range(n_minus_1 - 1):
        u_prev, u_cur = u_cur, 2.0 * x * u_cur - u_prev
    return u_cur


def cheb_t_series(x, n_max):
    """T_n(x) for n = 0..n_max as an array (vectorized trig evaluation)."""
    x = _check_domain(x)
    n = np.arange(n_max + 1)
    return np.cos(n * np.arccos(x))


def cheb_u_series(x, n_max):
    """U_{n-1}(x) for n = 0..n_max as an array; entry 0 is U_{-1} = 0."""
    x = _check_domain(x)
    n = np.arange(n_max + 1)
    theta = np.arccos(x)
    s = np.sin(theta)
    if s < 1e-12:
        # U_{n-1}(+-1) = (+-1)^(n-1) * n
        return n * (1.0 if x > 0 else (-1.0) ** ((n - 1) % 2))
    return np.sin(n * theta) / s


def herm_eig(m, tol=1e-10):
    """Eigendecomposition of a Hermitian matrix: m = V diag(w) V^dag.

    Returns (eigenvalues ascending, eigenvector columns).
    """
    m = np.asarray(m, dtype=complex)
    dev = np.linalg.norm(m - m.conj().T)
    if dev > tol * max(1.0, np.linalg.norm(m)):
        raise ValueError(f"matrix is not Hermitian (deviation {dev:.2e})")
    w, v = np.linalg.eigh(m)
    return w, v


def psd_sqrt(m):
    """Hermitian PSD square root; slightly negative eigenvalues are clamped."""
    m = np.asarray(m, dtype=complex)
    w, v = herm_eig(m, tol=1e-9)
    tr = max(np.real(np.trace(m)), 1e-300)
    if w[0] < -1e-6 * tr:
        raise ValueError(f"matrix is not PSD (min eigenvalue {w[0]:.2e})")
    w = np.clip(w, 0.0, None)
    return (v * np.sqrt(w)) @ v.conj().T


def unitary_power(u, n, tol=1e-10):
    """u^n for a unitary matrix by repeated squaring."""
    u = np.asarray(u, dtype=complex)
    d = u.shape[0]
    if np.linalg.norm(u.conj().T @ u - np.eye(d)) > tol:
        raise ValueError("matrix is not unitary")
    if n < 0:
        raise ValueError("n must be non-negative")
    result = np.eye(d, dtype=complex)
    base = u.copy()
    while n:
        if n & 1:
            result = result @ base
        n >>= 1
        if n:
            base = base @ base
    return result
