"""Classical limit of the kicked top: an area-preserving map of the unit
sphere, its orbits, tangent-map stability, and Lyapunov estimation.

Points are (x, y, z) direction cosines with x^2 + y^2 + z^2 = 1.  One period
twists about z by an angle proportional to x, then rotates by pi/2 about y:
(x, y, z) -> (z cos(k x) + y sin(k x), -z sin(k x) + y cos(k x), -x).
"""

import numpy as np

_NORM_TOL = 1e-12


def _validate_point(pt):
    pt = np.asarray(pt, dtype=float)
    if pt.shape != (3,):
        raise ValueError("point must be a length-3 vector")
    if abs(pt @ pt - 1.0) > 1e-10:
        raise ValueError(f"point is not on the unit sphere: |r|^2 = {pt @ pt}")
    return pt


def classical_step(pt, kappa0):
    """One period of the classical map applied to a unit vector."""
    x, y, z = _validate_point(pt)
    c, s = np.cos(kappa0 * x), np.sin(kappa0 * x)
    return np.array([z * c + y * s, -z * s + y * c, -x])


def orbit(pt, kappa0, n):
    """The first n iterates of the map as an (n, 3) array.

    Each iterate is renormalized; the drift removed per step stays below
    1e-12 since both sub-steps are exact rotations.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pt = _validate_point(pt)
    out = np.empty((n, 3))
    for i in range(n):
        pt = classical_step(pt, kappa0)
        norm = np.linalg.norm(pt)
        if abs(norm - 1.0) > _NORM_TOL:
            raise RuntimeError(f"norm drift {abs(norm - 1.0):.2e} exceeds {_NORM_TOL}")
        pt = pt / norm
        out[i] = pt
    return out


def jacobian(pt, kappa0):
    """Tangent map (3x3 matrix of partial derivatives) at a point."""
    x, y, z = _validate_point(pt)
    c, s = np.cos(kappa0 * x), np.sin(kappa0 * x)
    # d/dx also acts through the twist angle kappa0 * x
    return np.array(
        [
            [kappa0 * (y * c - z * s), s, c],
            [kappa0 * (-y * s - z * c), c, -s],
            [-1.0, 0.0, 0.0],
        ]
    )


def fixed_point_stability(kappa0):
    """Linear stability of the fixed point (0, 1, 0).

    The 3x3 tangent map is restricted to the (x, z) tangent plane at the
    fixed point; the radial multiplier is trivially 1 and is discarded.
    Returns (stable, (multiplier1, multiplier2)); stable iff the pair lies
    on the unit circle, i.e. |trace| <= 2.
    """
    if kappa0 < 0:
        raise ValueError("kappa0 must be >= 0")
    j = jacobian(np.array([0.0, 1.0, 0.0]), kappa0)
    # tangent plane at (0,1,0) is spanned by e_x and e_z
    block = j[np.ix_([0, 2], [0, 2])]
    mult = np.linalg.eigvals(block.astype(complex))
    stable = abs(np.trace(block)) <= 2.0
    return bool(stable), (complex(mult[0]), complex(mult[1]))


def stability_boundary(lo=1.0, hi=3.0, tol=1e-6):
    """Bisect for the torsion strength where the fixed point loses stability."""
    if not fixed_point_stability(lo)[0] or fixed_point_stability(hi)[0]:
        raise ValueError("bracket does not straddle the stability boundary")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if fixed_point_stability(mid)[0]:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def lyapunov(pt, kappa0, n_steps=10000, n_transient=1000, seed=None):
    """Largest Lyapunov exponent estimate by tangent-vector renormalization.

    Discards a transient, then averages log stretching factors of a tangent
    vector (projected back onto the local tangent plane) over n_steps.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    pt = _validate_point(pt)
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(3)
    v -= (v @ pt) * pt
    v /= np.linalg.norm(v)
    total = 0.0
    for i in range(n_transient + n_steps):
        j = jacobian(pt, kappa0)
        pt = classical_step(pt, kappa0)
        pt /= np.linalg.norm(pt)
        v = j @ v
        v -= (v @ pt) * pt
        stretch = np.linalg.norm(v)
        if stretch == 0.0:
            raise RuntimeError("tangent vector collapsed")
        v /= stretch
        if i >= n_transient:
            total += np.log(stretch)
    return total / n_steps
