"""Random permutation-symmetric state baselines.

The mean single-qubit linear entropy over Haar-random pure states of the
(N+1)-dimensional symmetric subspace is (N-1)/(2N); Monte Carlo sampling
here provides the numeric cross-check and error bars.
"""

from dataclasses import dataclass

import numpy as np

from .entanglement import linear_entropy_series


@dataclass(frozen=True)
class RmtBaseline:
    """Analytic baseline plus a Monte Carlo estimate of the same mean."""

    num_qubits: int
    s_rmt: float
    sample_mean: float
    sample_sem: float
    n_samples: int


def s_rmt(num_qubits):
    """Mean single-qubit linear entropy of a random symmetric state."""
    if num_qubits < 2:
        raise ValueError("need at least two qubits")
    return (num_qubits - 1) / (2.0 * num_qubits)


def sample_random_symmetric(num_qubits, n_samples, seed, batch=4096):
    """Monte Carlo estimate of the random-symmetric-state entropy baseline.

    Haar-uniform pure states are drawn as normalized complex-Gaussian
    amplitude vectors from np.random.default_rng(seed) (PCG64, stable
    across runs).  Returns an RmtBaseline with mean and standard error.
    """
    if num_qubits < 2:
        raise ValueError("need at least two qubits")
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    dim = num_qubits + 1
    total = 0.0
    total_sq = 0.0
    done = 0
    while done < n_samples:
        m = min(batch, n_samples - done)
        g = rng.standard_normal((m, dim)) + 1j * rng.standard_normal((m, dim))
        g /= np.linalg.norm(g, axis=1)[:, None]
        s = linear_entropy_series(g)
        total += float(np.sum(s))
        total_sq += float(np.sum(s * s))
        done += m
    mean = total / n_samples
    var = max(total_sq / n_samples - mean * mean, 0.0)
    sem = np.sqrt(var / n_samples) if n_samples > 1 else 0.0
    return RmtBaseline(num_qubits, s_rmt(num_qubits), mean, sem, n_samples)
