"""Three-qubit tomography post-processing: readout-error correction,
linear-inversion density-matrix reconstruction, PSD projection, and
Uhlmann fidelity.

A measurement setting is a 3-character label over {I, X, Y, Z}; the 64
settings each contribute one 8-outcome population vector.  Readout errors
are modeled by a product of per-qubit column-stochastic confusion matrices
F_i = [[f0, 1 - f1], [1 - f0, f1]] acting on ideal populations.
"""

import csv
import warnings
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .numerics import herm_eig, psd_sqrt

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# basis-change rotations mapping the measured axis onto z
_HAD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_ROT = {
    "I": np.eye(2, dtype=complex),
    "Z": np.eye(2, dtype=complex),
    "X": _HAD,
    "Y": _HAD @ np.diag([1.0, -1j]),
}

_NEG_POP_LIMIT = -0.02


@dataclass(frozen=True)
class ReadoutFidelities:
    """Per-qubit readout fidelities f0 (prepare 0, read 0) and f1."""

    f0: tuple
    f1: tuple

    def __post_init__(self):
        if len(self.f0) != 3 or len(self.f1) != 3:
            raise ValueError("need three f0 and three f1 values")
        for v in (*self.f0, *self.f1):
            if not 0.5 < v <= 1.0:
                raise ValueError(f"fidelity {v} outside (0.5, 1]")


# fidelities of the reference experiment's three transmon qubits
DEFAULT_FIDELITIES = ReadoutFidelities(f0=(0.98, 0.98, 0.96), f1=(0.92, 0.94, 0.87))


@dataclass(frozen=True)
class MeasurementRecord:
    """One measurement setting with its 8 observed outcome populations."""

    setting: str
    populations: np.ndarray = field(repr=False)

    def __post_init__(self):
        if len(self.setting) != 3 or any(c not in "IXYZ" for c in self.setting):
            raise ValueError(f"bad setting label {self.setting!r}")
        p = np.asarray(self.populations, dtype=float)
        if p.shape != (8,):
            raise ValueError("populations must have 8 entries")
        if p.min() < -1e-9 or abs(p.sum() - 1.0) > 1e-6:
            raise ValueError("populations must be nonnegative and sum to 1")
        object.__setattr__(self, "populations", p)


@dataclass(frozen=True)
class ReconstructedState:
    """Reconstructed density matrix with optional fidelity to a target."""

    rho: np.ndarray = field(repr=False)
    fidelity_vs_target: float | None = None


def single_qubit_confusion(f0, f1):
    """2x2 column-stochastic readout confusion matrix [[f0, 1-f1], [1-f0, f1]]."""
    return np.array([[f0, 1.0 - f1], [1.0 - f0, f1]])


def correction_matrix(f):
    """8x8 confusion matrix F1 x F2 x F3 (Kronecker product)."""
    blocks = [single_qubit_confusion(f.f0[i], f.f1[i]) for i in range(3)]
    out = blocks[0]
    for b in blocks[1:]:
        out = np.kron(out, b)
    return out


def intrinsic_populations(rec, f):
    """Readout-corrected populations: solve F p_int = p_measured.

    Small negative components (inversion noise) are clamped to zero and the
    vector renormalized; components below -0.02 indicate malformed input and
    raise a warning before clamping.
    """
    fm = correction_matrix(f)
    p = np.linalg.solve(fm, rec.populations)
    if p.min() < _NEG_POP_LIMIT:
        warnings.warn(
            f"corrected population {p.min():.4f} below {_NEG_POP_LIMIT}; "
            "input data is likely inconsistent",
            stacklevel=2,
        )
    p = np.clip(p, 0.0, None)
    total = p.sum()
    if total <= 0.0:
        raise ValueError("corrected populations vanished")
    return p / total


def all_settings():
    """The 64 measurement-setting labels over {I,X,Y,Z}^3, lexicographic."""
    return ["".join(s) for s in product("IXYZ", repeat=3)]


def pauli_string(setting):
    """The 8x8 Pauli-string operator for a 3-character label."""
    op = _PAULI[setting[0]]
    for c in setting[1:]:
        op = np.kron(op, _PAULI[c])
    return op


def simulate_records(rho, f, seed=None, noise=0.0):
    """Forward-simulate the 64 measurement records for a density matrix.

    Each qubit is rotated so the requested axis maps onto z (identity for I
    and Z), ideal populations are the rotated diagonal, and the readout
    confusion matrix is applied.  Optional uniform noise of amplitude
    `noise` perturbs the populations (then clip and renormalize).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (8, 8):
        raise ValueError("expected an 8x8 density matrix")
    fm = correction_matrix(f)
    rng = np.random.default_rng(seed)
    records = []
    for setting in all_settings():
        rot = _ROT[setting[0]]
        for c in setting[1:]:
            rot = np.kron(rot, _ROT[c])
        ideal = np.real(np.diag(rot @ rho @ rot.conj().T))
        p = fm @ ideal
        if noise > 0.0:
            p = p + rng.uniform(-noise, noise, size=8)
            p = np.clip(p, 0.0, None)
        p = np.clip(p, 0.0, None)
        records.append(MeasurementRecord(setting, p / p.sum()))
    return records


def _project_psd_unit_trace(rho, tol=1e-12):
    """Nearest unit-trace PSD matrix by iterative eigenvalue clipping.

    Negative eigenvalues are zeroed and the trace excess is redistributed
    uniformly over the remaining positive ones, repeating until feasible.
    """
    w, v = herm_eig(rho, tol=1e-8)
    w = w + (1.0 - w.sum()) / w.size
    while True:
        neg = w < 0.0
        if not np.any(neg):
            break
        w[neg] = 0.0
        pos = ~neg
        w[pos] += (1.0 - w.sum()) / np.count_nonzero(pos)
    w = np.clip(w, 0.0, None)
    w /= w.sum()
    assert abs(w.sum() - 1.0) < tol * 10 + 1e-12
    return (v * w) @ v.conj().T


def reconstruct_density(records, f):
    """Linear-inversion reconstruction from all 64 measurement records.

    Computes <P> for every Pauli string by signing the corrected outcome
    populations (identity slots marginalized, i.e. counted with sign +1),
    forms rho = (1/8) sum <P> P, and projects onto the unit-trace PSD cone.
    """
    by_setting = {}
    for rec in records:
        if rec.setting in by_setting:
            raise ValueError(f"duplicate setting {rec.setting}")
        by_setting[rec.setting] = rec
    missing = [s for s in all_settings() if s not in by_setting]
    if missing:
        raise ValueError(f"missing settings: {missing[:4]}{'...' if len(missing) > 4 else ''}")

    bits = np.array(list(product((0, 1), repeat=3)))
    rho = np.zeros((8, 8), dtype=complex)
    for setting in all_settings():
        p = intrinsic_populations(by_setting[setting], f)
        signs = np.ones(8)
        for q, c in enumerate(setting):
            if c != "I":
                signs *= 1.0 - 2.0 * bits[:, q]
        expval = float(signs @ p)
        rho += expval * pauli_string(setting)
    rho /= 8.0
    return ReconstructedState(_project_psd_unit_trace(rho))


def uhlmann_fidelity(rho_t, rho_e):
    """Fidelity Tr sqrt(sqrt(rho_t) rho_e sqrt(rho_t)) between two states.

    Evaluated as the nuclear norm of sqrt(rho_t) sqrt(rho_e), which shares
    the required sqrt-eigenvalues and is numerically stable.
    """
    rho_t = np.asarray(rho_t, dtype=complex)
    rho_e = np.asarray(rho_e, dtype=complex)
    if rho_t.shape != rho_e.shape:
        raise ValueError("density matrices must have equal dimensions")
    sv = np.linalg.svd(psd_sqrt(rho_t) @ psd_sqrt(rho_e), compute_uv=False)
    return float(min(1.0, np.sum(sv)))


def write_records(path, records):
    """Write measurement records as CSV: setting,p000,...,p111."""
    header = ["setting"] + [f"p{b:03b}" for b in range(8)]
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for rec in records:
            w.writerow([rec.setting] + [f"{x:.12g}" for x in rec.populations])


def read_records(path):
    """Read measurement records from the CSV schema written by write_records."""
    expected = ["setting"] + [f"p{b:03b}" for b in range(8)]
    records = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != expected:
            raise ValueError(f"bad CSV header: {header}")
        for i, row in enumerate(reader, start=2):
            if len(row) != 9:
                raise ValueError(f"row {i}: expected 9 fields, got {len(row)}")
            try:
                pops = np.array([float(x) for x in row[1:]])
            except ValueError as exc:
                raise ValueError(f"row {i}: {exc}") from exc
            try:
                records.append(MeasurementRecord(row[0], pops))
            except ValueError as exc:
                raise ValueError(f"row {i}: {exc}") from exc
    return records
