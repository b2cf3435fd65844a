"""Density matrices: spectra, trace distance, flow on states, Gibbs identities.

The eigensolver is a cyclic Jacobi iteration on the real symmetric embedding
[[A, -B], [B, A]] of a complex Hermitian matrix A + iB (real inputs skip the
embedding).  That keeps the quantum layer self-contained and adequate for the
desk scales targeted here (d up to a few dozen).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .entropy import LN2, catalogue, eval_entropy
from .errors import BadTemperatureError, DimMismatchError, NotConvergedError
from .flow import flow_point
from .simplex import TOL_GROUP, ProbVec, make_probvec

HERM_TOL = 1e-10
TRACE_TOL = 1e-10
EIG_FLOOR = -1e-10
_OFF_TOL = 1e-12
_MAX_SWEEPS = 100


def _jacobi(a: np.ndarray, want_vectors: bool):
    """Cyclic Jacobi diagonalization of a real symmetric matrix.

    Returns (eigenvalues, eigenvector_columns_or_None); converged when the
    off-diagonal Frobenius norm drops below 1e-12.
    """
    a = np.array(a, dtype=float)
    n = a.shape[0]
    v = np.eye(n) if want_vectors else None
    if n == 1:
        return np.diag(a).copy(), v
    for _ in range(_MAX_SWEEPS):
        off = math.sqrt(max(float(np.sum(a * a) - np.sum(np.diag(a) ** 2)), 0.0))
        if off < _OFF_TOL:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                tau = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.sqrt(1.0 + tau * tau)) \
                    if tau != 0.0 else 1.0
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                a[p, p] -= t * apq
                a[q, q] += t * apq
                a[p, q] = a[q, p] = 0.0
                mask = np.ones(n, dtype=bool)
                mask[p] = mask[q] = False
                aip = a[mask, p].copy()
                aiq = a[mask, q].copy()
                a[mask, p] = a[p, mask] = c * aip - s * aiq
                a[mask, q] = a[q, mask] = s * aip + c * aiq
                if v is not None:
                    vip = v[:, p].copy()
                    viq = v[:, q].copy()
                    v[:, p] = c * vip - s * viq
                    v[:, q] = s * vip + c * viq
    raise NotConvergedError(f"Jacobi sweeps exhausted ({_MAX_SWEEPS})")


def _is_effectively_real(m: np.ndarray) -> bool:
    return not np.iscomplexobj(m) or float(np.abs(m.imag).max()) == 0.0


def _embed(h: np.ndarray) -> np.ndarray:
    a = h.real
    b = h.imag
    return np.block([[a, -b], [b, a]])


def _check_hermitian(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if float(np.abs(m - m.conj().T).max()) > HERM_TOL:
        raise ValueError("matrix is not Hermitian within tolerance")


def hermitian_eigenvalues(mat) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted in non-increasing order."""
    m = np.asarray(mat)
    _check_hermitian(m)
    if _is_effectively_real(m):
        vals, _ = _jacobi(np.asarray(m.real, dtype=float), False)
        return np.sort(vals)[::-1]
    vals, _ = _jacobi(_embed(m), False)
    vals = np.sort(vals)[::-1]
    # the embedding doubles every eigenvalue; keep one of each adjacent pair
    return vals[::2]


@dataclass(frozen=True)
class DensityMatrix:
    """A Hermitian, unit-trace, positive-semidefinite matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        _check_hermitian(m)
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"trace is {tr!r}, not 1")
        m = 0.5 * (m + m.conj().T)
        lo = float(hermitian_eigenvalues(m).min())
        if lo < EIG_FLOOR:
            raise ValueError(f"matrix has eigenvalue {lo!r} below {EIG_FLOOR}")
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


def spectrum_sorted(rho: DensityMatrix) -> ProbVec:
    """Eigenvalues of the state, sorted descending, as a probability vector."""
    vals = hermitian_eigenvalues(rho.entries)
    return make_probvec(np.clip(vals, 0.0, None))


def trace_distance(rho: DensityMatrix, sigma: DensityMatrix) -> float:
    """Half the sum of absolute eigenvalues of the difference."""
    if rho.dim != sigma.dim:
        raise DimMismatchError(f"dims {rho.dim} and {sigma.dim} differ")
    vals = hermitian_eigenvalues(rho.entries - sigma.entries)
    return 0.5 * float(np.abs(vals).sum())


def _grouped_eigensystem(m: np.ndarray):
    """Sorted eigenvalues with eigenvectors, grouped by degeneracy.

    Returns (values, columns, group_slices, doubled) where columns are the
    eigenvector columns in sorted order (of the embedding, when complex) and
    group_slices mark runs of eigenvalues within the grouping tolerance.
    """
    real = _is_effectively_real(m)
    work = np.asarray(m.real, dtype=float) if real else _embed(m)
    vals, vecs = _jacobi(work, True)
    order = np.argsort(-vals, kind="stable")
    vals = vals[order]
    vecs = vecs[:, order]
    cuts = np.flatnonzero(np.diff(vals) < -TOL_GROUP) + 1
    starts = np.concatenate(([0], cuts))
    stops = np.concatenate((cuts, [vals.size]))
    slices = list(zip(starts.tolist(), stops.tolist()))
    return vals, vecs, slices, not real


def flow_state(rho: DensityMatrix, eps: float) -> DensityMatrix:
    """Flow applied in the eigenbasis: same projectors, flowed eigenvalues."""
    vals, vecs, slices, doubled = _grouped_eigensystem(rho.entries)
    d = rho.dim
    mult_unit = 2 if doubled else 1
    group_vals = []
    group_mults = []
    for a, b in slices:
        size = b - a
        if size % mult_unit:
            raise NotConvergedError("embedded eigenvalue pairing failed")
        group_vals.append(float(vals[a:b].mean()))
        group_mults.append(size // mult_unit)
    spectrum = make_probvec(np.clip(np.repeat(group_vals, group_mults), 0.0, None))
    flowed = flow_point(spectrum, eps).entries
    offsets = np.concatenate(([0], np.cumsum(group_mults)))
    flowed_group = [float(flowed[offsets[i]]) for i in range(len(group_vals))]
    per_column = np.repeat(flowed_group, [b - a for a, b in slices])
    if doubled:
        x = vecs[:d]
        y = vecs[d:]
        vc = x + 1j * y
        out = 0.5 * (vc * per_column) @ vc.conj().T
    else:
        out = (vecs * per_column) @ vecs.T
    out = 0.5 * (out + out.conj().T)
    return DensityMatrix(out)


def _log_partition(energies: np.ndarray, temp: float) -> float:
    w = -energies / temp
    m = float(w.max())
    return m + math.log(float(np.exp(w - m).sum()))


def free_energy_identity_check(hamiltonian, t0: float, t: float) -> float:
    """Residual of the Gibbs-state identity linking an order-t0/t entropy to
    the free-energy difference quotient between temperatures t0 and t.

    Natural-log conventions with unit Boltzmann constant; the base-2 entropy
    value is converted to nats before comparison.  Returns the absolute
    residual, which vanishes (to rounding) for every finite Hamiltonian.
    """
    if t0 <= 0.0 or t <= 0.0:
        raise BadTemperatureError("temperatures must be positive")
    if t == t0:
        raise BadTemperatureError("temperatures must differ")
    energies = hermitian_eigenvalues(np.asarray(hamiltonian))
    ln_z0 = _log_partition(energies, t0)
    weights = np.exp(-energies / t0 - ln_z0)
    state = make_probvec(weights)
    alpha = t0 / t
    entropy_nats = eval_entropy(catalogue("renyi", alpha=alpha), state) * LN2
    free = lambda temp: -temp * _log_partition(energies, temp)
    quotient = (free(t) - free(t0)) / (t - t0)
    return abs(entropy_nats + quotient)


def density_matrix_from_json(doc: dict) -> DensityMatrix:
    """Build a state from {"dim": d, "re": [[...]], "im": [[...]]}."""
    d = int(doc["dim"])
    re = np.asarray(doc["re"], dtype=float)
    im_raw = doc.get("im")
    im = np.zeros((d, d)) if im_raw is None else np.asarray(im_raw, dtype=float)
    if re.shape != (d, d) or im.shape != (d, d):
        raise ValueError(f"re/im must be {d}x{d} matrices")
    return DensityMatrix(re + 1j * im)


def load_density_matrix(path) -> DensityMatrix:
    with open(path, "r", encoding="utf-8") as fh:
        return density_matrix_from_json(json.load(fh))
