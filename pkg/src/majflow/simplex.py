"""Probability vectors, majorization order, and total-variation geometry.

Everything downstream (the flow, the entropy catalogue, the bound
calculators) is built on the primitives in this module.  All functions are
pure and all value types are immutable, so concurrent use is safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DimMismatchError, NegativeEntryError, SumNotOneError

#: Entries may undershoot zero by at most this much before being rejected.
TOL_NEG = 1e-12
#: A constructed vector's entries must sum to 1 within this tolerance.
TOL_SUM = 1e-12
#: Sums within this deviation from 1 are silently renormalized; worse is rejected.
TOL_RENORM = 1e-9
#: Entries closer than this are treated as a single multiplicity group.
TOL_GROUP = 1e-10
#: Slack allowed per partial sum when testing majorization.
TOL_MAJORIZE = 1e-12


@dataclass(frozen=True)
class ProbVec:
    """A point of the probability simplex.

    Construction validates simplex membership strictly (nonnegative entries,
    sum within ``TOL_SUM`` of 1).  To build one from possibly-dirty input
    (tiny negatives, sums off by rounding), use :func:`make_probvec`, which
    clamps and renormalizes within documented tolerances.
    """

    entries: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=float)
        if e.ndim != 1 or e.size == 0:
            raise ValueError("entries must form a nonempty 1-d sequence")
        if float(e.min()) < 0.0:
            raise NegativeEntryError(f"negative entry {float(e.min())!r}")
        s = float(e.sum())
        if abs(s - 1.0) > TOL_SUM:
            raise SumNotOneError(f"entries sum to {s!r}, not 1")
        e = e.copy()
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)

    @property
    def dim(self) -> int:
        return self.entries.size

    def __len__(self) -> int:
        return self.entries.size


def make_probvec(entries: Sequence[float]) -> ProbVec:
    """Validate and normalize raw input into a :class:`ProbVec`.

    Entries as low as ``-TOL_NEG`` are clamped to zero; sums within
    ``TOL_RENORM`` of 1 are renormalized.  Anything worse raises, so gross
    caller errors are not silently repaired.
    """
    e = np.asarray(entries, dtype=float)
    if e.ndim != 1 or e.size == 0:
        raise ValueError("entries must form a nonempty 1-d sequence")
    if float(e.min()) < -TOL_NEG:
        raise NegativeEntryError(f"entry {float(e.min())!r} below -{TOL_NEG}")
    e = np.clip(e, 0.0, None)
    s = float(e.sum())
    if abs(s - 1.0) > TOL_RENORM:
        raise SumNotOneError(f"entries sum to {s!r}, off by more than {TOL_RENORM}")
    return ProbVec(e / s)


def uniform(d: int) -> ProbVec:
    """The uniform distribution on ``d`` outcomes."""
    if d < 1:
        raise ValueError("dimension must be positive")
    return ProbVec(np.full(d, 1.0 / d))


def extremal(d: int) -> ProbVec:
    """The maximally concentrated vector (1, 0, ..., 0)."""
    if d < 1:
        raise ValueError("dimension must be positive")
    e = np.zeros(d)
    e[0] = 1.0
    return ProbVec(e)


def sort_desc(p: ProbVec) -> tuple[ProbVec, np.ndarray]:
    """Non-increasing rearrangement plus the permutation that produced it.

    Returns ``(sorted_p, perm)`` with ``sorted_p.entries[i] ==
    p.entries[perm[i]]``; ``perm`` therefore maps sorted slots back to the
    original positions.
    """
    perm = np.argsort(-p.entries, kind="stable")
    return ProbVec(p.entries[perm]), perm


def tv_distance(p: ProbVec, q: ProbVec) -> float:
    """Total variation distance, half the 1-norm of the difference."""
    if p.dim != q.dim:
        raise DimMismatchError(f"dims {p.dim} and {q.dim} differ")
    return 0.5 * float(np.abs(p.entries - q.entries).sum())


def majorizes(p: ProbVec, q: ProbVec) -> bool:
    """True iff ``p`` majorizes ``q``.

    Checked on sorted partial sums with ``TOL_MAJORIZE`` slack per sum so
    that rounding noise cannot manufacture spurious incomparability.
    """
    if p.dim != q.dim:
        raise DimMismatchError(f"dims {p.dim} and {q.dim} differ")
    cp = np.cumsum(np.sort(p.entries)[::-1])
    cq = np.cumsum(np.sort(q.entries)[::-1])
    if abs(cp[-1] - cq[-1]) > 1e-10:
        return False
    return bool(np.all(cp - cq >= -TOL_MAJORIZE))


@dataclass(frozen=True)
class GroupedSpectrum:
    """Distinct values of a sorted vector together with their multiplicities."""

    values: np.ndarray
    mults: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        m = np.asarray(self.mults, dtype=int)
        if v.ndim != 1 or v.size == 0 or v.shape != m.shape:
            raise ValueError("values and mults must be matching nonempty 1-d arrays")
        if np.any(m < 1):
            raise ValueError("multiplicities must be positive")
        if np.any(np.diff(v) >= 0):
            raise ValueError("values must be strictly decreasing")
        v = v.copy()
        m = m.copy()
        v.setflags(write=False)
        m.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "mults", m)

    @property
    def dim(self) -> int:
        return int(self.mults.sum())

    def reconstruct(self) -> ProbVec:
        """Expand back to a sorted probability vector."""
        return ProbVec(np.repeat(self.values, self.mults))


def group_spectrum(p: ProbVec) -> GroupedSpectrum:
    """Distinct sorted entries with multiplicities.

    Consecutive sorted entries whose gap is at most ``TOL_GROUP`` are merged
    into one group at their multiplicity-weighted mean.
    """
    s = np.sort(p.entries)[::-1]
    cuts = np.flatnonzero(np.diff(s) < -TOL_GROUP) + 1
    starts = np.concatenate(([0], cuts))
    stops = np.concatenate((cuts, [s.size]))
    values = np.array([s[a:b].mean() for a, b in zip(starts, stops)])
    mults = (stops - starts).astype(int)
    return GroupedSpectrum(values, mults)


@dataclass(frozen=True)
class SchurConvexityReport:
    """Outcome of a sampled Schur-convexity test."""

    passed: bool
    samples: int
    counterexample: Optional[tuple[np.ndarray, int, int, float]]


def schur_convexity_witness(
    f: Callable[[np.ndarray], float],
    samples: int,
    dim: int,
    rng_seed: int,
    step: float = 1e-6,
    tol: float = 1e-8,
) -> SchurConvexityReport:
    """Sample-test the pairwise-derivative criterion for Schur convexity.

    At random interior points ``p`` the quantity
    ``(p_i - p_j) * (d_i f - d_j f)`` must be nonnegative (within ``tol``)
    for every index pair.  Partial derivatives are central finite
    differences with the given step, so ``f`` must accept raw arrays
    slightly off the simplex.

    Returns a report carrying the first counterexample found, if any.
    """
    rng = np.random.default_rng(rng_seed)
    for _ in range(samples):
        p = rng.dirichlet(np.ones(dim))
        # stay clear of the boundary so the differencing stencil is in-domain
        p = (p + 10.0 * step) / (1.0 + 10.0 * step * dim)
        grad = np.empty(dim)
        for i in range(dim):
            e = np.zeros(dim)
            e[i] = step
            grad[i] = (f(p + e) - f(p - e)) / (2.0 * step)
        for i in range(dim):
            for j in range(i + 1, dim):
                v = (p[i] - p[j]) * (grad[i] - grad[j])
                if v < -tol:
                    return SchurConvexityReport(False, samples, (p, i, j, float(v)))
    return SchurConvexityReport(True, samples, None)
