"""Brute-force cross-checks independent of the flow's closed forms.

Everything here is sampling plus direct evaluation: ball maximization by
search, one-sided finite differences with Richardson extrapolation, and
majorization-pair generation by averaging transforms.  The test suite uses
these as the second route against the analytic machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import BoundaryError, EpsOutOfRangeError
from .flow import flow_point
from .simplex import ProbVec, group_spectrum, make_probvec


@dataclass(frozen=True)
class OracleConfig:
    samples: int = 1000
    grid_rays: int = 64
    fd_step: float = 1e-5
    seed: int = 0

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if not (0.0 < self.fd_step <= 1e-3):
            raise ValueError("fd_step must lie in (0, 1e-3]")


def _directions(rng: np.random.Generator, r: np.ndarray, n: int) -> np.ndarray:
    """Zero-sum directions of unit TV length whose negative part respects r's support."""
    d = r.size
    add = rng.dirichlet(np.ones(d), size=n)
    support = r > 0
    w = rng.random((n, d)) * support
    w /= w.sum(axis=1, keepdims=True)
    v = add - w
    norm = 0.5 * np.abs(v).sum(axis=1, keepdims=True)
    norm[norm < 1e-15] = 1.0
    return v / norm


def _max_steps(r: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Largest step along each direction keeping all entries nonnegative."""
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(dirs < 0, r[None, :] / -dirs, np.inf)
    return ratios.min(axis=1)


def ball_sample(r: ProbVec, eps: float, n: int, seed: int) -> list[ProbVec]:
    """Sample ``n`` points of the TV ball around ``r``, half on its boundary.

    Each sample moves along a random zero-sum direction by a feasible step,
    so its distance from ``r`` is exactly the chosen radius (the full eps
    for boundary samples whenever the ball boundary is reachable, retried
    over fresh directions when a first draw falls short).
    """
    if not (0.0 < eps <= 1.0):
        raise EpsOutOfRangeError(f"eps must lie in (0, 1], got {eps!r}")
    if n == 0:
        return []
    rng = np.random.default_rng(seed)
    rr = r.entries
    boundary = rng.random(n) < 0.5
    targets = np.where(boundary, eps, eps * rng.random(n))
    dirs = _directions(rng, rr, n)
    caps = _max_steps(rr, dirs)
    for _ in range(40):
        short = boundary & (caps < targets)
        if not short.any():
            break
        fresh = _directions(rng, rr, int(short.sum()))
        fresh_caps = _max_steps(rr, fresh)
        better = fresh_caps > caps[short]
        idx = np.flatnonzero(short)[better]
        dirs[idx] = fresh[better]
        caps[idx] = fresh_caps[better]
    steps = np.minimum(targets, caps)
    pts = rr[None, :] + steps[:, None] * dirs
    return [ProbVec(np.clip(row, 0.0, None)) for row in pts]


def ball_max_search(f: Callable[[ProbVec], float], r: ProbVec, eps: float,
                    cfg: OracleConfig) -> tuple[float, ProbVec]:
    """Search maximum of ``f`` over the TV ball: random samples plus the flow point."""
    candidates = ball_sample(r, eps, cfg.samples, cfg.seed)
    candidates.append(r)
    candidates.append(flow_point(r, eps))
    best_val = -np.inf
    best = r
    for q in candidates:
        v = float(f(q))
        if v > best_val:
            best_val, best = v, q
    return best_val, best


def fd_gamma(f: Callable[[ProbVec], float], r: ProbVec, cfg: OracleConfig) -> float:
    """One-sided derivative of ``f`` along the flow, Richardson extrapolated."""
    if float(r.entries.min()) <= 0.0:
        raise BoundaryError("finite differences need interior points")
    if group_spectrum(r).values.size == 1:
        raise BoundaryError("derivative direction undefined at the uniform vector")
    h = cfg.fd_step
    f0 = float(f(r))
    d1 = (float(f(flow_point(r, h))) - f0) / h
    d2 = (float(f(flow_point(r, h / 2.0))) - f0) / (h / 2.0)
    return 2.0 * d2 - d1


def majorization_pairs(d: int, n: int, seed: int) -> list[tuple[ProbVec, ProbVec]]:
    """Pairs (p, q) with q majorizing p, built by averaging random coordinate pairs."""
    if d < 2:
        raise ValueError("dimension must be at least 2")
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        q = make_probvec(rng.dirichlet(np.ones(d)))
        p = q.entries.copy()
        for _ in range(int(rng.integers(1, 2 * d + 1))):
            i, j = rng.choice(d, size=2, replace=False)
            lam = float(rng.random())
            pi, pj = p[i], p[j]
            p[i] = lam * pi + (1.0 - lam) * pj
            p[j] = lam * pj + (1.0 - lam) * pi
        out.append((make_probvec(p), q))
    return out
