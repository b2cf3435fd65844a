"""The majorization flow: a nonlinear semigroup on the probability simplex.

``flow_point(r, eps)`` is the unique element of the total-variation ball of
radius ``eps`` around ``r`` that is majorized by every other element of the
ball.  The trajectory ``eps -> flow_point(r, eps)`` is piecewise affine: mass
drains from the group of largest entries into the group of smallest entries
at rates ``1/k`` (``k`` the group multiplicity) until two groups meet, at
which point the direction changes.  All computation happens on the grouped
spectrum, so a full path costs O(d) group updates.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

import numpy as np

from .errors import EpsOutOfRangeError
from .simplex import (
    TOL_GROUP,
    GroupedSpectrum,
    ProbVec,
    group_spectrum,
    sort_desc,
    tv_distance,
    uniform,
)


@dataclass(frozen=True)
class Generator:
    """Flow direction at a point, plus how long that direction stays valid.

    ``direction`` sums to zero and has half 1-norm equal to 1 away from the
    uniform vector; ``step_cap`` is the affine-segment length after which
    entry groups merge and the direction must be recomputed.
    """

    direction: np.ndarray
    step_cap: float


def _tv_to_uniform(values: np.ndarray, mults: np.ndarray) -> float:
    d = int(mults.sum())
    u = 1.0 / d
    above = values > u
    return float(((values - u) * mults)[above].sum())


def _step_cap(values: np.ndarray, mults: np.ndarray) -> float:
    """Length of the current affine segment in grouped coordinates.

    The top group descends at rate 1/k+ until it meets the second group and
    the bottom group rises at rate 1/k- until it meets the second-to-last;
    the segment also cannot outlast the remaining distance to uniform, which
    is the binding cap exactly when only two groups remain.
    """
    if values.size == 1:
        return 0.0
    cap_hi = mults[0] * (values[0] - values[1])
    cap_lo = mults[-1] * (values[-2] - values[-1])
    return float(min(cap_hi, cap_lo, _tv_to_uniform(values, mults)))


def _merge_groups(values: np.ndarray, mults: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    out_v = [values[0]]
    out_m = [int(mults[0])]
    for v, m in zip(values[1:], mults[1:]):
        if out_v[-1] - v <= TOL_GROUP:
            tot = out_m[-1] + int(m)
            out_v[-1] = (out_v[-1] * out_m[-1] + v * int(m)) / tot
            out_m[-1] = tot
        else:
            out_v.append(float(v))
            out_m.append(int(m))
    return np.array(out_v), np.array(out_m, dtype=int)


def _advance(values: np.ndarray, mults: np.ndarray, eps: float, record: bool):
    """Run the grouped flow for time ``eps``; optionally record breakpoints."""
    vals = values.astype(float).copy()
    ms = mults.copy()
    s = 0.0
    breakpoints = [(0.0, vals.copy(), ms.copy())] if record else None
    remaining = eps
    while remaining > 1e-300 and vals.size > 1:
        cap = _step_cap(vals, ms)
        t = min(remaining, cap)
        vals[0] -= t / ms[0]
        vals[-1] += t / ms[-1]
        vals, ms = _merge_groups(vals, ms)
        s += t
        remaining -= t
        if record:
            breakpoints.append((s, vals.copy(), ms.copy()))
    return vals, ms, breakpoints


def _expand(values: np.ndarray, mults: np.ndarray) -> np.ndarray:
    if values.size == 1:
        d = int(mults[0])
        return np.full(d, 1.0 / d)
    return np.repeat(values, mults)


def generator(r: ProbVec) -> Generator:
    """Flow direction and segment length at ``r``.

    The direction carries ``-1/k+`` on the entries tied for largest,
    ``+1/k-`` on the entries tied for smallest (ties resolved with the
    grouping tolerance), and zero elsewhere; at the uniform vector both the
    direction and the cap are zero.
    """
    gs = group_spectrum(r)
    d = r.dim
    if gs.values.size == 1:
        return Generator(np.zeros(d), 0.0)
    cap = _step_cap(gs.values, gs.mults)
    k_hi = int(gs.mults[0])
    k_lo = int(gs.mults[-1])
    _, perm = sort_desc(r)
    dir_sorted = np.zeros(d)
    dir_sorted[:k_hi] = -1.0 / k_hi
    dir_sorted[d - k_lo:] = 1.0 / k_lo
    direction = np.empty(d)
    direction[perm] = dir_sorted
    return Generator(direction, cap)


def flow_point(r: ProbVec, eps: float) -> ProbVec:
    """The majorization-minimal element of the radius-``eps`` ball around ``r``.

    The result is computed in the sorted frame and mapped back through the
    sorting permutation, so it preserves the entry ordering of ``r`` and
    sits at total-variation distance ``min(eps, tv_distance(r, uniform))``
    from it.  Radii beyond the distance to uniform saturate at uniform.
    """
    if not (0.0 <= eps <= 1.0) or math.isnan(eps):
        raise EpsOutOfRangeError(f"eps must lie in [0, 1], got {eps!r}")
    gs = group_spectrum(r)
    if gs.values.size == 1 or eps == 0.0:
        return r
    vals, ms, _ = _advance(gs.values, gs.mults, eps, record=False)
    flowed = _expand(vals, ms)
    _, perm = sort_desc(r)
    out = np.empty(r.dim)
    out[perm] = flowed
    return ProbVec(out)


@dataclass(frozen=True)
class FlowPath:
    """The full piecewise-affine trajectory from a sorted start down to uniform.

    ``breakpoints`` holds ``(s, point)`` pairs at the segment boundaries;
    the first is ``(0, start)`` and the last is ``(terminal_s, uniform)``.
    Between breakpoints the path is affine with the direction given by
    :func:`generator` at the segment start.
    """

    start: ProbVec
    breakpoints: tuple[tuple[float, ProbVec], ...]
    terminal_s: float

    def at(self, s: float) -> ProbVec:
        """Affine interpolation of the path at time ``s``."""
        if s < 0.0:
            raise EpsOutOfRangeError(f"path time must be nonnegative, got {s!r}")
        if s >= self.terminal_s:
            return self.breakpoints[-1][1]
        times = [bp[0] for bp in self.breakpoints]
        k = bisect.bisect_right(times, s) - 1
        s_k, p_k = self.breakpoints[k]
        gen = generator(p_k)
        return ProbVec(p_k.entries + (s - s_k) * gen.direction)


def flow_path(r: ProbVec) -> FlowPath:
    """Compute every breakpoint of the flow starting from ``r`` (sorted)."""
    start, _ = sort_desc(r)
    gs = group_spectrum(start)
    if gs.values.size == 1:
        return FlowPath(start, ((0.0, start),), 0.0)
    terminal = tv_distance(start, uniform(r.dim))
    _, _, raw = _advance(gs.values, gs.mults, terminal, record=True)
    bps = []
    for s, vals, ms in raw:
        bps.append((float(s), ProbVec(_expand(vals, ms))))
    return FlowPath(start, tuple(bps), terminal)


def verify_semigroup(r: ProbVec, s: float, t: float, tol: float = 1e-10) -> bool:
    """Check the composition law: flowing ``t`` then ``s`` equals flowing ``s + t``."""
    if s < 0.0 or t < 0.0 or s + t > 1.0:
        raise EpsOutOfRangeError("need s, t >= 0 with s + t <= 1")
    composed = flow_point(flow_point(r, t), s)
    direct = flow_point(r, s + t)
    return tv_distance(composed, direct) < tol
