"""Distribution of the number of distinct outcomes among N i.i.d. draws.

The cumulative distribution admits an inclusion-exclusion expression over
subset power sums, exact for small outcome counts; the expected count has
the closed form M - sum_i (1 - p_i)^N and is N-Lipschitz in the underlying
distribution regardless of M.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import BadParamError, TooLargeError
from .simplex import ProbVec

#: Subset enumeration is O(2^M); beyond this only E[K], bounds, and
#: simulation are offered.
EXACT_LIMIT = 20


@dataclass(frozen=True)
class TrialSpec:
    """A distribution over M outcomes sampled independently N times."""

    p: ProbVec
    trials: int

    def __post_init__(self):
        if int(self.trials) != self.trials or self.trials < 1:
            raise BadParamError("trial count must be a positive integer")
        object.__setattr__(self, "trials", int(self.trials))

    @property
    def outcomes(self) -> int:
        return self.p.dim


def _binom(n: int, k: int) -> int:
    if k == 0:
        return 1
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _subset_power_sums(p: np.ndarray, n_trials: int, upto: int) -> list[float]:
    """S[i] = sum over index subsets of size i of (subset probability)^N."""
    sums = [0.0]
    for size in range(1, upto + 1):
        total = 0.0
        for combo in itertools.combinations(p, size):
            total += math.fsum(combo) ** n_trials
        sums.append(total)
    return sums


def cdf_distinct(spec: TrialSpec, j: int) -> float:
    """P[K <= j] by exact inclusion-exclusion over subset power sums."""
    m = spec.outcomes
    if m > EXACT_LIMIT:
        raise TooLargeError(f"exact mode supports at most {EXACT_LIMIT} outcomes")
    if not 1 <= j <= m:
        raise ValueError(f"j must lie in [1, {m}], got {j!r}")
    sums = _subset_power_sums(spec.p.entries, spec.trials, j)
    total = 0.0
    for i in range(1, j + 1):
        coeff = (-1) ** (j - i) * _binom(m - i - 1, j - i)
        if coeff:
            total += coeff * sums[i]
    return min(max(total, 0.0), 1.0)


def pmf_distinct(spec: TrialSpec) -> np.ndarray:
    """Exact pmf of the distinct count over 1..M."""
    m = spec.outcomes
    if m > EXACT_LIMIT:
        raise TooLargeError(f"exact mode supports at most {EXACT_LIMIT} outcomes")
    sums = _subset_power_sums(spec.p.entries, spec.trials, m)
    cdf = np.empty(m)
    for j in range(1, m + 1):
        acc = 0.0
        for i in range(1, j + 1):
            coeff = (-1) ** (j - i) * _binom(m - i - 1, j - i)
            if coeff:
                acc += coeff * sums[i]
        cdf[j - 1] = acc
    return np.diff(np.concatenate(([0.0], cdf)))


def expected_distinct(spec: TrialSpec) -> float:
    """E[K] = M - sum_i (1 - p_i)^N, exact for any M."""
    p = spec.p.entries
    return float(spec.outcomes - np.sum((1.0 - p) ** spec.trials))


class DistinctBound(NamedTuple):
    """Tight uniform bound on |E_p[K] - E_q[K]| plus the Lipschitz cap eps*N."""

    value: float
    lipschitz_cap: float


def distinct_uniform_bound(m: int, n_trials: int, eps: float) -> DistinctBound:
    """Tight bound on the expected-distinct-count gap at total variation eps."""
    if m < 2 or n_trials < 1:
        raise BadParamError("need at least 2 outcomes and 1 trial")
    if not (0.0 < eps <= 1.0):
        raise BadParamError(f"eps must lie in (0, 1], got {eps!r}")
    if eps <= 1.0 - 1.0 / m:
        value = ((m - 1.0) ** n_trials - (m - 1.0 - eps) ** n_trials) \
            / (m - 1.0) ** (n_trials - 1) - eps ** n_trials
    else:
        value = (m ** n_trials - (m - 1.0) ** n_trials) / m ** (n_trials - 1) - 1.0
    return DistinctBound(float(value), eps * n_trials)


def simulate_distinct(spec: TrialSpec, reps: int, rng_seed: int) -> np.ndarray:
    """Monte-Carlo pmf of the distinct count; deterministic given the seed."""
    if reps < 1:
        raise BadParamError("reps must be positive")
    rng = np.random.default_rng(rng_seed)
    draws = rng.choice(spec.outcomes, size=(reps, spec.trials), p=spec.p.entries)
    draws.sort(axis=1)
    counts = 1 + (np.diff(draws, axis=1) > 0).sum(axis=1)
    return np.bincount(counts, minlength=spec.outcomes + 1)[1:] / reps
