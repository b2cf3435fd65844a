"""Entropies of the form h(sum_i phi(p_i)): catalogue, classification, flow derivative.

A family is *concave-type* when h is strictly increasing and concave and phi
is strictly concave, *convex-type* when h is strictly decreasing and convex
and phi is strictly convex.  Both types are strictly Schur concave, which is
what makes the flow the ball maximizer and drives every bound downstream.
The min-entropy sits outside this functional form and carries its own
evaluators.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import BadParamError, BoundaryError, DomainError, WrongClassError
from .flow import flow_point
from .simplex import ProbVec, group_spectrum

LN2 = math.log(2.0)

_STRICT_TOL = 1e-12


class EntropyClass(enum.Enum):
    CONCAVE_TYPE = "concave-type"
    CONVEX_TYPE = "convex-type"
    OTHER = "other"


@dataclass(frozen=True)
class EntropyFamily:
    """A symmetric entropy with outer/inner functions and their derivatives.

    All four callables are numpy-vectorized (scalar in, scalar out; array
    in, array out).  Families outside the h/phi form supply ``eval_fn`` and
    ``gamma_fn`` directly and leave the callables unused.
    """

    name: str
    h: Optional[Callable]
    h_prime: Optional[Callable]
    phi: Optional[Callable]
    phi_prime: Optional[Callable]
    classification: EntropyClass
    params: dict = field(default_factory=dict)
    eval_fn: Optional[Callable] = None
    gamma_fn: Optional[Callable] = None


@dataclass(frozen=True)
class GammaValue:
    """One-sided derivative of an entropy along the flow, at a point."""

    value: float
    at: ProbVec


@dataclass(frozen=True)
class ConcavityReport:
    """Verdict of the difference-quotient monotonicity test."""

    verdict: str  # "strict" | "weak" | "none"
    max_slope_increase: float


def validate_concavity(
    phi: Callable, grid: int = 200, lo: float = 1e-6, hi: float = 1.0
) -> ConcavityReport:
    """Classify concavity of ``phi`` on (0, 1] via its slope function.

    ``phi`` is concave iff the difference quotient
    ``(phi(x2) - phi(x1)) / (x2 - x1)`` is monotone decreasing in each
    argument, strictly so iff ``phi`` is strictly concave.  The quotient is
    evaluated on a grid and its consecutive increments inspected.
    """
    xs = np.linspace(lo, hi, grid)
    vals = np.asarray(phi(xs), dtype=float)
    diff_x = xs[:, None] - xs[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        slopes = (vals[:, None] - vals[None, :]) / diff_x
    worst = -math.inf
    for j in range(grid):
        col = slopes[np.arange(grid) != j, j]
        worst = max(worst, float(np.diff(col).max()))
    if worst < -_STRICT_TOL:
        return ConcavityReport("strict", worst)
    if worst <= _STRICT_TOL:
        return ConcavityReport("weak", worst)
    return ConcavityReport("none", worst)


def _h_sample_points(fam: EntropyFamily) -> np.ndarray:
    """Interior sample points of h's domain for a few representative dims."""
    pts = []
    for d in (2, 16, 64):
        a = float(fam.phi(1.0))
        b = float(d * fam.phi(1.0 / d))
        lo, hi = min(a, b), max(a, b)
        if hi - lo < 1e-12:
            continue
        pts.append(np.linspace(lo, hi, 33)[1:-1])
    if not pts:
        raise BadParamError(f"degenerate h domain for family {fam.name!r}")
    return np.concatenate(pts)


def _check_family(fam: EntropyFamily) -> EntropyFamily:
    """Validate base identities and the declared classification."""
    if fam.eval_fn is not None:
        return fam
    if abs(float(fam.phi(0.0))) > 1e-12:
        raise BadParamError(f"{fam.name}: phi(0) must vanish")
    if abs(float(fam.h(fam.phi(1.0)))) > 1e-12:
        raise BadParamError(f"{fam.name}: h(phi(1)) must vanish")
    if fam.classification is EntropyClass.OTHER:
        return fam
    xs = _h_sample_points(fam)
    hp = np.asarray(fam.h_prime(xs), dtype=float)
    span = (float(xs.min()), float(xs.max()))
    h_shape = validate_concavity(fam.h, grid=80, lo=span[0], hi=span[1])
    if fam.classification is EntropyClass.CONCAVE_TYPE:
        if not np.all(hp > 0):
            raise BadParamError(f"{fam.name}: h must be strictly increasing")
        if h_shape.verdict == "none":
            raise BadParamError(f"{fam.name}: h must be concave")
        if validate_concavity(fam.phi).verdict != "strict":
            raise BadParamError(f"{fam.name}: phi must be strictly concave")
    else:
        if not np.all(hp < 0):
            raise BadParamError(f"{fam.name}: h must be strictly decreasing")
        if validate_concavity(lambda x: -np.asarray(fam.h(x), float),
                              grid=80, lo=span[0], hi=span[1]).verdict == "none":
            raise BadParamError(f"{fam.name}: h must be convex")
        if validate_concavity(lambda x: -np.asarray(fam.phi(x), float)).verdict != "strict":
            raise BadParamError(f"{fam.name}: phi must be strictly convex")
    return fam


def _identity(x):
    return np.asarray(x, dtype=float)


def _ones_like(x):
    return np.ones_like(np.asarray(x, dtype=float))


def _shannon_phi(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, -safe * np.log2(safe), 0.0)


def _shannon_phi_prime(x):
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, -np.log2(safe) - 1.0 / LN2, np.inf)


def _make_shannon() -> EntropyFamily:
    return EntropyFamily(
        name="shannon",
        h=_identity,
        h_prime=_ones_like,
        phi=_shannon_phi,
        phi_prime=_shannon_phi_prime,
        classification=EntropyClass.CONCAVE_TYPE,
    )


def _make_renyi(alpha: float) -> EntropyFamily:
    if not (alpha > 0) or alpha == 1:
        raise BadParamError("renyi needs alpha > 0, alpha != 1")

    def phi(x):
        return np.power(np.asarray(x, dtype=float), alpha)

    def phi_prime(x):
        with np.errstate(divide="ignore"):
            return alpha * np.power(np.asarray(x, dtype=float), alpha - 1.0)

    def h(v):
        return np.log2(np.asarray(v, dtype=float)) / (1.0 - alpha)

    def h_prime(v):
        return 1.0 / ((1.0 - alpha) * LN2 * np.asarray(v, dtype=float))

    cls = EntropyClass.CONCAVE_TYPE if alpha < 1 else EntropyClass.CONVEX_TYPE
    return EntropyFamily("renyi", h, h_prime, phi, phi_prime, cls, {"alpha": alpha})


def _make_tsallis(alpha: float) -> EntropyFamily:
    if not (alpha > 0) or alpha == 1:
        raise BadParamError("tsallis needs alpha > 0, alpha != 1")

    def phi(x):
        x = np.asarray(x, dtype=float)
        return (np.power(x, alpha) - x) / (1.0 - alpha)

    def phi_prime(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return (alpha * np.power(x, alpha - 1.0) - 1.0) / (1.0 - alpha)

    return EntropyFamily(
        "tsallis", _identity, _ones_like, phi, phi_prime,
        EntropyClass.CONCAVE_TYPE, {"alpha": alpha},
    )


def _make_unified(alpha: float, s: float) -> EntropyFamily:
    if not (alpha > 0) or alpha == 1:
        raise BadParamError("unified needs alpha > 0, alpha != 1")
    if s == 0:
        raise BadParamError("unified needs s != 0")

    def phi(x):
        return np.power(np.asarray(x, dtype=float), alpha)

    def phi_prime(x):
        with np.errstate(divide="ignore"):
            return alpha * np.power(np.asarray(x, dtype=float), alpha - 1.0)

    def h(v):
        return (np.power(np.asarray(v, dtype=float), s) - 1.0) / (s * (1.0 - alpha))

    def h_prime(v):
        return np.power(np.asarray(v, dtype=float), s - 1.0) / (1.0 - alpha)

    if s > 1:
        cls = EntropyClass.OTHER
    elif alpha < 1:
        cls = EntropyClass.CONCAVE_TYPE
    else:
        cls = EntropyClass.CONVEX_TYPE
    return EntropyFamily("unified", h, h_prime, phi, phi_prime, cls,
                         {"alpha": alpha, "s": s})


def _make_f_divergence(f: Callable, f_prime: Callable) -> EntropyFamily:
    f0 = float(np.asarray(f(0.0), dtype=float))
    f1 = float(np.asarray(f(1.0), dtype=float))
    if abs(f0) > 1e-12 or abs(f1) > 1e-12:
        raise BadParamError("f must vanish at 0 and 1")
    if validate_concavity(lambda x: -np.asarray(f(x), float)).verdict != "strict":
        raise BadParamError("f must be strictly convex")

    def phi(x):
        return -np.asarray(f(x), dtype=float)

    def phi_prime(x):
        return -np.asarray(f_prime(x), dtype=float)

    return EntropyFamily("f_divergence", _identity, _ones_like, phi, phi_prime,
                         EntropyClass.CONCAVE_TYPE)


def _make_concurrence() -> EntropyFamily:
    def phi(x):
        x = np.asarray(x, dtype=float)
        return -x * x

    def phi_prime(x):
        return -2.0 * np.asarray(x, dtype=float)

    def h(v):
        return np.sqrt(2.0 * (1.0 + np.asarray(v, dtype=float)))

    def h_prime(v):
        return 1.0 / np.sqrt(2.0 * (1.0 + np.asarray(v, dtype=float)))

    return EntropyFamily("concurrence", h, h_prime, phi, phi_prime,
                         EntropyClass.CONCAVE_TYPE)


def _make_distinct(trials: int) -> EntropyFamily:
    """Expected-distinct-count statistic minus one, as a concave-type family."""
    if int(trials) != trials or trials < 2:
        raise BadParamError("distinct needs an integer trial count >= 2")
    n = int(trials)

    def phi(x):
        x = np.asarray(x, dtype=float)
        return 1.0 - np.power(1.0 - x, n)

    def phi_prime(x):
        x = np.asarray(x, dtype=float)
        return n * np.power(1.0 - x, n - 1)

    def h(v):
        return np.asarray(v, dtype=float) - 1.0

    return EntropyFamily("distinct", h, _ones_like, phi, phi_prime,
                         EntropyClass.CONCAVE_TYPE, {"trials": n})


def _make_hinf() -> EntropyFamily:
    def eval_fn(x):
        return -np.log2(np.max(np.asarray(x, dtype=float), axis=-1))

    def gamma_fn(x):
        return 1.0 / (LN2 * np.max(np.asarray(x, dtype=float), axis=-1))

    return EntropyFamily("hinf", None, None, None, None, EntropyClass.OTHER,
                         eval_fn=eval_fn, gamma_fn=gamma_fn)


def catalogue(name: str, **params) -> EntropyFamily:
    """Build a named entropy family with validated parameters.

    Supported names: ``shannon``, ``renyi`` (alpha), ``tsallis`` (alpha),
    ``unified`` (alpha, s), ``f_divergence`` (f, f_prime), ``concurrence``,
    ``distinct`` (trials), ``hinf``.  The returned family's classification
    has been checked against the slope-function test at construction.
    """
    try:
        if name == "shannon":
            fam = _make_shannon()
        elif name == "renyi":
            fam = _make_renyi(float(params.pop("alpha")))
        elif name == "tsallis":
            fam = _make_tsallis(float(params.pop("alpha")))
        elif name == "unified":
            fam = _make_unified(float(params.pop("alpha")), float(params.pop("s")))
        elif name == "f_divergence":
            fam = _make_f_divergence(params.pop("f"), params.pop("f_prime"))
        elif name == "concurrence":
            fam = _make_concurrence()
        elif name == "distinct":
            fam = _make_distinct(params.pop("trials"))
        elif name == "hinf":
            fam = _make_hinf()
        else:
            raise BadParamError(f"unknown entropy family {name!r}")
    except KeyError as exc:
        raise BadParamError(f"{name}: missing parameter {exc}") from exc
    if params:
        raise BadParamError(f"{name}: unexpected parameters {sorted(params)}")
    return _check_family(fam)


def eval_entropy(fam: EntropyFamily, p: ProbVec) -> float:
    """Value of the family at ``p``, in bits.  Permutation invariant."""
    v = eval_raw(fam, p.entries)
    if not math.isfinite(v):
        raise DomainError(f"{fam.name} undefined at this point")
    return v


def eval_raw(fam: EntropyFamily, x: np.ndarray) -> float:
    """Evaluate on a raw array without simplex validation."""
    if fam.eval_fn is not None:
        return float(fam.eval_fn(x))
    return float(fam.h(np.sum(fam.phi(np.asarray(x, dtype=float)))))


def eval_many(fam: EntropyFamily, points: np.ndarray) -> np.ndarray:
    """Vectorized evaluation over the rows of an (n, d) array."""
    pts = np.asarray(points, dtype=float)
    if fam.eval_fn is not None:
        return np.asarray(fam.eval_fn(pts), dtype=float)
    return np.asarray(fam.h(fam.phi(pts).sum(axis=-1)), dtype=float)


def gamma(fam: EntropyFamily, p: ProbVec) -> GammaValue:
    """One-sided derivative of the family along the flow at ``p``.

    For a symmetric entropy this is the partial-derivative gap between the
    smallest and largest coordinates; at the uniform vector the flow is
    stationary and the value is zero.  A zero entry where ``phi`` has an
    infinite one-sided derivative raises :class:`BoundaryError`.
    """
    gs = group_spectrum(p)
    if gs.values.size == 1:
        return GammaValue(0.0, p)
    if fam.gamma_fn is not None:
        return GammaValue(float(fam.gamma_fn(p.entries)), p)
    hi = float(gs.values[0])
    lo = float(gs.values[-1])
    d_lo = float(fam.phi_prime(lo))
    d_hi = float(fam.phi_prime(hi))
    if not (math.isfinite(d_lo) and math.isfinite(d_hi)):
        raise BoundaryError(
            f"{fam.name}: phi' diverges at a zero entry; use interior points")
    total = float(np.sum(fam.phi(p.entries)))
    return GammaValue(float(fam.h_prime(total)) * (d_lo - d_hi), p)


def gamma_raw(fam: EntropyFamily, x: np.ndarray) -> float:
    """Flow derivative on a raw array (no uniform-point special case)."""
    x = np.asarray(x, dtype=float)
    if fam.gamma_fn is not None:
        return float(fam.gamma_fn(x))
    d_lo = float(fam.phi_prime(x.min()))
    d_hi = float(fam.phi_prime(x.max()))
    total = float(np.sum(fam.phi(x)))
    return float(fam.h_prime(total)) * (d_lo - d_hi)


def smoothed_eval(fam: EntropyFamily, p: ProbVec, delta: float) -> float:
    """Maximum of the family over the radius-``delta`` ball around ``p``.

    Equals the family evaluated at the flow point, by flow minimality; only
    meaningful for the Schur-concave classified types.
    """
    if fam.classification is EntropyClass.OTHER:
        raise WrongClassError(
            f"{fam.name}: smoothing requires a concave- or convex-type family")
    return eval_entropy(fam, flow_point(p, delta))
