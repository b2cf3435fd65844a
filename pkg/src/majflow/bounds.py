"""Continuity bounds and optimal Lipschitz constants, with prior-art formulas.

Concave-type families get the exact tight uniform bound g(eps) attained by
flowing the extremal vector.  Convex-type families get their optimal
Lipschitz constant from a 2-d reduction of the supremum of the flow
derivative, solved by grid search plus coordinate-wise golden-section
refinement.  The literal prior formulas are kept around for comparison
tables.  All values are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .entropy import LN2, EntropyClass, EntropyFamily, catalogue
from .errors import BadParamError, BoundaryError, WrongClassError
from .flow import flow_point
from .simplex import ProbVec, extremal, group_spectrum, tv_distance, uniform


@dataclass(frozen=True)
class BoundReport:
    """A computed bound with enough context to reproduce and check it."""

    kind: str  # "tight-uniform" | "lipschitz" | "prior-art"
    value: float
    formula_id: str
    family: str
    params: dict
    dim: int
    eps: Optional[float] = None
    witness: Optional[tuple[ProbVec, ProbVec]] = None

    @property
    def is_lipschitz(self) -> bool:
        return math.isfinite(self.value)


def _require_class(fam: EntropyFamily, cls: EntropyClass) -> None:
    if fam.classification is not cls:
        raise WrongClassError(
            f"{fam.name} is {fam.classification.value}, need {cls.value}")


def _check_dim_eps(d: int, eps: float) -> None:
    if d < 2:
        raise BadParamError("dimension must be at least 2")
    if not (0.0 < eps <= 1.0):
        raise BadParamError(f"eps must lie in (0, 1], got {eps!r}")


def g_eps(fam: EntropyFamily, d: int, eps: float) -> float:
    """Exact maximum entropy gap over pairs at total variation <= eps.

    Attained by the extremal vector against its flow point: for radii below
    1 - 1/d the flow point is (1-eps, eps/(d-1), ...); beyond that it is
    uniform and the gap saturates at the maximal entropy.
    """
    if eps < 1.0 - 1.0 / d:
        inner = fam.phi(1.0 - eps) + (d - 1) * fam.phi(eps / (d - 1))
    else:
        inner = d * fam.phi(1.0 / d)
    return float(fam.h(inner))


def tight_uniform_bound(fam: EntropyFamily, d: int, eps: float) -> BoundReport:
    """Tight uniform continuity bound for a concave-type family.

    The witness pair (extremal vector, its flow point) attains the bound
    exactly.
    """
    _require_class(fam, EntropyClass.CONCAVE_TYPE)
    _check_dim_eps(d, eps)
    psi = extremal(d)
    witness = (psi, flow_point(psi, eps))
    return BoundReport("tight-uniform", g_eps(fam, d, eps), "flow-of-extremal",
                       fam.name, dict(fam.params), d, eps, witness)


def lipschitz_concave_smoothed(fam: EntropyFamily, d: int, delta: float) -> BoundReport:
    """Optimal Lipschitz constant of the delta-smoothed concave-type family.

    For delta > 0 this is g'(delta), always finite.  For delta = 0 it is the
    slope of g at the origin, which is finite only when phi has a finite
    one-sided derivative at 0 and h' is finite at phi(1); otherwise the
    family is not Lipschitz and the report carries ``inf``.
    """
    _require_class(fam, EntropyClass.CONCAVE_TYPE)
    if d < 2:
        raise BadParamError("dimension must be at least 2")
    if not (0.0 <= delta < 1.0):
        raise BadParamError(f"delta must lie in [0, 1), got {delta!r}")
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if delta == 0.0:
            hp = float(fam.h_prime(fam.phi(1.0)))
            lo = float(fam.phi_prime(0.0))
            hi = float(fam.phi_prime(1.0))
        else:
            inner = fam.phi(1.0 - delta) + (d - 1) * fam.phi(delta / (d - 1))
            hp = float(fam.h_prime(inner))
            lo = float(fam.phi_prime(delta / (d - 1)))
            hi = float(fam.phi_prime(1.0 - delta))
    if math.isfinite(hp) and math.isfinite(lo) and math.isfinite(hi):
        k = hp * (lo - hi)
    else:
        k = math.inf
    witness = None
    if math.isfinite(k):
        psi = extremal(d)
        witness = (psi, flow_point(psi, 1e-4))
    return BoundReport("lipschitz", k, "smoothed-concave-slope", fam.name,
                       dict(fam.params), d, eps=None, witness=witness)


def _golden_max(f, lo: float, hi: float, iters: int = 200, rel_tol: float = 1e-13):
    """Golden-section maximization of a unimodal-ish function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(iters):
        if b - a <= rel_tol * (abs(a) + abs(b) + 1e-30):
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    cands = [(f(lo), lo), (fc, c), (fd, d), (f(hi), hi)]
    best = max(cands, key=lambda t: t[0])
    return best[1], best[0]


def _convex_obj_d2(fam: EntropyFamily, x):
    inner = fam.phi(x) + fam.phi(1.0 - x)
    return fam.h_prime(inner) * (fam.phi_prime(x) - fam.phi_prime(1.0 - x))


def _convex_obj(fam: EntropyFamily, d: int, x, y):
    z = (1.0 - x - y) / (d - 2)
    inner = fam.phi(y) + (d - 2) * fam.phi(z) + fam.phi(x)
    return -fam.h_prime(inner) * (fam.phi_prime(y) - fam.phi_prime(x))


def _y_range(d: int, x: float) -> tuple[float, float]:
    return (1.0 - x) / (d - 1), 1.0 - (d - 1) * x


def _x_range(d: int, y: float, x_floor: float) -> tuple[float, float]:
    lo = max(x_floor, 1.0 - (d - 1) * y)
    hi = min(1.0 / d, (1.0 - y) / (d - 1))
    return lo, min(hi, y)


def lipschitz_convex_type(fam: EntropyFamily, d: int, grid: int = 200) -> BoundReport:
    """Optimal Lipschitz constant of a convex-type family by 2-d optimization.

    The supremum of the flow derivative over the simplex interior reduces to
    vectors (x, z, ..., z, y) with x <= z <= y.  For d = 2 the problem is
    one-dimensional in x; for d > 2 a log-spaced grid over (x, y) (the
    maximizers sit near x = 0) is refined by coordinate-wise golden-section
    search until the relative improvement drops below 1e-10.  The x = 0
    boundary is evaluated explicitly whenever phi'(0) is finite.
    """
    _require_class(fam, EntropyClass.CONVEX_TYPE)
    if d < 2:
        raise BadParamError("dimension must be at least 2")
    with np.errstate(divide="ignore"):
        boundary_ok = math.isfinite(float(fam.phi_prime(0.0)))
    x_floor = 0.0 if boundary_ok else 1e-15

    if d == 2:
        xs = np.geomspace(1e-12, 0.5, 4 * grid)
        if boundary_ok:
            xs = np.concatenate(([0.0], xs))
        vals = np.asarray(_convex_obj_d2(fam, xs), dtype=float)
        i = int(np.nanargmax(vals))
        lo = xs[max(i - 1, 0)]
        hi = xs[min(i + 1, xs.size - 1)]
        x_best, k = _golden_max(lambda x: float(_convex_obj_d2(fam, x)),
                                max(lo, x_floor), hi)
        if boundary_ok:
            k0 = float(_convex_obj_d2(fam, 0.0))
            if k0 > k:
                x_best, k = 0.0, k0
        r_star = ProbVec(np.array([1.0 - x_best, x_best]))
    else:
        xs = np.geomspace(1e-12, 1.0 / d, grid)
        if boundary_ok:
            xs = np.concatenate(([0.0], xs))
        ts = np.linspace(0.0, 1.0, grid)
        X = xs[:, None]
        y_lo = (1.0 - X) / (d - 1)
        y_hi = 1.0 - (d - 1) * X
        Y = y_lo + ts[None, :] * (y_hi - y_lo)
        with np.errstate(divide="ignore", invalid="ignore"):
            vals = np.asarray(_convex_obj(fam, d, X, Y), dtype=float)
        vals = np.where(np.isfinite(vals), vals, -np.inf)
        i, j = np.unravel_index(int(np.argmax(vals)), vals.shape)
        x, y = float(X[i, 0]), float(Y[i, j])
        best = float(vals[i, j])

        def obj(xx, yy):
            with np.errstate(divide="ignore", invalid="ignore"):
                v = float(_convex_obj(fam, d, xx, yy))
            return v if math.isfinite(v) else -math.inf

        for _ in range(100):
            ylo, yhi = _y_range(d, x)
            y, _ = _golden_max(lambda yy: obj(x, yy), ylo, yhi)
            xlo, xhi = _x_range(d, y, x_floor)
            if xhi > xlo:
                x, _ = _golden_max(lambda xx: obj(xx, y), xlo, xhi)
            new = obj(x, y)
            if new <= best * (1.0 + 1e-10) and new >= best * (1.0 - 1e-10):
                best = max(best, new)
                break
            best = max(best, new)
        k = best
        z = (1.0 - x - y) / (d - 2)
        entries = np.concatenate(([y], np.full(d - 2, z), [x]))
        r_star = ProbVec(np.clip(entries, 0.0, None) / entries.sum())

    step = min(1e-4, max(tv_distance(r_star, uniform(d)), 0.0))
    witness = (r_star, flow_point(r_star, step)) if step > 0 else None
    return BoundReport("lipschitz", float(k), "convex-type-2d-optimizer",
                       fam.name, dict(fam.params), d, eps=None, witness=witness)


def collision_closed_form(d: int) -> float:
    """Optimal Lipschitz constant of the order-2 (collision) entropy.

    For d > 2 the 2-d optimization is solved in closed form by x = 0 and
    y = 1/sqrt(d-1).
    """
    if d < 2:
        raise BadParamError("dimension must be at least 2")
    if d == 2:
        return 2.0 / LN2
    return (d - 2) / (math.sqrt(d - 1.0) - 1.0) / LN2


def lipschitz_special(name: str, d: int, alpha: float = None, s: float = None) -> BoundReport:
    """Closed-form Lipschitz constants and upper estimates for special cases."""
    if d < 2:
        raise BadParamError("dimension must be at least 2")
    if name == "hinf":
        return BoundReport("lipschitz", d / LN2, "min-entropy-exact", "hinf",
                           {}, d)
    if name == "renyi_interval":
        if alpha is None or not (1.0 < alpha < 2.0):
            raise BadParamError("renyi_interval needs alpha in (1, 2)")
        k = alpha / (alpha - 1.0) * d ** (alpha - 1.0) / LN2
        return BoundReport("lipschitz", k, "renyi-upper-estimate", "renyi",
                           {"alpha": alpha}, d)
    if name == "unified":
        if alpha is None or s is None or alpha <= 1.0 or s > 1.0 or s == 0.0:
            raise BadParamError("unified needs alpha > 1 and s <= 1, s != 0")
        if s * alpha < 1.0:
            k = alpha / (alpha - 1.0) * d ** (1.0 - alpha * s)
        else:
            k = alpha / (alpha - 1.0)
        return BoundReport("lipschitz", k, "unified-upper-estimate", "unified",
                           {"alpha": alpha, "s": s}, d)
    raise BadParamError(f"unknown special constant {name!r}")


def hinf_tight_uniform(d: int, eps: float) -> BoundReport:
    """Uniform continuity bound log2(1 + eps*d) for the min-entropy.

    The witness perturbs the uniform vector upward by eps on one coordinate;
    the compensating deduction is spread so the witness stays a probability
    vector for any eps <= 1 - 1/d, and the pair attains the bound there.
    """
    _check_dim_eps(d, eps)
    value = math.log2(1.0 + eps * d)
    u = uniform(d)
    if eps <= 1.0 / d:
        w = np.full(d, 1.0 / d)
        w[0] += eps
        w[-1] -= eps
    elif eps <= 1.0 - 1.0 / d:
        w = np.full(d, 1.0 / d - eps / (d - 1))
        w[0] = 1.0 / d + eps
    else:
        w = extremal(d).entries.copy()
    witness = (u, ProbVec(np.clip(w, 0.0, None)))
    return BoundReport("tight-uniform", value, "min-entropy-ball", "hinf", {},
                       d, eps, witness)


_PRIOR_FORMULAS = ("rastegin", "chen", "zhang", "audenaert", "audenaert_fannes",
                   "raggio")


def prior_art_bound(formula_id: str, alpha: float, d: int, eps: float) -> BoundReport:
    """Literal evaluation of a previously published bound, for comparisons."""
    _check_dim_eps(d, eps)
    if formula_id in ("rastegin", "chen"):
        if not alpha > 1:
            raise BadParamError(f"{formula_id} needs alpha > 1")
        bracket = 1.0 - (1.0 - eps) ** alpha - eps ** alpha * (d - 1.0) ** (1.0 - alpha)
        power = 2.0 * (alpha - 1.0) if formula_id == "rastegin" else alpha - 1.0
        value = d ** power / (alpha - 1.0) * bracket
    elif formula_id == "zhang":
        if not (alpha > 0) or alpha == 1:
            raise BadParamError("zhang needs alpha > 0, alpha != 1")
        if eps < 1.0 - 1.0 / d:
            value = (eps ** alpha * (d - 1.0) ** (1.0 - alpha)
                     + (1.0 - eps) ** alpha - 1.0) / (1.0 - alpha)
        else:
            value = (d ** (1.0 - alpha) - 1.0) / (1.0 - alpha)
    elif formula_id == "audenaert":
        if not (0 < alpha < 1):
            raise BadParamError("audenaert needs alpha in (0, 1)")
        if eps < 1.0 - 1.0 / d:
            value = math.log2((1.0 - eps) ** alpha
                              + (d - 1.0) ** (1.0 - alpha) * eps ** alpha) / (1.0 - alpha)
        else:
            value = math.log2(d)
    elif formula_id == "audenaert_fannes":
        if eps < 1.0 - 1.0 / d:
            h2 = -eps * math.log2(eps) - (1.0 - eps) * math.log2(1.0 - eps)
            value = eps * math.log2(d - 1.0) + h2
        else:
            value = math.log2(d)
    elif formula_id == "raggio":
        if not alpha > 1:
            raise BadParamError("raggio needs alpha > 1")
        value = 2.0 * alpha / (alpha - 1.0) * eps
    else:
        raise BadParamError(f"unknown formula {formula_id!r}; "
                            f"known: {', '.join(_PRIOR_FORMULAS)}")
    return BoundReport("prior-art", float(value), formula_id, "renyi/tsallis",
                       {"alpha": alpha}, d, eps)


def gamma_ratio_renyi_tsallis(p: ProbVec, alpha: float) -> float:
    """Ratio of the Renyi to the Tsallis flow derivative at an interior point.

    Equals 1 / (ln 2 * sum_i p_i^alpha); Schur concave with supremum
    d^(alpha-1)/ln 2 approached at the uniform vector.
    """
    if not alpha > 1:
        raise BadParamError("ratio defined for alpha > 1")
    if float(p.entries.min()) <= 0.0:
        raise BoundaryError("ratio requires interior points")
    if group_spectrum(p).values.size == 1:
        raise BoundaryError("ratio undefined at the uniform vector")
    return 1.0 / (LN2 * float(np.sum(p.entries ** alpha)))


class ScalingRow(NamedTuple):
    dim: int
    eps: float
    bound: float


def dimensional_scaling_table(alpha: float, s_exponent: float,
                              dims: Sequence[int]) -> list[ScalingRow]:
    """Bound values along eps_d = d^(-s_exponent) for growing dimension.

    For alpha <= 1 the exact tight bound g(eps_d) is reported; for alpha > 1
    (including infinity) only a Lipschitz lower bound eps_d * k_alpha is
    available and reported.
    """
    if not s_exponent > 0:
        raise BadParamError("s_exponent must be positive")
    dims = [int(d) for d in dims]
    if any(d < 2 for d in dims) or any(b <= a for a, b in zip(dims, dims[1:])):
        raise BadParamError("dims must be increasing integers >= 2")
    rows = []
    fam = None
    if alpha == 1:
        fam = catalogue("shannon")
    elif 0 < alpha < 1:
        fam = catalogue("renyi", alpha=alpha)
    for d in dims:
        eps = float(d) ** (-s_exponent)
        if fam is not None:
            c = g_eps(fam, d, min(eps, 1.0))
        elif math.isinf(alpha):
            c = eps * d / LN2
        elif alpha > 1:
            c = eps * alpha / (alpha - 1.0) * (d - 2.0) ** (1.0 - 1.0 / alpha) / (2.0 * LN2) \
                if d > 2 else 0.0
        else:
            raise BadParamError("alpha must be positive")
        rows.append(ScalingRow(d, eps, float(c)))
    return rows
