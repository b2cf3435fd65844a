"""Randomized self-checks wiring the oracle against the library invariants.

These back the ``verify`` CLI subcommand.  Sample counts are sized for a
quick interactive run; the pytest suite exercises the same invariants at the
full advertised scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds as bd
from . import distinct as dc
from . import entropy as en
from . import flow as fl
from . import oracle as orc
from . import quantum as qm
from . import simplex as sx


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _concave_families():
    return [
        en.catalogue("shannon"),
        en.catalogue("renyi", alpha=0.5),
        en.catalogue("tsallis", alpha=2.0),
        en.catalogue("unified", alpha=0.5, s=0.5),
        en.catalogue("concurrence"),
        en.catalogue("distinct", trials=3),
    ]


def _random_probvec(rng, d):
    return sx.make_probvec(rng.dirichlet(np.ones(d)))


def simplex_suite(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    ok = True
    for _ in range(50):
        d = int(rng.integers(2, 7))
        q = _random_probvec(rng, d)
        p = sx.ProbVec(q.entries[rng.permutation(d)])
        ok &= sx.majorizes(p, q) and sx.majorizes(q, p)
        ok &= float(np.abs(np.sort(p.entries) - np.sort(q.entries)).max()) < 1e-10
    out.append(CheckResult("simplex", "majorization-antisymmetry", ok))

    ok = True
    for _ in range(50):
        d = int(rng.integers(2, 7))
        a, b, c = (_random_probvec(rng, d) for _ in range(3))
        tab, tbc, tac = sx.tv_distance(a, b), sx.tv_distance(b, c), sx.tv_distance(a, c)
        ok &= tab >= 0 and abs(tab - sx.tv_distance(b, a)) < 1e-15
        ok &= tac <= tab + tbc + 1e-12
    out.append(CheckResult("simplex", "tv-metric", ok))

    ok = True
    for _ in range(50):
        d = int(rng.integers(2, 8))
        p, _ = sx.sort_desc(_random_probvec(rng, d))
        ok &= float(np.abs(sx.group_spectrum(p).reconstruct().entries - p.entries).max()) < 1e-12
    out.append(CheckResult("simplex", "group-reconstruct-roundtrip", ok))

    ok = True
    for _ in range(50):
        d = int(rng.integers(2, 7))
        p = _random_probvec(rng, d)
        ok &= sx.majorizes(sx.extremal(d), p) and sx.majorizes(p, sx.uniform(d))
    out.append(CheckResult("simplex", "extremal-and-uniform-order", ok))

    rep = sx.schur_convexity_witness(lambda x: float(np.sum(x * x)), 30, 4, seed)
    out.append(CheckResult("simplex", "schur-test-accepts-convex", rep.passed))
    rep = sx.schur_convexity_witness(
        lambda x: float(np.sum(np.where(x > 0, -x * np.log2(np.maximum(x, 1e-300)), 0.0))),
        30, 4, seed)
    out.append(CheckResult("simplex", "schur-test-rejects-concave", not rep.passed))
    return out


def flow_suite(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    u = sx.uniform(5)
    out.append(CheckResult("flow", "uniform-fixed-point",
                           sx.tv_distance(fl.flow_point(u, 0.7), u) == 0.0))

    ok = True
    for _ in range(30):
        d = int(rng.integers(2, 7))
        r = _random_probvec(rng, d)
        eps = min(1.0, sx.tv_distance(r, sx.uniform(d)) + float(rng.random()) * 0.2)
        ok &= sx.tv_distance(fl.flow_point(r, eps), sx.uniform(d)) < 1e-10
    out.append(CheckResult("flow", "absorption-at-uniform", ok))

    ok = True
    for _ in range(30):
        d = int(rng.integers(2, 7))
        r = _random_probvec(rng, d)
        eps = 0.05 + 0.5 * float(rng.random())
        expected = min(eps, sx.tv_distance(r, sx.uniform(d)))
        ok &= abs(sx.tv_distance(fl.flow_point(r, eps), r) - expected) < 1e-10
        gen = fl.generator(r)
        ok &= abs(gen.direction.sum()) < 1e-12
        ok &= abs(0.5 * np.abs(gen.direction).sum() - 1.0) < 1e-12
    out.append(CheckResult("flow", "unit-speed", ok))

    ok = True
    for i in range(20):
        d = int(rng.integers(2, 6))
        r = _random_probvec(rng, d)
        eps = 0.05 + 0.3 * float(rng.random())
        m = fl.flow_point(r, eps)
        for q in orc.ball_sample(r, eps, 60, seed + i):
            ok &= sx.majorizes(q, m)
    out.append(CheckResult("flow", "ball-minimality", ok))

    ok = True
    for i in range(20):
        d = int(rng.integers(2, 6))
        p, q = orc.majorization_pairs(d, 1, seed + 100 + i)[0]
        s = 0.3 * float(rng.random())
        ok &= sx.majorizes(fl.flow_point(q, s), fl.flow_point(p, s))
    out.append(CheckResult("flow", "majorization-preserving", ok))

    ok = True
    for _ in range(30):
        d = int(rng.integers(2, 7))
        r = _random_probvec(rng, d)
        s, t = 0.3 * float(rng.random()), 0.3 * float(rng.random())
        ok &= fl.verify_semigroup(r, s, t)
    out.append(CheckResult("flow", "semigroup", ok))

    ok = True
    for _ in range(20):
        d = int(rng.integers(2, 7))
        r, _ = sx.sort_desc(_random_probvec(rng, d))
        path = fl.flow_path(r)
        ok &= len(path.breakpoints) <= d + 1
        # endpoint reconstructed from segment lengths times directions
        acc = r.entries.copy()
        for (s0, p0), (s1, _) in zip(path.breakpoints, path.breakpoints[1:]):
            acc = acc + (s1 - s0) * fl.generator(p0).direction
        ok &= float(np.abs(acc - path.breakpoints[-1][1].entries).max()) < 1e-12
        for s in np.linspace(0.0, path.terminal_s, 7):
            ok &= sx.tv_distance(path.at(float(s)), fl.flow_point(r, float(s))) < 1e-12
    out.append(CheckResult("flow", "piecewise-affine-path", ok))
    return out


def entropy_suite(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    fams = _concave_families() + [en.catalogue("renyi", alpha=2.0), en.catalogue("hinf")]

    ok = True
    for fam in fams:
        for i in range(15):
            d = int(rng.integers(2, 6))
            p, q = orc.majorization_pairs(d, 1, seed + 17 * i)[0]
            ok &= en.eval_entropy(fam, p) >= en.eval_entropy(fam, q) - 1e-10
    out.append(CheckResult("entropy", "schur-concavity", ok))

    ok = True
    cfg = orc.OracleConfig(fd_step=1e-6, seed=seed)
    for fam in fams:
        for _ in range(10):
            d = int(rng.integers(2, 6))
            r = _random_probvec(rng, d)
            g = en.gamma(fam, r).value
            fd = orc.fd_gamma(lambda v: en.eval_entropy(fam, v), r, cfg)
            ok &= abs(fd - g) <= 1e-4 * max(abs(g), 1e-8)
    out.append(CheckResult("entropy", "gamma-matches-finite-difference", ok))

    ok = True
    for fam in _concave_families():
        for i in range(15):
            p, q = orc.majorization_pairs(4, 1, seed + 31 * i)[0]
            ok &= en.gamma(fam, q).value >= en.gamma(fam, p).value - 1e-8
    out.append(CheckResult("entropy", "gamma-schur-convex-concave-type", ok))

    sh = en.catalogue("shannon")
    ok = True
    for _ in range(10):
        p = _random_probvec(rng, 5)
        for a in (1.0 - 1e-4, 1.0 + 1e-4):
            ok &= abs(en.eval_entropy(en.catalogue("renyi", alpha=a), p)
                      - en.eval_entropy(sh, p)) < 1e-3
    out.append(CheckResult("entropy", "renyi-limit-to-shannon", ok))

    ok = True
    for alpha in (0.5, 2.0, 3.0):
        fam = en.catalogue("tsallis", alpha=alpha)
        p = _random_probvec(rng, 3)
        q = _random_probvec(rng, 4)
        prod = sx.ProbVec(np.outer(p.entries, q.entries).ravel())
        tp, tq = en.eval_entropy(fam, p), en.eval_entropy(fam, q)
        ok &= abs(en.eval_entropy(fam, prod) - (tp + tq + (1 - alpha) * tp * tq)) < 1e-10
    out.append(CheckResult("entropy", "tsallis-pseudo-additivity", ok))

    conc = en.catalogue("concurrence")
    out.append(CheckResult("entropy", "concurrence-normalization",
                           abs(en.eval_entropy(conc, sx.uniform(2)) - 1.0) < 1e-12))
    return out


def bounds_suite(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    ok = True
    for fam in _concave_families():
        for d in (2, 3, 5):
            psi = sx.extremal(d)
            for eps in (0.1, 0.4, 0.95):
                gap = abs(en.eval_entropy(fam, fl.flow_point(psi, eps))
                          - en.eval_entropy(fam, psi))
                ok &= abs(gap - bd.g_eps(fam, d, eps)) < 1e-10
    out.append(CheckResult("bounds", "tightness-at-extremal", ok))

    ok = True
    for fam in _concave_families():
        for i in range(10):
            d = int(rng.integers(2, 6))
            eps = 0.05 + 0.4 * float(rng.random())
            r = _random_probvec(rng, d)
            g = bd.g_eps(fam, d, eps)
            for q in orc.ball_sample(r, eps, 40, seed + i):
                ok &= abs(en.eval_entropy(fam, q) - en.eval_entropy(fam, r)) <= g + 1e-9
    out.append(CheckResult("bounds", "oracle-dominance", ok))

    ok = True
    specs = [(en.catalogue("tsallis", alpha=2.0),
              bd.lipschitz_concave_smoothed(en.catalogue("tsallis", alpha=2.0), 4, 0.0).value),
             (en.catalogue("renyi", alpha=2.0), bd.collision_closed_form(4)),
             (en.catalogue("hinf"), 4 / en.LN2)]
    for fam, k in specs:
        for i in range(25):
            p = _random_probvec(rng, 4)
            q = orc.ball_sample(p, 0.3, 1, seed + i)[0]
            diff = abs(en.eval_entropy(fam, p) - en.eval_entropy(fam, q))
            ok &= diff <= k * sx.tv_distance(p, q) + 1e-9
    out.append(CheckResult("bounds", "lipschitz-validity", ok))

    opt = bd.lipschitz_convex_type(en.catalogue("renyi", alpha=2.0), 3).value
    out.append(CheckResult("bounds", "collision-optimizer-matches-closed-form",
                           abs(opt - bd.collision_closed_form(3)) < 1e-6 * opt))

    ok = True
    for alpha in (1.5, 3.0):
        for d in (3, 10):
            k = bd.lipschitz_convex_type(en.catalogue("renyi", alpha=alpha), d).value
            lo = alpha / (alpha - 1) * (d - 2) ** (1 - 1 / alpha) / (2 * en.LN2)
            hi = d * alpha / ((alpha - 1) * en.LN2)
            ok &= lo - 1e-9 <= k <= hi + 1e-9
    out.append(CheckResult("bounds", "renyi-sandwich", ok))

    ours = 0.01 * bd.collision_closed_form(10)
    chen = bd.prior_art_bound("chen", 2.0, 10, 0.01).value
    rast = bd.prior_art_bound("rastegin", 2.0, 10, 0.01).value
    out.append(CheckResult("bounds", "improves-prior-art",
                           rast >= chen >= 2 * ours))

    ok = True
    for d in (3, 5):
        peak = 0.0
        for _ in range(200):
            p = sx.make_probvec(sx.uniform(d).entries
                                + 1e-4 * (rng.dirichlet(np.ones(d)) - 1.0 / d))
            if sx.group_spectrum(p).values.size > 1:
                peak = max(peak, bd.gamma_ratio_renyi_tsallis(p, 2.0))
        ok &= peak >= d / en.LN2 * (1 - 1e-2)
    out.append(CheckResult("bounds", "gamma-ratio-sup-near-uniform", ok))

    rows = bd.dimensional_scaling_table(1.0, 1.0, [4, 16, 64, 256])
    vals = [r.bound for r in rows]
    out.append(CheckResult("bounds", "shannon-scaling-decreases",
                           all(b < a for a, b in zip(vals, vals[1:]))))
    return out


def quantum_suite(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    def random_state(d):
        a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        m = a @ a.conj().T
        return qm.DensityMatrix(m / np.trace(m).real)

    ok = True
    for _ in range(20):
        d = int(rng.integers(2, 7))
        rho, sigma = random_state(d), random_state(d)
        tv = sx.tv_distance(qm.spectrum_sorted(rho), qm.spectrum_sorted(sigma))
        ok &= tv <= qm.trace_distance(rho, sigma) + 1e-9
    out.append(CheckResult("quantum", "spectral-contraction", ok))

    ok = True
    sh = en.catalogue("shannon")
    for _ in range(10):
        d = int(rng.integers(2, 6))
        rho, sigma = random_state(d), random_state(d)
        eps = max(qm.trace_distance(rho, sigma), 1e-6)
        diff = abs(en.eval_entropy(sh, qm.spectrum_sorted(rho))
                   - en.eval_entropy(sh, qm.spectrum_sorted(sigma)))
        ok &= diff <= bd.g_eps(sh, d, min(eps, 1.0)) + 1e-9
    out.append(CheckResult("quantum", "classical-bounds-transfer", ok))

    ok = True
    for _ in range(10):
        d = int(rng.integers(2, 6))
        rho = random_state(d)
        eps = 0.3 * float(rng.random()) + 0.01
        flowed = qm.flow_state(rho, eps)
        ok &= qm.trace_distance(flowed, rho) <= eps + 1e-9
        ok &= sx.tv_distance(qm.spectrum_sorted(flowed),
                             fl.flow_point(qm.spectrum_sorted(rho), eps)) < 1e-8
    out.append(CheckResult("quantum", "state-flow-updates-eigenvalues", ok))

    ok = True
    for _ in range(10):
        d = int(rng.integers(2, 6))
        ham = np.diag(rng.uniform(-2, 2, size=d))
        t0, t = float(rng.uniform(0.1, 10)), float(rng.uniform(0.1, 10))
        if abs(t - t0) < 1e-3:
            t += 0.5
        ok &= qm.free_energy_identity_check(ham, t0, t) < 1e-9
    out.append(CheckResult("quantum", "free-energy-identity", ok))
    return out


def distinct_suite(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []

    ok = True
    for m, n in ((2, 3), (3, 2), (4, 4)):
        spec = dc.TrialSpec(_random_probvec(rng, m), n)
        pmf = dc.pmf_distinct(spec)
        ok &= abs(pmf.sum() - 1.0) < 1e-12
        mean = float(np.dot(np.arange(1, m + 1), pmf))
        ok &= abs(mean - dc.expected_distinct(spec)) < 1e-10
    out.append(CheckResult("distinct", "pmf-consistency", ok))

    ok = True
    for i in range(20):
        p, q = orc.majorization_pairs(4, 1, seed + i)[0]
        for j in (1, 2, 3):
            ok &= (dc.cdf_distinct(dc.TrialSpec(q, 3), j)
                   >= dc.cdf_distinct(dc.TrialSpec(p, 3), j) - 1e-10)
    out.append(CheckResult("distinct", "cdf-schur-convex", ok))

    ok = True
    for m, n in ((3, 4), (5, 2)):
        for _ in range(20):
            p = _random_probvec(rng, m)
            h = 1e-5
            slope = abs(dc.expected_distinct(dc.TrialSpec(fl.flow_point(p, h), n))
                        - dc.expected_distinct(dc.TrialSpec(p, n))) / h
            ok &= slope <= n + 1e-6
    out.append(CheckResult("distinct", "lipschitz-slope-at-most-N", ok))

    spec = dc.TrialSpec(sx.uniform(2), 2)
    pmf = dc.simulate_distinct(spec, 20000, seed)
    mean = float(np.dot(np.arange(1, 3), pmf))
    out.append(CheckResult("distinct", "monte-carlo-mean",
                           abs(mean - 1.5) < 3 * 0.5 / math.sqrt(20000)))

    ok = True
    fam = en.catalogue("distinct", trials=3)
    for _ in range(10):
        p = _random_probvec(rng, 4)
        ok &= abs(dc.expected_distinct(dc.TrialSpec(p, 3)) - 1.0
                  - en.eval_entropy(fam, p)) < 1e-12
    out.append(CheckResult("distinct", "expected-count-is-family-eval", ok))
    return out


def oracle_suite(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out = []
    cfg = orc.OracleConfig(samples=300, seed=seed)
    sh = en.catalogue("shannon")

    ok = True
    for _ in range(10):
        d = int(rng.integers(2, 6))
        r = _random_probvec(rng, d)
        eps = 0.05 + 0.4 * float(rng.random())
        val, _ = orc.ball_max_search(lambda q: en.eval_entropy(sh, q), r, eps, cfg)
        ok &= val <= en.eval_entropy(sh, fl.flow_point(r, eps)) + 1e-9
    out.append(CheckResult("oracle", "ball-max-never-beats-flow", ok))

    a = orc.ball_sample(sx.uniform(4), 0.2, 50, seed)
    b = orc.ball_sample(sx.uniform(4), 0.2, 50, seed)
    same = all(float(np.abs(x.entries - y.entries).max()) == 0.0 for x, y in zip(a, b))
    out.append(CheckResult("oracle", "deterministic-given-seed", same))

    pairs = orc.majorization_pairs(5, 50, seed)
    out.append(CheckResult("oracle", "pair-generator-contract",
                           all(sx.majorizes(q, p) for p, q in pairs)))
    return out


_SUITES = {
    "simplex": simplex_suite,
    "flow": flow_suite,
    "entropy": entropy_suite,
    "bounds": bounds_suite,
    "quantum": quantum_suite,
    "distinct": distinct_suite,
    "oracle": oracle_suite,
}


def run_suites(names, seed: int) -> list[CheckResult]:
    if "all" in names:
        names = list(_SUITES)
    results = []
    for name in names:
        if name not in _SUITES:
            raise ValueError(f"unknown suite {name!r}; known: {', '.join(_SUITES)}")
        results.extend(_SUITES[name](seed))
    return results
