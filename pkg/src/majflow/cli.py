"""Command-line front-end: flows, bounds, comparison and scaling tables, verification.

CSV goes to stdout (deterministic, 10 significant digits), diagnostics to
stderr; ``--json`` switches any subcommand to a single JSON document.
Exit codes: 0 success, 1 failed verification, 2 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import bounds as bd
from . import distinct as dc
from . import entropy as en
from . import flow as fl
from . import quantum as qm
from . import simplex as sx
from . import verify as vf
from .errors import BadParamError


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.10g" % float(x)


def _vec(p: sx.ProbVec) -> str:
    return ";".join(_fmt(v) for v in p.entries)


def _emit(command: str, header: list[str], rows: list[list], as_json: bool) -> None:
    if as_json:
        doc = {"command": command,
               "rows": [dict(zip(header, [None if c == "" else c
                                          for c in map(_fmt, row)]))
                        for row in rows]}
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print(",".join(header))
        for row in rows:
            print(",".join(_fmt(c) for c in row))


def _parse_probvec(text: str, d: int | None) -> sx.ProbVec:
    if text == "u":
        if d is None:
            raise BadParamError("uniform vector needs a dimension flag")
        return sx.uniform(d)
    if text == "psi":
        if d is None:
            raise BadParamError("extremal vector needs a dimension flag")
        return sx.extremal(d)
    return sx.make_probvec([float(tok) for tok in text.split(",")])


def _family_from_args(args) -> en.EntropyFamily:
    name = args.family
    if name in ("shannon", "concurrence", "hinf"):
        return en.catalogue(name)
    if name in ("renyi", "tsallis"):
        if args.alpha is None:
            raise BadParamError(f"{name} needs -a/--alpha")
        return en.catalogue(name, alpha=args.alpha)
    if name == "unified":
        if args.alpha is None or args.s is None:
            raise BadParamError("unified needs -a/--alpha and -s")
        return en.catalogue(name, alpha=args.alpha, s=args.s)
    if name == "distinct":
        if args.trials is None:
            raise BadParamError("distinct needs --trials")
        return en.catalogue(name, trials=args.trials)
    raise BadParamError(f"unknown family {name!r}")


def cmd_flow(args) -> int:
    p = _parse_probvec(args.probvec, args.dim)
    path = fl.flow_path(p)
    header = ["row", "s"] + [f"p{i+1}" for i in range(p.dim)]
    rows = [["breakpoint", s] + list(pt.entries) for s, pt in path.breakpoints]
    if args.eps is not None:
        end = fl.flow_point(p, args.eps)
        rows.append(["endpoint", min(args.eps, path.terminal_s)] + list(end.entries))
    _emit("flow", header, rows, args.json)
    return 0


def _bound_report(args) -> bd.BoundReport:
    if args.family == "hinf":
        return bd.hinf_tight_uniform(args.dim, args.eps)
    fam = _family_from_args(args)
    if fam.classification is en.EntropyClass.CONCAVE_TYPE:
        return bd.tight_uniform_bound(fam, args.dim, args.eps)
    if fam.classification is en.EntropyClass.CONVEX_TYPE:
        k = bd.lipschitz_convex_type(fam, args.dim)
        return bd.BoundReport("lipschitz", k.value * args.eps, "lipschitz-times-eps",
                              fam.name, dict(fam.params), args.dim, args.eps,
                              k.witness)
    raise BadParamError(f"no uniform bound available for {fam.name} with these parameters")


def cmd_bound(args) -> int:
    if args.quantum:
        if not args.rho_file:
            raise BadParamError("--quantum needs --rho-file")
        rho = qm.load_density_matrix(args.rho_file)
        args.dim = rho.dim
    rep = _bound_report(args)
    header = ["family", "alpha", "s", "dim", "eps", "kind", "formula", "value",
              "witness1", "witness2"]
    row = [rep.family, args.alpha, args.s, rep.dim, rep.eps, rep.kind,
           rep.formula_id, rep.value,
           _vec(rep.witness[0]) if rep.witness else "",
           _vec(rep.witness[1]) if rep.witness else ""]
    if args.quantum:
        spec = qm.spectrum_sorted(rho)
        if args.family == "hinf":
            fam = en.catalogue("hinf")
            h0 = en.eval_entropy(fam, spec)
            h1 = en.eval_entropy(fam, fl.flow_point(spec, args.eps))
        else:
            fam = _family_from_args(args)
            h0 = en.eval_entropy(fam, spec)
            h1 = en.eval_entropy(fam, fl.flow_point(spec, args.eps))
        header += ["state_entropy", "smoothed_state_entropy", "local_increase"]
        row += [h0, h1, h1 - h0]
    _emit("bound", header, [row], args.json)
    return 0


def cmd_lipschitz(args) -> int:
    if args.family == "hinf":
        rep = bd.lipschitz_special("hinf", args.dim)
    else:
        fam = _family_from_args(args)
        if fam.classification is en.EntropyClass.CONCAVE_TYPE:
            rep = bd.lipschitz_concave_smoothed(fam, args.dim, args.delta)
        elif fam.classification is en.EntropyClass.CONVEX_TYPE:
            rep = bd.lipschitz_convex_type(fam, args.dim)
        else:
            raise BadParamError(f"no Lipschitz constant for {fam.name} "
                                "with these parameters")
    header = ["family", "alpha", "s", "dim", "delta", "kind", "formula", "value",
              "witness1", "witness2"]
    value = rep.value if rep.is_lipschitz else "inf"
    rows = [[rep.family, args.alpha, args.s, rep.dim, args.delta, rep.kind,
             rep.formula_id, value,
             _vec(rep.witness[0]) if rep.witness else "",
             _vec(rep.witness[1]) if rep.witness else ""]]
    if not rep.is_lipschitz:
        print("family is not Lipschitz continuous; constant is infinite",
              file=sys.stderr)
    _emit("lipschitz", header, rows, args.json)
    return 0


def cmd_compare(args) -> int:
    start, stop, count = args.eps_grid.split(":")
    grid = np.linspace(float(start), float(stop), int(count))
    k = bd.lipschitz_convex_type(en.catalogue("renyi", alpha=args.alpha),
                                 args.dim).value
    trivial = 2.0 * np.log2(args.dim)
    header = ["eps", "ours", "rastegin", "chen", "zhang", "trivial"]
    rows = []
    for eps in grid:
        eps = float(eps)
        rows.append([
            eps,
            k * eps,
            bd.prior_art_bound("rastegin", args.alpha, args.dim, eps).value,
            bd.prior_art_bound("chen", args.alpha, args.dim, eps).value,
            bd.prior_art_bound("zhang", args.alpha, args.dim, eps).value,
            trivial,
        ])
    _emit("compare", header, rows, args.json)
    return 0


def cmd_scaling(args) -> int:
    dims = [int(tok) for tok in args.dims.split(",")]
    alpha = float("inf") if args.alpha in ("inf", "oo") else float(args.alpha)
    rows = bd.dimensional_scaling_table(alpha, args.s_exponent, dims)
    _emit("scaling", ["d", "eps", "C"],
          [[r.dim, r.eps, r.bound] for r in rows], args.json)
    return 0


def cmd_distinct(args) -> int:
    p = _parse_probvec(args.probvec, args.outcomes)
    spec = dc.TrialSpec(p, args.trials)
    rows = [["expected_distinct", dc.expected_distinct(spec)]]
    if spec.outcomes <= dc.EXACT_LIMIT:
        pmf = dc.pmf_distinct(spec)
        cdf = np.cumsum(pmf)
        for j in range(spec.outcomes):
            rows.append([f"F_{j+1}", cdf[j]])
    if args.eps is not None:
        bound = dc.distinct_uniform_bound(spec.outcomes, spec.trials, args.eps)
        rows.append(["uniform_bound", bound.value])
        rows.append(["lipschitz_cap", bound.lipschitz_cap])
    if args.reps:
        pmf = dc.simulate_distinct(spec, args.reps, args.seed)
        mean = float(np.dot(np.arange(1, spec.outcomes + 1), pmf))
        rows.append(["simulated_mean", mean])
    _emit("distinct", ["quantity", "value"], rows, args.json)
    return 0


def cmd_verify(args) -> int:
    results = vf.run_suites([args.suite], args.seed)
    failed = [r for r in results if not r.passed]
    if args.json:
        doc = {"command": "verify",
               "results": [{"suite": r.suite, "name": r.name,
                            "passed": r.passed, "detail": r.detail}
                           for r in results],
               "failed": len(failed)}
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        for r in results:
            tag = "PASS" if r.passed else "FAIL"
            extra = f" ({r.detail})" if r.detail else ""
            print(f"{tag} {r.suite}/{r.name}{extra}")
        print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="majflow",
        description="Majorization flow, entropic continuity bounds, and "
                    "brute-force verification.")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(sp):
        sp.add_argument("--json", action="store_true",
                        help="emit one JSON document instead of CSV")

    sp = sub.add_parser("flow", help="print flow breakpoints and an endpoint")
    sp.add_argument("-p", "--probvec", required=True,
                    help="comma list, or 'u'/'psi' with -d")
    sp.add_argument("-e", "--eps", type=float)
    sp.add_argument("-d", "--dim", type=int)
    add_common(sp)
    sp.set_defaults(func=cmd_flow)

    sp = sub.add_parser("bound", help="uniform continuity bound for a family")
    sp.add_argument("-f", "--family", required=True)
    sp.add_argument("-a", "--alpha", type=float)
    sp.add_argument("-s", type=float)
    sp.add_argument("--trials", type=int)
    sp.add_argument("-d", "--dim", type=int)
    sp.add_argument("-e", "--eps", type=float, required=True)
    sp.add_argument("--quantum", action="store_true")
    sp.add_argument("--rho-file", help="density-matrix JSON file")
    add_common(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("lipschitz", help="optimal Lipschitz constant")
    sp.add_argument("-f", "--family", required=True)
    sp.add_argument("-a", "--alpha", type=float)
    sp.add_argument("-s", type=float)
    sp.add_argument("--trials", type=int)
    sp.add_argument("-d", "--dim", type=int, required=True)
    sp.add_argument("--delta", type=float, default=0.0,
                    help="smoothing radius for concave-type families")
    add_common(sp)
    sp.set_defaults(func=cmd_lipschitz)

    sp = sub.add_parser("compare", help="our bound vs prior formulas on an eps grid")
    sp.add_argument("-a", "--alpha", type=float, required=True)
    sp.add_argument("-d", "--dim", type=int, required=True)
    sp.add_argument("--eps-grid", default="0.01:0.5:50",
                    help="START:STOP:COUNT inclusive grid")
    add_common(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("scaling", help="bound along eps_d = d^-s for growing d")
    sp.add_argument("-a", "--alpha", required=True)
    sp.add_argument("-s", "--s-exponent", type=float, required=True)
    sp.add_argument("--dims", required=True, help="comma list of dimensions")
    add_common(sp)
    sp.set_defaults(func=cmd_scaling)

    sp = sub.add_parser("distinct", help="distinct-outcome statistics")
    sp.add_argument("-M", "--outcomes", type=int)
    sp.add_argument("-N", "--trials", type=int, required=True)
    sp.add_argument("-p", "--probvec", required=True)
    sp.add_argument("-e", "--eps", type=float)
    sp.add_argument("--reps", type=int, default=0)
    sp.add_argument("--seed", type=int, default=0)
    add_common(sp)
    sp.set_defaults(func=cmd_distinct)

    sp = sub.add_parser("verify", help="run randomized oracle cross-checks")
    sp.add_argument("--suite", default="all",
                    choices=sorted(vf._SUITES) + ["all"])
    sp.add_argument("--seed", type=int, default=7)
    add_common(sp)
    sp.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
