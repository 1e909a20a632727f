"""smt-lab: run one analysis on a scenario file and emit a JSON report.

Exit codes: 0 PASS, 1 FAIL (report still written), 2 bad input or failed
precondition, 3 a retry/quadrature/subset budget ran out.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import logging
import random
import sys
import time
from fractions import Fraction
from math import comb
from typing import Any, Callable, Dict, List, Sequence, Tuple

from .nevanlinna import (
    QuadratureError,
    SMTScenario,
    WindingNumberError,
    fmt_check,
    smt_check,
    truncation_bound,
)
from .poly import PolyParseError, format_poly
from .position import (
    INFINITE,
    SamplingError,
    SubsetCapExceeded,
    distributive_constant,
    subgeneral_index,
    subgeneral_position_check,
)
from .replace import (
    RetryBudgetExhausted,
    delta_from_thresholds,
    m_sequence,
    random_threshold_instance,
    replace_family,
    Thresholds,
    verify_certificate,
    weighted_product_inequality,
)
from .scenario import Scenario, ScenarioError, load_bundled, load_json, rational
from .variety import EMPTY, projective_dimension, variety_degree
from .weights import (
    BRUTE_FORCE_MAX_MONOMIALS,
    brute_force_hilbert_weight,
    ef_inequality_check,
    max_weight_basis,
)

REPORT_VERSION = "1"
BUDGET_ERRORS = (RetryBudgetExhausted, QuadratureError, SubsetCapExceeded, WindingNumberError, SamplingError)

log = logging.getLogger("smtlab")


def exact(x) -> Any:
    """JSON form of exact values: rationals as strings, sentinels by name."""
    if x is EMPTY:
        return "EMPTY"
    if x is INFINITE:
        return "INFINITE"
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return x
    if isinstance(x, (list, tuple)):
        return [exact(v) for v in x]
    return x


def format_monomial(m, variables: Sequence[str]) -> str:
    parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(variables, m) if e]
    return "*".join(parts) or "1"


# ---------------------------------------------------------------------------
# commands; each returns (results, passed, csv_rows)

Result = Tuple[Dict[str, Any], bool, List[Dict[str, Any]]]


def cmd_analyze_position(sc: Scenario) -> Result:
    V, fam, cfg = sc.ideal(), sc.family(), sc.sampling()
    names = [e.name for e in fam.entries]
    rep = distributive_constant(V, fam, cfg)
    dim_v = projective_dimension(V)
    table = {",".join(names[i - 1] for i in s): exact(codim) for s, codim in sorted(rep.table.items())}
    results: Dict[str, Any] = {
        "dim_V": exact(dim_v),
        "delta": exact(rep.delta),
        "witness": [names[i - 1] for i in rep.witness],
        "stable": rep.stable,
        "per_sample_delta": exact(list(rep.per_sample_delta)),
        "samples": exact(list(rep.samples_used)),
        "codimension_table": table,
        "subgeneral_index": subgeneral_index(V, fam, cfg),
    }
    passed = True
    if "l" in sc.analysis:
        l = sc.analysis["l"]
        sub = subgeneral_position_check(V, fam, l, cfg)
        bound = Fraction(l - dim_v + 1)
        results["subgeneral"] = {
            "l": l,
            "holds": sub.holds,
            "violating_subset": [names[i - 1] for i in sub.violating_subset] if sub.violating_subset else None,
            "sample": exact(sub.sample),
            "delta_bound": exact(bound),
            "delta_within_bound": rep.delta <= bound if sub.holds else None,
        }
        passed = sub.holds and rep.delta <= bound
    return results, passed, []


def cmd_replace(sc: Scenario) -> Result:
    V, fam = sc.ideal(), sc.family()
    if not fam.is_constant():
        raise ScenarioError("replacement needs constant-coefficient hypersurfaces", "hypersurfaces")
    polys = [p.to_fixed() for p in fam.polys]
    seed = sc.data.get("sampling", {}).get("seed", 0)
    budget = sc.analysis.get("retry_budget", 10)
    res = replace_family(V, polys, seed=seed, retry_budget=budget)
    check = verify_certificate(V, polys, res)
    results = {
        "n": projective_dimension(V),
        "profile": exact(list(res.profile.dims)),
        "thresholds": list(res.thresholds.t),
        "threshold_convention": res.thresholds.convention,
        "coefficients": [list(c) for c in res.coefficients],
        "replacements": [format_poly(p, sc.variables) for p in res.polys],
        "certificate": exact(list(res.certificate)),
        "retries": list(res.retries_used),
        "verification": {"valid": check.valid, "dims": exact(list(check.dims)), "messages": list(check.messages)},
    }
    return results, check.valid, []


def _threshold_instance(t, a) -> Dict[str, Any]:
    th = t if isinstance(t, Thresholds) else Thresholds.of(t)
    delta = delta_from_thresholds(th)
    ms = m_sequence(th)
    out = {"t": list(th.t), "delta": exact(delta), "m": exact(ms), "m0_equals_delta": ms[-1] == delta}
    if a is not None:
        ineq = weighted_product_inequality(th, a)
        out.update({"a": exact(list(a)), "holds": ineq.holds, "lhs": exact(ineq.lhs),
                    "lhs_power": exact(ineq.lhs_power), "rhs_power": exact(ineq.rhs_power)})
    return out


def cmd_lemma31(sc: Scenario) -> Result:
    a = sc.analysis
    if "t" in a:
        vals = [rational(x) for x in a["a"]] if "a" in a else None
        inst = _threshold_instance(a["t"], vals)
        return inst, inst["m0_equals_delta"] and inst.get("holds", True), []
    count = a.get("instances", 500)
    rng = random.Random(sc.data.get("sampling", {}).get("seed", 0))
    failures = []
    for k in range(count):
        th, vals = random_threshold_instance(rng)
        inst = _threshold_instance(th, vals)
        if not (inst["holds"] and inst["m0_equals_delta"]):
            failures.append({"index": k, **inst})
    return {"instances": count, "failures": failures}, not failures, []


def cmd_hilbert_weight(sc: Scenario) -> Result:
    sc.require("u", "c")
    V = sc.ideal()
    u = sc.analysis["u"]
    c = [rational(x) for x in sc.analysis["c"]]
    rep = max_weight_basis(V, u, c)
    results: Dict[str, Any] = {
        "u": u,
        "c": exact(c),
        "hilbert_function": len(rep.basis),
        "weight": exact(rep.value),
        "basis": [format_monomial(m, sc.variables) for m in rep.basis],
    }
    passed = True
    small = comb(V.nvars - 1 + u, V.nvars - 1) <= BRUTE_FORCE_MAX_MONOMIALS
    if sc.analysis.get("brute_force", small):
        brute = brute_force_hilbert_weight(V, u, c)
        results["brute_force_weight"] = exact(brute)
        passed = brute == rep.value
    return results, passed, []


def cmd_ef_check(sc: Scenario) -> Result:
    sc.require("u", "c", "J")
    V = sc.ideal()
    c = [rational(x) for x in sc.analysis["c"]]
    chk = ef_inequality_check(V, c, sc.analysis["u"], sc.analysis["J"])
    results = {
        "n": projective_dimension(V),
        "degree": variety_degree(V),
        "u": chk.u,
        "J": list(chk.J),
        "lhs": exact(chk.lhs),
        "rhs": exact(chk.rhs),
        "slack": exact(chk.slack),
        "margin": exact(chk.margin),
        "holds": chk.holds,
        "u_exceeds_degree": chk.u_exceeds_degree,
    }
    return results, chk.holds, []


def cmd_fmt_check(sc: Scenario) -> Result:
    f = sc.curve()
    target = sc.hypersurface(sc.analysis.get("target"))
    cfg = sc.quadrature()
    rep = fmt_check(f, target.poly, sc.r_grid(), cfg)
    rows = [{"r": r, "T": T, "m": m, "N": N, "rho": rho}
            for r, T, m, N, rho in zip(rep.r_grid, rep.T, rep.m, rep.N, rep.residuals)]
    results = {
        "target": target.name,
        "degree": rep.degree,
        "moving": rep.moving,
        "criterion": rep.criterion,
        "quadrature_tolerance": cfg.tolerance,
        "grid": rows,
    }
    return results, rep.passed, rows


def cmd_smt_check(sc: Scenario) -> Result:
    sc.require("epsilon")
    a = sc.analysis
    grid = sc.r_grid(default_samples=40)
    scenario = SMTScenario(sc.ideal(), sc.curve(), sc.family(), rational(a["epsilon"]),
                           grid[0], grid[-1], len(grid), sc.sampling(), sc.quadrature())
    rep = smt_check(scenario)
    rows = []
    for i, r in enumerate(rep.r_grid):
        row = {"r": r, "T": rep.T[i], "lhs": rep.lhs[i], "rhs": rep.rhs[i], "margin": rep.margin[i]}
        for name, N in zip(rep.names, rep.N[i]):
            row[f"N_{name}"] = N
        rows.append(row)
    results = {
        "n_f": rep.n_f,
        "degree_f": rep.degree_f,
        "delta_f": exact(rep.delta_f),
        "distributive_stable": rep.distributive_stable,
        "coefficient": exact(rep.coefficient),
        "epsilon": exact(rational(a["epsilon"])),
        "fraction_holding": rep.fraction_holding,
        "min_margin": min(rep.margin),
        "slowness_ratios": dict(zip(rep.names, rep.slowness)),
        "quadrature_tolerance": scenario.quadrature.tolerance,
        "grid": rows,
    }
    return results, rep.passed, rows


def cmd_truncation_bound(sc: Scenario) -> Result:
    sc.require("q", "epsilon")
    q = sc.analysis["q"]
    eps = rational(sc.analysis["epsilon"])
    return {"q": q, "epsilon": exact(eps), "bound": truncation_bound(q, eps)}, True, []


COMMANDS: Dict[str, Callable[[Scenario], Result]] = {
    "analyze-position": cmd_analyze_position,
    "replace": cmd_replace,
    "lemma31": cmd_lemma31,
    "hilbert-weight": cmd_hilbert_weight,
    "ef-check": cmd_ef_check,
    "fmt-check": cmd_fmt_check,
    "smt-check": cmd_smt_check,
    "truncation-bound": cmd_truncation_bound,
}

NO_INPUT_NEEDED = {"lemma31", "truncation-bound"}


# ---------------------------------------------------------------------------
# plumbing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smt-lab", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    src = parser.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="PATH", help="scenario JSON (or a report to re-run)")
    src.add_argument("--scenario", metavar="NAME", help="bundled scenario name")
    parser.add_argument("--out", metavar="PATH", help="report path (default: stdout)")
    parser.add_argument("--csv", metavar="PATH", help="CSV of the r-grid (fmt-check, smt-check)")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--epsilon", metavar="RAT")
    parser.add_argument("--u", type=int)
    parser.add_argument("--q", type=int)
    parser.add_argument("--r-min", type=float)
    parser.add_argument("--r-max", type=float)
    parser.add_argument("--samples", type=int)
    parser.add_argument("--retry-budget", type=int)
    parser.add_argument("--tolerance", type=float)
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def merge_flags(data: Dict[str, Any], args: argparse.Namespace) -> Dict[str, Any]:
    """Fold command-line overrides into the scenario so the echo is the effective input."""
    analysis = data.setdefault("analysis", {})
    if args.seed is not None:
        data.setdefault("sampling", {})["seed"] = args.seed
    if args.epsilon is not None:
        analysis["epsilon"] = args.epsilon
    for key in ("u", "q", "samples", "retry_budget", "tolerance"):
        value = getattr(args, key)
        if value is not None:
            analysis[key] = value
    if args.r_min is not None or args.r_max is not None:
        lo, hi = analysis.get("r_range", [None, None])
        lo = args.r_min if args.r_min is not None else lo
        hi = args.r_max if args.r_max is not None else hi
        if lo is None or hi is None:
            raise ScenarioError("--r-min and --r-max must both be given (or present in the file)",
                                "analysis.r_range")
        analysis["r_range"] = [lo, hi]
        analysis.pop("r_grid", None)
    if not analysis:
        del data["analysis"]
    return data


def input_digest(data: Any) -> str:
    canonical = json.dumps(data, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_csv(path: str, rows: List[Dict[str, Any]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def emit(report: Dict[str, Any], out: str | None) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    report: Dict[str, Any] = {"report_version": REPORT_VERSION, "command": args.command}
    start = time.perf_counter()
    try:
        if args.input:
            raw = load_json(args.input)
        elif args.scenario:
            raw = load_bundled(args.scenario)
        elif args.command in NO_INPUT_NEEDED:
            raw = {"schema_version": "1", "variables": ["x0"]}
        else:
            raise ScenarioError("--input or --scenario is required for this command")
        sc = Scenario.from_data(raw)
        sc = Scenario.from_data(merge_flags(sc.data, args))
        report["input_digest"] = input_digest(sc.data)
        report["input"] = sc.data
        results, passed, rows = COMMANDS[args.command](sc)
    except BUDGET_ERRORS as exc:
        return _fail(report, args, 3, exc, start)
    except (ScenarioError, PolyParseError, ValueError, TypeError, ArithmeticError) as exc:
        return _fail(report, args, 2, exc, start)
    code = 0 if passed else 1
    report.update({"results": results, "verdict": "PASS" if passed else "FAIL", "exit_code": code,
                   "timing": {"seconds": round(time.perf_counter() - start, 6)}})
    emit(report, args.out)
    if args.csv and rows:
        write_csv(args.csv, rows)
    print(f"{args.command}: {report['verdict']}", file=sys.stderr)
    return code


def _fail(report, args, code, exc, start) -> int:
    kind = "budget exhausted" if code == 3 else "input error"
    print(f"smt-lab {args.command}: {kind}: {exc}", file=sys.stderr)
    report.update({"verdict": "ERROR", "exit_code": code,
                   "error": {"type": type(exc).__name__, "message": str(exc),
                             "location": getattr(exc, "location", None)},
                   "timing": {"seconds": round(time.perf_counter() - start, 6)}})
    if args.out:
        emit(report, args.out)
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
