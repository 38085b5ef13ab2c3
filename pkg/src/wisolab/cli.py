"""Batch command-line front-end.

Every operation of the library is exposed as a subcommand that reads
plain-text inputs (profiles, meshes, problem files, flat key=value
configs), runs deterministically from an explicit seed, and writes
plot-ready JSON or CSV reports.  Exit codes: 0 success / verification
pass, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from .geometry import load_profile, measure, perimeter, random_profile
from .inequality import (
    DEFAULT_TOL,
    poincare_constant,
    quotient_R,
    verify_gauss_identity,
    verify_hardy_littlewood,
    verify_isoperimetric,
    verify_polya_szego,
)
from .meshing import half_disk_mesh, load_mesh
from .pde import (
    RHS_CATALOG,
    assemble_and_solve,
    comparison_report_json,
    load_problem,
    save_solution_csv,
    verify_comparison,
)
from .rearrange import MeshFunction, decreasing_rearrangement
from .weights import WeightParams, c_rad, kappa, l1_threshold, mu_half_ball

THREAD_ENV = "WISOLAB_WORKERS"

# subcommand -> required parameter flags (beyond common ones)
_NEEDS_PARAMS = {
    "constants", "measure", "perimeter", "quotient", "rearrange",
    "verify-isoperimetric", "verify-hl", "verify-gauss", "verify-ps",
    "poincare", "sweep",
}


class UsageError(Exception):
    """Bad flags or malformed input files (exit code 2)."""


def _read_config(path: str) -> dict:
    """Flat key=value file; '#' starts a comment."""
    cfg = {}
    for ln_no, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        ln = raw.split("#", 1)[0].strip()
        if not ln:
            continue
        if "=" not in ln:
            raise UsageError(f"{path}:{ln_no}: expected key=value, got {raw!r}")
        key, val = ln.split("=", 1)
        cfg[key.strip().replace("-", "_")] = val.strip()
    return cfg


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="wisolab",
        description="Weighted isoperimetric inequality laboratory",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, help_text, *, profile=False, mesh=False, problem=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key=value config file; flags override")
        p.add_argument("--N", type=int, default=None, help="space dimension")
        p.add_argument("--k", type=float, default=None, help="perimeter weight exponent")
        p.add_argument("--l", type=float, default=None, help="volume weight exponent")
        p.add_argument("--alpha", type=float, default=None, help="distance-to-boundary exponent")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--mesh-h", dest="mesh_h", type=float, default=None)
        p.add_argument("--format", choices=("json", "csv"), default=None)
        p.add_argument("--out", default=None, help="output directory for report files")
        if profile:
            p.add_argument("--profile", default=None, help="star profile file")
        if mesh:
            p.add_argument("--mesh", default=None, help="mesh interchange file")
            p.add_argument("--expr", default=None,
                           help=f"named function: {', '.join(sorted(RHS_CATALOG))}")
        if problem:
            p.add_argument("--problem", default=None, help="problem description file")
        return p

    add("constants", "closed-form constants for a parameter set")
    add("measure", "weighted volume of a star profile", profile=True)
    add("perimeter", "weighted perimeter of a star profile", profile=True)
    add("quotient", "isoperimetric quotient and slack against the sharp constant",
        profile=True)
    add("rearrange", "decreasing rearrangement of a nodal function", mesh=True)
    add("verify-isoperimetric", "randomized sweep of the sharp inequality")
    p_hl = add("verify-hl", "Hardy-Littlewood ratio inequality sweep")
    p_hl.add_argument("--l-prime", dest="l_prime", type=float, default=None)
    add("verify-gauss", "divergence-theorem identity sweep")
    add("verify-ps", "symmetrization energy-drop check", mesh=True)
    p_poin = add("poincare", "sharp weighted Poincare constant")
    p_poin.add_argument("--r-star", dest="r_star", type=float, default=None)
    p_poin.add_argument("--intervals", type=int, default=None)
    add("solve", "finite element solution of a problem file", problem=True)
    add("compare", "Talenti comparison of a problem against its symmetrization",
        problem=True)
    p_sweep = add("sweep", "isoperimetric sweeps over a grid of parameter triples")
    p_sweep.add_argument("--cases", default=None,
                         help="semicolon-separated k,l,alpha triples")
    p_sweep.add_argument("--workers", type=int, default=None)
    return top


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill flags left at None from the config file, then from defaults."""
    cfg = _read_config(args.config) if getattr(args, "config", None) else {}
    casts = {"N": int, "seed": int, "samples": int, "intervals": int, "workers": int}
    for key, val in cfg.items():
        if not hasattr(args, key):
            raise UsageError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            setattr(args, key, casts.get(key, _smart_cast)(val))
    defaults = {
        "seed": 0, "samples": 200, "tolerance": DEFAULT_TOL, "mesh_h": 0.02,
        "format": "json", "intervals": 10_000, "r_star": 1.0, "expr": "cone",
    }
    for key, val in defaults.items():
        if hasattr(args, key) and getattr(args, key) is None:
            setattr(args, key, val)
    return args


def _smart_cast(val: str):
    try:
        return float(val)
    except ValueError:
        return val


def _params(args, need=("N", "k", "l", "alpha")) -> WeightParams:
    missing = [f"--{n}" for n in need if getattr(args, n, None) is None]
    if missing:
        raise UsageError(f"missing required flags: {', '.join(missing)}")
    return WeightParams(
        N=args.N,
        k=args.k if args.k is not None else 0.0,
        l=args.l if args.l is not None else 0.0,
        alpha=args.alpha,
    )


def _resolved(args, p: WeightParams | None, extra: dict | None = None) -> dict:
    """Full resolved parameter block included in every report."""
    out = {"command": args.command, "seed": args.seed, "tolerance": args.tolerance}
    if p is not None:
        out.update({"N": p.N, "k": p.k, "l": p.l, "alpha": p.alpha})
    if extra:
        out.update(extra)
    return out


def _emit(args, name: str, payload: dict, csv_rows=None, csv_header=None) -> None:
    """Print the JSON report; also write it (or CSV rows) under --out."""
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    sys.stdout.write(text)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.format == "csv" and csv_rows is not None:
            with open(out_dir / f"{name}.csv", "w") as fh:
                fh.write(",".join(csv_header) + "\n")
                for row in csv_rows:
                    fh.write(",".join(repr(v) if isinstance(v, float) else str(v)
                                      for v in row) + "\n")
        else:
            (out_dir / f"{name}.json").write_text(text)


def _load_profile_arg(args):
    if args.profile is None:
        raise UsageError("missing required flag: --profile")
    try:
        return load_profile(args.profile)
    except FileNotFoundError as exc:
        raise UsageError(f"profile file not found: {args.profile}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _mesh_function(args) -> MeshFunction:
    if args.mesh:
        try:
            mesh = load_mesh(args.mesh)
        except FileNotFoundError as exc:
            raise UsageError(f"mesh file not found: {args.mesh}") from exc
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        mesh = half_disk_mesh(args.mesh_h)
    if args.expr not in RHS_CATALOG:
        raise UsageError(f"unknown --expr {args.expr!r}; "
                         f"choose from {', '.join(sorted(RHS_CATALOG))}")
    return MeshFunction.from_callable(mesh, RHS_CATALOG[args.expr])


def _cmd_constants(args) -> int:
    p = _params(args)
    payload = {
        "params": _resolved(args, p),
        "kappa": kappa(p.N, p.alpha),
        "mu_unit_half_ball": mu_half_ball(p, 1.0),
        "c_rad": c_rad(p),
        "l1_threshold": l1_threshold(p.k, p.N, p.alpha),
        "m": p.m,
        "regime": dataclasses.asdict(p.regime()),
    }
    _emit(args, "constants", payload)
    return 0


def _cmd_measure(args) -> int:
    p = _params(args, need=("N", "l", "alpha"))
    prof = _load_profile_arg(args)
    payload = {"params": _resolved(args, p), "measure": measure(prof, p.l, p.alpha)}
    _emit(args, "measure", payload)
    return 0


def _cmd_perimeter(args) -> int:
    p = _params(args, need=("N", "k", "alpha"))
    prof = _load_profile_arg(args)
    payload = {"params": _resolved(args, p), "perimeter": perimeter(prof, p.k, p.alpha)}
    _emit(args, "perimeter", payload)
    return 0


def _cmd_quotient(args) -> int:
    p = _params(args)
    prof = _load_profile_arg(args)
    val = quotient_R(prof, p)
    target = c_rad(p)
    payload = {
        "params": _resolved(args, p),
        "quotient": val,
        "c_rad": target,
        "slack": val - target,
    }
    _emit(args, "quotient", payload)
    return 0 if val - target >= -args.tolerance else 1


def _cmd_rearrange(args) -> int:
    p = _params(args, need=("l", "alpha"))
    u = _mesh_function(args)
    prof = decreasing_rearrangement(u, p.l, p.alpha)
    s, v = prof.interp_nodes()
    payload = {
        "params": _resolved(args, p, {"expr": args.expr}),
        "total_measure": prof.total_measure,
        "node_count": int(s.size),
        "u_star_max": float(v[0]),
    }
    rows = list(zip(s.tolist(), v.tolist()))
    _emit(args, "rearrange", payload, csv_rows=rows, csv_header=("s", "u_star"))
    if args.out:
        prof.to_csv(Path(args.out) / "u_star.csv")
    return 0


def _sweep_case(task):
    (N, k, l, alpha), samples, seed, tol = task
    p = WeightParams(N=N, k=k, l=l, alpha=alpha)
    rep = verify_isoperimetric(p, sample_count=samples, seed=seed, tolerance=tol)
    return {
        "N": N, "k": k, "l": l, "alpha": alpha,
        "min_slack": rep.min_slack,
        "worst_case_id": rep.worst_case_id,
        "verdict": rep.verdict,
        "exploratory": rep.exploratory,
    }


def _cmd_verify_isoperimetric(args) -> int:
    p = _params(args)
    rep = verify_isoperimetric(
        p, sample_count=args.samples, seed=args.seed, tolerance=args.tolerance
    )
    payload = rep.to_dict()
    payload["params"].update({"command": args.command})
    rows = [(i, a, b, s) for i, a, b, s in rep.per_case]
    _emit(args, "verify-isoperimetric", payload,
          csv_rows=rows, csv_header=("id", "lhs", "rhs", "slack"))
    return 0 if rep.passed() or rep.exploratory else 1


def _cmd_verify_hl(args) -> int:
    p = _params(args, need=("N", "l", "alpha"))
    if args.l_prime is None:
        raise UsageError("missing required flag: --l-prime")
    ss = np.random.SeedSequence(args.seed)
    child = ss.generate_state(args.samples)
    cases = []
    for i in range(args.samples):
        prof = random_profile(int(child[i]), N=p.N)
        lhs, rhs, slack = verify_hardy_littlewood(prof, p.l, args.l_prime, p.alpha)
        cases.append({"id": f"random-{i}", "lhs": lhs, "rhs": rhs, "slack": slack})
    min_slack = min(c["slack"] for c in cases)
    payload = {
        "params": _resolved(args, p, {"l_prime": args.l_prime, "samples": args.samples}),
        "min_slack": min_slack,
        "verdict": "pass" if min_slack >= -args.tolerance else "fail",
        "cases": cases,
    }
    rows = [(c["id"], c["lhs"], c["rhs"], c["slack"]) for c in cases]
    _emit(args, "verify-hl", payload, csv_rows=rows,
          csv_header=("id", "lhs", "rhs", "slack"))
    return 0 if min_slack >= -args.tolerance else 1


def _cmd_verify_gauss(args) -> int:
    p = _params(args, need=("N", "l", "alpha"))
    ss = np.random.SeedSequence(args.seed)
    child = ss.generate_state(args.samples)
    cases = []
    for i in range(args.samples):
        prof = random_profile(int(child[i]), N=p.N)
        lhs, rhs, slack = verify_gauss_identity(prof, p.l, p.alpha)
        cases.append({"id": f"random-{i}", "lhs": lhs, "rhs": rhs, "slack": slack})
    min_slack = min(c["slack"] for c in cases)
    payload = {
        "params": _resolved(args, p, {"samples": args.samples}),
        "min_slack": min_slack,
        "verdict": "pass" if min_slack >= -args.tolerance else "fail",
        "cases": cases,
    }
    rows = [(c["id"], c["lhs"], c["rhs"], c["slack"]) for c in cases]
    _emit(args, "verify-gauss", payload, csv_rows=rows,
          csv_header=("id", "lhs", "rhs", "slack"))
    return 0 if min_slack >= -args.tolerance else 1


def _cmd_verify_ps(args) -> int:
    p = _params(args)
    u = _mesh_function(args)
    # the check requires zero trace on the curved boundary
    from .meshing import GAMMA_PLUS

    vals = u.values.copy()
    vals[u.mesh.boundary_nodes(GAMMA_PLUS)] = 0.0
    u = MeshFunction(u.mesh, vals)
    energy, energy_star, gap = verify_polya_szego(u, p)
    h = u.mesh.mesh_size()
    tol = max(args.tolerance, 1.0 * h * max(energy, 1.0))
    payload = {
        "params": _resolved(args, p, {"expr": args.expr, "mesh_h": h}),
        "dirichlet_energy": energy,
        "symmetrized_energy": energy_star,
        "gap": gap,
        "gap_tolerance": tol,
        "verdict": "pass" if gap >= -tol else "fail",
    }
    _emit(args, "verify-ps", payload)
    return 0 if gap >= -tol else 1


def _cmd_poincare(args) -> int:
    p = _params(args)
    const = poincare_constant(p, args.r_star, intervals=args.intervals)
    payload = {
        "params": _resolved(args, p, {"r_star": args.r_star,
                                      "intervals": args.intervals}),
        "poincare_constant": const,
    }
    _emit(args, "poincare", payload)
    return 0


def _load_problem_arg(args):
    if args.problem is None:
        raise UsageError("missing required flag: --problem")
    try:
        return load_problem(args.problem)
    except FileNotFoundError as exc:
        raise UsageError(f"problem file not found: {args.problem}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _cmd_solve(args) -> int:
    prob = _load_problem_arg(args)
    u = assemble_and_solve(prob)
    payload = {
        "params": _resolved(args, prob.params, {"problem": args.problem}),
        "node_count": prob.mesh.node_count,
        "mesh_h": prob.mesh.mesh_size(),
        "u_max": float(np.max(u.values)),
        "u_min": float(np.min(u.values)),
    }
    _emit(args, "solve", payload)
    if args.out:
        save_solution_csv(u, Path(args.out) / "solution.csv")
    return 0


def _cmd_compare(args) -> int:
    prob = _load_problem_arg(args)
    rep = verify_comparison(prob)
    tol = max(args.tolerance, prob.mesh.mesh_size())
    text = comparison_report_json(rep, tol)
    sys.stdout.write(text)
    if args.out:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "compare.json").write_text(text)
    return 0 if json.loads(text)["verdict"] == "pass" else 1


def _cmd_sweep(args) -> int:
    if args.N is None:
        raise UsageError("missing required flags: --N")
    if args.cases:
        try:
            triples = [tuple(float(v) for v in chunk.split(","))
                       for chunk in args.cases.split(";") if chunk.strip()]
        except ValueError as exc:
            raise UsageError(f"bad --cases spec: {args.cases!r}") from exc
        if any(len(t) != 3 for t in triples):
            raise UsageError("each --cases entry must be k,l,alpha")
    else:
        triples = [(1.0, 0.0, 1.0), (2.0, 0.0, 1.0), (0.5, -0.5, 0.5), (3.0, 1.0, 2.0)]
    workers = args.workers or int(os.environ.get(THREAD_ENV, "1"))
    tasks = [((args.N, k, l, a), args.samples, args.seed, args.tolerance)
             for k, l, a in triples]
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_case, tasks))
    else:
        results = [_sweep_case(t) for t in tasks]
    strict = [r for r in results if not r["exploratory"]]
    ok = all(r["verdict"] == "pass" for r in strict)
    payload = {
        "params": _resolved(args, None, {"N": args.N, "samples": args.samples,
                                         "workers": workers}),
        "cases": results,
        "verdict": "pass" if ok else "fail",
    }
    rows = [(r["N"], r["k"], r["l"], r["alpha"], r["min_slack"], r["verdict"])
            for r in results]
    _emit(args, "sweep", payload, csv_rows=rows,
          csv_header=("N", "k", "l", "alpha", "min_slack", "verdict"))
    return 0 if ok else 1


_DISPATCH = {
    "constants": _cmd_constants,
    "measure": _cmd_measure,
    "perimeter": _cmd_perimeter,
    "quotient": _cmd_quotient,
    "rearrange": _cmd_rearrange,
    "verify-isoperimetric": _cmd_verify_isoperimetric,
    "verify-hl": _cmd_verify_hl,
    "verify-gauss": _cmd_verify_gauss,
    "verify-ps": _cmd_verify_ps,
    "poincare": _cmd_poincare,
    "solve": _cmd_solve,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args = _merge_config(args)
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
