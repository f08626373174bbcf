"""Command-line interface.

Commands: ``check-space``, ``classify-map``, ``gauge``, ``iterate``,
``solve``, ``paper``.  Common flags: ``--scenario`` (a built-in id or a
file path), ``--format`` (``text`` or ``json-like``), ``--seed``,
``--t-grid``, ``--r-grid``, ``--tolerance``, ``--out``.

Exit status: 0 when every verdict/assertion passes, 1 when any check is
violated or failed, 2 on usage or schema errors.  Reports carry a
versioned schema; given identical inputs the machine-readable output is
byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .algebra import ClassTag, DomainError, GaugeDomain, class_membership, gauge
from .contractions import (
    MParams,
    cm_contractive_check,
    m_contractive_check,
    psi_contractive_check,
)
from .dynamics import picard_orbit, solve_fixed_point
from .expressions import parse_expression, pretty  # re-exported surface
from .papersuite import run_all
from .scenario import SchemaError, load_scenario, parse_grid, parse_scenario
from .spaces import axiom_check

REPORT_VERSION = 1

__all__ = ["main", "run_command", "parse_expression", "parse_scenario",
           "pretty"]


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="built-in scenario id or file path")
    common.add_argument("--format", choices=("text", "json-like"),
                        default="text", dest="fmt")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--t-grid", dest="t_grid", default=None,
                        help="'default', 'lin:lo:hi:n', 'log:lo:hi:n' "
                             "or comma-separated values")
    common.add_argument("--r-grid", dest="r_grid", default=None,
                        help="same forms as --t-grid, values in (0,1)")
    common.add_argument("--tolerance", type=float, default=None)
    common.add_argument("--out", default=None, help="write the report here")

    parser = argparse.ArgumentParser(
        prog="fuzzyfix",
        description="graded-nearness spaces, contraction classifiers, and "
                    "fixed-point certification")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("check-space", parents=[common],
                   help="certify the space axioms of a scenario")

    p = sub.add_parser("classify-map", parents=[common],
                       help="classify the scenario map against a "
                            "contraction definition")
    p.add_argument("--route", choices=("psi", "cm", "m"), default="cm")
    p.add_argument("--form", choices=("between", "onesided"),
                   default="between")

    p = sub.add_parser("gauge", parents=[common],
                       help="certify gauge class membership")
    p.add_argument("--gauge", dest="gauge_id", default=None,
                   help="gauge id; defaults to the scenario's gauges")
    p.add_argument("--class-tag", dest="class_tag", default=None,
                   choices=[t.value for t in ClassTag])
    p.add_argument("--eval", dest="eval_at", type=float, default=None,
                   help="also evaluate the gauge at this point")

    p = sub.add_parser("iterate", parents=[common],
                       help="run the orbit of the scenario map")
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--max-len", dest="max_len", type=int, default=None)

    p = sub.add_parser("solve", parents=[common],
                       help="run a fixed-point theorem route")
    p.add_argument("--x0", type=float, default=None)
    p.add_argument("--route", default=None,
                   choices=("auto", "cm-strong", "cm-general", "m-final"))

    sub.add_parser("paper", parents=[common],
                   help="run the reproduction and proposition suites")
    return parser


_DEFAULT_TAGS = {GaugeDomain.PSI: (ClassTag.PSI, ClassTag.PSI1),
                 GaugeDomain.PHI: (ClassTag.PHI1,),
                 GaugeDomain.ETA: (ClassTag.H,)}


def _grids(args, scenario):
    errors: list = []
    if args.t_grid is not None:
        spec = args.t_grid if ":" in args.t_grid or args.t_grid == "default" \
            else [float(v) for v in args.t_grid.split(",")]
        t_grid = parse_grid(spec, "t", "--t-grid", errors)
    else:
        t_grid = scenario.t_grid if scenario else parse_grid(None, "t", "", [])
    if args.r_grid is not None:
        spec = args.r_grid if ":" in args.r_grid or args.r_grid == "default" \
            else [float(v) for v in args.r_grid.split(",")]
        r_grid = parse_grid(spec, "r", "--r-grid", errors)
    else:
        r_grid = scenario.r_grid if scenario else parse_grid(None, "r", "", [])
    if errors:
        raise SchemaError(errors)
    return t_grid, r_grid


def _cmd_check_space(args, scenario):
    space = scenario.build_space()
    t_grid, _ = _grids(args, scenario)
    seed = args.seed if args.seed is not None else scenario.seed
    tol = args.tolerance if args.tolerance is not None else 1e-12
    report = axiom_check(space, triple_samples=500, t_grid=t_grid, seed=seed,
                         tol=tol)
    return report.passed, {"axiom_report": report.to_dict()}


def _cmd_classify_map(args, scenario):
    space = scenario.build_space()
    T = scenario.build_map()
    t_grid, r_grid = _grids(args, scenario)
    if args.route == "psi":
        psi = scenario.build_gauges().get("psi")
        if psi is None:
            raise SchemaError([("gauges.psi", "the psi route needs a psi "
                                "gauge in the scenario")])
        report = psi_contractive_check(space, T, psi, t_grid)
    elif args.route == "cm":
        report = cm_contractive_check(space, T, r_grid, t_grid,
                                      form=args.form)
    else:
        solver = scenario.solver
        params = MParams(float(solver.get("alpha", 0.0)),
                         float(solver.get("beta", 0.0)))
        psi = scenario.build_gauges().get("psi")
        report = m_contractive_check(space, T, params, psi=psi,
                                     r_grid=r_grid, t_grid=t_grid)
    return report.satisfied, {"classification": report.to_dict()}


def _cmd_gauge(args, scenario):
    if args.gauge_id is not None:
        gauges = {"cli": gauge(args.gauge_id)}
    elif scenario is not None and scenario.gauges:
        gauges = scenario.build_gauges()
    else:
        raise SchemaError([("--gauge", "no gauge given and the scenario "
                            "declares none")])
    tol = args.tolerance if args.tolerance is not None else 1e-4
    _, r_grid = _grids(args, scenario)
    certificates = []
    all_member = True
    for role, g in sorted(gauges.items()):
        if args.class_tag is not None:
            tags = (ClassTag(args.class_tag),)
        else:
            tags = _DEFAULT_TAGS[g.domain]
        for tag in tags:
            grid = r_grid if tag in (ClassTag.PSI1, ClassTag.PSI) else None
            cert = class_membership(g, tag, r_grid=grid, tau_resolution=tol)
            entry = {"role": role, **cert.to_dict()}
            if args.eval_at is not None:
                entry["eval"] = {"at": args.eval_at, "value": g.eval(args.eval_at)}
            certificates.append(entry)
            all_member &= cert.verdict.value == "member"
    return all_member, {"certificates": certificates}


def _cmd_iterate(args, scenario):
    space = scenario.build_space()
    T = scenario.build_map()
    t_grid, _ = _grids(args, scenario)
    cfg = scenario.solver_config()
    x0 = args.x0 if args.x0 is not None else scenario.x0
    if x0 is None:
        raise SchemaError([("--x0", "no start point given and the scenario "
                            "declares none")])
    max_len = args.max_len if args.max_len is not None else cfg.max_len
    tol = args.tolerance if args.tolerance is not None else cfg.stop_tolerance
    trace = picard_orbit(space, T, x0, max_len, tol, t_grid)
    body = {"trace": {"map": trace.map_name, "stop_reason":
                      trace.stop_reason.value, "length": trace.length,
                      "t_grid": list(trace.t_grid), "rows": trace.rows()}}
    return True, body


def _cmd_solve(args, scenario):
    space = scenario.build_space()
    T = scenario.build_map()
    t_grid, r_grid = _grids(args, scenario)
    cfg = scenario.solver_config()
    cfg.t_grid, cfg.r_grid = t_grid, r_grid
    x0 = args.x0 if args.x0 is not None else scenario.x0
    if x0 is None:
        raise SchemaError([("--x0", "no start point given and the scenario "
                            "declares none")])
    route = args.route if args.route is not None else scenario.route
    result = solve_fixed_point(space, T, x0, route, cfg)
    return (result.audit_passed and result.converged,
            {"solution": result.to_dict()})


def _cmd_paper(args, scenario):
    seed = args.seed if args.seed is not None else 7
    body = run_all(seed)
    return body["passed"], body


_COMMANDS = {"check-space": (_cmd_check_space, True),
             "classify-map": (_cmd_classify_map, True),
             "gauge": (_cmd_gauge, False),
             "iterate": (_cmd_iterate, True),
             "solve": (_cmd_solve, True),
             "paper": (_cmd_paper, False)}


def _render_text(report: dict) -> str:
    lines = [f"command: {report['command']}"]
    if report.get("scenario"):
        lines.append(f"scenario: {report['scenario']}")
    lines.append(f"passed: {report['passed']}")

    def walk(obj, indent=1):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v:
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {v}")
        elif isinstance(obj, list):
            preview = obj if len(obj) <= 24 else obj[:24]
            for item in preview:
                if isinstance(item, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {item}")
            if len(obj) > 24:
                lines.append(f"{pad}... ({len(obj) - 24} more)")

    walk(report["body"])
    return "\n".join(lines) + "\n"


def run_command(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Dispatch a command line; returns (exit status, rendered report)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse already printed the usage message
        return (0 if exc.code == 0 else 2), ""
    try:
        scenario = (load_scenario(args.scenario)
                    if args.scenario is not None else None)
        fn, needs_scenario = _COMMANDS[args.command]
        if needs_scenario and scenario is None:
            raise SchemaError([("--scenario", "this command needs a scenario")])
        passed, body = fn(args, scenario)
    except SchemaError as exc:
        lines = [f"schema error at {path}: {msg}" for path, msg in exc.errors]
        return 2, "\n".join(lines) + "\n"
    except (DomainError, OSError) as exc:
        return 2, f"error: {exc}\n"

    report = {"report_version": REPORT_VERSION, "command": args.command,
              "scenario": scenario.name if scenario else None,
              "seed": args.seed, "passed": bool(passed), "body": body}
    if args.fmt == "json-like":
        rendered = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        rendered = _render_text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rendered)
        rendered_out = f"report written to {args.out}\n"
    else:
        rendered_out = rendered
    return (0 if passed else 1), rendered_out


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, output = run_command(argv)
    if output:
        sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
