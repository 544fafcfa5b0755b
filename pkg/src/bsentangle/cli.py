"""Command-line front end: ``compute``, ``sweep``, ``optimize``, ``ppt`` and ``verify``.

Data goes to stdout (or ``--out``); a one-line human summary goes to stderr.
Exit codes: 0 success/pass, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys

from . import fock
from .gaussian import (
    BeamSplitterParams,
    SqueezingParam,
    covariance_elements,
    entanglement,
    output_state,
    ppt_inseparable,
)
from .optimize import (
    ANGLE_PARAMS,
    DERIVED_PARAMS,
    PARAM_NAMES,
    Setup,
    SweepSpec,
    maximize_entanglement,
    phase_condition_check,
    sweep,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
R_MAX = 5.0
CUTOFF_RANGE = (4, 80)
VERIFY_MIN_TOL = 1e-3
CSV_HEADER = ("param", "value", "delta", "entropy_nats")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def fmt_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _json_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return json.dumps(fmt_float(v)) if not math.isfinite(v) else fmt_float(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_json_value(x)}" for k, x in v.items()) + "}"
    return json.dumps(v)


def to_json(obj) -> str:
    """Deterministic JSON: insertion-ordered keys, floats with 17 significant digits, inf as "inf"."""
    return _json_value(obj) + "\n"


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt_float(v) if isinstance(v, float) else str(v) for v in row) + "\n")
    return buf.getvalue()


def _common(p: argparse.ArgumentParser, cutoff=False):
    p.add_argument("--ra", type=float, default=0.0, help="squeezing magnitude of mode a")
    p.add_argument("--rb", type=float, default=0.0, help="squeezing magnitude of mode b")
    p.add_argument("--chia", type=float, default=0.0, help="squeezing phase of mode a")
    p.add_argument("--chib", type=float, default=0.0, help="squeezing phase of mode b")
    p.add_argument("--theta", type=float, default=None, help="mixing angle (default pi/4, the 50:50 splitter)")
    p.add_argument("--phi0", type=float, default=0.0, help="transmission phase")
    p.add_argument("--phi1", type=float, default=0.0, help="reflection phase")
    p.add_argument("--degrees", action="store_true", help="angles are given in degrees")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", metavar="PATH", help="write data here instead of stdout")
    if cutoff:
        p.add_argument("--cutoff", type=int, default=40, help="Fock cutoff per mode")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bsentangle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("compute", help="closed-form entanglement and PPT verdict"))
    _common(sub.add_parser("ppt", help="partial-transpose separability test"))
    _common(sub.add_parser("verify", help="cross-check against the Fock-space oracle"), cutoff=True)

    p = sub.add_parser("sweep", help="tabulate delta and entropy along one parameter")
    _common(p)
    p.add_argument("--param", required=True, choices=PARAM_NAMES + DERIVED_PARAMS)
    p.add_argument("--from", dest="start", type=float, required=True)
    p.add_argument("--to", dest="stop", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)

    p = sub.add_parser("optimize", help="maximize entanglement over free angles")
    _common(p)
    p.add_argument(
        "--free",
        default="",
        help="comma-separated: theta, phi0, phi1, chi_a, chi_b, or the aliases phases / all",
    )
    return parser


def _setup(args) -> Setup:
    conv = math.radians if args.degrees else float
    values = {
        "r_a": args.ra,
        "r_b": args.rb,
        "theta": math.pi / 4 if args.theta is None else conv(args.theta),
        "phi0": conv(args.phi0),
        "phi1": conv(args.phi1),
        "chi_a": conv(args.chia),
        "chi_b": conv(args.chib),
    }
    for name, v in values.items():
        if not math.isfinite(v):
            raise UsageError(f"{name} must be finite")
    for name in ("r_a", "r_b"):
        if not 0.0 <= values[name] <= R_MAX:
            raise UsageError(f"{name} must lie in [0, {R_MAX:g}]")
    if getattr(args, "cutoff", None) is not None:
        lo, hi = CUTOFF_RANGE
        if not lo <= args.cutoff <= hi:
            raise UsageError(f"cutoff must lie in [{lo}, {hi}]")
    return Setup(**values)


def cmd_compute(args) -> tuple[dict, int]:
    s = _setup(args)
    za, zb = s.squeezing()
    bs = s.beam_splitter()
    cov2 = covariance_elements(za, zb, bs)
    th = entanglement(za, zb, bs)
    ppt = ppt_inseparable(output_state(za, zb, bs))
    report = {
        "m11": cov2.m11,
        "m12": cov2.m12,
        "m22": cov2.m22,
        "delta": th.delta,
        "beta": th.beta,
        "entropy_nats": th.entropy_nats,
        "ppt_verdict": ppt.verdict,
        "lambda_min": ppt.lambda_min,
    }
    return report, EXIT_OK


def cmd_ppt(args) -> tuple[dict, int]:
    s = _setup(args)
    za, zb = s.squeezing()
    state = output_state(za, zb, s.beam_splitter())
    ppt = ppt_inseparable(state)
    report = {
        "ppt_verdict": ppt.verdict,
        "lambda_min": ppt.lambda_min,
        "covariance": [[float(x) for x in row] for row in state.cov],
    }
    return report, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    s = _setup(args)
    za, zb = s.squeezing()
    bs = s.beam_splitter()
    gauss = entanglement(za, zb, bs).entropy_nats
    oracle = fock.oracle_entanglement(za, zb, bs, args.cutoff, strict=False)
    diff = abs(gauss - oracle.entropy_nats)
    tol = max(VERIFY_MIN_TOL, 10 * oracle.truncation_budget)
    ok = oracle.truncation_budget <= fock.TRUNCATION_LIMIT and diff <= tol
    report = {
        "gaussian_entropy": gauss,
        "oracle_entropy": oracle.entropy_nats,
        "abs_diff": diff,
        "truncation_budget": float(oracle.truncation_budget),
        "tolerance": tol,
        "cutoff": args.cutoff,
        "verdict": "pass" if ok else "fail",
    }
    return report, EXIT_OK if ok else EXIT_FAIL


def cmd_sweep(args) -> tuple[list, int]:
    s = _setup(args)
    start, stop = args.start, args.stop
    if args.degrees and args.param in ANGLE_PARAMS:
        start, stop = math.radians(start), math.radians(stop)
    try:
        spec = SweepSpec(args.param, start, stop, args.steps, fixed=s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.param in ("r_a", "r_b") and stop > R_MAX:
        raise UsageError(f"{args.param} must lie in [0, {R_MAX:g}]")
    return sweep(spec), EXIT_OK


def cmd_optimize(args) -> tuple[dict, int]:
    s = _setup(args)
    names = [n.strip() for n in args.free.split(",") if n.strip()]
    if not names:
        raise UsageError("optimize needs at least one free parameter (--free)")
    try:
        res = maximize_entanglement(s.r_a, s.r_b, names, fixed=s)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    a = res.argmax
    za, zb = a.squeezing()
    report = {
        "free": list(res.free),
        "r_a": a.r_a,
        "r_b": a.r_b,
        "theta": a.theta,
        "phi0": a.phi0,
        "phi1": a.phi1,
        "chi_a": a.chi_a,
        "chi_b": a.chi_b,
        "delta_max": res.delta_max,
        "entropy_max": res.entropy_max,
        "k_branch": res.k_branch,
        "phase_residual": phase_condition_check(za, zb, a.beam_splitter()),
        "flat_objective": res.flat_objective,
    }
    return report, EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "ppt": cmd_ppt,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "optimize": cmd_optimize,
}


def render(command: str, result, fmt: str) -> str:
    if command == "sweep":
        if fmt == "csv":
            return to_csv(CSV_HEADER, [(r.param, r.value, r.delta, r.entropy_nats) for r in result])
        rows = [
            {"param": r.param, "value": r.value, "delta": r.delta, "entropy_nats": r.entropy_nats}
            for r in result
        ]
        return to_json({"rows": rows})
    if fmt == "csv":
        flat = {k: v for k, v in result.items() if not isinstance(v, list)}
        return to_csv(list(flat), [list(flat.values())])
    return to_json(result)


def _summary(command: str, result) -> str:
    if command == "sweep":
        best = max(result, key=lambda r: r.entropy_nats)
        return f"{len(result)} rows; max entropy {best.entropy_nats:.6g} nats at {best.param}={best.value:.6g}"
    if command == "verify":
        return f"verify {result['verdict']}: |diff| = {result['abs_diff']:.3e} (tol {result['tolerance']:.1e})"
    if command == "optimize":
        return f"max entropy {result['entropy_max']:.6g} nats, phase residual {result['phase_residual']:.2e}"
    if command == "compute":
        return f"entropy {result['entropy_nats']:.6g} nats, {result['ppt_verdict']}"
    return f"{result['ppt_verdict']} (lambda_min {result['lambda_min']:.3e})"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        result, code = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"bsentangle: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(args.command, result, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(_summary(args.command, result), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
