"""Command-line front end: ``point``, ``sweep``, ``figures`` and ``verify``.

Exit codes: 0 success, 1 bad parameters, 2 failed verification, 3 I/O error.
"""
from __future__ import annotations

import argparse
import ast
import json
import math
import operator
import sys
from pathlib import Path

from .config import StepConfig
from .figures import FIGURES, write_figure
from .sweep import format_report, point_report, rows_to_csv, run_sweep, write_csv
from .verification import run_all

EXIT_OK, EXIT_PARAM, EXIT_VERIFY, EXIT_IO = 0, 1, 2, 3

_NAMES = {"pi": math.pi, "e": math.e}
_FUNCS = {"sqrt": math.sqrt, "sin": math.sin, "cos": math.cos, "asin": math.asin}
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def parse_number(text: str) -> float:
    """Evaluate a small arithmetic expression such as ``pi/4`` or ``1/sqrt(2)``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
            return _UNOPS[type(node.op)](ev(node.operand))
        if (isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS
                and len(node.args) == 1 and not node.keywords):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise ValueError(f"unsupported expression {text!r}")

    try:
        return float(ev(ast.parse(text.strip(), mode="eval")))
    except (SyntaxError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"cannot parse number {text!r}: {exc}") from exc
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def _add_physics(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("physics")
    g.add_argument("--config", type=Path, help="JSON config file; flags override its values")
    g.add_argument("--mu", type=parse_number, help="m/E")
    g.add_argument("--nu", type=parse_number, help="V0/E")
    g.add_argument("--sin-theta-c", type=parse_number, help="sine of the critical angle (with --zone)")
    g.add_argument("--zone", choices=["diffusion", "klein"], help="side of nu = 1 for --sin-theta-c")
    g.add_argument("--i-plus", type=parse_number, help="|I+|")
    g.add_argument("--i-minus", type=parse_number, help="|I-|")
    g.add_argument("--delta-omega", type=parse_number, help="relative phase of I+ and I- (radians)")
    g.add_argument("--samples", type=int, help="number of sin(theta) samples")
    g.add_argument("--threads", type=int, default=1, help="worker threads for sweeps")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diracstep", description="Dirac plane waves on an electrostatic step.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("point", help="all derived quantities at one angle")
    _add_physics(p)
    p.add_argument("--theta", type=parse_number, required=True, help="sin(theta), or theta with --radians")
    p.add_argument("--radians", action="store_true", help="read --theta as an angle in radians")
    p.add_argument("--json", action="store_true", help="print the JSON report only")

    p = sub.add_parser("sweep", help="CSV over a uniform sin(theta) grid")
    _add_physics(p)
    p.add_argument("--out", type=Path, help="CSV path (stdout if omitted)")

    p = sub.add_parser("figures", help="datasets and plot scripts for the standard figures")
    p.add_argument("--which", choices=list(FIGURES) + ["all"], default="all")
    p.add_argument("--out", type=Path, default=Path("figures"))
    p.add_argument("--samples", type=int, default=400)
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--grid-density", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--corrupt-flux-sign", action="store_true",
                   help="debug: flip the transmitted flux sign (the conservation check must fail)")
    return parser


def config_from_args(args: argparse.Namespace) -> StepConfig:
    data: dict = {}
    if args.config is not None:
        with open(args.config, encoding="utf-8") as fh:
            data = json.load(fh)
        if not isinstance(data, dict):
            raise ValueError(f"{args.config}: expected a JSON object")
    if args.nu is not None:
        data.pop("sin_theta_c", None)
        data.pop("zone_side", None)
        data["nu"] = args.nu
    if args.sin_theta_c is not None or args.zone is not None:
        data.pop("nu", None)
        if args.sin_theta_c is not None:
            data["sin_theta_c"] = args.sin_theta_c
        if args.zone is not None:
            data["zone_side"] = args.zone
    flags = {"mu": args.mu, "i_plus_mag": args.i_plus, "i_minus_mag": args.i_minus,
             "delta_omega": args.delta_omega, "theta_samples": args.samples}
    data.update({k: v for k, v in flags.items() if v is not None})
    if "mu" not in data:
        raise ValueError("--mu is required (flag or config file)")
    # one magnitude given: complete the other from the normalisation
    if "i_plus_mag" in data and "i_minus_mag" not in data:
        data["i_minus_mag"] = math.sqrt(max(1.0 - data["i_plus_mag"] ** 2, 0.0))
    elif "i_minus_mag" in data and "i_plus_mag" not in data:
        data["i_plus_mag"] = math.sqrt(max(1.0 - data["i_minus_mag"] ** 2, 0.0))
    return StepConfig.from_dict(data)


def cmd_point(args) -> int:
    config = config_from_args(args)
    if args.radians:
        theta = args.theta
    else:
        if not 0.0 <= args.theta < 1.0:
            raise ValueError(f"sin(theta) must lie in [0, 1), got {args.theta}")
        theta = math.asin(args.theta)
    report = point_report(config, theta)
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        print(format_report(report))
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = config_from_args(args)
    rows = run_sweep(config, args.threads)
    if args.out is None:
        sys.stdout.write(rows_to_csv(rows))
    else:
        write_csv(rows, args.out)
        print(f"wrote {len(rows)} rows to {args.out}")
    return EXIT_OK


def cmd_figures(args) -> int:
    names = FIGURES if args.which == "all" else (args.which,)
    for name in names:
        files = write_figure(name, args.out, args.samples, args.threads)
        print(f"{name}: {len(files)} files in {args.out / name}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all(args.grid_density, args.seed, args.corrupt_flux_sign)
    for r in results:
        print(r.line())
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        print("failed: " + ", ".join(failed), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {"point": cmd_point, "sweep": cmd_sweep, "figures": cmd_figures, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help and on usage errors; hand the status back to the caller
        return exc.code if isinstance(exc.code, int) else EXIT_PARAM
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
