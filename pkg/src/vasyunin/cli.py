"""Closed forms, quadrature checks and Nyman-Beurling distances for exponentially averaged fractional parts.

Exit codes: 0 all checks pass, 1 verification failure, 2 quadrature did not
converge, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from vasyunin.gram import N_SOFT_CAP, Model, distance_sequence
from vasyunin.verification import (
    check_constant,
    check_reciprocity,
    check_closed_form_grid,
    curve_points,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_NONCONVERGED = 2
EXIT_USAGE = 64

COMMANDS = ("constant", "verify", "curve", "distances", "reciprocity")
DEFAULT_TOLERANCE = {"constant": 1e-10, "verify": 1e-8, "reciprocity": 1e-11}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # noqa: D401 - argparse hook
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    tolerance: float | None
    output_format: str
    seed: int
    output_path: Path | None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.tolerance is not None and not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")

    def tol(self) -> float:
        return self.tolerance if self.tolerance is not None else DEFAULT_TOLERANCE[self.command]


def _fmt(value: Any) -> Any:
    # repr of a float is the shortest round-trip form (at most 17 digits)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def _json_safe(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def render(cfg: RunConfig, extra_config: dict, rows: list[dict], passed: bool) -> str:
    if cfg.output_format == "json":
        doc = {
            "command": cfg.command,
            "config": {
                "tolerance": cfg.tolerance,
                "format": cfg.output_format,
                "seed": cfg.seed,
                **extra_config,
            },
            "records": [{k: _json_safe(v) for k, v in r.items()} for r in rows],
            "pass": passed,
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    if rows:
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _fmt(v) for k, v in r.items()})
    return buf.getvalue()


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path is None:
        sys.stdout.write(text)
    else:
        cfg.output_path.write_text(text, encoding="utf-8", newline="\n")


def _record_status(records) -> int:
    if not all(r.converged for r in records):
        return EXIT_NONCONVERGED
    return EXIT_OK if all(r.passed for r in records) else EXIT_FAIL


def cmd_constant(cfg: RunConfig, args) -> int:
    rec = check_constant(cfg.tol())
    _emit(cfg, render(cfg, {}, [rec.as_row()], rec.passed))
    return _record_status([rec])


def cmd_verify(cfg: RunConfig, args) -> int:
    if args.max < 1:
        raise UsageError("--max must be >= 1")
    records = check_closed_form_grid(args.max, rtol=cfg.tol())
    ok = all(r.passed for r in records)
    _emit(cfg, render(cfg, {"max": args.max}, [r.as_row() for r in records], ok))
    for r in records:
        if not r.passed:
            print(f"FAIL {r.label}: gap {r.abs_gap:.3e} > {r.tolerance:.3e}", file=sys.stderr)
    return _record_status(records)


def cmd_curve(cfg: RunConfig, args) -> int:
    if args.den_max < 1 or not args.lambda_max > args.lambda_min or args.lambda_min < 0:
        raise UsageError("need --den-max >= 1 and 0 <= --lambda-min < --lambda-max")
    points = curve_points(args.den_max, args.lambda_min, args.lambda_max)
    rows = [{"p": pt.p, "q": pt.q, "lambda": pt.lam, "value": pt.value} for pt in points]
    extra = {"den_max": args.den_max, "lambda_min": args.lambda_min, "lambda_max": args.lambda_max}
    _emit(cfg, render(cfg, extra, rows, bool(rows)))
    if not rows:
        print("empty grid", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_distances(cfg: RunConfig, args) -> int:
    if args.max < 1:
        raise UsageError("--max must be >= 1")
    if args.max > N_SOFT_CAP and not args.force:
        raise UsageError(f"--max above {N_SOFT_CAP} is below the condition floor; use --force")
    model = Model.parse(args.model)
    reports = distance_sequence(model, args.max, force=args.force)
    rows = [
        {
            "N": r.N,
            "distance_sq": r.distance_sq,
            "method": r.method.value,
            "condition": r.condition,
            "residual": r.residual_check,
            "flags": ";".join(r.flags),
        }
        for r in reports
    ]
    ok = all(r.ok and "non-monotone" not in r.flags for r in reports)
    _emit(cfg, render(cfg, {"model": model.value, "max": args.max}, rows, ok))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_reciprocity(cfg: RunConfig, args) -> int:
    if args.max < 1:
        raise UsageError("--max must be >= 1")
    records = check_reciprocity(args.max, cfg.tol())
    ok = all(r.passed for r in records)
    _emit(cfg, render(cfg, {"max": args.max}, [r.as_row() for r in records], ok))
    return EXIT_OK if ok else EXIT_FAIL


HANDLERS = {
    "constant": cmd_constant,
    "verify": cmd_verify,
    "curve": cmd_curve,
    "distances": cmd_distances,
    "reciprocity": cmd_reciprocity,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None,
                        help="pass/fail tolerance (command-specific default)")
    common.add_argument("--format", choices=("csv", "json"), default="csv", dest="output_format")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path, default=None, help="write output to PATH")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="vasyunin", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("constant", parents=[common], help="C by closed form and by quadrature")

    p = sub.add_parser("verify", parents=[common], help="closed form vs quadrature on an index grid")
    p.add_argument("--max", type=int, default=10)

    p = sub.add_parser("curve", parents=[common], help="A(1/lambda) on reduced rationals")
    p.add_argument("--den-max", type=int, default=60)
    p.add_argument("--lambda-min", type=float, default=0.0)
    p.add_argument("--lambda-max", type=float, default=10.0)

    p = sub.add_parser("distances", parents=[common], help="Nyman-Beurling distances d_N / D_N")
    p.add_argument("--model", choices=("det", "prob"), default="prob")
    p.add_argument("--max", type=int, default=16)
    p.add_argument("--force", action="store_true")

    p = sub.add_parser("reciprocity", parents=[common], help="cotangent-sum reciprocity residuals")
    p.add_argument("--max", type=int, default=30)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig(args.command, args.tolerance, args.output_format, args.seed, args.out)
        return HANDLERS[args.command](cfg, args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"vasyunin: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
