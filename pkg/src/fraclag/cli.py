"""Command-line interface.

Commands and their CSV columns::

    oscillator   t, x1, x2, residual_abs
    general      t, x_re, x_im, z_re, z_im
    fracop       t, in_re, in_im, out_re, out_im
    synthesize   function, x_power, p, re, im
    verify       check, pass

Expressions starting with '-' must be passed as --expr-f=-2*x^1.

Exit codes: 0 success, 2 invalid input, 3 divergence or carrier exit,
4 oracle or self-check failure. Errors are written to stderr as JSON lines.
"""
from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import checks
from .errors import CarrierExit, DivergenceError, FracLagError, UnsupportedSeries
from .expression import ParseError, parse_expression
from .frac_series import (
    Interval,
    evaluate,
    fractional_integral,
    left_caputo_derivative,
    left_rl_derivative,
    right_rl_derivative_formal,
)
from .lagrangian import synthesize
from .neumann import GeneralProblem, solve_general, verify_general
from .numeric_oracle import DEFAULT_H, DEFAULT_TOL, oracle_check_series
from .oscillator import DEFAULT_ORDER, OscillatorProblem, residual_check, solve

EXIT_OK, EXIT_INVALID, EXIT_SOLVER, EXIT_CHECK = 0, 2, 3, 4

COMMANDS = ("oscillator", "general", "synthesize", "fracop", "verify")
OPERATORS = {
    "leftRL": left_rl_derivative,
    "caputo": left_caputo_derivative,
    "rightFormal": right_rl_derivative_formal,
    "integral": fractional_integral,
}

DEFAULTS = {
    "alpha": 0.5,
    "interval": "0,1",
    "lambda": 1.0,
    "a0": 1.0,
    "a1": 0.0,
    "order": None,
    "expr_f": None,
    "expr_g": None,
    "expr_b": "0",
    "c1": "0",
    "c2": "0",
    "grid": 101,
    "oracle_h": DEFAULT_H,
    "tol": DEFAULT_TOL,
    "op": "leftRL",
    "out": None,
    "report": None,
    "seed": 0,
}
CONVERTERS = {
    "alpha": float, "lambda": float, "a0": float, "a1": float, "order": int,
    "grid": int, "oracle_h": float, "tol": float, "seed": int,
}


class InvalidInput(ValueError):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _emit(level: str, message: str, **extra) -> None:
    sys.stderr.write(json.dumps({"level": level, "message": message, **extra}) + "\n")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit("error", message, code=EXIT_INVALID, kind="UsageError")
        self.exit(EXIT_INVALID)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="fraclag",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", type=Path, help="INI file; section named after the command")
    parser.add_argument("--alpha")
    parser.add_argument("--interval", help="A,B")
    parser.add_argument("--lambda", dest="lambda_")
    parser.add_argument("--a0")
    parser.add_argument("--a1")
    parser.add_argument("--order", help="oscillator order N / Neumann iteration cap M")
    parser.add_argument("--expr-f", dest="expr_f")
    parser.add_argument("--expr-g", dest="expr_g")
    parser.add_argument("--expr-b", dest="expr_b", help="coupling b(t,x) for synthesize")
    parser.add_argument("--op", help="fracop operator: " + ", ".join(OPERATORS))
    parser.add_argument("--c1", help="R or RE,IM")
    parser.add_argument("--c2", help="R or RE,IM")
    parser.add_argument("--grid", help="number of sample points in (a, b]")
    parser.add_argument("--oracle-h", dest="oracle_h")
    parser.add_argument("--tol")
    parser.add_argument("--out", help="CSV output path (stdout when omitted)")
    parser.add_argument("--report", help="JSON report path")
    parser.add_argument("--seed")
    return parser


def resolve_config(args: argparse.Namespace) -> dict:
    """Merge built-in defaults, the config file section, and flags (highest)."""
    values = dict(DEFAULTS)
    if args.config is not None:
        cp = configparser.ConfigParser()
        if not cp.read(args.config):
            raise InvalidInput(f"cannot read config file {args.config}")
        if cp.has_section(args.command):
            for key, raw in cp.items(args.command):
                key = key.replace("-", "_")
                if key not in values:
                    raise InvalidInput(f"unknown config key {key!r}")
                values[key] = raw
    for key in values:
        flag = getattr(args, "lambda_" if key == "lambda" else key, None)
        if flag is not None:
            values[key] = flag
    for key, conv in CONVERTERS.items():
        if values[key] is not None:
            try:
                values[key] = conv(values[key])
            except ValueError:
                raise InvalidInput(f"{key} must be {conv.__name__}, got {values[key]!r}") from None
    values["interval"] = _parse_interval(values["interval"])
    values["c1"] = _parse_complex(values["c1"], "c1")
    values["c2"] = _parse_complex(values["c2"], "c2")
    if values["grid"] < 1:
        raise InvalidInput("grid must be >= 1")
    return values


def _parse_interval(text) -> Interval:
    try:
        a, b = (float(v) for v in str(text).split(","))
        return Interval(a, b)
    except ValueError as exc:
        raise InvalidInput(f"interval must be A,B with A < B: {exc}") from None


def _parse_complex(text, name: str) -> complex:
    parts = str(text).split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]))
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise InvalidInput(f"{name} must be R or RE,IM, got {text!r}")


def _grid(interval: Interval, n: int) -> np.ndarray:
    # open at a: series may be singular there
    return interval.a + interval.length * np.arange(1, n + 1) / n


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, (str, int)) else _fmt(v) for v in row])
    return buf.getvalue()


def _write(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _write_report(path, payload: dict) -> None:
    if path is not None:
        _write(path, json.dumps(payload, indent=2) + "\n")


def _parse(text, name: str):
    if text is None:
        raise InvalidInput(f"--{name.replace('_', '-')} is required")
    try:
        return parse_expression(text)
    except ParseError as exc:
        raise InvalidInput(f"{name}: {exc}") from None


def run_oscillator(cfg: dict) -> int:
    problem = OscillatorProblem(
        alpha=cfg["alpha"],
        lam=cfg["lambda"],
        interval=cfg["interval"],
        a0=cfg["a0"],
        a1=cfg["a1"],
        order=DEFAULT_ORDER if cfg["order"] is None else cfg["order"],
    )
    sol = solve(problem)
    residual = residual_check(sol, problem)
    ts = _grid(problem.interval, cfg["grid"])
    x1, x2 = evaluate(sol.x1, ts).real, evaluate(sol.x2, ts).real
    res = np.abs(evaluate(residual, ts))
    _write(cfg["out"], _csv_text(["t", "x1", "x2", "residual_abs"], zip(ts, x1, x2, res)))
    for w in sol.warnings:
        _emit("warning", str(w), kind="TruncationWarning")
    _write_report(cfg["report"], {
        "command": "oscillator",
        "problem": {
            "alpha": problem.alpha, "lambda": problem.lam,
            "interval": [problem.interval.a, problem.interval.b],
            "a0": problem.a0, "a1": problem.a1, "order": problem.order,
        },
        "complex_series": sol.complex_series.to_dict(),
        "x1": sol.x1.to_dict(),
        "x2": sol.x2.to_dict(),
        "residual": residual.to_dict(),
        "warnings": [str(w) for w in sol.warnings],
    })
    return EXIT_OK


def run_general(cfg: dict) -> int:
    a = cfg["interval"].a
    f = _parse(cfg["expr_f"], "expr_f").to_series(a)
    g = _parse(cfg["expr_g"] or "1", "expr_g").to_series(a)
    if len(g) != 1:
        raise InvalidInput("g must be a single nonzero monomial d*(t-a)^q")
    kwargs = {} if cfg["order"] is None else {"max_iters": cfg["order"]}
    problem = GeneralProblem(
        alpha=cfg["alpha"], interval=cfg["interval"], g=g, f=f,
        c1=cfg["c1"], c2=cfg["c2"], **kwargs,
    )
    result = solve_general(problem)
    residual = verify_general(result, problem)
    ts = _grid(problem.interval, cfg["grid"])
    x, z = evaluate(result.x, ts), evaluate(result.z, ts)
    _write(cfg["out"], _csv_text(
        ["t", "x_re", "x_im", "z_re", "z_im"], zip(ts, x.real, x.imag, z.real, z.imag)
    ))
    _write_report(cfg["report"], {
        "command": "general",
        "z": result.z.to_dict(),
        "x": result.x.to_dict(),
        "diagnostics": result.diagnostics(),
        "residual": residual.to_dict(),
    })
    return EXIT_OK


def run_fracop(cfg: dict) -> int:
    op_name = cfg["op"]
    if op_name not in OPERATORS:
        raise InvalidInput(f"op must be one of {', '.join(OPERATORS)}, got {op_name!r}")
    interval = cfg["interval"]
    s = _parse(cfg["expr_f"], "expr_f").to_series(interval.a)
    image = OPERATORS[op_name](s, cfg["alpha"])
    ts = _grid(interval, cfg["grid"])
    vin, vout = evaluate(s, ts), evaluate(image, ts)
    _write(cfg["out"], _csv_text(
        ["t", "in_re", "in_im", "out_re", "out_im"],
        zip(ts, vin.real, vin.imag, vout.real, vout.imag),
    ))

    oracle = None
    code = EXIT_OK
    if op_name in ("leftRL", "caputo"):
        points = [interval.a + interval.length * r for r in (0.25, 0.5, 1.0)]
        scheme = "GL" if op_name == "leftRL" else "L1"
        try:
            report = oracle_check_series(
                s, cfg["alpha"], points, tol=cfg["tol"], h=cfg["oracle_h"], scheme=scheme
            )
        except UnsupportedSeries as exc:
            _emit("info", f"oracle check skipped: {exc}")
        else:
            oracle = report.to_dict()
            if not report.passed:
                _emit("error", "oracle check failed", code=EXIT_CHECK, report=oracle)
                code = EXIT_CHECK
    _write_report(cfg["report"], {
        "command": "fracop",
        "op": op_name,
        "alpha": cfg["alpha"],
        "input": s.to_dict(),
        "output": image.to_dict(),
        "oracle": oracle,
    })
    return code


def run_synthesize(cfg: dict) -> int:
    a = cfg["interval"].a
    b = _parse(cfg["expr_b"], "expr_b").to_coefficient_function(a)
    f = _parse(cfg["expr_f"], "expr_f").to_coefficient_function(a)
    spec = synthesize(b, f, cfg["alpha"])
    if spec.is_complex:
        _emit("warning", "synthesized Lagrangian has complex coefficients")
    rows = []
    for name, cf in (("h", spec.h), ("G", spec.G)):
        for j, phi in enumerate(cf.coeffs):
            for p, c in phi.terms:
                rows.append((name, j, p, c.real, c.imag))
    _write(cfg["out"], _csv_text(["function", "x_power", "p", "re", "im"], rows))
    _write_report(cfg["report"], {"command": "synthesize", **spec.to_dict()})
    return EXIT_OK


def run_verify(cfg: dict) -> int:
    results = checks.run_all(cfg["seed"])
    rows = [(name, str(r["pass"]).lower()) for name, r in results.items() if isinstance(r, dict)]
    _write(cfg["out"], _csv_text(["check", "pass"], rows))
    _write_report(cfg["report"], {"command": "verify", **results})
    if not results["pass"]:
        _emit("error", "self-checks failed", code=EXIT_CHECK)
        return EXIT_CHECK
    return EXIT_OK


RUNNERS = {
    "oscillator": run_oscillator,
    "general": run_general,
    "fracop": run_fracop,
    "synthesize": run_synthesize,
    "verify": run_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INVALID
    try:
        cfg = resolve_config(args)
        return RUNNERS[args.command](cfg)
    except (DivergenceError, CarrierExit) as exc:
        _emit("error", str(exc), code=EXIT_SOLVER, kind=type(exc).__name__)
        return EXIT_SOLVER
    except (ValueError, FracLagError) as exc:
        _emit("error", str(exc), code=EXIT_INVALID, kind=type(exc).__name__)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
