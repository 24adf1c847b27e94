"""Command-line surface: fit, compile, evaluate, bench, export-qasm.

Exit codes: 0 success, 1 numeric/runtime failure, 2 usage error.
Flags override values from an optional JSON config file (--config for bench).
The default master seed can be overridden with the POLYSHOT_SEED environment
variable.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import bench
from .circuit import to_qasm
from .compile import (
    CompileError,
    build_circuit,
    compile_poly,
    read_program,
    resources,
    write_program,
)
from .dense import NoiseModel, sample_output
from .estimate import point_estimate
from .poly import (
    FitConfig,
    PolyError,
    Polynomial,
    eval_poly,
    fit,
    read_coeffs,
    read_samples,
    sample_function,
    write_coeffs,
)
from .stream import sample_output_stream

DEFAULT_SEED = 20250808

BUILTIN_TARGETS = {
    "sin": lambda x: math.sin(math.pi * x),
    "exp": lambda x: math.exp(x),
    "tanh": lambda x: math.tanh(3.0 * x),
    "runge": lambda x: 1.0 / (1.0 + 25.0 * x * x),
    "abs": abs,
}


class UsageError(Exception):
    pass


def _seed_default() -> int:
    env = os.environ.get("POLYSHOT_SEED")
    return int(env) if env else DEFAULT_SEED


def _target_fn(name: str):
    if name.startswith("poly:"):
        coeffs = [float(v) for v in name[len("poly:"):].split(",")]
        poly = Polynomial(tuple(coeffs))
        return lambda x: eval_poly(poly, x)
    if name in BUILTIN_TARGETS:
        return BUILTIN_TARGETS[name]
    raise UsageError(
        f"unknown target {name!r}; use poly:<c0,c1,...> or one of {sorted(BUILTIN_TARGETS)}"
    )


def cmd_fit(args) -> int:
    if (args.samples is None) == (args.target is None):
        raise UsageError("fit needs exactly one of --samples or --target")
    config = FitConfig(
        method=args.method,
        sample_count=args.sample_count,
        epochs=args.epochs,
        step_size=args.step_size,
    )
    if args.samples:
        samples = read_samples(args.samples)
    else:
        samples = sample_function(_target_fn(args.target), config)
    result = fit(samples, args.degree, config)
    write_coeffs(result.poly, args.out)
    print(f"wrote {args.out}; final MSE = {result.mse:.6e}")
    return 0


def cmd_compile(args) -> int:
    poly = read_coeffs(args.coeffs)
    program = compile_poly(poly, args.order)
    write_program(program, args.out)
    circuit = build_circuit(program, 0.0)
    res = resources(circuit)
    print(f"wrote {args.out}")
    print(f"C = {format(program.rescale, '.17g')}")
    print(
        f"forecast: {res.qubits} qubits, {res.two_qubit_gates} two-qubit gates, depth {res.depth}"
    )
    return 0


def cmd_evaluate(args) -> int:
    program = read_program(args.program)
    if abs(args.x) > 1.0:
        raise UsageError(f"--x {args.x} outside the encoding domain [-1, 1]")
    circuit = build_circuit(program, args.x)
    noise = None
    if args.noise_p2 > 0.0 or args.noise_p1 > 0.0:
        noise = NoiseModel(args.noise_p1, args.noise_p2)
    if args.sim == "stream":
        outcome = sample_output_stream(circuit, args.shots, args.seed, noise)
    else:
        outcome = sample_output(circuit, args.shots, args.seed, noise)
    est = point_estimate(outcome, program.rescale)
    truth = eval_poly(program.source, args.x)
    payload = {
        "x": args.x,
        "estimate": est.value,
        "stderr": est.stderr,
        "truth_if_known": truth,
    }
    print(bench._stable_json(payload))
    return 0


def cmd_bench(args) -> int:
    overrides = {}
    if args.config:
        overrides = json.loads(Path(args.config).read_text())
        if not isinstance(overrides, dict):
            raise UsageError("--config must hold a JSON object")
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    overrides.setdefault("master_seed", _seed_default())
    out_dir = Path(args.out_dir)
    if args.experiment == "table1":
        config = _apply_overrides(bench.ExperimentConfig(), overrides)
        report = bench.table1_experiment(config)
        bench.write_report(report, out_dir, "table1")
        print(bench.summary_table(report))
    elif args.experiment == "stress":
        config = _apply_overrides(bench.stress_config(), overrides)
        report = bench.stress_experiment(config)
        bench.write_report(report, out_dir, "stress")
        print(bench.summary_table(report))
    elif args.experiment == "noise":
        config = _apply_overrides(bench.noise_config(), overrides)
        report = bench.noise_sweep(config)
        bench.write_report(report, out_dir, "noise")
        print(bench.summary_table(report))
    else:  # shots
        result = bench.shot_scaling_experiment(master_seed=overrides["master_seed"])
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "shots.json").write_text(bench._stable_json(result) + "\n")
        lines = ["shots,rmse"] + [
            f"{r['shots']},{format(r['rmse'], '.17g')}" for r in result["per_shots"]
        ]
        (out_dir / "shots.csv").write_text("\n".join(lines) + "\n")
        for r in result["per_shots"]:
            print(f"N = {r['shots']:>6}: rmse = {r['rmse']:.5f}")
        print(f"log-log slope = {result['slope']:.4f}")
    print(f"reports written to {out_dir}")
    return 0


def _apply_overrides(config: bench.ExperimentConfig, overrides: dict) -> bench.ExperimentConfig:
    from dataclasses import replace

    known = {}
    for key, value in overrides.items():
        if not hasattr(config, key):
            raise UsageError(f"unknown config key {key!r}")
        if key in ("degrees",):
            value = tuple(int(v) for v in value)
        elif key in ("x_domain",):
            value = (float(value[0]), float(value[1]))
        known[key] = value
    return replace(config, **known)


def cmd_export_qasm(args) -> int:
    program = read_program(args.program)
    if abs(args.x) > 1.0:
        raise UsageError(f"--x {args.x} outside the encoding domain [-1, 1]")
    circuit = build_circuit(program, args.x)
    Path(args.out).write_text(to_qasm(circuit))
    print(f"wrote {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyshot",
        description="Fit polynomials, compile them to expectation-value arithmetic "
        "circuits, and evaluate them on shot-sampled simulators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter

    p_fit = sub.add_parser(
        "fit", help="fit a polynomial to samples or a builtin target", formatter_class=fmt
    )
    p_fit.add_argument("--samples", help="CSV file with header x,y")
    p_fit.add_argument(
        "--target", help="builtin target name (sin, exp, tanh, runge, abs) or poly:<c0,c1,...>"
    )
    p_fit.add_argument("--degree", type=int, required=True)
    p_fit.add_argument(
        "--method", choices=["least_squares", "gradient_descent"], default="least_squares"
    )
    p_fit.add_argument("--sample-count", type=int, default=101, help="grid size for --target")
    p_fit.add_argument("--epochs", type=int, default=2000)
    p_fit.add_argument("--step-size", type=float, default=0.1)
    p_fit.add_argument("--out", required=True, help="output coefficient JSON")
    p_fit.set_defaults(fn=cmd_fit)

    p_compile = sub.add_parser(
        "compile", help="compile coefficients to a program file", formatter_class=fmt
    )
    p_compile.add_argument("--coeffs", required=True, help="coefficient JSON file")
    p_compile.add_argument("--order", choices=["backward", "forward"], default="backward")
    p_compile.add_argument("--out", required=True, help="output program JSON")
    p_compile.set_defaults(fn=cmd_compile)

    p_eval = sub.add_parser(
        "evaluate", help="sample a compiled program at one point", formatter_class=fmt
    )
    p_eval.add_argument("--program", required=True)
    p_eval.add_argument("--x", type=float, required=True)
    p_eval.add_argument("--shots", type=int, default=4096)
    p_eval.add_argument("--seed", type=int, default=None)
    p_eval.add_argument("--sim", choices=["dense", "stream"], default="dense")
    p_eval.add_argument("--noise-p1", type=float, default=0.0)
    p_eval.add_argument("--noise-p2", type=float, default=0.0)
    p_eval.set_defaults(fn=cmd_evaluate)

    p_bench = sub.add_parser(
        "bench", help="run a benchmark experiment", formatter_class=fmt
    )
    p_bench.add_argument("experiment", choices=["table1", "stress", "shots", "noise"])
    p_bench.add_argument("--config", help="JSON file of config overrides")
    p_bench.add_argument("--seed", type=int, default=None, help="master seed override")
    p_bench.add_argument("--out-dir", required=True)
    p_bench.set_defaults(fn=cmd_bench)

    p_qasm = sub.add_parser(
        "export-qasm", help="emit OpenQASM 3.0 for a program at a point", formatter_class=fmt
    )
    p_qasm.add_argument("--program", required=True)
    p_qasm.add_argument("--x", type=float, required=True)
    p_qasm.add_argument("--out", required=True)
    p_qasm.set_defaults(fn=cmd_export_qasm)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", None) is None and args.command == "evaluate":
        args.seed = _seed_default()
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PolyError, CompileError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
