"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they print.
"""
import math
import time

import numpy as np
import pytest

from polyshot.bench import (
    ExperimentConfig,
    noise_config,
    noise_sweep,
    records_csv,
    report_json,
    shot_scaling_experiment,
    stress_config,
    stress_experiment,
    table1_experiment,
)
from polyshot.circuit import Circuit, Gate, to_qasm, validate_qasm
from polyshot.compile import build_circuit, compile_poly, resources
from polyshot.dense import expect_z, run_statevector
from polyshot.poly import Polynomial, eval_poly
from polyshot.rng import derive_seed
from polyshot.stream import run_window

MASTER = 20250808
HALF_PI = math.pi / 2


def _line(num, ok, detail):
    print(f"[criterion {num:>2}] {'PASS' if ok else 'FAIL'}: {detail}")


def _fit_r2(xs, ys):
    coeff = np.polyfit(xs, ys, 1)
    pred = np.polyval(coeff, xs)
    ss_res = float(np.sum((ys - pred) ** 2))
    ss_tot = float(np.sum((ys - np.mean(ys)) ** 2))
    return coeff, 1.0 - ss_res / ss_tot


def test_criterion_1_arithmetic_primitives():
    t0 = time.perf_counter()
    grid = np.linspace(-1.0, 1.0, 9)
    worst_mult = 0.0
    for x0 in grid:
        for x1 in grid:
            gates = (
                Gate.ry(0, math.acos(x0)),
                Gate.ry(1, math.acos(x1)),
                Gate.rz(1, HALF_PI),
                Gate.cx(0, 1),
            )
            state = run_statevector(Circuit(2, gates, 1))
            worst_mult = max(worst_mult, abs(expect_z(state, 1) - x0 * x1))
    worst_sum = 0.0
    for x0 in grid:
        for x1 in grid:
            for w in np.linspace(0.0, 1.0, 9):
                alpha = math.acos(1.0 - 2.0 * w)
                gates = (
                    Gate.ry(0, math.acos(x0)),
                    Gate.ry(1, math.acos(x1)),
                    Gate.rz(1, HALF_PI),
                    Gate.cx(0, 1),
                    Gate.ry(0, alpha / 2),
                    Gate.cx(1, 0),
                    Gate.ry(0, -alpha / 2),
                    Gate.rz(0, HALF_PI),
                )
                state = run_statevector(Circuit(2, gates, 0))
                want = w * x0 + (1.0 - w) * x1
                worst_sum = max(worst_sum, abs(expect_z(state, 0) - want))
    elapsed = time.perf_counter() - t0
    ok = worst_mult < 1e-12 and worst_sum < 1e-10 and elapsed < 5.0
    _line(1, ok, f"mult 81 cases worst {worst_mult:.2e} (<1e-12), "
                 f"sum 729 cases worst {worst_sum:.2e} (<1e-10), {elapsed:.1f}s (<5s)")
    assert worst_mult < 1e-12
    assert worst_sum < 1e-10
    assert elapsed < 5.0


def test_criterion_2_end_to_end_exactness():
    t0 = time.perf_counter()
    xs = np.linspace(-1.0, 1.0, 15)
    first_failure = None
    worst = 0.0
    for order in ("backward", "forward"):
        for degree in range(0, 9):
            for trial in range(20):
                rng = np.random.default_rng(derive_seed(MASTER, degree, trial))
                coeffs = rng.uniform(-1.0, 1.0, degree + 1)
                if not np.any(coeffs):
                    coeffs[0] = 0.5
                poly = Polynomial(tuple(coeffs))
                program = compile_poly(poly, order)
                for x in xs:
                    circuit = build_circuit(program, float(x))
                    z = expect_z(run_statevector(circuit), circuit.measured_qubit)
                    err = abs(program.rescale * z - eval_poly(poly, float(x)))
                    worst = max(worst, err)
                    if err >= 1e-9 and first_failure is None:
                        first_failure = (order, degree, float(x), err)
    elapsed = time.perf_counter() - t0
    ok = first_failure is None and elapsed < 30.0
    detail = f"worst |C<Z> - P(x)| = {worst:.2e} (<1e-9), {elapsed:.1f}s (<30s)"
    if first_failure is not None:
        detail += f"; FIRST FAILING DEGREE: order={first_failure[0]} d={first_failure[1]}"
    _line(2, ok, detail)
    assert first_failure is None, (
        f"first failing degree {first_failure}; rerun the frozen gate-convention "
        "search before declaring failure"
    )
    assert elapsed < 30.0


def test_criterion_3_dense_stream_equivalence():
    worst = 0.0
    checked = 0
    for order in ("backward", "forward"):
        for trial in range(10):
            rng = np.random.default_rng(derive_seed(MASTER, 3, trial))
            degree = int(rng.integers(1, 11))
            coeffs = rng.uniform(-1.0, 1.0, degree + 1)
            program = compile_poly(Polynomial(tuple(coeffs)), order)
            for x in np.linspace(-0.95, 0.95, 15):
                circuit = build_circuit(program, float(x))
                from polyshot.stream import liveness

                if liveness(circuit).peak_window > 8:
                    continue  # window does not permit this order at this size
                dense_z = expect_z(run_statevector(circuit), circuit.measured_qubit)
                stream_z = run_window(circuit, window_cap=8)
                worst = max(worst, abs(dense_z - stream_z))
                checked += 1
    ok = worst < 1e-10 and checked > 100
    _line(3, ok, f"|dense - stream| worst {worst:.2e} (<1e-10) over {checked} cases")
    assert worst < 1e-10
    assert checked > 100


def test_criterion_4_table1_analog():
    t0 = time.perf_counter()
    report = table1_experiment(ExperimentConfig(master_seed=MASTER))
    elapsed = time.perf_counter() - t0
    problems = []
    for row in report.per_degree:
        ratio = row["rmse"] / row["rmse_pred"]
        if not (0.5 <= ratio <= 2.0):
            problems.append(f"d={row['degree']} rmse ratio {ratio:.2f}")
        if row["pearson"] < 0.99:
            problems.append(f"d={row['degree']} pearson {row['pearson']:.4f}")
        if row["pass_rate"] < 0.85:
            problems.append(f"d={row['degree']} pass {row['pass_rate']:.2%}")
        paper = f"paper sim rmse {row['paper_sim_rmse']:.3f} pass {row['paper_sim_pass_pct']:.1f}%"
        print(
            f"    degree {row['degree']}: rmse {row['rmse']:.4f} "
            f"(pred {row['rmse_pred']:.4f}, ratio {ratio:.2f}), "
            f"pearson {row['pearson']:.4f}, pass {row['pass_rate']:.1%} | {paper}"
        )
    ok = not problems and elapsed < 120.0
    _line(4, ok, f"degrees 1-6, 4096 shots: {'all bounds met' if not problems else '; '.join(problems)}, "
                 f"{elapsed:.1f}s (<120s)")
    assert not problems, problems
    assert elapsed < 120.0


def test_criterion_5_shot_noise_scaling():
    t0 = time.perf_counter()
    result = shot_scaling_experiment(master_seed=MASTER)
    elapsed = time.perf_counter() - t0
    slope = result["slope"]
    ok = -0.55 <= slope <= -0.45 and elapsed < 120.0
    _line(5, ok, f"log-log slope {slope:.4f} in [-0.55, -0.45], {elapsed:.1f}s (<120s)")
    assert -0.55 <= slope <= -0.45
    assert elapsed < 120.0


def test_criterion_6_stress_reproduction():
    t0 = time.perf_counter()
    report = stress_experiment(stress_config(master_seed=MASTER))
    elapsed = time.perf_counter() - t0
    qubit_fails = [r for r in report.per_degree if r["qubits"] != r["degree"] + 1]
    corr_fails = []
    for row in report.per_degree:
        print(
            f"    degree {row['degree']:>2}: qubits {row['qubits']:>2}, "
            f"rmse {row['rmse']:.4f}, pearson {row['pearson']:.4f} "
            f"(hardware reference at d=35: rmse 0.008, corr 0.9948)"
        )
        if row["pearson"] < 0.999:
            corr_fails.append((row["degree"], row["pearson"]))
    ok = not qubit_fails and not corr_fails and elapsed < 300.0
    _line(6, ok, f"qubits d+1 {'ok' if not qubit_fails else 'VIOLATED'}; "
                 f"corr>=0.999 fails at {corr_fails if corr_fails else 'none'}; "
                 f"{elapsed:.1f}s (<300s)")
    assert not qubit_fails
    assert elapsed < 300.0
    # Known-red sub-check: the aggregation weights divide by the coefficient
    # l1 norm, so the output expectation is P(x)/sum|a~| and shot noise scales
    # with that l1 constant.  Uniform random degree-35 draws have
    # l1/sup ~ 6, which caps the reachable correlation near 0.78 at 1024
    # shots; 0.999 is unreachable under this normalization (see the report
    # analysis in the repository notes).  The check is asserted as stated.
    assert not corr_fails, (
        "correlation >= 0.999 unattainable under l1 rescaling at 1024 shots: "
        f"{corr_fails}"
    )


def test_criterion_7_resource_accounting():
    degrees = np.arange(1, 21)
    qubit_fails = []
    two_q, depths = [], []
    for d in degrees:
        coeffs = tuple(np.full(d + 1, 1.0 / (d + 1)))
        circuit = build_circuit(compile_poly(Polynomial(coeffs), "backward"), 0.4)
        res = resources(circuit)
        if res.qubits != d + 1:
            qubit_fails.append(d)
        two_q.append(res.two_qubit_gates)
        depths.append(res.depth)
    (slope2, icept2), r2_two = _fit_r2(degrees, np.asarray(two_q, dtype=float))
    (sloped, iceptd), r2_dep = _fit_r2(degrees, np.asarray(depths, dtype=float))
    print(
        f"    two-qubit gates ~ {slope2:.3f}d + {icept2:+.3f} (paper: 4d-1; "
        f"measured differs), R^2 = {r2_two:.6f}"
    )
    print(
        f"    depth ~ {sloped:.3f}d + {iceptd:+.3f} (paper: 3d+1; "
        f"measured differs), R^2 = {r2_dep:.6f}"
    )
    ok = not qubit_fails and r2_two > 0.999 and r2_dep > 0.999
    _line(7, ok, f"qubits=d+1 for d=1..20; affine fits R^2 {r2_two:.4f}/{r2_dep:.4f} (>0.999)")
    assert not qubit_fails
    assert r2_two > 0.999
    assert r2_dep > 0.999


def test_criterion_8_noise_qualitative():
    config = noise_config(master_seed=MASTER)
    report = noise_sweep(config)
    corr = [row["pearson"] for row in report.per_degree]
    degrees = [row["degree"] for row in report.per_degree]
    # an adjacent increase counts as an inversion only when it is significant
    # at two Fisher-z standard errors for the per-degree pair count
    pairs = config.trials * config.points_per_trial
    se_z = math.sqrt(2.0 / (pairs - 3))
    inversions = []
    for i in range(len(corr) - 1):
        if corr[i + 1] <= corr[i]:
            continue
        dz = math.atanh(min(corr[i + 1], 0.999999)) - math.atanh(min(corr[i], 0.999999))
        if dz > 2.0 * se_z:
            inversions.append((degrees[i], corr[i], corr[i + 1]))
    final_ok = corr[-1] < 0.99
    print("    corr by degree: " + ", ".join(f"{d}:{c:.4f}" for d, c in zip(degrees, corr)))
    ok = len(inversions) <= 1 and final_ok
    _line(8, ok, f"{len(inversions)} significant inversions (<=1 allowed); "
                 f"final corr {corr[-1]:.4f} (<0.99)")
    assert len(inversions) <= 1, inversions
    assert final_ok


def test_criterion_9_determinism():
    t_config = ExperimentConfig(master_seed=MASTER, degrees=(1, 2, 3, 4, 5, 6))
    a = table1_experiment(t_config)
    b = table1_experiment(t_config)
    table_ok = (
        report_json(a, include_timings=False) == report_json(b, include_timings=False)
        and records_csv(a) == records_csv(b)
    )
    s_config = stress_config(master_seed=MASTER)
    sa = stress_experiment(s_config)
    sb = stress_experiment(s_config)
    stress_ok = (
        report_json(sa, include_timings=False) == report_json(sb, include_timings=False)
        and records_csv(sa) == records_csv(sb)
    )
    ra = shot_scaling_experiment(master_seed=MASTER)
    rb = shot_scaling_experiment(master_seed=MASTER)
    shots_ok = ra == rb
    ok = table_ok and stress_ok and shots_ok
    _line(9, ok, f"byte-identical reruns: table1 {table_ok}, stress {stress_ok}, shots {shots_ok}")
    assert table_ok
    assert stress_ok
    assert shots_ok


GOLDEN_PROGRAMS = {
    "deg0_neg_const.qasm": (Polynomial((-0.7,)), "backward", 0.25),
    "deg2_backward_x0.qasm": (Polynomial((0.1, 0.2, 0.3)), "backward", 0.0),
    "deg3_forward_x03.qasm": (Polynomial((0.05, -0.15, 0.3, -0.5)), "forward", 0.3),
}


def test_criterion_10_qasm_goldens():
    from pathlib import Path

    golden_dir = Path(__file__).parent / "goldens"
    mismatches = []
    grammar_fails = []
    for name, (poly, order, x) in GOLDEN_PROGRAMS.items():
        text = to_qasm(build_circuit(compile_poly(poly, order), x))
        fixture = (golden_dir / name).read_text()
        if text != fixture:
            mismatches.append(name)
        problems = validate_qasm(text)
        if problems:
            grammar_fails.append((name, problems))
    ok = not mismatches and not grammar_fails
    _line(10, ok, f"3 golden programs byte-identical: {not mismatches}; "
                  f"grammar validator accepts all: {not grammar_fails}")
    assert not mismatches, mismatches
    assert not grammar_fails, grammar_fails
