"""Experiment harness: random-polynomial recovery runs, shot-noise scaling,
the high-degree windowed stress run, the noise sweep, and the single-qubit
direct-encoding baseline.

Reports are deterministic: every stochastic draw is keyed by
derive_seed(master_seed, degree, trial, point), so scheduling cannot change
any number.  The JSON report carries a volatile "timings_ms" block; the
canonical serialization used for determinism checks omits it.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .circuit import Circuit, Gate
from .compile import build_circuit, compile_poly, resources
from .dense import NoiseModel, ShotOutcome, expect_z, run_statevector, sample_output
from .estimate import Estimate, PASS_THRESHOLD, point_estimate, run_metrics, shot_scaling_fit
from .poly import Polynomial, eval_poly, sup_norm
from .rng import derive_seed, generator
from .stream import run_window, sample_output_stream

TABLE1_PAPER_SIM = {
    # degree: (rmse, corr, pass %) from the reference simulator column
    1: (0.016, 0.999, 95.6),
    2: (0.018, 0.997, 91.1),
    3: (0.016, 0.998, 95.6),
    4: (0.013, 0.997, 97.8),
    5: (0.014, 0.998, 97.8),
    6: (0.015, 0.996, 95.6),
}


@dataclass(frozen=True)
class ExperimentConfig:
    degrees: tuple[int, ...] = (1, 2, 3, 4, 5, 6)
    points_per_trial: int = 15
    x_domain: tuple[float, float] = (-0.9, 0.9)
    trials: int = 10
    shots: int = 4096
    master_seed: int = 20250808
    coeff_bound: float = 0.5
    sup_rescale_target: float = 0.5
    simulator: str = "dense"  # or "stream"
    order: str = "backward"
    noise_p1: float = 0.0
    noise_p2: float = 0.0
    window_cap: int = 8
    pass_threshold: float = PASS_THRESHOLD

    def __post_init__(self):
        lo, hi = self.x_domain
        if not (-1.0 <= lo < hi <= 1.0):
            raise ValueError("x_domain must lie inside [-1, 1]")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.shots < 0:
            raise ValueError("shots must be >= 0 (0 = exact-expectation surrogate)")
        if self.simulator not in ("dense", "stream"):
            raise ValueError(f"unknown simulator {self.simulator!r}")

    @property
    def noise(self) -> NoiseModel | None:
        if self.noise_p1 == 0.0 and self.noise_p2 == 0.0:
            return None
        return NoiseModel(self.noise_p1, self.noise_p2)


def stress_config(**overrides) -> ExperimentConfig:
    base = ExperimentConfig(
        degrees=(1, 5, 10, 15, 25, 30, 35),
        points_per_trial=5,
        trials=10,
        shots=1024,
        simulator="stream",
        order="forward",
        sup_rescale_target=1.0,
        coeff_bound=0.5,
    )
    return replace(base, **overrides)


def noise_config(**overrides) -> ExperimentConfig:
    base = ExperimentConfig(
        degrees=tuple(range(1, 21)),
        points_per_trial=10,
        trials=6,
        shots=2048,
        simulator="stream",
        order="forward",
        sup_rescale_target=0.5,
        noise_p1=0.001,
        noise_p2=0.005,
    )
    return replace(base, **overrides)


@dataclass(frozen=True)
class Record:
    degree: int
    trial: int
    point_index: int
    x: float
    truth: float
    estimate: float
    stderr: float


@dataclass
class RunReport:
    config: ExperimentConfig
    per_degree: list[dict]
    records: list[Record]
    timings_ms: dict[str, float] = field(default_factory=dict)


def gen_random_poly(
    degree: int, seed: int, coeff_bound: float = 0.5, sup_rescale_target: float = 0.5
) -> Polynomial:
    """Uniform coefficient draw rescaled so max |P| over [-1, 1] hits the target."""
    if degree < 0:
        raise ValueError("degree must be >= 0")
    attempt = seed
    while True:
        gen = generator(attempt)
        a = gen.uniform(-coeff_bound, coeff_bound, degree + 1)
        if np.any(a != 0.0):
            break
        attempt += 1  # probability-zero redraw path
    poly = Polynomial(tuple(a))
    scale = sup_rescale_target / sup_norm(poly)
    return Polynomial(tuple(c * scale for c in a))


def _exact_z(circuit: Circuit, config: ExperimentConfig) -> float:
    if config.simulator == "stream":
        return run_window(circuit, config.window_cap)
    return expect_z(run_statevector(circuit), circuit.measured_qubit)


def _sample(circuit: Circuit, config: ExperimentConfig, seed: int) -> ShotOutcome:
    noise = config.noise
    if config.simulator == "stream":
        return sample_output_stream(circuit, config.shots, seed, noise, config.window_cap)
    return sample_output(circuit, config.shots, seed, noise)


def _recovery_run(config: ExperimentConfig) -> RunReport:
    t0 = time.perf_counter()
    xs = np.linspace(config.x_domain[0], config.x_domain[1], config.points_per_trial)
    records: list[Record] = []
    per_degree: list[dict] = []
    timings: dict[str, float] = {}
    for degree in config.degrees:
        t_deg = time.perf_counter()
        pairs: list[tuple[float, float]] = []
        norm_pairs: list[tuple[float, float]] = []
        pred_errs: list[float] = []
        deg_resources = None
        for trial in range(config.trials):
            poly = gen_random_poly(
                degree,
                derive_seed(config.master_seed, degree, trial),
                config.coeff_bound,
                config.sup_rescale_target,
            )
            program = compile_poly(poly, config.order)
            for point, x in enumerate(xs):
                try:
                    circuit = build_circuit(program, float(x))
                    if deg_resources is None:
                        deg_resources = resources(circuit)
                    truth = eval_poly(poly, float(x))
                    seed = derive_seed(config.master_seed, degree, trial, point)
                    if config.shots == 0:  # infinite-shot surrogate
                        z = _exact_z(circuit, config)
                        est = Estimate(program.rescale * z, 0.0, 0, program.rescale)
                    elif config.noise is None:
                        z = _exact_z(circuit, config)
                        p1 = min(max(0.5 * (1.0 - z), 0.0), 1.0)
                        n1 = int(generator(seed).binomial(config.shots, p1))
                        est = point_estimate(ShotOutcome(config.shots - n1, n1), program.rescale)
                        pred_errs.append(
                            2.0 * program.rescale * np.sqrt(p1 * (1.0 - p1) / config.shots)
                        )
                    else:
                        est = point_estimate(_sample(circuit, config, seed), program.rescale)
                except Exception as exc:
                    raise RuntimeError(
                        f"degree={degree} trial={trial} point={point}: {exc}"
                    ) from exc
                records.append(
                    Record(degree, trial, point, float(x), truth, est.value, est.stderr)
                )
                pairs.append((truth, est.value))
                norm_pairs.append((truth / program.rescale, est.value / program.rescale))
        metrics = run_metrics(pairs, config.pass_threshold)
        norm_metrics = run_metrics(norm_pairs, config.pass_threshold)
        row = {
            "degree": degree,
            "rmse": metrics.rmse,
            "pearson": metrics.pearson,
            "pass_rate": metrics.pass_rate,
            "rmse_normalized": norm_metrics.rmse,
            "qubits": deg_resources.qubits,
            "two_qubit_gates": deg_resources.two_qubit_gates,
            "depth": deg_resources.depth,
        }
        if pred_errs:
            row["rmse_pred"] = float(np.mean(pred_errs))
        paper = TABLE1_PAPER_SIM.get(degree)
        if paper is not None:
            row["paper_sim_rmse"] = paper[0]
            row["paper_sim_pass_pct"] = paper[2]
        per_degree.append(row)
        timings[f"degree_{degree}"] = 1000.0 * (time.perf_counter() - t_deg)
    timings["total"] = 1000.0 * (time.perf_counter() - t0)
    return RunReport(config, per_degree, records, timings)


def table1_experiment(config: ExperimentConfig | None = None) -> RunReport:
    """Recovery run over low degrees with the reference protocol defaults."""
    return _recovery_run(config or ExperimentConfig())


def stress_experiment(config: ExperimentConfig | None = None) -> RunReport:
    """High-degree sparse-sampled run on the windowed simulator."""
    config = config or stress_config()
    if config.simulator != "stream" or config.order != "forward":
        raise ValueError("the stress run requires simulator='stream' and order='forward'")
    return _recovery_run(config)


def noise_sweep(config: ExperimentConfig | None = None) -> RunReport:
    """Degree sweep under trajectory noise; correlation vs degree is the product.

    A trivial noise model (both rates zero) degenerates to the noiseless run
    bit for bit, same seeds included.
    """
    config = config or noise_config()
    return _recovery_run(config)


def shot_scaling_experiment(
    master_seed: int = 20250808,
    degree: int = 4,
    shots_list: tuple[int, ...] = (2**8, 2**10, 2**12, 2**14, 2**16),
    repetitions: int = 50,
    points: int = 15,
    x_domain: tuple[float, float] = (-0.9, 0.9),
    order: str = "backward",
) -> dict:
    """Empirical RMSE against shot count for one fixed random program."""
    poly = gen_random_poly(degree, derive_seed(master_seed, degree, 0))
    program = compile_poly(poly, order)
    xs = np.linspace(x_domain[0], x_domain[1], points)
    truths = np.array([eval_poly(poly, float(x)) for x in xs])
    p1s = []
    for x in xs:
        circuit = build_circuit(program, float(x))
        z = expect_z(run_statevector(circuit), circuit.measured_qubit)
        p1s.append(min(max(0.5 * (1.0 - z), 0.0), 1.0))
    rows = []
    for n_idx, shots in enumerate(shots_list):
        sq_errs = []
        for rep in range(repetitions):
            for point, (p1, truth) in enumerate(zip(p1s, truths)):
                seed = derive_seed(master_seed, degree, n_idx, rep, point)
                n1 = int(generator(seed).binomial(shots, p1))
                est = program.rescale * (shots - 2 * n1) / shots
                sq_errs.append((est - truth) ** 2)
        rows.append({"shots": shots, "rmse": float(np.sqrt(np.mean(sq_errs)))})
    slope = shot_scaling_fit([(r["shots"], r["rmse"]) for r in rows])
    return {
        "master_seed": master_seed,
        "degree": degree,
        "repetitions": repetitions,
        "points": points,
        "per_shots": rows,
        "slope": slope,
    }


def direct_baseline_eval(poly: Polynomial, x: float, shots: int, seed: int) -> Estimate:
    """Classical evaluation encoded on a single qubit, then sampled and rescaled."""
    c_direct = sup_norm(poly)
    y = eval_poly(poly, x) / c_direct
    if abs(y) > 1.0 + 1e-12:
        raise ValueError(f"normalized value {y} outside the encoding range")
    y = min(max(y, -1.0), 1.0)
    circuit = Circuit(1, (Gate.ry(0, float(np.arccos(y))),), 0)
    outcome = sample_output(circuit, shots, seed)
    return point_estimate(outcome, c_direct)


# --- serialization ---------------------------------------------------------


def _emit(value, out: list[str]) -> None:
    if isinstance(value, dict):
        out.append("{")
        for i, (k, v) in enumerate(value.items()):
            if i:
                out.append(", ")
            out.append(f'"{k}": ')
            _emit(v, out)
        out.append("}")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, v in enumerate(value):
            if i:
                out.append(", ")
            _emit(v, out)
        out.append("]")
    elif isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, (int, np.integer)):
        out.append(str(int(value)))
    elif isinstance(value, (float, np.floating)):
        out.append(format(float(value), ".17g"))
    elif value is None:
        out.append("null")
    elif isinstance(value, str):
        out.append('"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"')
    else:
        raise TypeError(f"cannot serialize {type(value)!r}")


def _stable_json(value) -> str:
    out: list[str] = []
    _emit(value, out)
    return "".join(out)


def _config_dict(config: ExperimentConfig) -> dict:
    return {
        "degrees": list(config.degrees),
        "points_per_trial": config.points_per_trial,
        "x_domain": list(config.x_domain),
        "trials": config.trials,
        "shots": config.shots,
        "master_seed": config.master_seed,
        "coeff_bound": config.coeff_bound,
        "sup_rescale_target": config.sup_rescale_target,
        "simulator": config.simulator,
        "order": config.order,
        "noise_p1": config.noise_p1,
        "noise_p2": config.noise_p2,
        "window_cap": config.window_cap,
        "pass_threshold": config.pass_threshold,
    }


def report_json(report: RunReport, include_timings: bool = True) -> str:
    payload = {
        "config": _config_dict(report.config),
        "per_degree": report.per_degree,
        "records": [
            {
                "degree": r.degree,
                "trial": r.trial,
                "point_index": r.point_index,
                "x": r.x,
                "truth": r.truth,
                "estimate": r.estimate,
                "stderr": r.stderr,
            }
            for r in report.records
        ],
    }
    if include_timings:
        payload["timings_ms"] = report.timings_ms
    return _stable_json(payload) + "\n"


def records_csv(report: RunReport) -> str:
    lines = ["degree,trial,point_index,x,truth,estimate,stderr"]
    for r in report.records:
        lines.append(
            f"{r.degree},{r.trial},{r.point_index},"
            f"{format(r.x, '.17g')},{format(r.truth, '.17g')},"
            f"{format(r.estimate, '.17g')},{format(r.stderr, '.17g')}"
        )
    return "\n".join(lines) + "\n"


def write_report(report: RunReport, out_dir: str | Path, stem: str) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / f"{stem}.json"
    csv_path = out / f"{stem}_records.csv"
    json_path.write_text(report_json(report))
    csv_path.write_text(records_csv(report))
    return json_path, csv_path


def summary_table(report: RunReport) -> str:
    header = f"{'deg':>4} {'rmse':>9} {'pearson':>9} {'pass%':>7} {'qubits':>7} {'2q':>5} {'depth':>6}"
    lines = [header]
    for row in report.per_degree:
        pearson = "n/a" if row["pearson"] is None else f"{row['pearson']:.4f}"
        lines.append(
            f"{row['degree']:>4} {row['rmse']:>9.5f} {pearson:>9} "
            f"{100.0 * row['pass_rate']:>6.1f}% {row['qubits']:>7} "
            f"{row['two_qubit_gates']:>5} {row['depth']:>6}"
        )
    return "\n".join(lines)
