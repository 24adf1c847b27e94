"""polyshot: compile real polynomials into expectation-value arithmetic
circuits and reproduce their exact and shot-sampled evaluation statistics
on dense and windowed simulators."""

from .circuit import Circuit, Gate, depth, to_qasm, validate, validate_qasm
from .compile import (
    CompiledProgram,
    ResourceCounts,
    WeightSchedule,
    angle_of_weight,
    build_circuit,
    compile_poly,
    compute_weights,
    read_program,
    resources,
    write_program,
)
from .dense import (
    NoiseModel,
    ShotOutcome,
    expect_z,
    run_statevector,
    sample_output,
)
from .estimate import Estimate, Metrics, point_estimate, run_metrics, shot_scaling_fit
from .poly import (
    FitConfig,
    FitResult,
    NormalizedPolynomial,
    Polynomial,
    eval_poly,
    fit,
    normalize,
    read_coeffs,
    read_samples,
    sup_norm,
    write_coeffs,
    write_samples,
)
from .rng import derive_seed, generator
from .stream import (
    RetirementSchedule,
    liveness,
    run_window,
    sample_output_stream,
)

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CompiledProgram",
    "Estimate",
    "FitConfig",
    "FitResult",
    "Gate",
    "Metrics",
    "NoiseModel",
    "NormalizedPolynomial",
    "Polynomial",
    "ResourceCounts",
    "RetirementSchedule",
    "ShotOutcome",
    "WeightSchedule",
    "angle_of_weight",
    "build_circuit",
    "compile_poly",
    "compute_weights",
    "depth",
    "derive_seed",
    "eval_poly",
    "expect_z",
    "fit",
    "generator",
    "liveness",
    "normalize",
    "point_estimate",
    "read_coeffs",
    "read_program",
    "read_samples",
    "resources",
    "run_metrics",
    "run_statevector",
    "run_window",
    "sample_output",
    "sample_output_stream",
    "shot_scaling_fit",
    "sup_norm",
    "to_qasm",
    "validate",
    "validate_qasm",
    "write_coeffs",
    "write_program",
    "write_samples",
]
