"""Exact expectation-value evaluation: the compiled circuit reproduces the
polynomial with no approximation error.

For any compiled program, C * <Z> on the measured qubit equals P(x) to
machine precision, for both aggregation orders.  The only error in a real
run is finite sampling, which this demo leaves out.
"""
import numpy as np

from polyshot import (
    Polynomial,
    build_circuit,
    compile_poly,
    eval_poly,
    expect_z,
    resources,
    run_statevector,
)

poly = Polynomial((0.05, -0.3, 0.1, 0.25, -0.2))
print("P(x) with coefficients", poly.coeffs)

for order in ("backward", "forward"):
    program = compile_poly(poly, order)
    worst = 0.0
    for x in np.linspace(-1, 1, 9):
        circuit = build_circuit(program, float(x))
        z = expect_z(run_statevector(circuit), circuit.measured_qubit)
        err = abs(program.rescale * z - eval_poly(poly, float(x)))
        worst = max(worst, err)
    res = resources(build_circuit(program, 0.3))
    print(
        f"{order:>8}: worst |C<Z> - P(x)| = {worst:.2e} over 9 points; "
        f"{res.qubits} qubits, {res.two_qubit_gates} CX, depth {res.depth}, "
        f"measured qubit {build_circuit(program, 0.3).measured_qubit}"
    )

print("\nx        truth      C*<Z>")
program = compile_poly(poly, "backward")
for x in (-0.9, -0.4, 0.0, 0.4, 0.9):
    circuit = build_circuit(program, x)
    z = expect_z(run_statevector(circuit), circuit.measured_qubit)
    print(f"{x:+.2f}  {eval_poly(poly, x):+.6f}  {program.rescale * z:+.6f}")
