import numpy as np
import pytest

from polyshot.circuit import (
    Circuit,
    CircuitError,
    Gate,
    depth,
    to_qasm,
    validate,
    validate_qasm,
)


def test_validate_empty_ok():
    assert validate(Circuit(1, (), 0)) == []


def test_validate_catches_identical_control_target():
    problems = validate(Circuit(3, (Gate("cx", (2, 2)),), 0))
    assert any("identical control/target at index 0" in p for p in problems)


def test_validate_catches_out_of_range_qubit():
    problems = validate(Circuit(4, (Gate.ry(5, 0.1),), 0))
    assert any("qubit 5" in p and "index 0" in p for p in problems)


def test_validate_catches_bad_measured_qubit():
    assert validate(Circuit(2, (), 5))


def test_validate_catches_angle_on_x():
    problems = validate(Circuit(1, (Gate("x", (0,), 0.3),), 0))
    assert any("must not carry an angle" in p for p in problems)


def test_depth_empty():
    assert depth(Circuit(1, (), 0)) == 0


def test_depth_parallel_single_qubit_gates():
    c = Circuit(2, (Gate.ry(0, 0.1), Gate.ry(1, 0.2)), 0)
    assert depth(c) == 1


def test_depth_serial_chain():
    c = Circuit(2, (Gate.ry(0, 0.1), Gate.cx(0, 1), Gate.ry(1, 0.2)), 1)
    assert depth(c) == 3


def test_depth_invariant_under_commuting_swap():
    a = Circuit(3, (Gate.ry(0, 0.1), Gate.ry(2, 0.2), Gate.cx(0, 1)), 0)
    b = Circuit(3, (Gate.ry(2, 0.2), Gate.ry(0, 0.1), Gate.cx(0, 1)), 0)
    assert depth(a) == depth(b) == 2


def test_qasm_single_x_golden():
    text = to_qasm(Circuit(1, (Gate.x(0),), 0))
    assert text == (
        "OPENQASM 3.0;\n"
        'include "stdgates.inc";\n'
        "qubit[1] q;\n"
        "bit c;\n"
        "x q[0];\n"
        "c = measure q[0];\n"
    )


def test_qasm_angle_formatting_17_digits():
    text = to_qasm(Circuit(1, (Gate.ry(0, float(np.arccos(0.0))),), 0))
    assert "ry(1.5707963267948966) q[0];" in text


def test_qasm_deterministic():
    c = Circuit(3, (Gate.ry(1, 0.25), Gate.cx(0, 1), Gate.rz(2, -0.5)), 2)
    assert to_qasm(c) == to_qasm(c)


def test_qasm_refuses_invalid_circuit():
    with pytest.raises(CircuitError):
        to_qasm(Circuit(1, (Gate.cx(0, 0),), 0))


def test_qasm_validator_accepts_emitted():
    c = Circuit(
        4,
        (Gate.ry(1, 1.25), Gate.rz(2, -0.5), Gate.x(0), Gate.cx(2, 3)),
        3,
    )
    assert validate_qasm(to_qasm(c)) == []


def test_qasm_validator_rejects_corruption():
    c = Circuit(2, (Gate.ry(1, 0.4),), 0)
    good = to_qasm(c)
    assert validate_qasm(good.replace("OPENQASM 3.0", "OPENQASM 2.0"))
    assert validate_qasm(good.replace("c = measure q[0];\n", ""))
    assert validate_qasm(good.replace("ry(", "rx("))
    assert validate_qasm(good.replace("q[1]", "q[7]"))
