"""Dense statevector simulator: exact expectations, binomial shot sampling,
and stochastic-Pauli trajectory noise.

R_y(t) = [[cos t/2, -sin t/2], [sin t/2, cos t/2]]
R_z(t) = diag(exp(-it/2), exp(+it/2))
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate
from .rng import generator

DEFAULT_QUBIT_CAP = 26

_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_PAULIS = (_X, _Y, _Z)


class CapacityError(RuntimeError):
    """Raised when a circuit exceeds the dense qubit cap; use the stream simulator."""


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing probabilities per one- and two-qubit gate."""

    p1: float = 0.0
    p2: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.p2 <= 1.0):
            raise ValueError("noise probabilities must lie in [0, 1]")

    @property
    def is_trivial(self) -> bool:
        return self.p1 == 0.0 and self.p2 == 0.0


@dataclass(frozen=True)
class ShotOutcome:
    n0: int
    n1: int

    @property
    def total(self) -> int:
        return self.n0 + self.n1


def _ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _rz(theta: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * theta), 0.0], [0.0, np.exp(0.5j * theta)]], dtype=complex
    )


def _apply_1q(state: np.ndarray, mat: np.ndarray, q: int, n: int) -> np.ndarray:
    st = state.reshape([2] * n)
    st = np.moveaxis(st, q, -1)
    st = st @ mat.T
    return np.moveaxis(st, -1, q).reshape(-1)


def _apply_cx(state: np.ndarray, c: int, t: int, n: int) -> np.ndarray:
    st = state.reshape([2] * n).copy()
    hi = [slice(None)] * n
    hi[c] = 1
    lo = list(hi)
    hi[t], lo[t] = 1, 0
    a = st[tuple(lo)].copy()
    st[tuple(lo)] = st[tuple(hi)]
    st[tuple(hi)] = a
    return st.reshape(-1)


def _gate_matrix(g: Gate) -> np.ndarray:
    if g.kind == "ry":
        return _ry(g.angle)
    if g.kind == "rz":
        return _rz(g.angle)
    return _X


def run_statevector(
    circuit: Circuit,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
) -> np.ndarray:
    """Apply all gates in order to |0...0>; returns the final amplitudes.

    With a noise model, a uniformly random Pauli is inserted on each touched
    qubit after each gate with the model's probability (one stochastic
    trajectory; callers average over trajectories themselves).
    """
    n = circuit.n_qubits
    if n > qubit_cap:
        raise CapacityError(
            f"{n} qubits exceeds the dense cap of {qubit_cap}; "
            "route this circuit to the windowed stream simulator"
        )
    noisy = noise is not None and not noise.is_trivial
    if noisy and rng is None:
        raise ValueError("trajectory noise requires an rng")
    state = np.zeros(2**n, dtype=complex)
    state[0] = 1.0
    for g in circuit.gates:
        if g.kind == "cx":
            state = _apply_cx(state, g.qubits[0], g.qubits[1], n)
        else:
            state = _apply_1q(state, _gate_matrix(g), g.qubits[0], n)
        if noisy:
            p = noise.p2 if g.kind == "cx" else noise.p1
            if p > 0.0:
                for q in g.qubits:
                    if rng.random() < p:
                        state = _apply_1q(state, _PAULIS[rng.integers(3)], q, n)
    return state


def expect_z(state: np.ndarray, qubit: int) -> float:
    """<Z> of one qubit: sum of |amp|^2 signed by that qubit's bit."""
    n = int(round(np.log2(state.size)))
    probs = np.abs(state.reshape([2] * n)) ** 2
    marg = probs.sum(axis=tuple(i for i in range(n) if i != qubit))
    return float(marg[0] - marg[1])


def output_probability(circuit: Circuit, qubit_cap: int = DEFAULT_QUBIT_CAP) -> float:
    """Probability of measuring 1 on the measured qubit (noiseless)."""
    state = run_statevector(circuit, qubit_cap)
    return 0.5 * (1.0 - expect_z(state, circuit.measured_qubit))


def sample_output(
    circuit: Circuit,
    shots: int,
    seed: int,
    noise: NoiseModel | None = None,
    qubit_cap: int = DEFAULT_QUBIT_CAP,
) -> ShotOutcome:
    """Measure the output qubit `shots` times.

    Noiseless path: one exact marginal plus a single binomial draw, which is
    statistically identical to per-shot simulation.  Noisy path: one
    trajectory per shot, each sampling the output qubit once.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = generator(seed)
    if noise is None or noise.is_trivial:
        p1 = output_probability(circuit, qubit_cap)
        n1 = int(rng.binomial(shots, min(max(p1, 0.0), 1.0)))
        return ShotOutcome(shots - n1, n1)
    n1 = 0
    mq = circuit.measured_qubit
    for _ in range(shots):
        state = run_statevector(circuit, qubit_cap, noise, rng)
        p1 = 0.5 * (1.0 - expect_z(state, mq))
        if rng.random() < p1:
            n1 += 1
    return ShotOutcome(shots - n1, n1)
