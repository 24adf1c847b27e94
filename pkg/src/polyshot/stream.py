"""Windowed density-matrix simulator with qubit retirement.

Sweeps the gate list in order, adjoining each qubit to the active window at
its first use and tracing it out after its last use.  The state is a density
matrix over the active window only, so memory is 4^w for window size w; the
forward-order compiler keeps w <= 3, which is what makes degree-35 programs
(36 qubits) cheap to evaluate exactly.

The density matrix is stored as a tensor of shape [2]*w + [2]*w: the first w
axes index rows (ket side), the last w columns (bra side), in the order the
qubits were adjoined.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .dense import NoiseModel, ShotOutcome, _PAULIS, _gate_matrix
from .rng import generator

DEFAULT_WINDOW_CAP = 8


class WindowOverflowError(RuntimeError):
    pass


@dataclass(frozen=True)
class RetirementSchedule:
    """Per-qubit first/last gate indices (-1 = never used) and the peak window."""

    first_use: tuple[int, ...]
    last_use: tuple[int, ...]
    peak_window: int


def liveness(circuit: Circuit) -> RetirementSchedule:
    """Qubit lifetimes in emitted gate order; the measured qubit lives to the end."""
    n = circuit.n_qubits
    end = len(circuit.gates)
    first = [-1] * n
    last = [-1] * n
    for i, g in enumerate(circuit.gates):
        for q in g.qubits:
            if first[q] < 0:
                first[q] = i
            last[q] = i
    mq = circuit.measured_qubit
    if first[mq] < 0:
        first[mq] = end
    last[mq] = end
    live: set[int] = set()
    peak = 0
    for i, g in enumerate(circuit.gates):
        for q in g.qubits:
            if first[q] == i:
                live.add(q)
        peak = max(peak, len(live))
        for q in g.qubits:
            if last[q] == i:
                live.discard(q)
    peak = max(peak, 1)  # the measured qubit is live at measurement time
    return RetirementSchedule(tuple(first), tuple(last), peak)


_ZERO_RHO = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)


class _Window:
    """Rolling density matrix over the currently active qubits."""

    def __init__(self, cap: int):
        self.cap = cap
        self.active: list[int] = []
        self.rho = np.ones((), dtype=complex)  # scalar: empty window

    @property
    def width(self) -> int:
        return len(self.active)

    def adjoin(self, qubit: int) -> None:
        w = self.width
        rho = np.tensordot(self.rho, _ZERO_RHO, axes=0)
        # shape [rows w][cols w][2][2] -> [rows w+1][cols w+1]
        self.rho = np.moveaxis(rho, 2 * w, w)
        self.active.append(qubit)

    def retire(self, qubit: int) -> None:
        w = self.width
        i = self.active.index(qubit)
        self.rho = np.trace(self.rho, axis1=i, axis2=w + i)
        self.active.pop(i)

    def apply_1q(self, mat: np.ndarray, qubit: int) -> None:
        w = self.width
        i = self.active.index(qubit)
        rho = np.tensordot(mat, self.rho, axes=([1], [i]))
        rho = np.moveaxis(rho, 0, i)
        rho = np.tensordot(rho, mat.conj(), axes=([w + i], [1]))
        self.rho = np.moveaxis(rho, 2 * w - 1, w + i)

    def apply_cx(self, control: int, target: int) -> None:
        w = self.width
        i, j = self.active.index(control), self.active.index(target)
        u = np.zeros((2, 2, 2, 2), dtype=complex)  # [c' t' c t]
        u[0, 0, 0, 0] = u[0, 1, 0, 1] = u[1, 1, 1, 0] = u[1, 0, 1, 1] = 1.0
        rho = np.tensordot(u, self.rho, axes=([2, 3], [i, j]))
        rho = np.moveaxis(rho, (0, 1), (i, j))
        rho = np.tensordot(rho, u.conj(), axes=([w + i, w + j], [2, 3]))
        self.rho = np.moveaxis(rho, (2 * w - 2, 2 * w - 1), (w + i, w + j))

    def z_expectation(self, qubit: int) -> float:
        w = self.width
        i = self.active.index(qubit)
        reduced = self.rho
        # trace out everything else
        for axis in range(w - 1, -1, -1):
            if axis == i:
                continue
            off = reduced.ndim // 2
            reduced = np.trace(reduced, axis1=axis, axis2=off + axis)
        return float(np.real(reduced[0, 0] - reduced[1, 1]))


def _check_cap(circuit: Circuit, sched: RetirementSchedule, cap: int) -> None:
    if sched.peak_window <= cap:
        return
    live: set[int] = set()
    for i, g in enumerate(circuit.gates):
        for q in g.qubits:
            if sched.first_use[q] == i:
                live.add(q)
        if len(live) > cap:
            raise WindowOverflowError(
                f"window grows to {len(live)} qubits at gate {i} (cap {cap}); "
                "forward aggregation order keeps the window small"
            )
        for q in g.qubits:
            if sched.last_use[q] == i:
                live.discard(q)
    raise WindowOverflowError(
        f"peak window {sched.peak_window} exceeds cap {cap}; "
        "forward aggregation order keeps the window small"
    )


def run_window(
    circuit: Circuit,
    window_cap: int = DEFAULT_WINDOW_CAP,
    noise: NoiseModel | None = None,
    rng: np.random.Generator | None = None,
    check_invariants: bool = False,
) -> float:
    """Exact <Z> of the measured qubit via a single windowed sweep."""
    sched = liveness(circuit)
    _check_cap(circuit, sched, window_cap)
    noisy = noise is not None and not noise.is_trivial
    if noisy and rng is None:
        raise ValueError("trajectory noise requires an rng")
    win = _Window(window_cap)
    end = len(circuit.gates)
    for i, g in enumerate(circuit.gates):
        for q in g.qubits:
            if sched.first_use[q] == i:
                win.adjoin(q)
        if g.kind == "cx":
            win.apply_cx(g.qubits[0], g.qubits[1])
        else:
            win.apply_1q(_gate_matrix(g), g.qubits[0])
        if noisy:
            p = noise.p2 if g.kind == "cx" else noise.p1
            if p > 0.0:
                for q in g.qubits:
                    if rng.random() < p:
                        win.apply_1q(_PAULIS[rng.integers(3)], q)
        if check_invariants:
            _check_window(win, i)
        for q in g.qubits:
            if sched.last_use[q] == i:
                win.retire(q)
    mq = circuit.measured_qubit
    if mq not in win.active:  # no gate ever touched it
        win.adjoin(mq)
    return win.z_expectation(mq)


def _check_window(win: _Window, gate_index: int) -> None:
    w = win.width
    mat = win.rho.reshape(2**w, 2**w)
    tr = np.trace(mat)
    if abs(tr - 1.0) > 1e-10:
        raise AssertionError(f"trace drifted to {tr} after gate {gate_index}")
    if np.abs(mat - mat.conj().T).max() > 1e-10:
        raise AssertionError(f"hermiticity lost after gate {gate_index}")
    if np.linalg.eigvalsh(mat).min() < -1e-8:
        raise AssertionError(f"negative eigenvalue after gate {gate_index}")


def sample_output_stream(
    circuit: Circuit,
    shots: int,
    seed: int,
    noise: NoiseModel | None = None,
    window_cap: int = DEFAULT_WINDOW_CAP,
) -> ShotOutcome:
    """Shot sampling through the windowed sweep; same contract as the dense sampler.

    Noisy sampling runs one independent Pauli-insertion trajectory per shot.
    Trajectories evolve pure window states: tracing a retired qubit out is
    realized as measuring it and discarding the outcome, which leaves the
    remaining qubits' statistics untouched because retired qubits never act
    again.  All shots advance in one vectorized batch.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    rng = generator(seed)
    if noise is None or noise.is_trivial:
        z = run_window(circuit, window_cap)
        p1 = min(max(0.5 * (1.0 - z), 0.0), 1.0)
        n1 = int(rng.binomial(shots, p1))
        return ShotOutcome(shots - n1, n1)
    n1 = _trajectory_batch(circuit, shots, noise, rng, window_cap)
    return ShotOutcome(shots - n1, n1)


def _batch_apply_1q(state: np.ndarray, mat: np.ndarray, axis: int) -> np.ndarray:
    out = np.tensordot(state, mat, axes=([axis], [1]))
    return np.moveaxis(out, -1, axis)


def _batch_apply_cx(state: np.ndarray, c_axis: int, t_axis: int) -> np.ndarray:
    st = state.copy()
    hi = [slice(None)] * st.ndim
    hi[c_axis] = 1
    lo = list(hi)
    hi[t_axis], lo[t_axis] = 1, 0
    a = st[tuple(lo)].copy()
    st[tuple(lo)] = st[tuple(hi)]
    st[tuple(hi)] = a
    return st


def _batch_measure(state: np.ndarray, axis: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Projectively measure one window qubit in every trajectory; drop its axis."""
    sum_axes = tuple(i for i in range(1, state.ndim) if i != axis)
    probs = (np.abs(state) ** 2).sum(axis=sum_axes)  # (B, 2)
    tot = probs.sum(axis=1)
    p1 = np.where(tot > 0, probs[:, 1] / np.where(tot > 0, tot, 1.0), 0.0)
    outcomes = (rng.random(p1.shape[0]) < p1).astype(np.int64)
    picked = np.take_along_axis(
        np.moveaxis(state, axis, 1),
        outcomes.reshape((-1, 1) + (1,) * (state.ndim - 2)),
        axis=1,
    )[:, 0]
    norms = np.sqrt((np.abs(picked) ** 2).sum(axis=tuple(range(1, picked.ndim))))
    norms = np.where(norms > 0, norms, 1.0)
    picked /= norms.reshape((-1,) + (1,) * (picked.ndim - 1))
    return picked, outcomes


def _trajectory_batch(
    circuit: Circuit,
    shots: int,
    noise: NoiseModel,
    rng: np.random.Generator,
    window_cap: int,
) -> int:
    sched = liveness(circuit)
    _check_cap(circuit, sched, window_cap)
    state = np.ones((shots,), dtype=complex)
    active: list[int] = []

    def axis_of(q: int) -> int:
        return 1 + active.index(q)

    for i, g in enumerate(circuit.gates):
        for q in g.qubits:
            if sched.first_use[q] == i:
                fresh = np.zeros(state.shape + (2,), dtype=complex)
                fresh[..., 0] = state
                state = fresh
                active.append(q)
        if g.kind == "cx":
            state = _batch_apply_cx(state, axis_of(g.qubits[0]), axis_of(g.qubits[1]))
        else:
            state = _batch_apply_1q(state, _gate_matrix(g), axis_of(g.qubits[0]))
        p = noise.p2 if g.kind == "cx" else noise.p1
        if p > 0.0:
            for q in g.qubits:
                fired = rng.random(shots) < p
                if not fired.any():
                    continue
                paulis = rng.integers(3, size=shots)
                ax = axis_of(q)
                for which in range(3):
                    sel = np.nonzero(fired & (paulis == which))[0]
                    if sel.size:
                        state[sel] = _batch_apply_1q(state[sel], _PAULIS[which], ax)
        for q in g.qubits:
            if sched.last_use[q] == i:
                state, _ = _batch_measure(state, axis_of(q), rng)
                active.remove(q)
    mq = circuit.measured_qubit
    if mq not in active:
        fresh = np.zeros(state.shape + (2,), dtype=complex)
        fresh[..., 0] = state
        state = fresh
        active.append(mq)
    _, outcomes = _batch_measure(state, axis_of(mq), rng)
    return int(outcomes.sum())
