"""Map normalized coefficients to convex weights, rotation angles and circuits.

Aggregation folds monomial terms into a running weighted sum, one two-qubit
sum block per term.  Weights are chosen so the recursion telescopes exactly
to the normalized polynomial:

  backward (highest degree first):  w_k = |a~_k| / sum_{j>=k} |a~_j|
  forward  (lowest degree first):   v_k = |a~_k| / sum_{j<=k} |a~_j|

Gate convention (frozen; see the golden convention test):

* encode: q_0 stays |0>, q_k gets Ry(arccos x) for k = 1..d
* power chain, k = 2..d: CX(q_{k-1} -> q_k) with Rz(pi/2) on the target
  first in forward order, and a bare CX in backward order
* sum block on (term t, sum s):
      Rz(pi/2) s; CX(t -> s); Ry(a/2) t; CX(s -> t); Ry(-a/2) t; Rz(pi/2) t
  with a = arccos(1 - 2w); the term qubit carries the result
* a negative coefficient contributes an X on its term qubit immediately
  before the block

The Rz placement is load-bearing: on entangled chain states the sum block's
Z-expectation identity holds only when the residual cross terms are rotated
onto operators with an odd number of Y factors, which the surrounding state
structure then cancels.  An exhaustive search over Rz/CX/angle-sign variants
confirmed this dressing is the only family exact for both orders; the
power-chain phase must be present in forward order and absent in backward
order.

Zero coefficients get weight 0: backward elides their blocks entirely, while
forward keeps a weightless relay block so the running sum still walks
qubit-by-qubit to q_d (eliding there breaks exactness because the relay CXs
also refresh the dephasing structure the next block relies on).
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .circuit import Circuit, Gate, depth as circuit_depth
from .poly import NormalizedPolynomial, Polynomial

HALF_PI = math.pi / 2.0

ORDERS = ("backward", "forward")


class CompileError(ValueError):
    pass


class EncodingDomainError(CompileError):
    pass


@dataclass(frozen=True)
class WeightSchedule:
    order: str
    weights: tuple[float, ...]
    angles: tuple[float, ...]
    signs: tuple[int, ...]
    skip_flags: tuple[bool, ...]
    seed_index: int

    @property
    def degree(self) -> int:
        return len(self.weights) - 1


@dataclass(frozen=True)
class CompiledProgram:
    schedule: WeightSchedule
    rescale: float
    source: Polynomial

    @property
    def degree(self) -> int:
        return self.schedule.degree

    @property
    def n_qubits(self) -> int:
        return self.degree + 1


@dataclass(frozen=True)
class ResourceCounts:
    qubits: int
    two_qubit_gates: int
    single_qubit_gates: int
    depth: int


def angle_of_weight(w: float, tol: float = 1e-12) -> float:
    """a = arccos(1 - 2w), in [0, pi].  Clamps w within tol of [0, 1]."""
    if w < -tol or w > 1.0 + tol:
        raise CompileError(f"weight {w} outside [0, 1]")
    w = min(max(w, 0.0), 1.0)
    return float(np.arccos(1.0 - 2.0 * w))


def compute_weights(np_poly: NormalizedPolynomial, order: str) -> WeightSchedule:
    """Convex weights, angles, signs and skip flags for one aggregation order."""
    if order not in ORDERS:
        raise CompileError(f"order must be one of {ORDERS}, got {order!r}")
    tilde = np.asarray(np_poly.tilde_coeffs, dtype=float)
    mags = np.abs(tilde)
    if mags.sum() == 0.0:
        raise CompileError("normalized polynomial has no mass")
    d = len(tilde) - 1
    signs = tuple(-1 if c < 0 else 1 for c in tilde)
    skips = tuple(bool(m == 0.0) for m in mags)
    weights = [0.0] * (d + 1)
    angles = [0.0] * (d + 1)
    if order == "backward":
        seed = max(k for k in range(d + 1) if not skips[k])
        tails = np.cumsum(mags[::-1])[::-1]  # tails[k] = sum_{j>=k} mags[j]
        for k in range(seed):
            if not skips[k]:
                weights[k] = float(mags[k] / tails[k])
                angles[k] = angle_of_weight(weights[k])
    else:
        seed = 0
        heads = np.cumsum(mags)  # heads[k] = sum_{j<=k} mags[j]
        for k in range(1, d + 1):
            if not skips[k]:
                weights[k] = float(mags[k] / heads[k])
                angles[k] = angle_of_weight(weights[k])
    return WeightSchedule(order, tuple(weights), tuple(angles), signs, skips, seed)


def compile_poly(poly: Polynomial, order: str = "backward", epsilon: float = 0.0) -> CompiledProgram:
    """Normalize and compile in one step."""
    from .poly import normalize

    np_poly = normalize(poly, epsilon)
    schedule = compute_weights(np_poly, order)
    return CompiledProgram(schedule, np_poly.scale, poly)


def _sum_block(gates: list[Gate], term: int, sum_q: int, alpha: float) -> None:
    gates.append(Gate.rz(sum_q, HALF_PI))
    gates.append(Gate.cx(term, sum_q))
    if alpha != 0.0:
        gates.append(Gate.ry(term, alpha / 2.0))
    gates.append(Gate.cx(sum_q, term))
    if alpha != 0.0:
        gates.append(Gate.ry(term, -alpha / 2.0))
    gates.append(Gate.rz(term, HALF_PI))


def build_circuit(program: CompiledProgram, x: float) -> Circuit:
    """Instantiate the compiled schedule at one evaluation point."""
    if not np.isfinite(x) or abs(x) > 1.0:
        raise EncodingDomainError(f"x = {x} outside the encoding domain [-1, 1]")
    sched = program.schedule
    d = sched.degree
    n = d + 1
    theta = float(np.arccos(x))
    gates: list[Gate] = []

    if sched.order == "backward":
        for k in range(1, n):
            gates.append(Gate.ry(k, theta))
        for k in range(2, n):
            gates.append(Gate.cx(k - 1, k))
        run_q = sched.seed_index
        if sched.signs[run_q] < 0:
            gates.append(Gate.x(run_q))
        for k in range(run_q - 1, -1, -1):
            if sched.skip_flags[k]:
                continue
            if sched.signs[k] < 0:
                gates.append(Gate.x(k))
            _sum_block(gates, k, run_q, sched.angles[k])
            run_q = k
        return Circuit(n, tuple(gates), run_q)

    # forward: emit encode/multiply/aggregate interleaved so that at most
    # three qubits are ever simultaneously live
    if d == 0:
        if sched.signs[0] < 0 and not sched.skip_flags[0]:
            gates.append(Gate.x(0))
        return Circuit(1, tuple(gates), 0)
    if sched.signs[0] < 0 and not sched.skip_flags[0]:
        gates.append(Gate.x(0))
    gates.append(Gate.ry(1, theta))
    run_q = 0
    for k in range(1, n):
        if k + 1 < n:  # extend the power chain before folding q_k
            gates.append(Gate.ry(k + 1, theta))
            gates.append(Gate.rz(k + 1, HALF_PI))
            gates.append(Gate.cx(k, k + 1))
        if not sched.skip_flags[k] and sched.signs[k] < 0:
            gates.append(Gate.x(k))
        _sum_block(gates, k, run_q, sched.angles[k])
        run_q = k
    return Circuit(n, tuple(gates), run_q)


def resources(circuit: Circuit) -> ResourceCounts:
    """Exact gate counts and dependency depth from the IR."""
    return ResourceCounts(
        qubits=circuit.n_qubits,
        two_qubit_gates=circuit.two_qubit_count,
        single_qubit_gates=circuit.one_qubit_count,
        depth=circuit_depth(circuit),
    )


def reconstruct_coeffs(program: CompiledProgram) -> tuple[float, ...]:
    """Invert the weight telescoping back to source coefficients (diagnostic)."""
    sched = program.schedule
    d = sched.degree
    mags = [0.0] * (d + 1)
    if sched.order == "backward":
        seq = [k for k in range(sched.seed_index, -1, -1) if not sched.skip_flags[k]]
    else:
        seq = [0] + [k for k in range(1, d + 1) if not sched.skip_flags[k]]
    survive = 1.0
    for k in seq[:0:-1]:  # processed after the seed, latest first
        mags[k] = sched.weights[k] * survive
        survive *= 1.0 - sched.weights[k]
    seed = seq[0]
    if not sched.skip_flags[seed]:
        mags[seed] = survive
    return tuple(sched.signs[k] * mags[k] * program.rescale for k in range(d + 1))


# --- file format -----------------------------------------------------------


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_program(program: CompiledProgram, path: str | Path) -> None:
    sched = program.schedule
    payload = "".join(
        [
            "{",
            f'"order": "{sched.order}", ',
            f'"C": {_fmt(program.rescale)}, ',
            f'"degree": {sched.degree}, ',
            '"weights": [' + ", ".join(_fmt(w) for w in sched.weights) + "], ",
            '"angles": [' + ", ".join(_fmt(a) for a in sched.angles) + "], ",
            '"signs": [' + ", ".join(str(s) for s in sched.signs) + "], ",
            '"skips": [' + ", ".join("true" if s else "false" for s in sched.skip_flags) + "]",
            "}\n",
        ]
    )
    Path(path).write_text(payload)


def read_program(path: str | Path) -> CompiledProgram:
    data = json.loads(Path(path).read_text())
    for key in ("order", "C", "degree", "weights", "angles", "signs", "skips"):
        if key not in data:
            raise CompileError(f"{path}: missing key {key!r}")
    order = data["order"]
    if order not in ORDERS:
        raise CompileError(f"{path}: bad order {order!r}")
    d = int(data["degree"])
    weights = tuple(float(w) for w in data["weights"])
    skips = tuple(bool(s) for s in data["skips"])
    if len(weights) != d + 1:
        raise CompileError(f"{path}: weight count does not match degree")
    if order == "backward":
        live = [k for k in range(d + 1) if not skips[k]]
        if not live:
            raise CompileError(f"{path}: all terms skipped")
        seed = max(live)
    else:
        seed = 0
    sched = WeightSchedule(
        order,
        weights,
        tuple(float(a) for a in data["angles"]),
        tuple(int(s) for s in data["signs"]),
        skips,
        seed,
    )
    program = CompiledProgram(sched, float(data["C"]), Polynomial((0.0,)))
    # recover source coefficients from the schedule itself
    coeffs = reconstruct_coeffs(program)
    return CompiledProgram(sched, float(data["C"]), Polynomial(coeffs))
