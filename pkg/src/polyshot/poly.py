"""Real polynomials on [-1, 1]: evaluation, least-squares / gradient fitting,
and the normalization that feeds the compiler.

Normalization divides by the l1 norm of the coefficients so that downstream
convex-weight aggregation telescopes exactly to the normalized polynomial.
The sup norm over [-1, 1] is still computed and reported for comparison with
the usual max-|P| convention; it never exceeds the l1 constant.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class PolyError(ValueError):
    pass


class FitError(PolyError):
    pass


class NormalizationError(PolyError):
    pass


@dataclass(frozen=True)
class Polynomial:
    """Coefficients a_0..a_d, constant term first."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        if len(c) == 0:
            raise PolyError("a polynomial needs at least one coefficient")
        if not all(np.isfinite(c)):
            raise PolyError("coefficients must be finite")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: float) -> float:
        return eval_poly(self, x)


@dataclass(frozen=True)
class NormalizedPolynomial:
    tilde_coeffs: tuple[float, ...]
    scale: float
    sup_norm_report: float

    @property
    def degree(self) -> int:
        return len(self.tilde_coeffs) - 1


@dataclass(frozen=True)
class FitConfig:
    method: str = "least_squares"  # or "gradient_descent"
    sample_count: int = 101
    sample_domain: tuple[float, float] = (-1.0, 1.0)
    epochs: int = 2000  # gradient only
    step_size: float = 0.1  # gradient only

    def __post_init__(self):
        if self.method not in ("least_squares", "gradient_descent"):
            raise FitError(f"unknown fit method {self.method!r}")
        if self.sample_count < 1:
            raise FitError("sample_count must be positive")
        lo, hi = self.sample_domain
        if not (-1.0 <= lo < hi <= 1.0):
            raise FitError("sample_domain must be a closed interval inside [-1, 1]")
        if self.epochs < 1:
            raise FitError("epochs must be positive")
        if self.step_size <= 0:
            raise FitError("step size must be positive")


@dataclass(frozen=True)
class FitResult:
    poly: Polynomial
    mse: float
    method: str


def eval_poly(poly: Polynomial, x: float) -> float:
    """Evaluate by Horner's rule."""
    acc = 0.0
    for a in reversed(poly.coeffs):
        acc = acc * x + a
    return acc


def eval_poly_many(poly: Polynomial, xs: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(np.asarray(xs, dtype=float))
    for a in reversed(poly.coeffs):
        acc = acc * xs + a
    return acc


def _vandermonde(xs: np.ndarray, degree: int) -> np.ndarray:
    return np.vander(xs, degree + 1, increasing=True)


def fit(samples: list[tuple[float, float]], degree: int, config: FitConfig | None = None) -> FitResult:
    """Fit a degree-`degree` polynomial to (x, y) samples by minimizing the MSE.

    least_squares solves the Vandermonde system with an orthogonal
    factorization (exact minimizer); gradient_descent runs full-batch
    fixed-step descent on the same loss.
    """
    config = config or FitConfig()
    if len(samples) == 0:
        raise FitError("no samples")
    if len(samples) < degree + 1:
        raise FitError(f"need at least {degree + 1} samples for degree {degree}, got {len(samples)}")
    xs = np.asarray([s[0] for s in samples], dtype=float)
    ys = np.asarray([s[1] for s in samples], dtype=float)
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise FitError("samples must be finite")
    V = _vandermonde(xs, degree)
    if config.method == "least_squares":
        coeffs, _, rank, _ = np.linalg.lstsq(V, ys, rcond=None)
        if rank < degree + 1:
            raise FitError(
                f"rank-deficient system: rank {rank} < {degree + 1}; need d+1 distinct x values"
            )
    else:
        coeffs = np.zeros(degree + 1)
        m = len(xs)
        with np.errstate(over="ignore", invalid="ignore"):
            for epoch in range(config.epochs):
                resid = V @ coeffs - ys
                grad = (2.0 / m) * (V.T @ resid)
                coeffs = coeffs - config.step_size * grad
                if not np.all(np.isfinite(coeffs)):
                    raise FitError(f"gradient descent diverged at step {epoch}")
    mse = float(np.mean((V @ coeffs - ys) ** 2))
    return FitResult(Polynomial(tuple(coeffs)), mse, config.method)


def sup_norm(poly: Polynomial, grid_points: int = 10001, tol: float = 1e-12) -> float:
    """max |P(x)| over [-1, 1]: dense grid scan plus golden-section refinement."""
    grid = np.linspace(-1.0, 1.0, grid_points)
    vals = np.abs(eval_poly_many(poly, grid))
    i = int(np.argmax(vals))
    if poly.degree == 0:
        return float(vals[i])
    lo = grid[max(i - 1, 0)]
    hi = grid[min(i + 1, grid_points - 1)]
    refined = _golden_max(lambda x: abs(eval_poly(poly, x)), lo, hi, tol)
    return float(max(vals[i], refined))


_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_max(f, lo: float, hi: float, tol: float) -> float:
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return max(fc, fd)


def normalize(poly: Polynomial, epsilon: float = 0.0) -> NormalizedPolynomial:
    """Scale coefficients so their absolute values sum to one.

    scale = (1 + epsilon) * sum|a_k|; epsilon is a relative safety margin and
    defaults to zero.  Raises on the all-zero polynomial, which callers must
    short-circuit to a constant-zero estimate.
    """
    if epsilon < 0:
        raise NormalizationError("epsilon must be >= 0")
    a = np.asarray(poly.coeffs, dtype=float)
    l1 = float(np.sum(np.abs(a)))
    if l1 == 0.0:
        raise NormalizationError("all-zero polynomial cannot be normalized")
    scale = l1 + epsilon * l1
    tilde = a / scale
    return NormalizedPolynomial(tuple(float(t) for t in tilde), scale, sup_norm(poly))


def sample_function(fn, config: FitConfig) -> list[tuple[float, float]]:
    """Evaluate a target on a uniform grid over the config's sample domain."""
    lo, hi = config.sample_domain
    xs = np.linspace(lo, hi, config.sample_count)
    return [(float(x), float(fn(x))) for x in xs]


# --- file formats ---------------------------------------------------------


def write_coeffs(poly: Polynomial, path: str | Path) -> None:
    Path(path).write_text(
        '{"coeffs": [' + ", ".join(format(c, ".17g") for c in poly.coeffs) + "]}\n"
    )


def read_coeffs(path: str | Path) -> Polynomial:
    data = json.loads(Path(path).read_text())
    if not isinstance(data, dict) or "coeffs" not in data:
        raise PolyError(f"{path}: expected a JSON object with a 'coeffs' list")
    return Polynomial(tuple(float(c) for c in data["coeffs"]))


def read_samples(path: str | Path) -> list[tuple[float, float]]:
    """CSV with header x,y; one pair per row."""
    out: list[tuple[float, float]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "y"]:
            raise PolyError(f"{path}: expected header 'x,y'")
        for row in reader:
            if not row:
                continue
            out.append((float(row[0]), float(row[1])))
    return out


def write_samples(samples: list[tuple[float, float]], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y"])
        for x, y in samples:
            writer.writerow([format(x, ".17g"), format(y, ".17g")])
