"""Shot outcomes to rescaled estimates; run-quality metrics."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dense import ShotOutcome

PASS_THRESHOLD = 0.03


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    shots: int
    rescale: float


@dataclass(frozen=True)
class Metrics:
    rmse: float
    pearson: float | None  # None when truth variance is degenerate
    pass_rate: float
    threshold: float
    count: int


def point_estimate(outcome: ShotOutcome, rescale: float) -> Estimate:
    """value = C*(n0 - n1)/N; stderr = 2C*sqrt(p(1-p)/N) with p = n1/N."""
    n = outcome.total
    if n < 1:
        raise ValueError("empty shot outcome")
    p = outcome.n1 / n
    value = rescale * (outcome.n0 - outcome.n1) / n
    stderr = 2.0 * abs(rescale) * math.sqrt(p * (1.0 - p) / n)
    return Estimate(value, stderr, n, rescale)


def run_metrics(
    pairs: list[tuple[float, float]], threshold: float = PASS_THRESHOLD
) -> Metrics:
    """RMSE, Pearson correlation and pass rate of (truth, estimate) pairs."""
    if len(pairs) < 2:
        raise ValueError("need at least two pairs")
    truth = np.asarray([p[0] for p in pairs], dtype=float)
    est = np.asarray([p[1] for p in pairs], dtype=float)
    resid = est - truth
    rmse = float(np.sqrt(np.mean(resid**2)))
    pass_rate = float(np.mean(np.abs(resid) < threshold))
    if np.all(truth == truth[0]) or np.all(est == est[0]):
        pearson = None  # degenerate variance: correlation undefined
    else:
        pearson = float(np.corrcoef(truth, est)[0, 1])
    return Metrics(rmse, pearson, pass_rate, threshold, len(pairs))


def shot_scaling_fit(samples: list[tuple[int, float]]) -> float:
    """Least-squares slope of log(rmse) against log(shots)."""
    if len({n for n, _ in samples}) < 4:
        raise ValueError("need at least four distinct shot counts")
    ns = np.asarray([s[0] for s in samples], dtype=float)
    if ns.max() / ns.min() < 100.0:
        raise ValueError("shot counts must span at least two decades")
    rs = np.asarray([s[1] for s in samples], dtype=float)
    if np.any(rs <= 0.0):
        raise ValueError("rmse values must be positive for a log-log fit")
    slope, _ = np.polyfit(np.log(ns), np.log(rs), 1)
    return float(slope)
