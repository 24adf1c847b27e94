"""Deterministic seed derivation and counter-based generators.

Every stochastic step in the library draws from a numpy Philox-4x64-10
bit generator keyed by a 64-bit seed.  Child seeds are derived from a
master seed plus integer labels (degree, trial, point index, ...) with a
splitmix64 mixing chain, so results are independent of task scheduling:
any (master, labels...) pair names the same stream on every platform.
"""
from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
# splitmix64 constants (Steele, Lea & Flood 2014)
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
# initial hash state: first 64 fractional bits of pi
_H0 = 0x243F6A8885A308D3


def _splitmix64(z: int) -> int:
    z = (z + _GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def derive_seed(*labels: int) -> int:
    """Hash a master seed and integer labels into one 64-bit child seed."""
    h = _H0
    for part in labels:
        h = _splitmix64(h ^ (int(part) & _MASK64))
    return h


def generator(seed: int) -> np.random.Generator:
    """Philox generator keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))
