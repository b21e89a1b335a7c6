"""Small numeric helpers used throughout the package."""

from __future__ import annotations

import math

import numpy as np

LN2 = math.log(2.0)

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

#: tolerance for snapping float products like eta*k to integers before rounding
_SNAP = 1e-9


def round_half_up(x: float) -> int:
    """Round to nearest integer, ties away from zero (upward for x >= 0)."""
    return int(math.floor(x + 0.5))


def _snap_int(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < _SNAP * max(1.0, abs(x)) else x


def floor_tol(x: float) -> int:
    """floor(x) after snapping values within 1e-9 of an integer.

    Products like (1 - eta) * k routinely land one ulp off an integer; a raw
    floor would then be off by one.
    """
    return int(math.floor(_snap_int(x)))


def ceil_tol(x: float) -> int:
    """ceil(x) with the same integer snapping as floor_tol."""
    return int(math.ceil(_snap_int(x)))


def splitmix64(z: int) -> int:
    """One step of the splitmix64 mixing function (public-domain constants)."""
    z = (z + _GOLDEN) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def mix_seed(*parts: int) -> int:
    """Mix integers into a 64-bit seed by chained splitmix64 steps.

    Deterministic across platforms and Python versions; used to derive
    per-trial and per-stream seeds from a master seed.
    """
    state = 0
    for p in parts:
        state = splitmix64((state ^ (p & _MASK64)) & _MASK64)
    return state


def segment_all(flags: np.ndarray, ptr: np.ndarray) -> np.ndarray:
    """Per-segment logical AND of ``flags`` split by CSR pointer ``ptr``.

    Empty segments reduce to True (vacuous conjunction).  reduceat only sees
    the starts of non-empty segments: feeding it an empty segment's start
    would merge or truncate a neighbour.
    """
    nseg = len(ptr) - 1
    out = np.ones(nseg, dtype=bool)
    nonempty = ptr[1:] > ptr[:-1]
    if flags.size and nonempty.any():
        out[nonempty] = np.minimum.reduceat(flags.astype(bool), ptr[:-1][nonempty])
    return out


def segment_sum(values: np.ndarray, ptr: np.ndarray) -> np.ndarray:
    """Per-segment sum of ``values`` split by CSR pointer ``ptr`` (empty -> 0)."""
    nseg = len(ptr) - 1
    out = np.zeros(nseg, dtype=np.int64)
    nonempty = ptr[1:] > ptr[:-1]
    if values.size and nonempty.any():
        out[nonempty] = np.add.reduceat(values.astype(np.int64), ptr[:-1][nonempty])
    return out
