"""Defective-set priors and the noiseless OR outcome channel.

A pool is positive exactly when it contains at least one defective item.
Natural logs are used in the two-step prior densities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .design import TestDesign
from .errors import ParameterError
from .util import round_half_up

_MAX_RESAMPLE = 1000


def k_from_theta(n: int, theta: float) -> int:
    """Defective count k = n**theta rounded to nearest, ties upward."""
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if not (0.0 < theta < 1.0):
        raise ParameterError(f"theta must lie in (0, 1), got {theta}")
    return max(1, round_half_up(n**theta))


@dataclass(frozen=True)
class DefectiveSet:
    """A set of defective items out of a ground set of size n."""

    n: int
    members: tuple

    def __post_init__(self):
        prev = 0
        for i in self.members:
            if not (1 <= i <= self.n):
                raise ParameterError(f"member {i} out of range [1, {self.n}]")
            if i <= prev:
                raise ParameterError("members must be strictly increasing")
            prev = i

    @classmethod
    def of(cls, n: int, items) -> "DefectiveSet":
        return cls(n, tuple(sorted(int(i) for i in set(items))))

    @property
    def k(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return item in set(self.members)

    def __iter__(self):
        return iter(self.members)


class OutcomeVector:
    """Binary outcomes of the T tests, index-aligned with the design rows."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        self.bits = np.asarray(bits, dtype=bool)

    @property
    def T(self) -> int:
        return int(self.bits.size)

    def positives(self) -> np.ndarray:
        """Sorted 1-based indices of positive tests."""
        return np.flatnonzero(self.bits) + 1

    def as_tuple(self) -> tuple:
        return tuple(int(b) for b in self.bits)

    def __eq__(self, other) -> bool:
        if isinstance(other, OutcomeVector):
            return np.array_equal(self.bits, other.bits)
        return NotImplemented

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return f"OutcomeVector({''.join('1' if b else '0' for b in self.bits)})"


@dataclass(frozen=True)
class PriorSpec:
    """How the defective set is drawn.

    kind "combinatorial": uniform over all size-k subsets.
    kind "iid":           each item defective independently with probability q.
    kind "iid-trim":      i.i.d. with q' = (k + sqrt(k) ln n) / n, then remove
                          uniformly chosen items down to size k. A draw can
                          undershoot k; it is kept as-is unless resampling is
                          requested at sampling time.
    kind "iid-pad":       i.i.d. with q' = (k - sqrt(k) ln n) / n, then add
                          uniformly chosen non-members up to size k.
    """

    kind: str
    k: int | None = None
    q: float | None = None

    def __post_init__(self):
        if self.kind not in ("combinatorial", "iid", "iid-trim", "iid-pad"):
            raise ParameterError(f"unknown prior kind {self.kind!r}")
        if self.kind == "iid":
            if self.q is None or not (0.0 < self.q < 1.0):
                raise ParameterError(f"iid prior needs q in (0, 1), got {self.q}")
        else:
            if self.k is None or self.k < 1:
                raise ParameterError(f"{self.kind} prior needs k >= 1, got {self.k}")

    def label(self) -> str:
        if self.kind == "iid":
            return f"iid({self.q:g})"
        return f"{self.kind}({self.k})"


def _two_step_q(kind: str, k: int, n: int) -> float:
    shift = math.sqrt(k) * math.log(n)
    q = (k + shift) / n if kind == "iid-trim" else (k - shift) / n
    if not (0.0 < q < 1.0):
        raise ParameterError(
            f"{kind} density (k {'+' if kind == 'iid-trim' else '-'} sqrt(k) ln n)/n = {q:.4g} "
            f"falls outside (0, 1) for n={n}, k={k}"
        )
    return q


def sample_defectives(prior: PriorSpec, n: int, seed, resample_exact: bool = False) -> DefectiveSet:
    """Draw a defective set from the prior.

    ``resample_exact`` redraws until the realized size equals k; it only
    applies to the trim/pad kinds (the others hit their size by construction
    or have no target size).
    """
    if n < 1:
        raise ParameterError(f"need n >= 1, got {n}")
    if prior.kind != "iid" and prior.k > n:
        raise ParameterError(f"prior k={prior.k} exceeds n={n}")
    rng = np.random.default_rng(seed)

    if prior.kind == "combinatorial":
        members = np.sort(rng.choice(n, size=prior.k, replace=False)) + 1
        return DefectiveSet(n, tuple(int(i) for i in members))

    if prior.kind == "iid":
        mask = rng.random(n) < prior.q
        return DefectiveSet(n, tuple((np.flatnonzero(mask) + 1).tolist()))

    q = _two_step_q(prior.kind, prior.k, n)
    for _ in range(_MAX_RESAMPLE if resample_exact else 1):
        mask = rng.random(n) < q
        chosen = np.flatnonzero(mask) + 1
        if prior.kind == "iid-trim":
            if chosen.size > prior.k:
                drop = rng.choice(chosen.size, size=chosen.size - prior.k, replace=False)
                keep = np.ones(chosen.size, dtype=bool)
                keep[drop] = False
                chosen = chosen[keep]
        else:
            if chosen.size < prior.k:
                outside = np.setdiff1d(np.arange(1, n + 1), chosen, assume_unique=True)
                extra = rng.choice(outside.size, size=prior.k - chosen.size, replace=False)
                chosen = np.sort(np.concatenate([chosen, outside[extra]]))
        if not resample_exact or chosen.size == prior.k:
            return DefectiveSet(n, tuple(int(i) for i in chosen))
    raise ParameterError(
        f"could not realize |S| = {prior.k} in {_MAX_RESAMPLE} resampling attempts"
    )


def generate_outcomes(design: TestDesign, s: DefectiveSet) -> OutcomeVector:
    """OR-channel outcomes: test t is positive iff it contains a defective."""
    if s.n != design.n:
        raise ParameterError(f"ground sets differ: design n={design.n}, set n={s.n}")
    bits = np.zeros(design.T, dtype=bool)
    for i in s.members:
        bits[design.col(i) - 1] = True
    return OutcomeVector(bits)
