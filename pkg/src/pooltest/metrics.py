"""Rates, recovery criteria, threshold curves, and binomial tail bounds.

Rates are reported in bits per test: a scheme that distinguishes all size-k
defective sets of n items with T tests operates at rate log2(C(n, k)) / T.
Natural logs are used internally; anything user-facing that is a rate is in
base 2.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

from .errors import ParameterError
from .util import LN2, ceil_tol, floor_tol

#: Largest sparsity exponent for which the exact-recovery rate limit equals 1.
THETA_KNEE = LN2 / (1.0 + LN2)

# math.comb stays cheap up to here; beyond it the fsum path is used
_EXACT_K_MAX = 64


def log2_binomial(n: int, k: int) -> float:
    """log2 of the binomial coefficient C(n, k).

    Exact big-integer evaluation for small k, otherwise a compensated sum of
    log2 terms; relative error stays well under 1e-12 either way.
    """
    if n < 0 or k < 0 or k > n:
        raise ParameterError(f"need 0 <= k <= n, got n={n}, k={k}")
    k = min(k, n - k)
    if k == 0:
        return 0.0
    if k <= _EXACT_K_MAX:
        return math.log2(math.comb(n, k))
    terms = []
    for i in range(1, k + 1):
        terms.append(math.log2(n - k + i))
        terms.append(-math.log2(i))
    return math.fsum(terms)


def rate(n: int, k: int, T: int) -> float:
    """Bits of defective-set identity learned per test: log2(C(n,k)) / T."""
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got n={n}, k={k}")
    if T < 1:
        raise ParameterError(f"need T >= 1, got T={T}")
    return log2_binomial(n, k) / T


def tests_for_rate(n: int, k: int, target_rate: float) -> int:
    """Smallest T whose rate does not exceed ``target_rate``."""
    if target_rate <= 0:
        raise ParameterError(f"target_rate must be positive, got {target_rate}")
    bits = log2_binomial(n, k)
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got n={n}, k={k}")
    T = max(1, math.ceil(bits / target_rate))
    while bits / T > target_rate:
        T += 1
    while T > 1 and bits / (T - 1) <= target_rate:
        T -= 1
    return T


# ---------------------------------------------------------------------------
# recovery criteria


@dataclass(frozen=True)
class Criterion:
    """A success criterion comparing an estimated defective set to the truth.

    kind is one of:
      exact       estimate == truth
      subset      estimate contained in truth, size at least (1 - eta_minus) k
      superset    estimate contains truth, size at most (1 + eta_plus) k
      two-sided   at most beta*k missed and beta*k spurious items
      asymmetric  at most alpha_fn*k missed, alpha_fp*k spurious

    With ``strict_size`` the one-sided criteria demand the exact target size
    (floor for subset, ceil for superset) instead of a one-sided bound.
    """

    kind: str
    eta_minus: float | None = None
    eta_plus: float | None = None
    beta: float | None = None
    alpha_fn: float | None = None
    alpha_fp: float | None = None
    strict_size: bool = False

    def __post_init__(self):
        kinds = ("exact", "subset", "superset", "two-sided", "asymmetric")
        if self.kind not in kinds:
            raise ParameterError(f"unknown criterion kind {self.kind!r}")
        checks = {
            "subset": ("eta_minus", self.eta_minus, 0.0, 1.0),
            "superset": ("eta_plus", self.eta_plus, 0.0, None),
            "two-sided": ("beta", self.beta, 0.0, None),
        }
        if self.kind in checks:
            name, val, lo, hi = checks[self.kind]
            if val is None or val < lo or (hi is not None and val >= hi):
                raise ParameterError(f"{name} out of range for {self.kind}: {val}")
        if self.kind == "asymmetric":
            if self.alpha_fn is None or self.alpha_fp is None:
                raise ParameterError("asymmetric criterion needs alpha_fn and alpha_fp")
            if self.alpha_fn < 0 or self.alpha_fp < 0:
                raise ParameterError("alpha_fn and alpha_fp must be nonnegative")

    @classmethod
    def exact(cls) -> "Criterion":
        return cls("exact")

    @classmethod
    def subset(cls, eta_minus: float, strict_size: bool = False) -> "Criterion":
        return cls("subset", eta_minus=eta_minus, strict_size=strict_size)

    @classmethod
    def superset(cls, eta_plus: float, strict_size: bool = False) -> "Criterion":
        return cls("superset", eta_plus=eta_plus, strict_size=strict_size)

    @classmethod
    def two_sided(cls, beta: float) -> "Criterion":
        return cls("two-sided", beta=beta)

    @classmethod
    def asymmetric(cls, alpha_fn: float, alpha_fp: float) -> "Criterion":
        return cls("asymmetric", alpha_fn=alpha_fn, alpha_fp=alpha_fp)

    def label(self) -> str:
        if self.kind == "exact":
            return "exact"
        if self.kind == "subset":
            return f"subset({self.eta_minus:g})"
        if self.kind == "superset":
            return f"superset({self.eta_plus:g})"
        if self.kind == "two-sided":
            return f"two-sided({self.beta:g})"
        return f"asymmetric({self.alpha_fn:g},{self.alpha_fp:g})"


@dataclass(frozen=True)
class EvalOutcome:
    success: bool
    false_negatives: int
    false_positives: int


def _members(s) -> frozenset:
    members = getattr(s, "members", None)
    return frozenset(members if members is not None else s)


def evaluate(criterion: Criterion, truth, estimate) -> EvalOutcome:
    """Score an estimate against the true defective set under a criterion."""
    t = _members(truth)
    e = _members(estimate)
    k = len(t)
    fn = len(t - e)
    fp = len(e - t)
    kind = criterion.kind
    if kind == "exact":
        ok = fn == 0 and fp == 0
    elif kind == "subset":
        need = floor_tol((1.0 - criterion.eta_minus) * k)
        if criterion.strict_size:
            ok = fp == 0 and len(e) == need
        else:
            ok = fp == 0 and len(e) >= need
    elif kind == "superset":
        cap = ceil_tol((1.0 + criterion.eta_plus) * k)
        if criterion.strict_size:
            ok = fn == 0 and len(e) == cap
        else:
            ok = fn == 0 and len(e) <= cap
    elif kind == "two-sided":
        allow = criterion.beta * k + 1e-9
        ok = fn <= allow and fp <= allow
    else:  # asymmetric
        ok = fn <= criterion.alpha_fn * k + 1e-9 and fp <= criterion.alpha_fp * k + 1e-9
    return EvalOutcome(bool(ok), fn, fp)


# ---------------------------------------------------------------------------
# asymptotic threshold curves


@dataclass(frozen=True)
class ThresholdPoint:
    theta: float
    zeta: float
    r_star: float
    counting_bound: float = 1.0


def zeta(theta: float) -> float:
    """Exact-recovery rate limit min{1, ln2 * (1 - theta) / theta}.

    The comparison against THETA_KNEE decides the min exactly, so the value
    is 1.0 precisely when theta <= ln2 / (1 + ln2).
    """
    if not (0.0 < theta < 1.0):
        raise ParameterError(f"theta must lie in (0, 1), got {theta}")
    if theta <= THETA_KNEE:
        return 1.0
    return LN2 * (1.0 - theta) / theta


def r_star(theta: float) -> float:
    """Rate limit when a vanishing fraction of one-sided slack is allowed."""
    return max(zeta(theta), LN2)


def threshold_curve(thetas) -> list[ThresholdPoint]:
    return [ThresholdPoint(float(t), zeta(t), r_star(t)) for t in thetas]


def write_threshold_csv(thetas, path) -> None:
    """Write the curve as CSV with columns theta,zeta,r_star,counting_bound."""
    points = threshold_curve(thetas)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["theta", "zeta", "r_star", "counting_bound"])
        for p in points:
            w.writerow(
                [f"{p.theta:.12g}", f"{p.zeta:.12g}", f"{p.r_star:.12g}", f"{p.counting_bound:.12g}"]
            )


# ---------------------------------------------------------------------------
# binomial tail bounds (multiplicative Chernoff)


def _check_tail_args(n: int, mu: float, delta: float, upper: bool) -> None:
    if n < 1:
        raise ParameterError(f"n must be a positive integer, got {n}")
    if not (0.0 < mu < 1.0):
        raise ParameterError(f"mu must lie in (0, 1), got {mu}")
    if upper:
        if delta <= 0.0:
            raise ParameterError(f"delta must be positive, got {delta}")
    else:
        if not (0.0 < delta <= 1.0):
            raise ParameterError(f"delta must lie in (0, 1], got {delta}")


def chernoff_upper(n: int, mu: float, delta: float) -> float:
    """Bound on P(Bin(n, mu) >= (1 + delta) n mu) for delta > 0."""
    _check_tail_args(n, mu, delta, upper=True)
    expo = (1.0 + delta) * math.log1p(delta) - delta
    return math.exp(-n * mu * expo)


def chernoff_lower(n: int, mu: float, delta: float) -> float:
    """Bound on P(Bin(n, mu) <= (1 - delta) n mu) for delta in (0, 1].

    At delta = 1 the (1-delta)log(1-delta) term is taken as 0.
    """
    _check_tail_args(n, mu, delta, upper=False)
    if delta == 1.0:
        expo = 1.0
    else:
        expo = (1.0 - delta) * math.log(1.0 - delta) + delta
    return math.exp(-n * mu * expo)


def chernoff_weak_upper(n: int, mu: float, delta: float) -> float:
    """Looser upper-tail bound exp(-delta^2 n mu / 3)."""
    _check_tail_args(n, mu, delta, upper=True)
    return math.exp(-delta * delta * n * mu / 3.0)


def chernoff_weak_lower(n: int, mu: float, delta: float) -> float:
    """Looser lower-tail bound exp(-delta^2 n mu / 2)."""
    _check_tail_args(n, mu, delta, upper=False)
    return math.exp(-delta * delta * n * mu / 2.0)
