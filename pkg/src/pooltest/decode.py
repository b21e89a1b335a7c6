"""Decoders for noiseless pooled tests.

* comp_decode: everything not ruled out by a negative test. Always a superset
  of the truth.
* dd_decode: items that appear as the only possible defective in some
  positive test. Always a subset of the truth, and of the comp estimate.
* ml_oracle: exhaustive maximum-likelihood over the satisfying sets.
* subset_decode: local search for a smaller set explaining as many positive
  tests as possible, for partial ("subset of the truth") recovery.
* deletion_pipeline: randomly delete a fraction of items up front, then run
  an inner decoder on the reduced instance; trades acceptable false
  negatives for a shorter test budget.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .analysis import ExplainScorer, clean_items, satisfying_sets, _bits
from .design import DesignSpec, TestDesign, build_design
from .errors import CapExceededError, ParameterError
from .model import DefectiveSet, generate_outcomes
from .util import floor_tol, mix_seed, round_half_up, segment_sum

DEFAULT_ML_CAP = 2_000_000
DEFAULT_FAMILY_CAP = 5_000_000


@dataclass(frozen=True)
class DecodeResult:
    """An estimate scored against the truth."""

    estimate: tuple
    false_negatives: int
    false_positives: int
    subset_ok: bool
    superset_ok: bool
    decoder_id: str
    elapsed: float = 0.0


def score_estimate(truth, estimate, decoder_id: str = "", elapsed: float = 0.0) -> DecodeResult:
    t = set(getattr(truth, "members", truth))
    e = tuple(sorted(int(i) for i in estimate))
    fn = len(t - set(e))
    fp = len(set(e) - t)
    return DecodeResult(e, fn, fp, fp == 0, fn == 0, decoder_id, elapsed)


def comp_decode(design: TestDesign, outcomes) -> tuple:
    """Items appearing in no negative test, sorted."""
    pos = _bits(outcomes, design.T)
    clean = clean_items(design, pos)
    return tuple((np.flatnonzero(clean) + 1).tolist())


def dd_decode(design: TestDesign, outcomes) -> tuple:
    """Sole remaining candidates of positive tests.

    Start from the comp survivors (possible defectives); any positive test
    containing exactly one of them pins that item as defective.
    """
    pos = _bits(outcomes, design.T)
    clean = clean_items(design, pos)
    pd_flags = clean[design.row_flat - 1]
    per_test = segment_sum(pd_flags, design.row_ptr)
    sole = pos & (per_test == 1)
    if not sole.any():
        return ()
    entry_sole = np.repeat(sole, np.diff(design.row_ptr))
    found = np.unique(design.row_flat[entry_sole & pd_flags])
    return tuple(found.tolist())


def ml_oracle(
    design: TestDesign,
    outcomes,
    k: int,
    cap: int = DEFAULT_ML_CAP,
    mode: str = "deterministic",
    seed=None,
) -> tuple:
    """Exhaustive maximum likelihood over all size-k satisfying sets.

    Every satisfying set is equally likely under a uniform size-k prior, so
    "deterministic" returns the lexicographically smallest and "sample"
    returns one uniformly at random.
    """
    if mode not in ("deterministic", "sample"):
        raise ParameterError(f"unknown ml mode {mode!r}")
    sets = satisfying_sets(design, outcomes, k, cap=cap)
    if not sets:
        raise ParameterError(
            "no size-k set reproduces the outcomes; inconsistent (design, outcomes, k)"
        )
    if mode == "deterministic":
        return sets[0]
    rng = np.random.default_rng(seed)
    return sets[int(rng.integers(0, len(sets)))]


# ---------------------------------------------------------------------------
# local search for partial recovery


def family_size(base_size: int, size: int, radius: float, n: int) -> int:
    """Number of size-``size`` sets within Hamming ``radius`` of the base set."""
    total = 0
    min_dist = base_size - size
    j_hi = (int(math.floor(radius)) - min_dist) // 2 if radius >= min_dist else -1
    for j in range(max(0, size - base_size), min(j_hi, size, n - base_size) + 1):
        total += math.comb(base_size, size - j) * math.comb(n - base_size, j)
    return total


def candidate_family(base, eta_minus: float, radius: float, n: int):
    """Iterate, in lexicographic order, over the reduced-size candidates.

    Candidates have size floor((1 - eta_minus) * |base|) and Hamming distance
    at most ``radius`` from ``base``. Each candidate keeps size - j members
    of the base and adds j outside items, which pins its distance to
    |base| - size + 2j; the family is empty when radius < |base| - size.
    """
    base = tuple(sorted(int(i) for i in set(base)))
    if not (0.0 <= eta_minus < 1.0):
        raise ParameterError(f"eta_minus must lie in [0, 1), got {eta_minus}")
    size = floor_tol((1.0 - eta_minus) * len(base))
    yield from _family(base, size, radius, n)


def _family(base, size: int, radius: float, n: int):
    """Size/radius form of candidate_family; base already sorted and unique."""
    if any(not (1 <= i <= n) for i in base):
        raise ParameterError("base set not contained in the ground set")
    if size == 0:
        return
    base_size = len(base)
    min_dist = base_size - size
    if radius < min_dist:
        return
    j_hi = min((int(math.floor(radius)) - min_dist) // 2, size, n - base_size)
    outside = sorted(set(range(1, n + 1)) - set(base))
    found = []
    for j in range(max(0, size - base_size), j_hi + 1):
        for kept in itertools.combinations(base, size - j):
            for added in itertools.combinations(outside, j):
                found.append(tuple(sorted(kept + added)))
    found.sort()
    yield from found


@dataclass(frozen=True)
class SubsetParams:
    """Knobs for subset_decode.

    frontend is "dd-pad" (dd estimate padded with the lowest-index comp
    survivors up to size k), "ml" (exhaustive maximum likelihood), or
    "provided" with the size-k estimate passed in ``provided``.
    ``family_cap`` bounds the candidate enumeration; when exceeded the call
    refuses unless ``hill_climb`` enables the greedy swap heuristic.
    """

    eta_minus: float
    radius_mult: float = 3.0
    frontend: str = "dd-pad"
    provided: tuple | None = None
    ml_cap: int = DEFAULT_ML_CAP
    family_cap: int = DEFAULT_FAMILY_CAP
    hill_climb: bool = False

    def __post_init__(self):
        if not (0.0 <= self.eta_minus < 1.0):
            raise ParameterError(f"eta_minus must lie in [0, 1), got {self.eta_minus}")
        if self.frontend not in ("dd-pad", "ml", "provided"):
            raise ParameterError(f"unknown frontend {self.frontend!r}")
        if self.frontend == "provided" and self.provided is None:
            raise ParameterError("frontend 'provided' needs the provided estimate")
        if self.radius_mult <= 0:
            raise ParameterError(f"radius_mult must be positive, got {self.radius_mult}")


def dd_pad_frontend(design: TestDesign, outcomes, k: int) -> tuple:
    """dd estimate padded to size k with the lowest-index comp survivors."""
    est = list(dd_decode(design, outcomes))
    if len(est) >= k:
        return tuple(est[:k])
    have = set(est)
    for i in comp_decode(design, outcomes):
        if len(est) >= k:
            break
        if i not in have:
            est.append(i)
            have.add(i)
    for i in range(1, design.n + 1):
        # only reachable on inconsistent inputs where comp survivors run out
        if len(est) >= k:
            break
        if i not in have:
            est.append(i)
            have.add(i)
    return tuple(sorted(est))


def _argmax_explained(scorer: ExplainScorer, base, size, radius, n, family_cap, hill_climb):
    count = family_size(len(base), size, radius, n)
    if family_cap is not None and count > family_cap:
        if hill_climb:
            return _hill_climb(scorer, base, size, radius, n)
        raise CapExceededError(
            f"candidate family has {count} members, cap is {family_cap}", estimate=count
        )
    best = ()
    best_count = 0
    for cand in _family(base, size, radius, n):
        c = scorer.count(cand)
        if c > best_count:
            best_count = c
            best = cand
    return best


def _hill_climb(scorer: ExplainScorer, base, size, radius, n):
    """Greedy single-swap ascent; a heuristic stand-in when the family is too
    large to enumerate, not an exact argmax."""
    base_set = set(base)
    current = list(base[:size])
    best_count = scorer.count(current)
    improved = True
    while improved:
        improved = False
        cur_set = set(current)
        best_swap = None
        for out in sorted(cur_set):
            for inn in range(1, n + 1):
                if inn in cur_set:
                    continue
                trial = cur_set - {out} | {inn}
                if len(base_set ^ trial) > radius:
                    continue
                c = scorer.count(trial)
                if c > best_count:
                    best_count = c
                    best_swap = trial
        if best_swap is not None:
            current = sorted(best_swap)
            improved = True
    return tuple(sorted(current)) if best_count > 0 else ()


def subset_decode(design: TestDesign, outcomes, k: int, params: SubsetParams) -> tuple:
    """Search the neighborhood of a front-end estimate for the reduced-size
    set explaining the most positive tests.

    Scans candidates of size floor((1 - eta_minus) k) within Hamming radius
    radius_mult * eta_minus * k of the front-end estimate, keeping the first
    strict improvement over an initial best of (empty, 0 explained): ties go
    to the lexicographically smallest candidate, and the empty tuple comes
    back when no candidate explains any test.
    """
    if k < 1:
        raise ParameterError(f"need k >= 1, got {k}")
    size = floor_tol((1.0 - params.eta_minus) * k)
    if size == 0:
        warnings.warn("target size (1 - eta_minus) * k rounds to zero; returning empty estimate")
        return ()
    if params.frontend == "ml":
        base = ml_oracle(design, outcomes, k, cap=params.ml_cap)
    elif params.frontend == "dd-pad":
        base = dd_pad_frontend(design, outcomes, k)
    else:
        base = tuple(sorted(int(i) for i in params.provided))
        if len(base) != k:
            raise ParameterError(f"provided front-end estimate has size {len(base)}, expected {k}")
    radius = params.radius_mult * params.eta_minus * k
    scorer = ExplainScorer(design, outcomes)
    est = _argmax_explained(scorer, base, size, radius, design.n, params.family_cap, params.hill_climb)
    if not est:
        warnings.warn("no candidate explained any positive test; returning empty estimate")
    return est


# ---------------------------------------------------------------------------
# deletion pipeline


@dataclass(frozen=True)
class PipelineResult:
    """One simulated run of the delete-then-decode pipeline, in original labels."""

    estimate: tuple
    defectives: DefectiveSet
    deleted: tuple
    kept: tuple
    k_lo: int
    k_hi: int
    design: TestDesign
    refused: bool = False


_PIPELINE_INNER = ("comp", "dd", "subset")


def deletion_pipeline(
    spec: DesignSpec,
    n: int,
    k: int,
    T: int,
    alpha: float,
    inner: str = "dd",
    seed=0,
    xi: float | None = None,
    eta_minus: float = 0.1,
    radius_mult: float = 3.0,
    k_bounds: tuple | None = None,
    family_cap: int = DEFAULT_FAMILY_CAP,
    hill_climb: bool = False,
) -> PipelineResult:
    """Delete a uniform fraction of items, then decode the survivors.

    round((alpha - xi) * n) items are deleted outright and declared
    non-defective (xi defaults to alpha / 100). A design from ``spec`` is
    built over the remaining ground set, outcomes are generated for a uniform
    size-k defective set on the full ground set, and the inner decoder runs
    with the defective count known only within [k_lo, k_hi] (both default to
    the expected retained count). The estimate never contains deleted items.
    """
    if not (0.0 < alpha < 1.0):
        raise ParameterError(f"alpha must lie in (0, 1), got {alpha}")
    if inner not in _PIPELINE_INNER:
        raise ParameterError(
            f"inner decoder must be one of {_PIPELINE_INNER}, got {inner!r}; exhaustive ml "
            "needs the defective count exactly, which deletion leaves uncertain"
        )
    if xi is None:
        xi = alpha / 100.0
    if xi < 0 or xi > alpha:
        raise ParameterError(f"xi must lie in [0, alpha], got {xi}")
    d = round_half_up((alpha - xi) * n)
    if d >= n:
        raise ParameterError(f"deletion would remove all {n} items")

    prior_rng = np.random.default_rng(mix_seed(seed, 2))
    design_rng = np.random.default_rng(mix_seed(seed, 1))
    delete_rng = np.random.default_rng(mix_seed(seed, 3))

    truth = np.sort(prior_rng.choice(n, size=k, replace=False)) + 1
    deleted = np.sort(delete_rng.choice(n, size=d, replace=False)) + 1 if d else np.empty(0, np.int64)
    kept = np.setdiff1d(np.arange(1, n + 1), deleted, assume_unique=True)
    n_kept = kept.size

    expected = k * n_kept / n
    k_mid = max(1, round_half_up(expected))
    if k_bounds is None:
        k_lo = k_hi = k_mid
    else:
        k_lo, k_hi = int(k_bounds[0]), int(k_bounds[1])
        if not (1 <= k_lo <= k_hi):
            raise ParameterError(f"need 1 <= k_lo <= k_hi, got {k_bounds}")

    design = build_design(spec, n_kept, T, k_mid, design_rng)
    # original label -> reduced label
    reduced_of = {int(orig): j + 1 for j, orig in enumerate(kept)}
    retained_truth = [reduced_of[int(i)] for i in truth if int(i) in reduced_of]
    s_reduced = DefectiveSet(n_kept, tuple(sorted(retained_truth)))
    y = generate_outcomes(design, s_reduced)

    refused = False
    if inner == "comp":
        est_reduced = comp_decode(design, y)
    elif inner == "dd":
        est_reduced = dd_decode(design, y)
    else:
        base = dd_pad_frontend(design, y, k_hi)
        size = floor_tol((1.0 - eta_minus) * k_lo)
        radius = radius_mult * eta_minus * k_hi
        scorer = ExplainScorer(design, y)
        try:
            est_reduced = _argmax_explained(
                scorer, base, size, radius, n_kept, family_cap, hill_climb
            )
        except CapExceededError:
            est_reduced = ()
            refused = True

    estimate = tuple(sorted(int(kept[j - 1]) for j in est_reduced))
    return PipelineResult(
        estimate=estimate,
        defectives=DefectiveSet(n, tuple(int(i) for i in truth)),
        deleted=tuple(int(i) for i in deleted),
        kept=tuple(int(i) for i in kept),
        k_lo=k_lo,
        k_hi=k_hi,
        design=design,
        refused=refused,
    )
