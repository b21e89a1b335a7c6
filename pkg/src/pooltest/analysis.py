"""Structural analysis of a design/outcome pair.

The notions here drive both decoding and error analysis:

* an item is *clean* when it appears in no negative test;
* a positive test is *explained* by a candidate set when the set contains a
  clean item included in that test;
* a test is *good* for a defective item when it contains that item and no
  other defective;
* an item is *masked* when every test containing it also contains some other
  defective (items in no tests at all satisfy this vacuously and are counted
  separately);
* the *satisfying sets* of (design, outcomes, k) are the size-k sets that
  reproduce the outcomes exactly. Conditioned on the outcomes, a uniformly
  drawn defective set is uniform over them, which posterior_uniformity_check
  verifies empirically.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from .design import TestDesign
from .errors import CapExceededError, ParameterError
from .model import DefectiveSet, OutcomeVector
from .util import segment_all

DEFAULT_ENUM_CAP = 2_000_000


def _bits(outcomes, T: int) -> np.ndarray:
    b = outcomes.bits if isinstance(outcomes, OutcomeVector) else np.asarray(outcomes, dtype=bool)
    if b.size != T:
        raise ParameterError(f"outcome length {b.size} does not match T={T}")
    return b.astype(bool)


def _member_tuple(s) -> tuple:
    members = getattr(s, "members", None)
    return tuple(sorted(int(i) for i in (members if members is not None else s)))


def set_hamming(a, b) -> int:
    """Hamming distance between two index sets: |a \\ b| + |b \\ a|."""
    sa = frozenset(_member_tuple(a))
    sb = frozenset(_member_tuple(b))
    na = getattr(a, "n", None)
    nb = getattr(b, "n", None)
    if na is not None and nb is not None and na != nb:
        raise ParameterError(f"ground sets differ: {na} vs {nb}")
    return len(sa ^ sb)


def clean_items(design: TestDesign, positive: np.ndarray) -> np.ndarray:
    """Boolean mask over items: True when the item is in no negative test."""
    return segment_all(positive[design.col_flat - 1], design.col_ptr)


@dataclass(frozen=True)
class ExplainCount:
    explained: tuple
    count: int


def explained_tests(design: TestDesign, outcomes, candidate) -> ExplainCount:
    """Positive tests explained by the candidate set.

    A member explains a test when the test contains it and the member sits in
    no negative test; the explained set of the candidate is the union over
    its members.
    """
    pos = _bits(outcomes, design.T)
    clean = clean_items(design, pos)
    hit = np.zeros(design.T, dtype=bool)
    for i in _member_tuple(candidate):
        if clean[i - 1]:
            hit[design.col(i) - 1] = True
    tests = (np.flatnonzero(hit) + 1).tolist()
    return ExplainCount(tuple(tests), len(tests))


class ExplainScorer:
    """Precomputed explain-count evaluation for many candidates on one instance.

    Each item's tests are packed into an integer bitmask; a candidate's
    explained count is the popcount of the OR over its clean members.
    """

    def __init__(self, design: TestDesign, outcomes):
        pos = _bits(outcomes, design.T)
        clean = clean_items(design, pos)
        self.T = design.T
        self.n = design.n
        self.masks = []
        for i in range(1, design.n + 1):
            if clean[i - 1]:
                m = 0
                for t in design.col(i):
                    m |= 1 << int(t - 1)
                self.masks.append(m)
            else:
                self.masks.append(0)

    def union_mask(self, candidate) -> int:
        m = 0
        for i in candidate:
            m |= self.masks[i - 1]
        return m

    def count(self, candidate) -> int:
        return self.union_mask(candidate).bit_count()


def good_test_counts(design: TestDesign, s: DefectiveSet) -> dict:
    """For each defective, the number of tests containing it and no other defective."""
    counts = np.zeros(design.T + 1, dtype=np.int64)
    for i in s.members:
        counts[design.col(i)] += 1
    return {int(i): int((counts[design.col(i)] == 1).sum()) for i in s.members}


@dataclass(frozen=True)
class MaskingReport:
    masked_defectives: int
    masked_nondefectives: int
    masked_items: tuple
    zero_test_items: int


def masking_report(design: TestDesign, s: DefectiveSet) -> MaskingReport:
    """Which items are masked by the defective set.

    A defective is masked when each of its tests has another defective; a
    non-defective is masked when each of its tests has any defective. Items
    appearing in zero tests are masked vacuously and also counted in
    zero_test_items.
    """
    if s.n != design.n:
        raise ParameterError(f"ground sets differ: design n={design.n}, set n={s.n}")
    counts = np.zeros(design.T + 1, dtype=np.int64)
    for i in s.members:
        counts[design.col(i)] += 1
    per_entry = counts[design.col_flat]
    covered = segment_all(per_entry >= 1, design.col_ptr)
    doubly = segment_all(per_entry >= 2, design.col_ptr)
    is_def = np.zeros(design.n, dtype=bool)
    is_def[np.asarray(s.members, dtype=np.int64) - 1] = True
    masked = np.where(is_def, doubly, covered)
    zero = design.col_ptr[1:] == design.col_ptr[:-1]
    items = (np.flatnonzero(masked) + 1).tolist()
    return MaskingReport(
        masked_defectives=int(masked[is_def].sum()),
        masked_nondefectives=int(masked[~is_def].sum()),
        masked_items=tuple(int(i) for i in items),
        zero_test_items=int(zero.sum()),
    )


def satisfying_sets(design: TestDesign, outcomes, k: int, cap: int = DEFAULT_ENUM_CAP) -> list:
    """All size-k sets reproducing the outcomes, in lexicographic order.

    Exhaustive enumeration only: refuses when C(n, k) exceeds ``cap``.
    """
    total = math.comb(design.n, k)
    if total > cap:
        raise CapExceededError(
            f"C({design.n}, {k}) = {total} exceeds enumeration cap {cap}", estimate=total
        )
    pos = _bits(outcomes, design.T)
    clean = clean_items(design, pos)
    target = 0
    for t in np.flatnonzero(pos):
        target |= 1 << int(t)
    masks = []
    for i in range(1, design.n + 1):
        m = 0
        for t in design.col(i):
            m |= 1 << int(t - 1)
        masks.append(m)
    out = []
    for combo in itertools.combinations(range(1, design.n + 1), k):
        union = 0
        ok = True
        for i in combo:
            if not clean[i - 1]:
                ok = False
                break
            union |= masks[i - 1]
        if ok and union == target:
            out.append(combo)
    return out


@dataclass(frozen=True)
class UniformityBin:
    outcome: tuple
    v_size: int
    samples: int
    p_value: float | None  # None when the bin was skipped


@dataclass(frozen=True)
class UniformityReport:
    bins: tuple
    skipped: int
    trials: int

    def min_p(self) -> float:
        ps = [b.p_value for b in self.bins if b.p_value is not None]
        return min(ps) if ps else float("nan")

    def all_above(self, threshold: float) -> bool:
        return all(b.p_value > threshold for b in self.bins if b.p_value is not None)


def posterior_uniformity_check(
    design: TestDesign,
    k: int,
    trials: int,
    seed,
    sampler=None,
    min_bin_factor: int = 5,
    enum_cap: int = 100_000,
) -> UniformityReport:
    """Chi-square check that, given the outcomes, the truth is uniform over
    the satisfying sets.

    Defective sets are drawn uniformly over all size-k subsets (a vectorized
    equivalent of the combinatorial prior); ``sampler(rng, m, trials)`` can
    replace the draw with any distribution over subset indices 0..m-1, e.g.
    to verify that a biased sampler is rejected. Outcome bins with fewer than
    ``min_bin_factor`` * |satisfying sets| samples are skipped and counted.
    """
    total = math.comb(design.n, k)
    if total > enum_cap:
        raise CapExceededError(
            f"C({design.n}, {k}) = {total} exceeds enumeration cap {enum_cap}", estimate=total
        )
    subsets = list(itertools.combinations(range(1, design.n + 1), k))
    masks = []
    for i in range(1, design.n + 1):
        m = 0
        for t in design.col(i):
            m |= 1 << int(t - 1)
        masks.append(m)
    outcome_of = np.empty(total, dtype=np.int64)
    for j, combo in enumerate(subsets):
        m = 0
        for i in combo:
            m |= masks[i - 1]
        outcome_of[j] = m
    rng = np.random.default_rng(seed)
    if sampler is None:
        idx = rng.integers(0, total, size=trials)
    else:
        idx = np.asarray(sampler(rng, total, trials), dtype=np.int64)
    sample_counts = np.bincount(idx, minlength=total)

    groups: dict = {}
    for j in range(total):
        groups.setdefault(int(outcome_of[j]), []).append(j)

    bins = []
    skipped = 0
    for key in sorted(groups):
        members = groups[key]
        observed = sample_counts[members]
        n_bin = int(observed.sum())
        outcome = tuple(int((key >> t) & 1) for t in range(design.T))
        if n_bin < min_bin_factor * len(members) or len(members) < 2:
            skipped += 1
            bins.append(UniformityBin(outcome, len(members), n_bin, None))
            continue
        stat = stats.chisquare(observed)
        bins.append(UniformityBin(outcome, len(members), n_bin, float(stat.pvalue)))
    return UniformityReport(tuple(bins), skipped, trials)
