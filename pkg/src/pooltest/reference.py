"""Slow reference implementations used to cross-check the fast paths.

Everything here is written as literal loops over the dense matrix, sharing no
machinery with the vectorized implementations. Sizes are expected to be tiny.
"""

from __future__ import annotations

import itertools

from .design import TestDesign
from .model import DefectiveSet


def dense(design: TestDesign):
    X = [[0] * design.n for _ in range(design.T)]
    for t in range(1, design.T + 1):
        for i in design.row(t):
            X[t - 1][int(i) - 1] = 1
    return X


def naive_outcomes(design: TestDesign, members) -> list:
    X = dense(design)
    s = set(members)
    y = []
    for t in range(design.T):
        hit = 0
        for i in s:
            if X[t][i - 1]:
                hit = 1
        y.append(hit)
    return y


def naive_explained(design: TestDesign, y, candidate) -> list:
    """Tests explained by the candidate, straight from the definition."""
    X = dense(design)
    explained = set()
    for i in set(candidate):
        in_negative = False
        for t in range(design.T):
            if X[t][i - 1] and not y[t]:
                in_negative = True
        if in_negative:
            continue
        for t in range(design.T):
            if X[t][i - 1] and y[t]:
                explained.add(t + 1)
    return sorted(explained)


def naive_good_counts(design: TestDesign, s: DefectiveSet) -> dict:
    X = dense(design)
    out = {}
    for i in s.members:
        g = 0
        for t in range(design.T):
            if not X[t][i - 1]:
                continue
            alone = True
            for j in s.members:
                if j != i and X[t][j - 1]:
                    alone = False
            if alone:
                g += 1
        out[i] = g
    return out


def naive_masked_items(design: TestDesign, s: DefectiveSet) -> list:
    """Masked items per the definition, zero-test items included (vacuous)."""
    X = dense(design)
    members = set(s.members)
    masked = []
    for i in range(1, design.n + 1):
        ok = True
        for t in range(design.T):
            if not X[t][i - 1]:
                continue
            has_other = False
            for j in members:
                if j != i and X[t][j - 1]:
                    has_other = True
            if not has_other:
                ok = False
        if ok:
            masked.append(i)
    return masked


def naive_satisfying_sets(design: TestDesign, y, k: int) -> list:
    y = [int(b) for b in y]
    out = []
    for combo in itertools.combinations(range(1, design.n + 1), k):
        if naive_outcomes(design, combo) == y:
            out.append(combo)
    return out


def brute_force_subset_argmax(design: TestDesign, y, base, size: int, radius: float) -> tuple:
    """Explained-count argmax over every size-``size`` set within ``radius``
    of ``base``, scanning in lexicographic order with a strict-improvement
    update starting from (0, empty set)."""
    y = [int(b) for b in y]
    base_set = set(base)
    best = ()
    best_count = 0
    for combo in itertools.combinations(range(1, design.n + 1), size):
        dist = len(base_set ^ set(combo))
        if dist > radius:
            continue
        count = len(naive_explained(design, y, combo))
        if count > best_count:
            best_count = count
            best = combo
    return best
