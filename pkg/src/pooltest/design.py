"""Non-adaptive pool designs: random constructions and file I/O.

A design is a binary inclusion matrix with T tests (rows) and n items
(columns), stored sparsely as index lists. Items and tests are numbered from
1 in every public interface.

File format (one design per file):
    line 1:        "T n"
    lines 2..T+1:  the sorted item indices included in that test, separated
                   by single spaces; an empty line is an empty test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DesignFormatError, ParameterError
from .util import LN2, round_half_up


class TestDesign:
    """Sparse T x n binary design with both row and column views.

    The two views describe the same matrix: ``row(t)`` lists the items in
    test t, ``col(i)`` lists the tests containing item i, both sorted,
    both 1-based.
    """

    __slots__ = (
        "n",
        "T",
        "row_flat",
        "row_ptr",
        "col_flat",
        "col_ptr",
        "metadata",
        "_rows_cache",
        "_cols_cache",
    )

    def __init__(self, n, T, row_flat, row_ptr, col_flat, col_ptr, metadata=None):
        self.n = int(n)
        self.T = int(T)
        self.row_flat = row_flat
        self.row_ptr = row_ptr
        self.col_flat = col_flat
        self.col_ptr = col_ptr
        self.metadata = dict(metadata or {})
        self._rows_cache = None
        self._cols_cache = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, n: int, rows, metadata=None) -> "TestDesign":
        """Build from per-test item lists, validating the contents."""
        if n < 1:
            raise ParameterError(f"need n >= 1, got {n}")
        rows = list(rows)
        tests = []
        items = []
        for t, row in enumerate(rows, start=1):
            prev = 0
            for idx in row:
                idx = int(idx)
                if not (1 <= idx <= n):
                    raise ParameterError(f"test {t}: item index {idx} out of range [1, {n}]")
                if idx <= prev:
                    raise ParameterError(f"test {t}: indices must be strictly increasing")
                prev = idx
                tests.append(t)
                items.append(idx)
        T = len(rows)
        if T < 1:
            raise ParameterError("need at least one test")
        return cls._from_pairs(
            n, T, np.asarray(items, dtype=np.int64), np.asarray(tests, dtype=np.int64), metadata
        )

    @classmethod
    def _from_pairs(cls, n, T, items, tests, metadata=None) -> "TestDesign":
        """Build from parallel (item, test) index arrays; no duplicate pairs."""
        items = np.asarray(items, dtype=np.int64)
        tests = np.asarray(tests, dtype=np.int64)
        order = np.lexsort((items, tests))
        row_flat = items[order]
        row_ptr = np.zeros(T + 1, dtype=np.int64)
        np.add.at(row_ptr, tests, 1)
        row_ptr = np.cumsum(row_ptr)
        order = np.lexsort((tests, items))
        col_flat = tests[order]
        col_ptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(col_ptr, items, 1)
        col_ptr = np.cumsum(col_ptr)
        return cls(n, T, row_flat, row_ptr, col_flat, col_ptr, metadata)

    # -- access -------------------------------------------------------------

    def row(self, t: int) -> np.ndarray:
        """Sorted item indices included in test t (1-based)."""
        if not (1 <= t <= self.T):
            raise ParameterError(f"test index {t} out of range [1, {self.T}]")
        return self.row_flat[self.row_ptr[t - 1] : self.row_ptr[t]]

    def col(self, i: int) -> np.ndarray:
        """Sorted test indices containing item i (1-based)."""
        if not (1 <= i <= self.n):
            raise ParameterError(f"item index {i} out of range [1, {self.n}]")
        return self.col_flat[self.col_ptr[i - 1] : self.col_ptr[i]]

    @property
    def rows(self) -> tuple:
        if self._rows_cache is None:
            self._rows_cache = tuple(
                self.row_flat[self.row_ptr[t] : self.row_ptr[t + 1]] for t in range(self.T)
            )
        return self._rows_cache

    @property
    def cols(self) -> tuple:
        if self._cols_cache is None:
            self._cols_cache = tuple(
                self.col_flat[self.col_ptr[i] : self.col_ptr[i + 1]] for i in range(self.n)
            )
        return self._cols_cache

    @property
    def entry_count(self) -> int:
        return int(self.row_flat.size)

    def to_dense(self) -> np.ndarray:
        """Dense uint8 matrix; for small designs and debugging only."""
        X = np.zeros((self.T, self.n), dtype=np.uint8)
        for t in range(self.T):
            X[t, self.row_flat[self.row_ptr[t] : self.row_ptr[t + 1]] - 1] = 1
        return X

    def __eq__(self, other) -> bool:
        if not isinstance(other, TestDesign):
            return NotImplemented
        return (
            self.n == other.n
            and self.T == other.T
            and np.array_equal(self.row_flat, other.row_flat)
            and np.array_equal(self.row_ptr, other.row_ptr)
        )

    def __hash__(self):
        return hash((self.n, self.T, self.entry_count))

    def __repr__(self):
        kind = self.metadata.get("kind", "explicit")
        return f"TestDesign(T={self.T}, n={self.n}, entries={self.entry_count}, kind={kind})"


# ---------------------------------------------------------------------------
# random constructions


def bernoulli_design(n: int, T: int, p: float, seed) -> TestDesign:
    """Each of the T x n entries is included independently with probability p.

    Rows are materialized as (weight ~ Binomial(n, p), then a uniform subset
    of that weight), which matches the i.i.d. entry distribution without
    touching all T*n cells.
    """
    if n < 1 or T < 1:
        raise ParameterError(f"need n >= 1 and T >= 1, got n={n}, T={T}")
    if not (0.0 < p < 1.0):
        raise ParameterError(f"p must lie in (0, 1), got {p}")
    rng = np.random.default_rng(seed)
    weights = rng.binomial(n, p, size=T)
    tests = np.repeat(np.arange(1, T + 1), weights)
    chunks = []
    for w in weights:
        if w:
            chunks.append(rng.choice(n, size=int(w), replace=False))
    items = (np.concatenate(chunks) + 1) if chunks else np.empty(0, dtype=np.int64)
    return TestDesign._from_pairs(n, T, items, tests, {"kind": "bernoulli", "p": float(p)})


def ncc_design(n: int, T: int, L: int, seed) -> TestDesign:
    """Near-constant column weight: each item draws L tests with replacement.

    Duplicate draws collapse, so realized column weights sit in [1, L]; the
    raw draw count L is recorded in metadata for reporting.
    """
    if n < 1 or T < 1:
        raise ParameterError(f"need n >= 1 and T >= 1, got n={n}, T={T}")
    if not (1 <= L <= T):
        raise ParameterError(f"need 1 <= L <= T, got L={L}, T={T}")
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, T, size=(n, L), dtype=np.int64)
    key = np.repeat(np.arange(n, dtype=np.int64), L) * T + draws.ravel()
    key = np.unique(key)
    items = key // T + 1
    tests = key % T + 1
    return TestDesign._from_pairs(n, T, items, tests, {"kind": "ncc", "L": int(L)})


@dataclass(frozen=True)
class DesignSpec:
    """Recipe for building a design at given (n, T, k).

    kind "bernoulli": inclusion probability nu / k, or p_override directly.
    kind "ncc":       L = round(nu * T / k) draws per item (ties round up),
                      or L_override directly.
    kind "explicit":  load the design from ``path``.
    """

    kind: str
    nu: float = LN2
    p_override: float | None = None
    L_override: int | None = None
    path: str | None = None

    def __post_init__(self):
        if self.kind not in ("bernoulli", "ncc", "explicit"):
            raise ParameterError(f"unknown design kind {self.kind!r}")
        if self.kind == "explicit" and not self.path:
            raise ParameterError("explicit design spec needs a path")
        if self.kind != "explicit" and self.nu <= 0:
            raise ParameterError(f"nu must be positive, got {self.nu}")
        if self.p_override is not None and self.kind != "bernoulli":
            raise ParameterError("p_override only applies to bernoulli designs")
        if self.L_override is not None and self.kind != "ncc":
            raise ParameterError("L_override only applies to ncc designs")

    def label(self) -> str:
        if self.kind == "explicit":
            return f"file:{self.path}"
        return self.kind


def build_design(spec: DesignSpec, n: int, T: int, k: int, seed) -> TestDesign:
    """Instantiate a DesignSpec. k sets the density for the random kinds."""
    if spec.kind == "bernoulli":
        p = spec.p_override if spec.p_override is not None else spec.nu / k
        return bernoulli_design(n, T, p, seed)
    if spec.kind == "ncc":
        L = spec.L_override if spec.L_override is not None else round_half_up(spec.nu * T / k)
        return ncc_design(n, T, L, seed)
    design = load_design(spec.path)
    if design.n != n or design.T != T:
        raise ParameterError(
            f"explicit design is {design.T} x {design.n}, experiment wants {T} x {n}"
        )
    return design


# ---------------------------------------------------------------------------
# file I/O


def save_design(design: TestDesign, path) -> None:
    """Write a design in the line-per-test text format."""
    with open(path, "w", newline="\n") as fh:
        fh.write(f"{design.T} {design.n}\n")
        for t in range(1, design.T + 1):
            fh.write(" ".join(str(int(i)) for i in design.row(t)))
            fh.write("\n")


def load_design(path) -> TestDesign:
    """Read a design file, rejecting malformed input with the line number."""
    with open(path) as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise DesignFormatError("line 1: empty file, expected 'T n' header")
    header = lines[0].split()
    if len(header) != 2:
        raise DesignFormatError("line 1: expected header 'T n'")
    try:
        T, n = int(header[0]), int(header[1])
    except ValueError:
        raise DesignFormatError("line 1: header fields must be integers") from None
    if T < 1 or n < 1:
        raise DesignFormatError(f"line 1: T and n must be positive, got T={T}, n={n}")
    if len(lines) - 1 != T:
        raise DesignFormatError(
            f"line {len(lines)}: expected {T} test lines after the header, found {len(lines) - 1}"
        )
    tests = []
    items = []
    for t in range(1, T + 1):
        line_no = t + 1
        raw = lines[t].split()
        prev = 0
        for tok in raw:
            try:
                idx = int(tok)
            except ValueError:
                raise DesignFormatError(f"line {line_no}: {tok!r} is not an integer") from None
            if not (1 <= idx <= n):
                raise DesignFormatError(
                    f"line {line_no}: item index {idx} out of range [1, {n}]"
                )
            if idx == prev:
                raise DesignFormatError(f"line {line_no}: duplicate item index {idx}")
            if idx < prev:
                raise DesignFormatError(f"line {line_no}: indices must be sorted increasing")
            prev = idx
            tests.append(t)
            items.append(idx)
    return TestDesign._from_pairs(
        n, T, np.asarray(items, dtype=np.int64), np.asarray(tests, dtype=np.int64), {"kind": "explicit"}
    )
