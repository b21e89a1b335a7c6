import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pooltest.design import (
    DesignSpec,
    TestDesign,
    bernoulli_design,
    build_design,
    load_design,
    ncc_design,
    save_design,
)
from pooltest.errors import DesignFormatError, ParameterError
from pooltest.util import LN2, round_half_up


def small_design():
    return TestDesign.from_rows(5, [(1, 3), (2, 3, 5), (), (4,)])


# ---------------------------------------------------------------------------
# the matrix container


def test_from_rows_basic_shape():
    d = small_design()
    assert d.n == 5 and d.T == 4
    assert d.entry_count == 6
    assert list(d.row(1)) == [1, 3]
    assert list(d.row(2)) == [2, 3, 5]
    assert list(d.row(3)) == []
    assert list(d.row(4)) == [4]


def test_row_col_duality():
    d = small_design()
    assert list(d.col(3)) == [1, 2]  # tests containing item 3
    assert list(d.col(1)) == [1]
    assert list(d.col(4)) == [4]
    # membership agrees in both directions
    for t in range(1, d.T + 1):
        for i in d.row(t):
            assert t in d.col(int(i))
    for i in range(1, d.n + 1):
        for t in d.col(i):
            assert i in d.row(int(t))


def test_rows_cols_tuples_match_views():
    d = small_design()
    assert tuple(tuple(r) for r in d.rows) == ((1, 3), (2, 3, 5), (), (4,))
    assert tuple(tuple(c) for c in d.cols) == ((1,), (2,), (1, 2), (4,), (2,))


def test_to_dense():
    d = small_design()
    dense = d.to_dense()
    assert dense.shape == (4, 5)
    assert dense.dtype == np.uint8
    expect = np.zeros((4, 5), dtype=np.uint8)
    for t, row in enumerate([(1, 3), (2, 3, 5), (), (4,)]):
        for i in row:
            expect[t, i - 1] = 1
    assert np.array_equal(dense, expect)


def test_from_rows_rejects_out_of_range():
    with pytest.raises(ParameterError, match=r"test 2: item index 6 out of range \[1, 5\]"):
        TestDesign.from_rows(5, [(1,), (2, 6)])
    with pytest.raises(ParameterError, match=r"test 1: item index 0 out of range"):
        TestDesign.from_rows(5, [(0, 2)])


def test_from_rows_rejects_unsorted_or_duplicate():
    with pytest.raises(ParameterError, match="test 1: indices must be strictly increasing"):
        TestDesign.from_rows(5, [(3, 1)])
    with pytest.raises(ParameterError, match="test 2: indices must be strictly increasing"):
        TestDesign.from_rows(5, [(1,), (2, 2)])


def test_design_equality():
    a = small_design()
    b = TestDesign.from_rows(5, [(1, 3), (2, 3, 5), (), (4,)])
    c = TestDesign.from_rows(5, [(1, 3), (2, 3, 5), (), (5,)])
    assert a == b
    assert a != c
    assert a != TestDesign.from_rows(6, [(1, 3), (2, 3, 5), (), (4,)])


@settings(deadline=None, max_examples=100)
@given(st.data())
def test_csr_views_agree_with_dense(data):
    n = data.draw(st.integers(min_value=1, max_value=12))
    T = data.draw(st.integers(min_value=1, max_value=10))
    rows = []
    for _ in range(T):
        members = data.draw(st.sets(st.integers(min_value=1, max_value=n)))
        rows.append(tuple(sorted(members)))
    d = TestDesign.from_rows(n, rows)
    dense = d.to_dense()
    for t in range(1, T + 1):
        assert list(d.row(t)) == [i + 1 for i in np.flatnonzero(dense[t - 1])]
    for i in range(1, n + 1):
        assert list(d.col(i)) == [t + 1 for t in np.flatnonzero(dense[:, i - 1])]
    assert d.entry_count == int(dense.sum())


# ---------------------------------------------------------------------------
# random ensembles


def test_bernoulli_determinism():
    a = bernoulli_design(50, 30, 0.2, seed=7)
    b = bernoulli_design(50, 30, 0.2, seed=7)
    c = bernoulli_design(50, 30, 0.2, seed=8)
    assert a == b
    assert a != c


def test_bernoulli_rejects_bad_p():
    for p in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ParameterError):
            bernoulli_design(10, 5, p, seed=0)


def test_bernoulli_inclusion_frequency():
    # p = 0.3: each (test, item) entry is present independently
    n, T, p = 40, 500, 0.3
    d = bernoulli_design(n, T, p, seed=123)
    frac = d.entry_count / (n * T)
    sd = math.sqrt(p * (1 - p) / (n * T))
    assert abs(frac - p) < 5 * sd


def test_bernoulli_positive_test_fraction():
    # with k = 10 defectives and p = ln2 / k, the chance a test is positive is
    # 1 - (1 - p)^k = 0.5124395609995183; check the Monte Carlo fraction
    from pooltest.model import DefectiveSet, generate_outcomes

    n, T, k = 200, 2000, 10
    p = LN2 / k
    d = bernoulli_design(n, T, p, seed=42)
    y = generate_outcomes(d, DefectiveSet(n, tuple(range(1, k + 1))))
    frac = sum(y.bits) / T
    target = 0.5124395609995183
    sd = math.sqrt(target * (1 - target) / T)
    assert abs(frac - target) < 5 * sd


def test_ncc_column_weights_bounded_by_l():
    # every item makes L draws, so it lands in 1..L distinct tests
    d = ncc_design(30, 20, 5, seed=3)
    for i in range(1, 31):
        assert 1 <= len(d.col(i)) <= 5


def test_ncc_rejects_bad_l():
    with pytest.raises(ParameterError):
        ncc_design(10, 5, 0, seed=0)
    with pytest.raises(ParameterError):
        ncc_design(10, 5, 6, seed=0)  # L cannot exceed T


def test_ncc_column_weight_is_l_with_collisions_collapsed():
    # each item lands in exactly L draws; distinct tests only are kept.
    # with T = 4, L = 4 the expected distinct count is 4 * (1 - (3/4)^4)
    T, L, n = 4, 4, 4000
    d = ncc_design(n, T, L, seed=11)
    weights = [len(d.col(i)) for i in range(1, n + 1)]
    mean = sum(weights) / n
    assert max(weights) <= L
    assert abs(mean - 2.734375) < 0.05


def test_ncc_determinism():
    a = ncc_design(25, 12, 3, seed=9)
    assert a == ncc_design(25, 12, 3, seed=9)
    assert a != ncc_design(25, 12, 3, seed=10)


# ---------------------------------------------------------------------------
# specs


def test_spec_defaults_and_labels():
    s = DesignSpec("bernoulli")
    assert s.nu == LN2
    assert s.label() == "bernoulli"
    assert DesignSpec("ncc").label() == "ncc"
    assert DesignSpec("explicit", path="designs/a.txt").label() == "file:designs/a.txt"


def test_spec_validation():
    with pytest.raises(ParameterError):
        DesignSpec("mystery")
    with pytest.raises(ParameterError):
        DesignSpec("explicit")  # needs a path
    with pytest.raises(ParameterError):
        DesignSpec("bernoulli", nu=0.0)


def test_build_bernoulli_uses_nu_over_k():
    spec = DesignSpec("bernoulli", nu=1.0)
    d = build_design(spec, n=60, T=40, k=4, seed=0)
    assert d.metadata["kind"] == "bernoulli"
    assert d.metadata["p"] == pytest.approx(0.25)
    assert d == bernoulli_design(60, 40, 0.25, seed=0)


def test_build_bernoulli_p_override():
    spec = DesignSpec("bernoulli", p_override=0.5)
    d = build_design(spec, n=20, T=10, k=3, seed=1)
    assert d.metadata["p"] == 0.5


def test_build_ncc_rounds_l():
    # L = round_half_up(nu * T / k)
    spec = DesignSpec("ncc")
    d = build_design(spec, n=100, T=60, k=8, seed=2)
    expect = round_half_up(LN2 * 60 / 8)
    assert d.metadata["kind"] == "ncc"
    assert d.metadata["L"] == expect
    assert d == ncc_design(100, 60, expect, seed=2)


def test_build_ncc_l_override():
    spec = DesignSpec("ncc", L_override=2)
    d = build_design(spec, n=30, T=15, k=5, seed=4)
    assert d.metadata["L"] == 2


def test_build_explicit_checks_dimensions(tmp_path):
    path = tmp_path / "d.txt"
    save_design(small_design(), path)
    spec = DesignSpec("explicit", path=str(path))
    d = build_design(spec, n=5, T=4, k=2, seed=0)
    assert d == small_design()
    with pytest.raises(ParameterError, match="explicit design is 4 x 5"):
        build_design(spec, n=5, T=6, k=2, seed=0)


# ---------------------------------------------------------------------------
# the file format


def test_save_load_round_trip(tmp_path):
    d = small_design()  # includes an empty test
    path = tmp_path / "design.txt"
    save_design(d, path)
    back = load_design(path)
    assert back == d


def test_save_load_round_trip_random(tmp_path):
    d = bernoulli_design(40, 25, 0.15, seed=5)
    path = tmp_path / "design.txt"
    save_design(d, path)
    assert load_design(path) == d


def test_file_format_shape(tmp_path):
    path = tmp_path / "design.txt"
    save_design(small_design(), path)
    lines = path.read_text().splitlines()
    assert lines[0] == "4 5"
    assert len(lines) == 5
    assert lines[1] == "1 3"
    assert lines[3] == ""


def test_load_rejects_bad_header(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("4\n1 2\n")
    with pytest.raises(DesignFormatError, match="line 1: expected header 'T n'"):
        load_design(path)


def test_load_rejects_non_integer(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("2 5\n1 x\n2\n")
    with pytest.raises(DesignFormatError, match=r"line 2: 'x' is not an integer"):
        load_design(path)


def test_load_rejects_duplicates(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 5\n2 2\n")
    with pytest.raises(DesignFormatError, match="line 2: duplicate item index"):
        load_design(path)


def test_load_rejects_unsorted(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 5\n3 1\n")
    with pytest.raises(DesignFormatError, match="line 2: indices must be sorted increasing"):
        load_design(path)


def test_load_rejects_out_of_range(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("1 5\n1 9\n")
    with pytest.raises(DesignFormatError):
        load_design(path)


def test_load_rejects_wrong_test_count(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3 5\n1 2\n3\n")
    with pytest.raises(DesignFormatError):
        load_design(path)
