import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import brute_kernel
from z4perfect.errors import LengthMismatchError, ResourceCapError
from z4perfect.z4linalg import (
    CheckMatrix,
    build_check_matrix,
    column_split,
    format_matrix,
    generator_from_rows,
    howell_form,
    kernel_generators,
    matrices_equivalent,
    module_type,
    parse_matrix,
    read_check_matrix,
    row_span,
    smith_z4,
)

# Expected text of the seven smallest family members, typed by hand.
EXPECTED_TEXT = {
    (0, 0): ["1"],
    (0, 1): ["11", "02"],
    (1, 0): ["1111", "0123"],
    (0, 2): ["1111", "0022", "0202"],
    (1, 1): ["11111111", "00112233", "02020202"],
    (0, 3): ["11111111", "00002222", "00220022", "02020202"],
    (2, 0): ["1111111111111111", "0000111122223333", "0123012301230123"],
}

small_matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 3).flatmap(lambda c: arrays(np.int64, (r, c), elements=st.integers(0, 3)))
)


@pytest.mark.parametrize("params", sorted(EXPECTED_TEXT))
def test_build_matches_expected_text(params):
    a = build_check_matrix(*params)
    assert a.to_text() == "\n".join(EXPECTED_TEXT[params]) + "\n"
    assert (a.full_rows, a.half_rows) == (params[0] + 1, params[1])


@pytest.mark.parametrize("r1, r2", [(r1, r2) for r1 in range(5) for r2 in range(9) if 2 * r1 + r2 <= 8])
def test_build_has_exactly_the_admissible_columns(r1, r2):
    a = build_check_matrix(r1, r2).matrix
    assert a.shape == (r1 + r2 + 1, 4**r1 * 2**r2)
    cols = [tuple(int(x) for x in c) for c in a.T]
    expected = [(1, *x, *y) for x in itertools.product(range(4), repeat=r1) for y in itertools.product((0, 2), repeat=r2)]
    assert cols == sorted(expected)
    assert len(set(cols)) == len(cols)


def test_build_column_cap():
    with pytest.raises(ResourceCapError):
        build_check_matrix(3, 0, column_cap=32)


def test_howell_examples():
    assert howell_form([[2]]).tolist() == [[2]]
    a01 = build_check_matrix(0, 1).matrix
    tripled = a01.astype(np.int64).copy()
    tripled[1] = (3 * tripled[1]) % 4
    assert howell_form(a01).shape[0] == 2
    assert np.array_equal(howell_form(a01), howell_form(tripled))
    assert row_span(a01) == row_span(tripled)


@settings(max_examples=300, deadline=None)
@given(small_matrices, st.randoms())
def test_howell_invariant_under_row_operations(m, rnd):
    perm = list(range(m.shape[0]))
    rnd.shuffle(perm)
    shuffled = m[perm]
    unit = rnd.choice([1, 3])
    shuffled[0] = (unit * shuffled[0]) % 4
    if m.shape[0] > 1:
        shuffled[1] = (shuffled[1] + rnd.randrange(4) * shuffled[0]) % 4
    assert np.array_equal(howell_form(m), howell_form(shuffled))
    h = howell_form(m)
    assert np.array_equal(howell_form(h), h)


@settings(max_examples=300, deadline=None)
@given(small_matrices, small_matrices)
def test_equivalence_agrees_with_brute_span(a, b):
    if a.shape[1] != b.shape[1]:
        with pytest.raises(LengthMismatchError):
            matrices_equivalent(a, b)
        return
    assert matrices_equivalent(a, b) == (row_span(a) == row_span(b))


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_equivalence_with_derived_matrix(a):
    # a matrix built from combinations of a's rows that still spans the same module
    b = np.vstack([a, (a.sum(axis=0) * 2) % 4])
    assert matrices_equivalent(a, b)


def test_equivalence_examples():
    a11, a10, a01 = (build_check_matrix(*p).matrix for p in [(1, 1), (1, 0), (0, 1)])
    assert matrices_equivalent(column_split(a11, "even"), a10)
    assert matrices_equivalent(column_split(a10, "odd"), a01)
    a02 = build_check_matrix(0, 2).matrix
    assert len(row_span(a02)) == len(row_span(a10)) == 16
    assert not matrices_equivalent(a02, a10)


@pytest.mark.parametrize("r1, r2", [(r1, r2) for r1 in range(4) for r2 in range(1, 7) if 2 * r1 + r2 <= 6])
def test_even_odd_recursion_when_r2_positive(r1, r2):
    a = build_check_matrix(r1, r2).matrix
    target = build_check_matrix(r1, r2 - 1).matrix
    assert matrices_equivalent(column_split(a, "even"), target)
    assert matrices_equivalent(column_split(a, "odd"), target)


@pytest.mark.parametrize("r1", [1, 2, 3])
def test_even_odd_recursion_when_r2_zero(r1):
    a = build_check_matrix(r1, 0).matrix
    target = build_check_matrix(r1 - 1, 1).matrix
    assert matrices_equivalent(column_split(a, "even"), target)
    assert matrices_equivalent(column_split(a, "odd"), target)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: arrays(np.int64, (r, c), elements=st.integers(0, 3)))))
def test_smith_diagonalizes(m):
    p, d, q = smith_z4(m)
    diag = (p @ m @ q) % 4
    expected = np.zeros_like(diag)
    for i, di in enumerate(d):
        expected[i, i] = di
    assert np.array_equal(diag, expected)
    assert d == sorted(d)
    # invertible over Z4 iff invertible mod 2
    assert round(abs(np.linalg.det(p % 2))) % 2 == 1
    assert round(abs(np.linalg.det(q % 2))) % 2 == 1


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_generator_from_rows_spans_same_module(m):
    g = generator_from_rows(m)
    assert 4**g.k1 * 2**g.k2 == len(row_span(m))
    if g.matrix.shape[0]:
        assert matrices_equivalent(g.matrix, m)


def test_kernel_examples():
    g = kernel_generators(build_check_matrix(0, 0))
    assert g.matrix.shape == (0, 1)
    g = kernel_generators(build_check_matrix(0, 1))
    assert (g.k1, g.k2) == (0, 1)
    assert row_span(g.matrix) == {tuple_to_word(c) for c in brute_kernel([[1, 1], [0, 2]])}
    assert brute_kernel([[1, 1], [0, 2]]) == {(0, 0), (2, 2)}


def tuple_to_word(t):
    from z4perfect.z4core import Z4Word

    return Z4Word(t)


@pytest.mark.parametrize("r1, r2", [(0, 1), (1, 0), (0, 2), (1, 1), (0, 3)])
def test_kernel_matches_brute_force(r1, r2):
    a = build_check_matrix(r1, r2)
    g = kernel_generators(a)
    n = a.n
    assert (g.k1, g.k2) == (n - r1 - r2 - 1, r2)
    assert not np.any((a.matrix.astype(np.int64) @ g.matrix.T.astype(np.int64)) % 4)
    brute = brute_kernel(a.matrix)
    assert 4**g.k1 * 2**g.k2 == len(brute)
    if n <= 4:
        assert {tuple(w.digits) for w in row_span(g.matrix)} == brute


def test_kernel_a11_count_2048():
    assert len(brute_kernel(build_check_matrix(1, 1).matrix)) == 4**8 // (4 * 8) == 2048


def test_column_split_examples():
    a11 = build_check_matrix(1, 1).matrix
    assert np.array_equal(column_split(a11, "even"), a11[:, [0, 2, 4, 6]])
    a10 = build_check_matrix(1, 0).matrix
    assert column_split(a10, "odd").tolist() == [[1, 1], [1, 3]]
    m = np.array([[1, 2], [3, 0]])
    assert np.array_equal(np.hstack([column_split(m, "even"), column_split(m, "odd")]), m)
    with pytest.raises(ValueError):
        column_split(np.ones((2, 3)), "even")


def test_module_type_of_family():
    for r1, r2 in [(0, 2), (1, 1), (2, 0)]:
        assert module_type(build_check_matrix(r1, r2).matrix) == (r1 + 1, r2)


def test_matrix_file_round_trip(tmp_path):
    a = build_check_matrix(1, 1)
    path = tmp_path / "a.txt"
    path.write_text("# A^{1,1}\n\n" + format_matrix(a.matrix))
    back = read_check_matrix(path)
    assert back == a
    assert (back.full_rows, back.half_rows) == (2, 1)


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_matrix("012\n01\n")
    with pytest.raises(ValueError):
        parse_matrix("014\n")
    with pytest.raises(ValueError):
        parse_matrix("# only a comment\n")


def test_check_matrix_invariants():
    with pytest.raises(ValueError):
        CheckMatrix(np.array([[1, 1], [0, 1]]), 1, 1)
    cm = CheckMatrix.from_matrix([[1, 1, 1, 1], [0, 2, 0, 2], [2, 2, 0, 0]])
    assert (cm.full_rows, cm.half_rows) == (1, 2)
