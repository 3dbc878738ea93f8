import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rank_oracle
from z4perfect.analysis import (
    SHORTCUT,
    STREAM,
    binary_dual_basis,
    classify,
    code_rank,
    common_zero_coordinate,
    family_parameters,
    gf2_rank,
    is_linear_image,
    repetitive_dual_dimension,
    shortcut_spanning_set,
    validate_shortcut,
)
from z4perfect.codes import binary_image, code_from_generators, family_code, full_space
from z4perfect.errors import LengthMismatchError, Z4Error
from z4perfect.z4core import BinaryWord, Z4Word, gray, is_repetitive
from z4perfect.z4linalg import build_check_matrix

# Thirteen codewords of C^{1,1} with GF(2)-independent Gray images.
RANK13 = [
    ("22000000", "1100000011000000"),
    ("00002200", "0000110000001100"),
    ("20002000", "1000100010001000"),
    ("11001100", "0000000011001100"),
    ("00220000", "0011000000110000"),
    ("00000022", "0000001100000011"),
    ("00200020", "0010001000100010"),
    ("00110011", "0000000000110011"),
    ("00001313", "0000010100001010"),
    ("01010303", "0000010101010000"),
    ("01013030", "0000101001010000"),
    ("10000111", "0000000010000111"),
    ("01000102", "0000000101000101"),
]

HAMMING_B = [
    "1111111111111111",
    "0000000011111111",
    "0000111100001111",
    "0011001100110011",
    "0101010101010101",
]


def test_rank13_vectors_are_images_of_codewords():
    a = build_check_matrix(1, 1).matrix.astype(np.int64)
    for q, b in RANK13:
        assert str(gray(Z4Word(q))) == b
        assert not np.any((a @ np.array(Z4Word(q).digits)) % 4)


def test_gf2_rank_examples():
    vecs = [BinaryWord(b) for _, b in RANK13]
    assert gf2_rank(vecs) == 13 == rank_oracle([list(v.bits) for v in vecs])
    assert gf2_rank(vecs[:11]) == 11
    assert gf2_rank([BinaryWord("0000")] * 5) == 0
    assert gf2_rank([]) == 0
    assert gf2_rank(BinaryWord(r) for r in HAMMING_B) == 5
    with pytest.raises(LengthMismatchError):
        gf2_rank([BinaryWord("01"), BinaryWord("011")])


def test_rank13_basis_structure():
    # b1..b11 lie in the Hamming code checked by B; b12, b13 escape it
    rows = [int(r, 2) for r in HAMMING_B]
    vals = [int(b, 2) for _, b in RANK13]
    for v in vals[:11]:
        assert all(bin(v & r).count("1") % 2 == 0 for r in rows)
    assert [bin(vals[11] & r).count("1") % 2 for r in rows] == [0, 0, 1, 0, 0]
    assert bin(vals[12] & rows[1]).count("1") % 2 == 1


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 20).flatmap(lambda m: st.lists(st.lists(st.integers(0, 1), min_size=m, max_size=m), max_size=25)))
def test_gf2_rank_matches_oracle(rows):
    assert gf2_rank(BinaryWord(r) for r in rows) == rank_oracle(rows)


@pytest.mark.parametrize(
    "r1, r2, expected",
    [(0, 1, 1), (1, 0, 4), (0, 2, 4), (1, 1, 13), (0, 3, 11)],
)
def test_code_rank_small(r1, r2, expected):
    code = family_code(r1, r2)
    assert code_rank(code, STREAM) == expected
    assert code_rank(code, SHORTCUT) == expected
    assert rank_oracle([list(b.bits) for b in binary_image(code)]) == expected


def test_shortcut_spanning_set_spans_the_image():
    code = family_code(1, 1)
    image = [b.value for b in binary_image(code)]
    extra = shortcut_spanning_set(code)
    as_words = lambda vs: [BinaryWord.from_int(v, 16) for v in vs]
    assert gf2_rank(as_words(extra)) == gf2_rank(as_words(image))
    assert gf2_rank(as_words(image + extra)) == gf2_rank(as_words(image))


def test_gate_agrees_up_to_length_32():
    agreed = validate_shortcut()
    assert agreed[(1, 1)] == 13 and agreed[(0, 3)] == 11
    assert agreed[(0, 4)] == 27 and agreed[(1, 2)] == 28 and agreed[(2, 0)] == 29


def test_dual_basis_c11():
    code = family_code(1, 1)
    basis = binary_dual_basis(code)
    assert len(basis) == 3
    assert all(is_repetitive(b) for b in basis)
    span = set()
    for coeffs in itertools.product(range(2), repeat=3):
        v = 0
        for c, b in zip(coeffs, basis):
            if c:
                v ^= b.value
        span.add(v)
    assert {bin(v).count("1") for v in span} <= {0, 8, 16}
    image = list(binary_image(code))
    assert all(b.dot(y) == 0 for b in basis for y in image)


def test_dual_basis_of_full_space_is_empty():
    assert binary_dual_basis(full_space(3)) == []
    assert repetitive_dual_dimension(full_space(3)) == 0


@pytest.mark.parametrize("r1, r2", [(0, 1), (1, 0), (0, 2), (1, 1), (0, 3)])
def test_rep_dual_dimension_formula(r1, r2):
    assert repetitive_dual_dimension(family_code(r1, r2)) == r1 + r2 + 1


@pytest.mark.parametrize("r1, r2", [(0, 2), (1, 1), (0, 3)])
def test_dual_weights_are_0_half_full(r1, r2):
    code = family_code(r1, r2)
    m = 2 * code.n
    basis = binary_dual_basis(code)
    for coeffs in itertools.product(range(2), repeat=len(basis)):
        v = 0
        for c, b in zip(coeffs, basis):
            if c:
                v ^= b.value
        assert bin(v).count("1") in (0, m // 2, m)


@pytest.mark.parametrize("r1, r2", [(1, 1), (1, 2)])
def test_every_dual_word_repetitive_when_r1_positive(r1, r2):
    basis = binary_dual_basis(family_code(r1, r2))
    assert basis and all(is_repetitive(b) for b in basis)


@pytest.mark.parametrize("r1, r2", [(0, 1), (1, 0), (0, 2), (1, 1), (0, 3)])
def test_dual_size_plus_rank_is_length(r1, r2):
    code = family_code(r1, r2)
    assert len(binary_dual_basis(code)) + code_rank(code) == 2 * code.n


def _closed_under_xor(words):
    s = {w.value for w in words}
    return all((a ^ b) in s for a in s for b in s)


@pytest.mark.parametrize("r1, r2, linear", [(0, 1, True), (0, 2, True), (1, 0, True), (1, 1, False), (0, 3, True)])
def test_linearity(r1, r2, linear):
    code = family_code(r1, r2)
    assert is_linear_image(code) is linear
    if code.cardinality <= 256:
        assert _closed_under_xor(binary_image(code)) is linear


def test_linearity_agrees_with_closure_on_random_codes():
    rng = np.random.default_rng(2)
    for _ in range(30):
        rows = rng.integers(0, 4, size=(rng.integers(1, 3), 4))
        code = code_from_generators(rows)
        assert is_linear_image(code) == _closed_under_xor(binary_image(code))


def test_common_zero_examples():
    assert common_zero_coordinate([BinaryWord("00"), BinaryWord("01")]) == 0
    assert common_zero_coordinate(BinaryWord(s) for s in ["0101", "0011", "0110"]) == 0
    assert common_zero_coordinate([BinaryWord("1111"), BinaryWord("0000")]) is None
    with pytest.raises(LengthMismatchError):
        common_zero_coordinate([BinaryWord("01"), BinaryWord("0")])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.data())
def test_half_weight_linear_codes_have_common_zero(m, data):
    # codes spanned by some of the coordinate functionals x_i on F_2^m: every
    # nonzero word has weight 2^(m-1)
    n = 2**m
    perm = data.draw(st.permutations(range(n)))
    chosen = data.draw(st.lists(st.integers(0, m - 1), unique=True, min_size=1))
    gens = [[(perm[j] >> i) & 1 for j in range(n)] for i in chosen]
    span = []
    for coeffs in itertools.product(range(2), repeat=len(gens)):
        w = [0] * n
        for c, g in zip(coeffs, gens):
            if c:
                w = [a ^ b for a, b in zip(w, g)]
        assert sum(w) in (0, n // 2)
        span.append(BinaryWord(w))
    idx = common_zero_coordinate(span)
    assert idx is not None and all(w[idx] == 0 for w in span)


def test_family_parameters():
    assert family_parameters(4) == [(0, 3), (1, 1)]
    assert family_parameters(5) == [(0, 4), (1, 2), (2, 0)]
    assert len(family_parameters(7)) == 4


def test_classify_k4():
    report = classify(4)
    assert report.count == 2
    assert [(e.r1, e.r2, e.rank, e.rep_dual_dim, e.linear) for e in report.entries] == [
        (0, 3, 11, 4, True),
        (1, 1, 13, 3, False),
    ]
    js = report.to_json()
    assert set(js) == {"k", "count", "entries"}
    assert set(js["entries"][0]) == {"r1", "r2", "length", "rank", "rep_dual_dim", "linear"}


@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_classify_rejects_small_k(k):
    with pytest.raises(Z4Error, match="k >= 4"):
        classify(k)


def test_random_dual_combinations_are_orthogonal():
    code = family_code(1, 1)
    basis = binary_dual_basis(code)
    image = list(binary_image(code))
    rng = random.Random(1)
    for _ in range(20):
        y = 0
        for b in basis:
            if rng.randrange(2):
                y ^= b.value
        z = rng.choice(image).value
        assert bin(y & z).count("1") % 2 == 0
