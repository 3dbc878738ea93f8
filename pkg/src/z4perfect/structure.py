"""Canonicalization of perfect quaternary check matrices and the product
construction.

:func:`canonicalize` maps the check matrix of any perfect quaternary code
onto the family member ``A^{r1,r2}`` by

1. taking ``b_i = gray(2 a_i)`` for the order-4 rows ``a_i``,
2. solving ``xor_i alpha_i b_i = all-ones`` over GF(2),
3. moving the first row with ``alpha_i = 1`` to the top and replacing it by
   ``sum_i alpha_i a_i`` (now every entry is 1 or 3),
4. negating every column whose top entry is 3,
5. checking the columns are distinct and sorting them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .codes import QuaternaryCode, code_from_check, is_perfect
from .errors import (
    DEFAULT_COLUMN_CAP,
    LengthMismatchError,
    MalformedCheckMatrixError,
    NotPerfectError,
    ResourceCapError,
    Z4Error,
)
from .z4core import Z4Word, gray
from .z4linalg import CheckMatrix, as_z4, build_check_matrix, module_type, normalize_check


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    """Transcript of a canonicalization.

    ``reduced_matrix`` is the input after the row replacement.  Multiplying
    its column ``j`` by ``signs[j]`` and then taking column ``permutation[k]``
    as column ``k`` yields ``canonical_matrix`` == A^{r1,r2}.
    """

    r1: int
    r2: int
    signs: tuple[int, ...]
    permutation: tuple[int, ...]
    alpha: tuple[int, ...]
    reduced_matrix: np.ndarray
    canonical_matrix: CheckMatrix
    rows_normalized: bool = False

    def transform(self, m) -> np.ndarray:
        """Apply the signs, then the permutation, to the columns of ``m``."""
        a = as_z4(m)
        if a.shape[1] != len(self.signs):
            raise LengthMismatchError("column count does not match the transcript")
        a = (a * np.array(self.signs, dtype=np.int64)) % 4
        return a[:, list(self.permutation)]

    def transform_word(self, c: Z4Word) -> Z4Word:
        """Image of a codeword of the input code in C^{r1,r2}."""
        d = c.digits
        return Z4Word((self.signs[j] * d[j]) % 4 for j in self.permutation)

    def to_json(self) -> dict:
        return {
            "r1": self.r1,
            "r2": self.r2,
            "signs": "".join("+" if s == 1 else "-" for s in self.signs),
            "permutation": list(self.permutation),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _solve_all_ones(rows: list[int], nbits: int) -> tuple[int, ...] | None:
    """alpha with xor of alpha_i * rows[i] == all-ones, free variables 0."""
    target = (1 << nbits) - 1
    # echelon basis where each entry remembers which input rows built it
    basis: dict[int, tuple[int, int]] = {}
    for i, v in enumerate(rows):
        combo = 1 << i
        while v:
            p = v.bit_length() - 1
            if p not in basis:
                basis[p] = (v, combo)
                break
            bv, bc = basis[p]
            v ^= bv
            combo ^= bc
    v, combo = target, 0
    while v:
        p = v.bit_length() - 1
        if p not in basis:
            return None
        bv, bc = basis[p]
        v ^= bv
        combo ^= bc
    return tuple((combo >> i) & 1 for i in range(len(rows)))


def _prepare(check: CheckMatrix) -> tuple[CheckMatrix, bool]:
    """Ensure the full rows are module-independent order-4 rows."""
    k1, k2 = module_type(check.matrix)
    if (k1, k2) == (check.full_rows, check.half_rows):
        return check, False
    return normalize_check(check), True


def _lex_order(m: np.ndarray) -> np.ndarray:
    # np.lexsort sorts by the last key first, so feed rows bottom-up
    return np.lexsort(m[::-1])


def canonicalize(check: CheckMatrix) -> CanonicalForm:
    """Map a perfect quaternary check matrix onto ``A^{r1,r2}``."""
    if not isinstance(check, CheckMatrix):
        check = CheckMatrix.from_matrix(check)
    check, normalized = _prepare(check)
    a = check.matrix.astype(np.int64)
    n = check.n
    r0, r2 = check.full_rows, check.half_rows
    if np.any(a[r0:] % 2):
        raise MalformedCheckMatrixError("half rows must lie in {0,2}^n")
    if r0 == 0:
        raise NotPerfectError("no order-4 check rows: the all-ones word is not reachable")
    if n != 4 ** (r0 - 1) * 2**r2:
        raise NotPerfectError(
            f"length {n} does not match 4^{r0 - 1}*2^{r2}: cardinality is not 4^n/4n"
        )

    doubled = [gray(2 * Z4Word(row)).value for row in a[:r0]]
    alpha = _solve_all_ones(doubled, 2 * n)
    if alpha is None:
        raise NotPerfectError("all-ones word is not a combination of the doubled check rows")

    first = alpha.index(1)
    order = list(range(check.rows))
    order[0], order[first] = order[first], order[0]
    reduced = a[order].copy()
    alpha_r = [alpha[i] for i in order[:r0]]
    reduced[0] = sum(al * row for al, row in zip(alpha_r, reduced[:r0])) % 4
    if np.any(reduced[0] % 2 == 0):
        raise Z4Error("replacement row is not a unit row")  # cannot happen once alpha solves

    signs = np.where(reduced[0] == 3, -1, 1)
    signed = (reduced * signs) % 4
    perm = _lex_order(signed)
    sorted_cols = signed[:, perm]
    if np.any(np.all(sorted_cols[:, 1:] == sorted_cols[:, :-1], axis=0)):
        raise NotPerfectError("two columns coincide up to sign: the code has a Lee weight-2 word")

    target = build_check_matrix(r0 - 1, r2)
    if not np.array_equal(sorted_cols, target.matrix):
        raise MalformedCheckMatrixError("column set does not match the admissible shape")
    return CanonicalForm(
        r1=r0 - 1,
        r2=r2,
        signs=tuple(int(s) for s in signs),
        permutation=tuple(int(p) for p in perm),
        alpha=tuple(alpha),
        reduced_matrix=reduced,
        canonical_matrix=target,
        rows_normalized=normalized,
    )


def equivalent_via_canonical(a: CheckMatrix, b: CheckMatrix) -> bool:
    ca, cb = canonicalize(a), canonicalize(b)
    return (ca.r1, ca.r2) == (cb.r1, cb.r2)


def scramble(check: CheckMatrix, rng: np.random.Generator) -> tuple[CheckMatrix, np.ndarray, np.ndarray]:
    """Random column permutation and sign flips; returns (matrix, perm, signs)
    with ``out[:, k] = signs[k] * check[:, perm[k]]``."""
    n = check.n
    perm = rng.permutation(n)
    signs = rng.choice(np.array([1, -1]), size=n)
    m = (check.matrix.astype(np.int64)[:, perm] * signs) % 4
    return CheckMatrix(m, check.full_rows, check.half_rows), perm, signs


# --------------------------------------------------------------------------
# product construction


def row_col_sums(c: Z4Word, n1: int, n2: int) -> tuple[Z4Word, Z4Word]:
    """Row sums p' (length n1) and column sums p'' (length n2) of ``c`` read
    as an n1 x n2 array with rows of length n2."""
    if len(c) != n1 * n2:
        raise LengthMismatchError(f"word of length {len(c)} is not {n1}x{n2}")
    grid = np.array(c.digits, dtype=np.int64).reshape(n1, n2)
    return Z4Word(grid.sum(axis=1) % 4), Z4Word(grid.sum(axis=0) % 4)


def product_in_code(c: Z4Word, left: QuaternaryCode, right: QuaternaryCode) -> bool:
    """Membership by definition: p'(c) in ``left`` and p''(c) in ``right``."""
    p1, p2 = row_col_sums(c, left.n, right.n)
    return _annihilates(left.check, p1) and _annihilates(right.check, p2)


def _annihilates(check: CheckMatrix, w: Z4Word) -> bool:
    return not np.any((check.matrix.astype(np.int64) @ np.array(w.digits, np.int64)) % 4)


def product_check_matrix(left: CheckMatrix, right: CheckMatrix) -> CheckMatrix:
    """Check matrix of ``{c : p'(c) in left-code, p''(c) in right-code}``.

    A row ``a'`` of ``left`` becomes ``a'_i`` repeated over the i-th block of
    ``right.n`` coordinates; a row ``a''`` of ``right`` is tiled ``left.n``
    times.  The two all-ones rows coincide and only one is kept.
    """
    n1, n2 = left.n, right.n
    lm = left.matrix.astype(np.int64)
    rm = right.matrix.astype(np.int64)
    lexp = np.repeat(lm, n2, axis=1)
    rexp = np.tile(rm, (1, n1))
    full = [lexp[: left.full_rows], rexp[: right.full_rows]]
    half = [lexp[left.full_rows :], rexp[right.full_rows :]]
    full_rows = np.vstack(full)
    half_rows = np.vstack(half) if any(h.size for h in half) else np.zeros((0, n1 * n2), np.int64)
    ones = np.all(full_rows == 1, axis=1)
    if ones.sum() > 1:
        drop = np.flatnonzero(ones)[1:]
        full_rows = np.delete(full_rows, drop, axis=0)
    stacked = np.vstack([full_rows, half_rows])
    out = CheckMatrix(stacked, full_rows.shape[0], half_rows.shape[0])
    if module_type(out.matrix) != (out.full_rows, out.half_rows):
        out = normalize_check(out)
    return out


def product_code(
    left: QuaternaryCode, right: QuaternaryCode, column_cap: int = DEFAULT_COLUMN_CAP
) -> QuaternaryCode:
    """The product code of two perfect quaternary codes (lengths multiply,
    parameters add)."""
    for name, code in (("left", left), ("right", right)):
        if code.check is None:
            raise Z4Error(f"{name} code needs a check matrix")
        if not is_perfect(code, "structural"):
            raise NotPerfectError(f"{name} code is not perfect")
    if left.n * right.n > column_cap:
        raise ResourceCapError(f"product length {left.n * right.n} exceeds the column cap {column_cap}")
    return code_from_check(product_check_matrix(left.check, right.check))
