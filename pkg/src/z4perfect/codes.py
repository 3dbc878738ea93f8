"""Quaternary codes: construction, enumeration, distance, perfectness, duals."""

from __future__ import annotations

import itertools
import json
from collections.abc import Iterator
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatchError, ResourceCapError, Z4Error, enum_cap
from .z4core import BinaryWord, Z4Word, gray
from .z4linalg import (
    CheckMatrix,
    GeneratorMatrix,
    Which,
    as_z4,
    column_split,
    generator_from_rows,
    kernel_generators,
)

BLOCK_BITS = 16
_U = np.uint64


@dataclass(frozen=True, eq=False)
class QuaternaryCode:
    """Additive subgroup of Z4^n given by a generator matrix (and optionally
    the check matrix it was built from)."""

    n: int
    generator: GeneratorMatrix
    check: CheckMatrix | None = None

    @property
    def k1(self) -> int:
        return self.generator.k1

    @property
    def k2(self) -> int:
        return self.generator.k2

    @property
    def log2_size(self) -> int:
        return 2 * self.k1 + self.k2

    @property
    def cardinality(self) -> int:
        return 4**self.k1 * 2**self.k2

    def descriptor(self) -> str:
        return json.dumps({"n": self.n, "k1": self.k1, "k2": self.k2})

    def __repr__(self) -> str:
        return f"QuaternaryCode(n={self.n}, type=4^{self.k1}*2^{self.k2})"


def code_from_check(check: CheckMatrix) -> QuaternaryCode:
    return QuaternaryCode(check.n, kernel_generators(check), check)


def code_from_generators(rows, n: int | None = None) -> QuaternaryCode:
    g = generator_from_rows(rows, n)
    return QuaternaryCode(g.n, g)


def full_space(n: int) -> QuaternaryCode:
    """Z4^n, described by a single all-zero check row."""
    return code_from_check(CheckMatrix(np.zeros((1, n), np.int64), 0, 1))


def family_code(r1: int, r2: int) -> QuaternaryCode:
    from .z4linalg import build_check_matrix

    return code_from_check(build_check_matrix(r1, r2))


# --------------------------------------------------------------------------
# enumeration


def _row_planes(row) -> tuple[int, int]:
    lo = hi = 0
    for i, d in enumerate(row):
        d = int(d)
        lo |= (d & 1) << i
        hi |= (d >> 1) << i
    return lo, hi


def _generators(code: QuaternaryCode) -> list[tuple[int, int, int]]:
    """(lo, hi, order) for each generator row, order-4 rows first."""
    g = code.generator
    out = [(*_row_planes(r), 4) for r in g.order4_rows]
    out += [(*_row_planes(r), 2) for r in g.order2_rows]
    return out


def _multiples(lo: int, hi: int, order: int) -> list[tuple[int, int]]:
    if order == 2:
        return [(0, 0), (lo, hi)]
    return [(0, 0), (lo, hi), (0, lo), (lo, hi ^ lo)]


def _add(l1, h1, l2, h2):
    return l1 ^ l2, h1 ^ h2 ^ (l1 & l2)


def enumerate_codewords(
    code: QuaternaryCode, start: int = 0, stop: int | None = None
) -> Iterator[Z4Word]:
    """Yield codewords ``(v1, v2) [G1; 2G2]`` in coefficient order.

    Index ``t`` encodes ``v1`` (base 4, lexicographic, outer) and ``v2``
    (base 2, inner); ``start``/``stop`` select a slice of that index range so
    disjoint ranges can be consumed independently.
    """
    gens = _generators(code)
    radices = [o for *_, o in gens]
    total = code.cardinality
    stop = total if stop is None else min(stop, total)
    mults = [_multiples(lo, hi, o) for lo, hi, o in gens]
    for t in range(start, stop):
        lo = hi = 0
        rem = t
        for m, rad in zip(reversed(mults), reversed(radices)):
            rem, v = divmod(rem, rad)
            if v:
                lo, hi = _add(lo, hi, *m[v])
        yield Z4Word.from_planes(lo, hi, code.n)


def _span_arrays(gens) -> tuple[np.ndarray, np.ndarray]:
    lo = np.zeros(1, dtype=_U)
    hi = np.zeros(1, dtype=_U)
    for glo, ghi, order in gens:
        parts_lo, parts_hi = [], []
        for ml, mh in _multiples(glo, ghi, order):
            ml, mh = _U(ml), _U(mh)
            parts_lo.append(lo ^ ml)
            parts_hi.append(hi ^ mh ^ (lo & ml))
        lo = np.concatenate(parts_lo)
        hi = np.concatenate(parts_hi)
    return lo, hi


def iter_codeword_blocks(
    code: QuaternaryCode, block_bits: int = BLOCK_BITS
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    """Yield every codeword once as bitplane arrays ``(lo, hi)`` of ``uint64``.

    The trailing generators are expanded into an in-memory block; the leading
    ones are walked one combination at a time and added to that block.
    Requires ``n <= 64``.
    """
    if code.n > 64:
        raise ResourceCapError("vectorized enumeration supports length <= 64")
    gens = _generators(code)
    inner_bits = 0
    split = len(gens)
    while split > 0 and inner_bits + (2 if gens[split - 1][2] == 4 else 1) <= block_bits:
        split -= 1
        inner_bits += 2 if gens[split][2] == 4 else 1
    outer, inner = gens[:split], gens[split:]
    base_lo, base_hi = _span_arrays(inner)
    for combo in itertools.product(*[_multiples(lo, hi, o) for lo, hi, o in outer]):
        sl = sh = 0
        for ml, mh in combo:
            sl, sh = _add(sl, sh, ml, mh)
        su_l, su_h = _U(sl), _U(sh)
        yield base_lo ^ su_l, base_hi ^ su_h ^ (base_lo & su_l)


def _check_cap(code: QuaternaryCode, what: str) -> None:
    cap = enum_cap()
    if code.cardinality > cap:
        raise ResourceCapError(
            f"{what}: {code.cardinality} codewords exceed the enumeration cap {cap}; "
            "use the structural check instead"
        )


def lee_weights_block(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    return np.bitwise_count(hi).astype(np.int64) + np.bitwise_count(hi ^ lo)


def gray_block(lo: np.ndarray, hi: np.ndarray, n: int) -> np.ndarray:
    """Gray images of a block as packed ``uint64`` words (needs 2n <= 64)."""
    return hi | ((hi ^ lo) << _U(n))


def min_lee_weight(code: QuaternaryCode) -> int | None:
    """Minimum Lee weight over nonzero codewords, by exhaustive enumeration."""
    if code.log2_size == 0:
        return None
    _check_cap(code, "min_lee_weight")
    best: int | None = None
    if code.n <= 64:
        for lo, hi in iter_codeword_blocks(code):
            w = lee_weights_block(lo, hi)
            w = w[w > 0]
            if w.size:
                m = int(w.min())
                best = m if best is None else min(best, m)
    else:
        from .z4core import lee_weight

        for c in enumerate_codewords(code):
            w = lee_weight(c)
            if w and (best is None or w < best):
                best = w
    return best


def structural_distance_check(check: CheckMatrix) -> bool:
    """First row all ones and pairwise-distinct columns.

    Any nonzero kernel word of Lee weight < 4 either violates the all-ones row
    or is ``e_i - e_j`` for two equal columns, so a True result certifies
    minimum Lee weight >= 4 at any length.
    """
    m = check.matrix
    if m.shape[0] == 0 or not np.all(m[0] == 1):
        return False
    cols = np.unique(m.T, axis=0)
    return cols.shape[0] == m.shape[1]


@dataclass(frozen=True)
class PerfectnessResult:
    perfect: bool
    method: str  # "exhaustive" | "structural" | "cardinality"
    cardinality_ok: bool
    min_weight: int | None = None

    def __bool__(self) -> bool:
        return self.perfect


def perfect_log2_size(n: int) -> int | None:
    """log2 of 4^n/(4n) when n is a power of two, else None."""
    if n < 1 or n & (n - 1):
        return None
    return 2 * n - 2 - (n.bit_length() - 1)


def is_perfect(code: QuaternaryCode, method: str = "auto") -> PerfectnessResult:
    """Cardinality 4^n/(4n) and minimum Lee weight >= 4.

    ``method`` is ``"exhaustive"``, ``"structural"`` or ``"auto"`` (exhaustive
    within the enumeration cap, structural otherwise).
    """
    target = perfect_log2_size(code.n)
    if target is None or code.log2_size != target:
        return PerfectnessResult(False, "cardinality", False)
    if method == "auto":
        method = "exhaustive" if code.cardinality <= enum_cap() else "structural"
    if method == "exhaustive":
        d = min_lee_weight(code)
        return PerfectnessResult(d is not None and d >= 4, "exhaustive", True, d)
    if method != "structural":
        raise ValueError(f"unknown method {method!r}")
    if code.check is None:
        raise Z4Error("structural perfectness needs a check matrix")
    ok = structural_distance_check(code.check)
    if not ok:
        # a sign-scrambled check matrix fails the literal test; canonicalization
        # is the sign/permutation-invariant version of the same argument
        from .structure import canonicalize
        from .errors import NotPerfectError, MalformedCheckMatrixError

        try:
            canonicalize(code.check)
            ok = True
        except (NotPerfectError, MalformedCheckMatrixError):
            ok = False
    return PerfectnessResult(ok, "structural", True, None)


def binary_image(code: QuaternaryCode) -> Iterator[BinaryWord]:
    for c in enumerate_codewords(code):
        yield gray(c)


def halve_subcode(code: QuaternaryCode, which: Which) -> QuaternaryCode:
    """Words of ``code`` vanishing off the ``which`` coordinates, restricted
    to them; computed from the column split of the check matrix."""
    if code.n % 2:
        raise ValueError(f"halving needs even length, got {code.n}")
    if code.check is None:
        raise Z4Error("halving needs a check matrix")
    c = code.check
    half = CheckMatrix(column_split(c.matrix, which), c.full_rows, c.half_rows)
    return code_from_check(half)


def dual_code(code: QuaternaryCode) -> QuaternaryCode:
    """Code generated by the check rows; its check matrix is ``code``'s generator."""
    if code.check is None:
        raise Z4Error("the dual needs a check matrix")
    g = generator_from_rows(code.check.matrix, code.n)
    own = code.generator
    check = CheckMatrix(own.matrix, own.k1, own.k2) if own.matrix.shape[0] else None
    if check is None:
        check = CheckMatrix(np.zeros((1, code.n), np.int64), 0, 1)
    return QuaternaryCode(code.n, g, check)


# --------------------------------------------------------------------------
# set views used by tests and the CLI


def codeword_set(code: QuaternaryCode) -> set[Z4Word]:
    return set(enumerate_codewords(code))


def codeword_keys(code: QuaternaryCode) -> np.ndarray:
    """Sorted packed keys ``lo | hi << n`` of every codeword (n <= 32)."""
    if code.n > 32:
        raise ResourceCapError("packed keys need n <= 32")
    _check_cap(code, "codeword_keys")
    parts = [lo | (hi << _U(code.n)) for lo, hi in iter_codeword_blocks(code)]
    return np.sort(np.concatenate(parts))


def halve_by_definition(code: QuaternaryCode, which: Which) -> np.ndarray:
    """``even``/``odd`` subcode straight from its definition, as sorted packed
    keys over the half length: enumerate, keep words that vanish on the
    complementary coordinates, restrict."""
    n = code.n
    if n % 2:
        raise ValueError("halving needs even length")
    if n > 64:
        raise ResourceCapError("halve_by_definition supports n <= 64")
    _check_cap(code, "halve_by_definition")
    keep = 0 if which == "even" else 1
    other = sum(1 << i for i in range(1 - keep, n, 2))
    h = n // 2
    found = []
    for lo, hi in iter_codeword_blocks(code):
        sel = ((lo | hi) & _U(other)) == 0
        if not sel.any():
            continue
        sl, sh = lo[sel], hi[sel]
        cl = np.zeros_like(sl)
        ch = np.zeros_like(sh)
        for j in range(h):
            src = _U(2 * j + keep)
            cl |= ((sl >> src) & _U(1)) << _U(j)
            ch |= ((sh >> src) & _U(1)) << _U(j)
        found.append(cl | (ch << _U(h)))
    return np.sort(np.concatenate(found)) if found else np.zeros(0, _U)


def binary_halve(y: BinaryWord, n: int, which: Which) -> BinaryWord:
    """Binary even/odd aligned with the Gray layout: for each selected
    quaternary coordinate i keep binary coordinates i and i + n."""
    keep = range(0, n, 2) if which == "even" else range(1, n, 2)
    beta = [y[i] for i in keep]
    gamma = [y[i + n] for i in keep]
    return BinaryWord(beta + gamma)


def words_orthogonal(a: Z4Word, b: Z4Word) -> bool:
    if len(a) != len(b):
        raise LengthMismatchError("lengths differ")
    return a.dot(b) == 0


def as_generator_rows(code: QuaternaryCode) -> np.ndarray:
    return as_z4(code.generator.matrix)
