"""Binary-side invariants of quaternary codes: rank, dual space, classification.

Two rank strategies are provided.  ``stream`` feeds the Gray image of every
codeword through an incremental GF(2) basis.  ``shortcut`` uses the fact that
``gray(x + y) = gray(x) ^ gray(y) ^ gray(2·(x⊙y))``: the span of the image is
spanned by ``gray(g)``, ``gray(2g)`` over generator rows ``g`` together with
``gray(2·(g_i⊙g_j))`` over pairs of order-4 rows.  The shortcut is only
trusted above binary length 32 after :func:`validate_shortcut` has checked it
against streaming on every family member up to that length.
"""

from __future__ import annotations

import functools
import json
from collections.abc import Iterable
from dataclasses import asdict, dataclass, field

import numpy as np

from . import gf2
from .codes import (
    QuaternaryCode,
    _check_cap,
    _row_planes,
    binary_image,
    family_code,
    gray_block,
    iter_codeword_blocks,
)
from .errors import LengthMismatchError, ResourceCapError, Z4Error, enum_cap
from .z4core import BinaryWord

STREAM = "stream"
SHORTCUT = "shortcut"
GATE_MAX_BINARY_LENGTH = 32


def gf2_rank(words: Iterable[BinaryWord]) -> int:
    """Dimension of the GF(2) span of a stream of equal-length words."""
    basis = gf2.EchelonBasis()
    m = None
    for w in words:
        if m is None:
            m = len(w)
        elif len(w) != m:
            raise LengthMismatchError(f"word of length {len(w)} in a stream of length {m}")
        basis.add(w.value)
    return len(basis)


# --------------------------------------------------------------------------
# spanning sets of the binary image


def _stream_span(code: QuaternaryCode) -> list[int]:
    _check_cap(code, "streaming rank")
    n = code.n
    if 2 * n <= 64:
        red = gf2.BlockReducer(2 * n)
        for lo, hi in iter_codeword_blocks(code):
            red.feed(gray_block(lo, hi, n))
        return red.vectors()
    basis = gf2.EchelonBasis()
    for y in binary_image(code):
        basis.add(y.value)
    return basis.vectors()


def _gray_int(lo: int, hi: int, n: int) -> int:
    return hi | ((hi ^ lo) << n)


def shortcut_spanning_set(code: QuaternaryCode) -> list[int]:
    """Gray-image spanning set built from generator rows and pairwise defects."""
    n = code.n
    g = code.generator
    out: list[int] = []
    order4 = [_row_planes(r) for r in g.order4_rows]
    for lo, hi in order4:
        out.append(_gray_int(lo, hi, n))
        out.append(_gray_int(0, lo, n))  # gray(2g)
    for r in g.order2_rows:
        lo, hi = _row_planes(r)
        out.append(_gray_int(lo, hi, n))
    # gray(2·(g_i⊙g_j)) only depends on the rows mod 2, i.e. the lo planes
    if len(order4) > 1:
        lows = gf2.pack_ints([lo for lo, _ in order4], n)
        seen = []
        for i in range(len(order4) - 1):
            prod = lows[i] & lows[i + 1 :]
            prod = prod[np.any(prod != 0, axis=1)]
            if prod.size:
                seen.append(np.unique(prod, axis=0))
        if seen:
            prods = np.unique(np.concatenate(seen), axis=0)
            for x in gf2.unpack_ints(prods):
                out.append(x | (x << n))
    return [v for v in out if v]


def _span_basis(code: QuaternaryCode, method: str) -> tuple[np.ndarray, int]:
    """Packed RREF basis of the image span and the binary length."""
    nbits = 2 * code.n
    if method == STREAM:
        vecs = _stream_span(code)
    elif method == SHORTCUT:
        if nbits > GATE_MAX_BINARY_LENGTH:
            require_validated_shortcut()
        vecs = shortcut_spanning_set(code)
    else:
        raise ValueError(f"unknown rank method {method!r}")
    if not vecs:
        return np.zeros((0, gf2.n_words(nbits)), np.uint64), nbits
    basis, _ = gf2.rref(gf2.pack_ints(vecs, nbits), nbits)
    return basis, nbits


def resolve_method(code: QuaternaryCode, method: str = "auto") -> str:
    if method != "auto":
        return method
    if code.cardinality <= enum_cap() and 2 * code.n <= 64:
        return STREAM
    return SHORTCUT


def code_rank(code: QuaternaryCode, method: str = "auto") -> int:
    """GF(2) rank of the Gray image of ``code``."""
    return rank_with_method(code, method)[0]


def rank_with_method(code: QuaternaryCode, method: str = "auto") -> tuple[int, str]:
    method = resolve_method(code, method)
    basis, _ = _span_basis(code, method)
    return basis.shape[0], method


# --------------------------------------------------------------------------
# the validation gate


@functools.cache
def validate_shortcut(max_binary_length: int = GATE_MAX_BINARY_LENGTH) -> dict[tuple[int, int], int]:
    """Compare both rank strategies on every family member up to the given
    binary length; return the agreed ranks or raise on any disagreement."""
    agreed = {}
    k = 1
    while 2**k <= max_binary_length:
        for r1 in range((k - 1) // 2 + 1):
            r2 = k - 1 - 2 * r1
            code = family_code(r1, r2)
            a = code_rank(code, STREAM)
            b = len(gf2.rref(gf2.pack_ints(shortcut_spanning_set(code), 2 * code.n), 2 * code.n)[1])
            if a != b:
                raise Z4Error(f"rank shortcut disagrees on C^{{{r1},{r2}}}: stream {a}, shortcut {b}")
            agreed[(r1, r2)] = a
        k += 1
    return agreed


def require_validated_shortcut() -> None:
    validate_shortcut(GATE_MAX_BINARY_LENGTH)


# --------------------------------------------------------------------------
# dual space


def binary_dual_basis(code: QuaternaryCode, method: str = STREAM) -> list[BinaryWord]:
    """GF(2) basis of the words orthogonal to the whole Gray image."""
    method = resolve_method(code, method)
    basis, nbits = _span_basis(code, method)
    null = gf2.nullspace(basis, nbits)
    return [BinaryWord.from_int(v, nbits) for v in gf2.unpack_ints(null)]


def repetitive_dual_dimension(code: QuaternaryCode, method: str = STREAM) -> int:
    """Dimension of the repetitive words orthogonal to the Gray image."""
    dual = binary_dual_basis(code, method)
    return _repetitive_subspace_dim([d.value for d in dual], code.n)


def _repetitive_subspace_dim(dual: list[int], half: int) -> int:
    # a combination of dual vectors is repetitive iff its halves' xor vanishes
    mask = (1 << half) - 1
    diffs = [(v & mask) ^ (v >> half) for v in dual]
    basis = gf2.EchelonBasis()
    for d in diffs:
        basis.add(d)
    return len(dual) - len(basis)


def is_linear_image(code: QuaternaryCode, method: str = STREAM) -> bool:
    """True iff the Gray image is closed under xor (rank == log2 |C|)."""
    return code_rank(code, method) == code.log2_size


def common_zero_coordinate(words: Iterable[BinaryWord]) -> int | None:
    """Lowest coordinate where every word is zero, or None."""
    acc = 0
    m = None
    for w in words:
        if m is None:
            m = len(w)
        elif len(w) != m:
            raise LengthMismatchError(f"word of length {len(w)} in a stream of length {m}")
        acc |= w.value
    if m is None:
        return None
    for i in range(m):
        if not (acc >> i) & 1:
            return i
    return None


# --------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassEntry:
    r1: int
    r2: int
    length: int
    rank: int
    rep_dual_dim: int
    linear: bool


@dataclass(frozen=True)
class ClassificationReport:
    k: int
    count: int
    entries: list[ClassEntry] = field(default_factory=list)
    methods: dict[str, str] = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"k": self.k, "count": self.count, "entries": [asdict(e) for e in self.entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def family_parameters(k: int) -> list[tuple[int, int]]:
    """All (r1, r2) with 2 r1 + r2 + 1 == k."""
    return [(r1, k - 1 - 2 * r1) for r1 in range((k - 1) // 2 + 1)]


def classify(k: int, method: str = "auto") -> ClassificationReport:
    """Invariants of every Z4-linear extended perfect code of length 2^k."""
    if k < 4:
        raise Z4Error(
            f"classification covers binary length 2^k >= 16 (k >= 4), got k={k}; "
            "the rank separation argument does not apply below that"
        )
    entries = []
    methods = {}
    for r1, r2 in family_parameters(k):
        code = family_code(r1, r2)
        m = resolve_method(code, method)
        basis, nbits = _span_basis(code, m)
        rank = basis.shape[0]
        null = gf2.unpack_ints(gf2.nullspace(basis, nbits))
        entries.append(
            ClassEntry(
                r1=r1,
                r2=r2,
                length=nbits,
                rank=rank,
                rep_dual_dim=_repetitive_subspace_dim(null, code.n),
                linear=rank == code.log2_size,
            )
        )
        methods[f"{r1},{r2}"] = "exhaustive" if m == STREAM else "shortcut-validated"
    return ClassificationReport(k=k, count=len(entries), entries=entries, methods=methods)


__all__ = [
    "ClassEntry",
    "ClassificationReport",
    "ResourceCapError",
    "binary_dual_basis",
    "classify",
    "code_rank",
    "common_zero_coordinate",
    "family_parameters",
    "gf2_rank",
    "is_linear_image",
    "rank_with_method",
    "repetitive_dual_dimension",
    "shortcut_spanning_set",
    "validate_shortcut",
]
