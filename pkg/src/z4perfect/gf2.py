"""GF(2) elimination on bit-packed rows.

Two representations are used: Python ints as bitsets (coordinate ``i`` is
bit ``i``) for incremental work, and ``uint64`` arrays of shape
``(rows, words)`` for batch elimination.
"""

from __future__ import annotations

from collections.abc import Iterable

import numpy as np

WORD = 64


def n_words(nbits: int) -> int:
    return max(1, (nbits + WORD - 1) // WORD)


def pack_ints(values: Iterable[int], nbits: int) -> np.ndarray:
    w = n_words(nbits)
    nbytes = 8 * w
    buf = b"".join(int(v).to_bytes(nbytes, "little") for v in values)
    return np.frombuffer(buf, dtype="<u8").reshape(-1, w).astype(np.uint64)


def unpack_ints(rows: np.ndarray) -> list[int]:
    rows = np.ascontiguousarray(rows, dtype="<u8")
    return [int.from_bytes(r.tobytes(), "little") for r in rows]


def rref(rows: np.ndarray, nbits: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    m = np.array(rows, dtype=np.uint64, copy=True)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    m = m[np.any(m != 0, axis=1)]
    if m.shape[0] > 1:
        m = np.unique(m, axis=0)
    r = 0
    pivots: list[int] = []
    one = np.uint64(1)
    for c in range(nbits):
        if r == m.shape[0]:
            break
        w, b = divmod(c, WORD)
        bit = (m[:, w] >> np.uint64(b)) & one
        cand = np.flatnonzero(bit[r:])
        if cand.size == 0:
            continue
        p = r + int(cand[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
            bit[[r, p]] = bit[[p, r]]
        hit = bit.astype(bool)
        hit[r] = False
        if hit.any():
            m[hit] ^= m[r]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: np.ndarray, nbits: int) -> int:
    return len(rref(rows, nbits)[1])


def nullspace(rows: np.ndarray, nbits: int) -> np.ndarray:
    """Basis of ``{y : <row, y> = 0 for every row}`` as packed rows."""
    r, pivots = rref(rows, nbits) if len(rows) else (np.zeros((0, n_words(nbits)), np.uint64), [])
    basis_ints = unpack_ints(r)
    pivot_set = set(pivots)
    out = []
    for f in range(nbits):
        if f in pivot_set:
            continue
        v = 1 << f
        for row, p in zip(basis_ints, pivots):
            if (row >> f) & 1:
                v |= 1 << p
        out.append(v)
    return pack_ints(out, nbits) if out else np.zeros((0, n_words(nbits)), np.uint64)


class EchelonBasis:
    """Incrementally grown echelon basis over Python-int bitsets."""

    def __init__(self):
        self._by_pivot: dict[int, int] = {}

    def reduce(self, v: int) -> int:
        while v:
            p = v.bit_length() - 1
            b = self._by_pivot.get(p)
            if b is None:
                return v
            v ^= b
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        v = self.reduce(v)
        if not v:
            return False
        self._by_pivot[v.bit_length() - 1] = v
        return True

    def merge(self, other: EchelonBasis) -> None:
        for v in other.vectors():
            self.add(v)

    def vectors(self) -> list[int]:
        return list(self._by_pivot.values())

    def __len__(self) -> int:
        return len(self._by_pivot)


class BlockReducer:
    """Rank of a stream of <=64-bit words fed as ``uint64`` blocks.

    The basis is kept in reduced echelon form, so reduction is linear in the
    pivot bits of the input and is applied with one 256-entry lookup table
    per byte.
    """

    def __init__(self, nbits: int):
        if nbits > WORD:
            raise ValueError("BlockReducer handles at most 64-bit words")
        self.nbits = nbits
        self.basis: dict[int, int] = {}  # pivot bit -> vector, fully reduced
        self._rebuild()

    def _rebuild(self) -> None:
        nbytes = max(1, (self.nbits + 7) // 8)
        tables = np.zeros((nbytes, 256), dtype=np.uint64)
        for k in range(nbytes):
            for p, v in self.basis.items():
                if p // 8 == k:
                    bit = 1 << (p % 8)
                    idx = np.flatnonzero(np.arange(256) & bit)
                    tables[k, idx] ^= np.uint64(v)
        self._tables = tables

    def reduce_block(self, words: np.ndarray) -> np.ndarray:
        out = words.copy()
        for k in range(self._tables.shape[0]):
            byte = (words >> np.uint64(8 * k)) & np.uint64(0xFF)
            out ^= self._tables[k][byte]
        return out

    def _insert(self, v: int) -> None:
        for p, b in self.basis.items():
            if (v >> p) & 1:
                v ^= b
        if not v:
            return
        p = v.bit_length() - 1
        for q in list(self.basis):
            if (self.basis[q] >> p) & 1:
                self.basis[q] ^= v
        self.basis[p] = v

    def feed(self, words: np.ndarray) -> None:
        words = np.asarray(words, dtype=np.uint64)
        while words.size:
            red = self.reduce_block(words)
            nz = np.flatnonzero(red)
            if nz.size == 0:
                return
            self._insert(int(red[nz[0]]))
            self._rebuild()
            words = words[nz[0] + 1 :]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[int]:
        return list(self.basis.values())
