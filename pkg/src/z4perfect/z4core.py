"""Words over Z4 and Z2, the Lee metric and the Gray map.

A quaternary word is stored as two bitplanes: ``lo`` holds bit 0 of every
digit and ``hi`` holds bit 1, so digit ``i`` equals
``((lo >> i) & 1) + 2 * ((hi >> i) & 1)``.  In this layout the Gray map is
``beta = hi`` and ``gamma = hi ^ lo``, and the Lee weight is
``popcount(beta) + popcount(gamma)``.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence

from .errors import LengthMismatchError

LEE_WEIGHT = (0, 1, 2, 1)
# digit -> (beta, gamma)
GRAY_TABLE = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}


def _mask(n: int) -> int:
    return (1 << n) - 1


def _add_planes(l1: int, h1: int, l2: int, h2: int) -> tuple[int, int]:
    return l1 ^ l2, h1 ^ h2 ^ (l1 & l2)


class Z4Word:
    """Immutable word in Z4^n with coordinatewise mod-4 arithmetic."""

    __slots__ = ("_lo", "_hi", "_n")

    def __init__(self, digits: Iterable[int] | str):
        if isinstance(digits, str):
            digits = [int(ch) for ch in digits]
        lo = hi = 0
        n = 0
        for i, d in enumerate(digits):
            d = int(d)
            if d not in (0, 1, 2, 3):
                raise ValueError(f"digit {d!r} at position {i} is not in Z4")
            lo |= (d & 1) << i
            hi |= (d >> 1) << i
            n += 1
        self._lo, self._hi, self._n = lo, hi, n

    @classmethod
    def from_planes(cls, lo: int, hi: int, n: int) -> Z4Word:
        w = cls.__new__(cls)
        m = _mask(n)
        w._lo, w._hi, w._n = lo & m, hi & m, n
        return w

    @classmethod
    def zeros(cls, n: int) -> Z4Word:
        return cls.from_planes(0, 0, n)

    @property
    def planes(self) -> tuple[int, int]:
        return self._lo, self._hi

    @property
    def digits(self) -> tuple[int, ...]:
        lo, hi = self._lo, self._hi
        return tuple(((lo >> i) & 1) | (((hi >> i) & 1) << 1) for i in range(self._n))

    def __len__(self) -> int:
        return self._n

    def __iter__(self):
        return iter(self.digits)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self._n
        if not 0 <= i < self._n:
            raise IndexError(i)
        return ((self._lo >> i) & 1) | (((self._hi >> i) & 1) << 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Z4Word):
            return NotImplemented
        return (self._n, self._lo, self._hi) == (other._n, other._lo, other._hi)

    def __hash__(self) -> int:
        return hash((Z4Word, self._n, self._lo, self._hi))

    def _check(self, other: Z4Word) -> None:
        if self._n != other._n:
            raise LengthMismatchError(f"lengths differ: {self._n} != {other._n}")

    def __add__(self, other: Z4Word) -> Z4Word:
        self._check(other)
        lo, hi = _add_planes(self._lo, self._hi, other._lo, other._hi)
        return Z4Word.from_planes(lo, hi, self._n)

    def __neg__(self) -> Z4Word:
        # 1 <-> 3, 2 -> 2
        return Z4Word.from_planes(self._lo, self._hi ^ self._lo, self._n)

    def __sub__(self, other: Z4Word) -> Z4Word:
        return self + (-other)

    def __mul__(self, k: int) -> Z4Word:
        k %= 4
        if k == 0:
            return Z4Word.zeros(self._n)
        if k == 1:
            return self
        if k == 2:
            return Z4Word.from_planes(0, self._lo, self._n)
        return -self

    __rmul__ = __mul__

    def hadamard(self, other: Z4Word) -> Z4Word:
        """Coordinatewise product mod 4."""
        self._check(other)
        l1, h1, l2, h2 = self._lo, self._hi, other._lo, other._hi
        return Z4Word.from_planes(l1 & l2, (h1 & l2) ^ (l1 & h2), self._n)

    def dot(self, other: Z4Word) -> int:
        """Inner product mod 4."""
        return sum(self.hadamard(other).digits) % 4

    def __str__(self) -> str:
        return "".join(map(str, self.digits))

    def __repr__(self) -> str:
        return f"Z4Word('{self}')"


class BinaryWord:
    """Immutable word in E^m; bit ``i`` of ``value`` is coordinate ``i``."""

    __slots__ = ("_v", "_m")

    def __init__(self, bits: Iterable[int] | str):
        if isinstance(bits, str):
            bits = [int(ch) for ch in bits]
        v = 0
        m = 0
        for i, b in enumerate(bits):
            b = int(b)
            if b not in (0, 1):
                raise ValueError(f"bit {b!r} at position {i} is not binary")
            v |= b << i
            m += 1
        self._v, self._m = v, m

    @classmethod
    def from_int(cls, value: int, m: int) -> BinaryWord:
        w = cls.__new__(cls)
        w._v, w._m = value & _mask(m), m
        return w

    @property
    def value(self) -> int:
        return self._v

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self._v >> i) & 1 for i in range(self._m))

    def weight(self) -> int:
        return self._v.bit_count()

    def __len__(self) -> int:
        return self._m

    def __iter__(self):
        return iter(self.bits)

    def __getitem__(self, i: int) -> int:
        if i < 0:
            i += self._m
        if not 0 <= i < self._m:
            raise IndexError(i)
        return (self._v >> i) & 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return (self._m, self._v) == (other._m, other._v)

    def __hash__(self) -> int:
        return hash((BinaryWord, self._m, self._v))

    def _check(self, other: BinaryWord) -> None:
        if self._m != other._m:
            raise LengthMismatchError(f"lengths differ: {self._m} != {other._m}")

    def __xor__(self, other: BinaryWord) -> BinaryWord:
        self._check(other)
        return BinaryWord.from_int(self._v ^ other._v, self._m)

    def dot(self, other: BinaryWord) -> int:
        self._check(other)
        return (self._v & other._v).bit_count() & 1

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def __repr__(self) -> str:
        return f"BinaryWord('{self}')"


def lee_weight(w: Z4Word) -> int:
    lo, hi = w.planes
    return hi.bit_count() + (hi ^ lo).bit_count()


def lee_distance(a: Z4Word, b: Z4Word) -> int:
    return lee_weight(b - a)


def hamming_distance(a: BinaryWord, b: BinaryWord) -> int:
    return (a ^ b).weight()


def gray(w: Z4Word) -> BinaryWord:
    """Gray image: the beta block occupies 0..n-1, the gamma block n..2n-1."""
    lo, hi = w.planes
    n = len(w)
    return BinaryWord.from_int(hi | ((hi ^ lo) << n), 2 * n)


def gray_inverse(b: BinaryWord) -> Z4Word:
    m = len(b)
    if m % 2:
        raise ValueError(f"Gray preimage needs even length, got {m}")
    n = m // 2
    beta = b.value & _mask(n)
    gamma = b.value >> n
    return Z4Word.from_planes(beta ^ gamma, beta, n)


def gray_sum_defect(x: Z4Word, y: Z4Word) -> BinaryWord:
    """``gray(x + y) ^ gray(x) ^ gray(y)``; equals ``gray(2 * (x ⊙ y))``."""
    return gray(x + y) ^ gray(x) ^ gray(y)


def defect_word(x: Z4Word, y: Z4Word) -> Z4Word:
    """The {0,2}-word whose Gray image is the sum defect of ``x`` and ``y``."""
    return 2 * x.hadamard(y)


def verify_defect_identity() -> bool:
    """Brute-force the identity ``gray_sum_defect(x, y) == gray(2·(x⊙y))``
    over all 16 digit pairs.  Coordinatewise maps make this sufficient for
    every length."""
    for a in range(4):
        for b in range(4):
            x, y = Z4Word([a]), Z4Word([b])
            if gray_sum_defect(x, y) != gray(defect_word(x, y)):
                return False
    return True


def split_even_odd(w):
    """Split a word into its even-indexed and odd-indexed coordinates."""
    n = len(w)
    if n % 2:
        raise ValueError(f"even/odd split needs even length, got {n}")
    if isinstance(w, Z4Word):
        d = w.digits
        return Z4Word(d[0::2]), Z4Word(d[1::2])
    if isinstance(w, BinaryWord):
        b = w.bits
        return BinaryWord(b[0::2]), BinaryWord(b[1::2])
    raise TypeError(f"cannot split {type(w).__name__}")


def interleave(even, odd):
    """Inverse of :func:`split_even_odd`."""
    if len(even) != len(odd):
        raise LengthMismatchError("halves must have equal length")
    merged = [v for pair in zip(even, odd) for v in pair]
    return type(even)(merged)


def is_repetitive(y: BinaryWord) -> bool:
    m = len(y)
    if m % 2:
        raise ValueError(f"repetitive test needs even length, got {m}")
    h = m // 2
    return (y.value & _mask(h)) == (y.value >> h)


def parse_z4(text: str) -> Z4Word:
    text = text.strip()
    if any(ch not in "0123" for ch in text):
        raise ValueError(f"not a Z4 word: {text!r}")
    return Z4Word(text)


def parse_binary(text: str) -> BinaryWord:
    text = text.strip()
    if any(ch not in "01" for ch in text):
        raise ValueError(f"not a binary word: {text!r}")
    return BinaryWord(text)


def words_from_rows(rows: Sequence[Sequence[int]]) -> list[Z4Word]:
    return [Z4Word(r) for r in rows]
