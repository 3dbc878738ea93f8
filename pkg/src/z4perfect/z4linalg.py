"""Matrices over Z4: the A^{r1,r2} family, Howell form, kernels, column splits.

Matrices are plain ``numpy`` arrays with entries in {0,1,2,3}.  The wrappers
:class:`CheckMatrix` and :class:`GeneratorMatrix` record how the rows split
into order-4 rows and rows that lie in {0,2}^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Literal

import numpy as np

from .errors import DEFAULT_COLUMN_CAP, LengthMismatchError, ResourceCapError
from .z4core import Z4Word

Which = Literal["even", "odd"]


def as_z4(m) -> np.ndarray:
    """Copy ``m`` into a 2-D int64 array reduced mod 4."""
    a = np.array(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise ValueError("a Z4 matrix must be two-dimensional")
    return a % 4


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.uint8)
    a.setflags(write=False)
    return a


def _trailing_half_rows(m: np.ndarray) -> int:
    count = 0
    for row in m[::-1]:
        if np.all(row % 2 == 0):
            count += 1
        else:
            break
    return count


@dataclass(frozen=True, eq=False)
class CheckMatrix:
    """Check matrix ``[A1; 2A2]``; the last ``half_rows`` rows lie in {0,2}^n."""

    matrix: np.ndarray
    full_rows: int
    half_rows: int

    def __post_init__(self):
        m = _frozen(as_z4(self.matrix))
        object.__setattr__(self, "matrix", m)
        if self.full_rows + self.half_rows != m.shape[0]:
            raise ValueError("full_rows + half_rows must equal the row count")
        if self.half_rows and np.any(m[m.shape[0] - self.half_rows :] % 2):
            raise ValueError("half rows must have every entry in {0,2}")

    @classmethod
    def from_matrix(cls, m) -> CheckMatrix:
        """Classify the maximal trailing {0,2} block as the half rows."""
        a = as_z4(m)
        h = _trailing_half_rows(a)
        return cls(a, a.shape[0] - h, h)

    @property
    def n(self) -> int:
        return self.matrix.shape[1]

    @property
    def rows(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CheckMatrix):
            return NotImplemented
        return (
            self.full_rows == other.full_rows
            and self.half_rows == other.half_rows
            and np.array_equal(self.matrix, other.matrix)
        )

    __hash__ = None

    def to_text(self) -> str:
        return format_matrix(self.matrix)


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """Generator matrix ``[G1; 2G2]`` with module-independent rows.

    The last ``k2`` rows are stored already doubled (entries in {0,2}).
    """

    matrix: np.ndarray
    k1: int
    k2: int
    n: int

    def __post_init__(self):
        m = as_z4(self.matrix) if np.size(self.matrix) else np.zeros((0, self.n), np.int64)
        m = _frozen(m)
        object.__setattr__(self, "matrix", m)
        if m.shape[1] != self.n:
            raise ValueError("column count does not match n")
        if self.k1 + self.k2 != m.shape[0]:
            raise ValueError("k1 + k2 must equal the row count")
        if self.k2 and np.any(m[self.k1 :] % 2):
            raise ValueError("order-2 rows must have every entry in {0,2}")

    @property
    def order4_rows(self) -> np.ndarray:
        return self.matrix[: self.k1]

    @property
    def order2_rows(self) -> np.ndarray:
        return self.matrix[self.k1 :]

    @property
    def log2_size(self) -> int:
        return 2 * self.k1 + self.k2

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeneratorMatrix):
            return NotImplemented
        return (self.k1, self.k2, self.n) == (other.k1, other.k2, other.n) and np.array_equal(
            self.matrix, other.matrix
        )

    __hash__ = None


# --------------------------------------------------------------------------
# the family


def family_length(r1: int, r2: int) -> int:
    return 4**r1 * 2**r2


def build_check_matrix(r1: int, r2: int, column_cap: int = DEFAULT_COLUMN_CAP) -> CheckMatrix:
    """A^{r1,r2}: every column (1, x_1..x_r1, y_1..y_r2) with x in Z4 and
    y in {0,2}, sorted lexicographically with the top row most significant."""
    if r1 < 0 or r2 < 0:
        raise ValueError("r1 and r2 must be nonnegative")
    n = family_length(r1, r2)
    if n > column_cap:
        raise ResourceCapError(f"A^{{{r1},{r2}}} has {n} columns, above the cap {column_cap}")
    idx = np.arange(n, dtype=np.int64)
    rows = [np.ones(n, dtype=np.int64)]
    for i in range(r1):
        stride = 4 ** (r1 - 1 - i) * 2**r2
        rows.append((idx // stride) % 4)
    for j in range(r2):
        stride = 2 ** (r2 - 1 - j)
        rows.append(2 * ((idx // stride) % 2))
    return CheckMatrix(np.vstack(rows), r1 + 1, r2)


# --------------------------------------------------------------------------
# canonical forms


def howell_form(m) -> np.ndarray:
    """Howell form of the row module of ``m`` over Z4.

    Row echelon form with pivots in {1, 2}, entries above a pivot reduced
    modulo it, and annihilator rows (``2 * row`` for pivot 2) folded in so
    that the form is unique.  Zero rows are dropped.
    """
    a = as_z4(m)
    ncols = a.shape[1] if a.ndim == 2 else 0
    rows = [r.copy() for r in a]
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] % 2 == 1), None)
        unit = pivot is not None
        if not unit:
            pivot = next((i for i in range(r, len(rows)) if rows[i][c] == 2), None)
            if pivot is None:
                continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r]
        if unit:
            if p[c] == 3:
                p[:] = (3 * p) % 4
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    rows[i] = (rows[i] - rows[i][c] * p) % 4
        else:
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    rows[i] = (rows[i] - p) % 4
            for i in range(r):
                if rows[i][c] >= 2:
                    rows[i] = (rows[i] - p) % 4
            ann = (2 * p) % 4
            if ann.any():
                rows.append(ann)
        r += 1
    out = [row for row in rows[:r] if row.any()]
    if not out:
        return np.zeros((0, ncols), dtype=np.int64)
    return np.vstack(out)


def matrices_equivalent(a, b) -> bool:
    """True iff the row modules of ``a`` and ``b`` over Z4 coincide."""
    a, b = as_z4(a), as_z4(b)
    if a.shape[1] != b.shape[1]:
        raise LengthMismatchError(f"column counts differ: {a.shape[1]} != {b.shape[1]}")
    return np.array_equal(howell_form(a), howell_form(b))


def smith_z4(m) -> tuple[np.ndarray, list[int], np.ndarray]:
    """Return ``(P, d, Q)`` with ``P @ m @ Q == diag(d)`` mod 4.

    ``P`` and ``Q`` are invertible over Z4; ``d`` lists the nonzero diagonal
    entries, all units (1) first, then 2s.
    """
    a = as_z4(m)
    rows, cols = a.shape
    p = np.eye(rows, dtype=np.int64)
    q = np.eye(cols, dtype=np.int64)
    d: list[int] = []
    t = 0
    for want_unit in (True, False):
        while t < min(rows, cols):
            sub = a[t:, t:]
            hits = np.argwhere(sub % 2 == 1) if want_unit else np.argwhere(sub == 2)
            if hits.size == 0:
                break
            i, j = hits[0] + t
            a[[t, i]] = a[[i, t]]
            p[[t, i]] = p[[i, t]]
            a[:, [t, j]] = a[:, [j, t]]
            q[:, [t, j]] = q[:, [j, t]]
            if a[t, t] == 3:
                a[t] = (3 * a[t]) % 4
                p[t] = (3 * p[t]) % 4
            piv = a[t, t]
            # piv == 2 means every remaining entry is even, so halving is exact
            f = a[:, t].copy() // piv
            f[t] = 0
            a = (a - np.outer(f, a[t])) % 4
            p = (p - np.outer(f, p[t])) % 4
            g = a[t, :].copy() // piv
            g[t] = 0
            a = (a - np.outer(a[:, t], g)) % 4
            q = (q - np.outer(q[:, t], g)) % 4
            d.append(int(piv))
            t += 1
    return p, d, q


def generator_from_rows(m, n: int | None = None) -> GeneratorMatrix:
    """Normalize any set of rows to a ``[G1; 2G2]`` basis of their row module."""
    a = as_z4(m)
    if a.size == 0:
        return GeneratorMatrix(np.zeros((0, n or 0), np.int64), 0, 0, n or 0)
    p, d, _ = smith_z4(a)
    pa = (p @ a) % 4
    k1 = d.count(1)
    k2 = d.count(2)
    return GeneratorMatrix(pa[: k1 + k2], k1, k2, a.shape[1])


def module_type(m) -> tuple[int, int]:
    """Type exponents (k1, k2) of the row module: size 4^k1 * 2^k2."""
    _, d, _ = smith_z4(m)
    return d.count(1), d.count(2)


def normalize_check(check: CheckMatrix) -> CheckMatrix:
    """Rewrite a check matrix so its rows are module-independent."""
    g = generator_from_rows(check.matrix)
    return CheckMatrix(g.matrix, g.k1, g.k2)


def kernel_generators(check: CheckMatrix | np.ndarray) -> GeneratorMatrix:
    """Generator matrix of ``{c : A c^T = 0 mod 4}``."""
    a = check.matrix if isinstance(check, CheckMatrix) else as_z4(check)
    a = as_z4(a)
    n = a.shape[1]
    p, d, q = smith_z4(a)
    rank = len(d)
    free = [q[:, i] for i in range(rank, n)]
    halves = [(2 * q[:, i]) % 4 for i, di in enumerate(d) if di == 2]
    rows = free + halves
    mat = np.vstack(rows) if rows else np.zeros((0, n), np.int64)
    return GeneratorMatrix(mat, len(free), len(halves), n)


def column_split(m, which: Which) -> np.ndarray:
    """Columns 0,2,4,... (``even``) or 1,3,5,... (``odd``) of ``m``."""
    a = m.matrix if isinstance(m, CheckMatrix) else np.asarray(m)
    if a.shape[1] % 2:
        raise ValueError(f"column split needs an even column count, got {a.shape[1]}")
    if which == "even":
        return a[:, 0::2].copy()
    if which == "odd":
        return a[:, 1::2].copy()
    raise ValueError(f"which must be 'even' or 'odd', not {which!r}")


def row_span(m) -> set[Z4Word]:
    """All Z4-linear combinations of the rows (brute force, small inputs only)."""
    a = as_z4(m)
    n = a.shape[1]
    span = {Z4Word.zeros(n)}
    for row in a:
        w = Z4Word(row)
        span = {s + k * w for s in span for k in range(4)}
    return span


# --------------------------------------------------------------------------
# text format


def format_matrix(m) -> str:
    a = np.asarray(m)
    return "\n".join("".join(str(int(x)) for x in row) for row in a) + ("\n" if a.shape[0] else "")


def parse_matrix(text: str) -> np.ndarray:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if any(ch not in "0123" for ch in line):
            raise ValueError(f"line {lineno}: expected digits 0-3, got {line!r}")
        rows.append([int(ch) for ch in line])
    if not rows:
        raise ValueError("matrix file has no rows")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("matrix rows have unequal lengths")
    return np.array(rows, dtype=np.int64)


def read_check_matrix(path: str | Path) -> CheckMatrix:
    return CheckMatrix.from_matrix(parse_matrix(Path(path).read_text()))


def write_matrix(path: str | Path, m) -> None:
    Path(path).write_text(format_matrix(m.matrix if isinstance(m, CheckMatrix) else m))
