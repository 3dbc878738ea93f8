import itertools

import numpy as np
import pytest

# Gray digit table, written out independently of the package.
GRAY_DIGITS = {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}
LEE = {0: 0, 1: 1, 2: 2, 3: 1}


def gray_oracle(digits):
    """Gray image as a list of bits: all betas, then all gammas."""
    digits = list(digits)
    return [GRAY_DIGITS[d][0] for d in digits] + [GRAY_DIGITS[d][1] for d in digits]


def brute_kernel(a):
    """Every c in Z4^n with a @ c == 0 mod 4 (n <= 8)."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[1]
    allw = np.array(list(itertools.product(range(4), repeat=n)), dtype=np.int64)
    ok = ~np.any((allw @ a.T) % 4, axis=1)
    return {tuple(int(x) for x in row) for row in allw[ok]}


def rank_oracle(vectors):
    """GF(2) rank of a list of 0/1 lists by textbook elimination."""
    rows = [list(v) for v in vectors]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                rows[i] = [x ^ y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# acceptance reporting: one PASS/FAIL line per criterion in the summary

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    def record(key: str, ok: bool, detail: str = ""):
        _CRITERIA[key] = (bool(ok), detail)
        assert ok, f"{key}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split("-")[1])):
        ok, detail = _CRITERIA[key]
        terminalreporter.write_line(f"{key:<6} {'PASS' if ok else 'FAIL'}  {detail}")
