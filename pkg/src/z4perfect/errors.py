"""Exception types shared across the package."""

from __future__ import annotations

import os

DEFAULT_ENUM_CAP = 2**27
DEFAULT_COLUMN_CAP = 2**20


class Z4Error(Exception):
    """Base class for all package errors."""


class LengthMismatchError(Z4Error, ValueError):
    pass


class ResourceCapError(Z4Error):
    """An operation would exceed the enumeration or column cap."""


class NotPerfectError(Z4Error):
    """The input does not describe a perfect quaternary code."""


class MalformedCheckMatrixError(Z4Error, ValueError):
    pass


def enum_cap() -> int:
    """Current exhaustive-enumeration cap (codewords).

    ``Z4PERFECT_ENUM_CAP`` overrides the default of 2**27.
    """
    raw = os.environ.get("Z4PERFECT_ENUM_CAP")
    if raw:
        return int(raw)
    return DEFAULT_ENUM_CAP
