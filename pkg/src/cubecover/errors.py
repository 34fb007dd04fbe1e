"""Exception hierarchy and size caps shared by every module."""

import os

DEFAULT_LCM_CAP = 2**32
DEFAULT_POINT_CAP = 2**28
POINT_CAP_ENV = "CUBECOVER_POINT_CAP"


class CubeCoverError(Exception):
    """Base class for all errors raised by this package."""


class CapacityError(CubeCoverError):
    """An instance is larger than the configured cap."""


class SearchSpaceTooLarge(CapacityError, ValueError):
    """Exhaustive search requested over more candidate terms than allowed."""


class ContractViolation(CubeCoverError):
    """An operation was called on input that breaks its precondition."""


class DegenerateError(ContractViolation):
    """A theorem check was asked about a trivial instance (e.g. lcm 1)."""


class UnsupportedCase(CubeCoverError):
    """Valid input outside the supported model (non-square-free lcm)."""


class IntegrityError(CubeCoverError):
    """A search produced a witness that fails independent certification."""


class ParseError(CubeCoverError, ValueError):
    """Malformed input text. Carries the 1-based line number."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def point_cap():
    """Point-count cap, overridable through ``CUBECOVER_POINT_CAP``."""
    raw = os.environ.get(POINT_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_POINT_CAP
    try:
        cap = int(raw, 0)
    except ValueError:
        raise ValueError(f"{POINT_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{POINT_CAP_ENV} must be positive, got {cap}")
    return cap


def check_points(count, what="instance"):
    cap = point_cap()
    if count > cap:
        raise CapacityError(
            f"{what} has {count} points, above the cap of {cap} "
            f"(set {POINT_CAP_ENV} to raise it)"
        )
