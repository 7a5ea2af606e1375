"""Enumeration caps for the brute-force oracles."""

import os

from .errors import DomainError, EnumerationCapExceeded

DEFAULT_CAP = 10**8
CAP_ENV = "ARTIFACT_ENUM_CAP"


def enumeration_cap(cap=None):
    """Resolve an explicit cap, else the environment variable, else the default."""
    if cap is None:
        raw = os.environ.get(CAP_ENV)
        if raw is None or raw.strip() == "":
            return DEFAULT_CAP
        try:
            cap = int(raw)
        except ValueError:
            raise DomainError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 0:
        raise DomainError(f"enumeration cap must be non-negative, got {cap}")
    return cap


def require_within(required, cap):
    if required > cap:
        raise EnumerationCapExceeded(required, cap)
