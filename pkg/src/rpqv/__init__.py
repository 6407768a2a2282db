"""Exact arithmetic for R(p,q)-deformed conformal Virasoro algebras."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ConfigError,
    DegenerateIndexError,
    DomainError,
    ExponentError,
    LexError,
    ParseError,
    PoleError,
    RpqvError,
)
from .rexpr import RFunction, builtin, custom, parse_r, to_source  # noqa: E402
from .scalar import BaseParams, family_number, pq_number  # noqa: E402

__all__ = [
    "BaseParams", "ConfigError", "DegenerateIndexError", "DomainError", "ExponentError", "LexError",
    "ParseError", "PoleError", "RFunction", "RpqvError", "builtin", "custom", "family_number",
    "parse_r", "pq_number", "to_source",
]
