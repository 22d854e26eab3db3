"""Certified search engine for right-angled necklace disc bundles.

Thin wrapper over the compiled extension.  All structured results are plain
dicts and lists produced by the same serialization the command-line tool uses.
"""

from ._core import (
    DomainError,
    UncertifiedError,
    check,
    search,
    solve,
    trace,
    verify,
)

__all__ = [
    "DomainError",
    "UncertifiedError",
    "check",
    "search",
    "solve",
    "trace",
    "verify",
]
