"""Shared exception types."""

from __future__ import annotations

from typing import Iterable


class TriplabError(Exception):
    """Base class for every error raised by triplab operations."""


class ColumnNotFoundError(TriplabError):
    def __init__(self, name: str, available: Iterable[str]):
        self.name = name
        self.available = tuple(available)
        listing = ", ".join(self.available) if self.available else "(none)"
        super().__init__(f"unknown column {name!r}; available columns: {listing}")


class ConfigError(TriplabError):
    """Invalid generator configuration; the message names the offending field."""
