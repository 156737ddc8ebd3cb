"""Errors raised while loading catalog and request documents."""

from __future__ import annotations


class ParseError(Exception):
    """The document is not well-formed (bad JSON, wrong top-level shape)."""


class ValidationError(Exception):
    """One or more schema violations; every issue carries its path."""

    def __init__(self, issues: list[tuple[str, str]]):
        self.issues = list(issues)
        super().__init__("\n".join(f"{path}: {message}" for path, message in self.issues))
