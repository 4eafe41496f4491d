"""Exceptions shared by the engines and the command line."""

from __future__ import annotations


class ConfigError(Exception):
    """Bad model, abstraction or run configuration."""


class ParseError(ConfigError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvalidSchedule(ValueError):
    pass


class ResourceLimit(Exception):
    """Raised inside an exploration when a configured cap is hit."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)
