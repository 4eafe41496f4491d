"""Line tokenizer shared by the model file parsers."""

from __future__ import annotations

from typing import Iterator

from .errors import ParseError


def token_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    """Yield ``(line number, tokens)`` for each non-blank line, dropping ``#`` comments."""
    for no, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            yield no, toks


def ints(toks: list[str], line: int) -> list[int]:
    try:
        return [int(x) for x in toks]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(toks)!r}", line) from None


def expect(toks: list[str], n: int, line: int, form: str) -> None:
    if len(toks) != n:
        raise ParseError(f"expected `{form}`", line)
