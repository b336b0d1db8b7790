"""Plain-text pattern files.

Format: the order ``n`` on the first line, then ``n`` lines of ``n``
whitespace-separated tokens.  Blank lines and ``#`` comments are ignored.
Written files use the tokens ``x0, x1, ...`` in first-occurrence order.
"""

from __future__ import annotations

from pathlib import Path

from .core import MAX_ORDER, BinaryMatrix, Pattern, pattern_from_labels
from .errors import MalformedInputError


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if line.strip():
            yield lineno, raw, line


def _token_columns(raw: str, line: str):
    col = 0
    for tok in line.split():
        col = raw.index(tok, col)
        yield tok, col + 1
        col += len(tok)


def parse_token_grid(text: str) -> list[list[str]]:
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedInputError("empty pattern file", line=1)
    lineno, raw, head = lines[0]
    fields = head.split()
    if len(fields) != 1 or not fields[0].isdigit():
        raise MalformedInputError("first line must be the order n", line=lineno, column=1)
    n = int(fields[0])
    if not 1 <= n <= MAX_ORDER:
        raise MalformedInputError(f"order must be in 1..{MAX_ORDER}", line=lineno, column=1)
    body = lines[1:]
    if len(body) != n:
        where = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else lineno + 1)
        raise MalformedInputError(f"expected {n} rows, found {len(body)}", line=where)
    grid = []
    for lineno, raw, line in body:
        toks = list(_token_columns(raw, line))
        if len(toks) != n:
            col = toks[n][1] if len(toks) > n else len(raw.rstrip()) + 1
            raise MalformedInputError(
                f"expected {n} tokens, found {len(toks)}", line=lineno, column=col
            )
        grid.append([t for t, _ in toks])
    return grid


def parse_pattern(text: str) -> Pattern:
    return pattern_from_labels(parse_token_grid(text))


def read_pattern(path) -> Pattern:
    return parse_pattern(Path(path).read_text())


def format_pattern(p: Pattern) -> str:
    lines = [str(p.order)]
    lines += [" ".join(f"x{v}" for v in row) for row in p.rows()]
    return "\n".join(lines) + "\n"


def write_pattern(p: Pattern, path) -> None:
    Path(path).write_text(format_pattern(p))


def format_binary(b: BinaryMatrix) -> str:
    return "\n".join([str(b.order), str(b)]) + "\n"
