"""Plain-text instance and solution files.

Instance file::

    # optional comments
    n m
    u_1 s_1
    ...            (n source lines)
    v_1 d_1
    ...            (m sink lines)

Solution file::

    cost C
    i j x          (1-based input indices, positive amounts)

Values are signed integers separated by single spaces, lines end with
``\\n``. Blank lines and ``#`` comments are ignored on input. The solvers use
exact integers, so file values have no size limit; the compiled route is
used only when ``D_m * (8 * max_cost + 1)`` fits in a signed 64-bit integer
and Python integers are used otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, TextIO

__all__ = [
    "ParseError",
    "RawInstance",
    "parse_instance",
    "format_instance",
    "parse_solution",
    "format_solution",
]


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class RawInstance:
    sources: list[tuple[int, int]]
    sinks: list[tuple[int, int]]


def _data_lines(text: str):
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def _ints(lineno: int, line: str, count: int) -> list[int]:
    parts = line.split()
    if len(parts) != count:
        raise ParseError(lineno, f"expected {count} integers, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ParseError(lineno, f"not an integer in {line!r}") from None


def parse_instance(text: str) -> RawInstance:
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing header line 'n m'") from None
    n, m = _ints(lineno, header, 2)
    if n < 1 or m < 1:
        raise ParseError(lineno, "n and m must be positive")
    rows = []
    last = lineno
    for lineno, line in lines:
        last = lineno
        if len(rows) == n + m:
            raise ParseError(lineno, f"more than {n + m} data lines")
        rows.append(tuple(_ints(lineno, line, 2)))
    if len(rows) < n + m:
        raise ParseError(last, f"expected {n + m} data lines, got {len(rows)}")
    return RawInstance(rows[:n], rows[n:])


def format_instance(sources: Iterable[tuple[int, int]], sinks: Iterable[tuple[int, int]],
                    comment: str | None = None) -> str:
    sources, sinks = list(sources), list(sinks)
    out = []
    if comment:
        out.append(f"# {comment}")
    out.append(f"{len(sources)} {len(sinks)}")
    out.extend(f"{x} {w}" for x, w in sources)
    out.extend(f"{x} {w}" for x, w in sinks)
    return "\n".join(out) + "\n"


def parse_solution(text: str) -> tuple[int, list[tuple[int, int, int]]]:
    """Return the claimed cost and 0-based ``(source, sink, amount)`` triples."""
    lines = _data_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError(1, "missing 'cost C' line") from None
    parts = header.split()
    if len(parts) != 2 or parts[0] != "cost":
        raise ParseError(lineno, "expected 'cost C'")
    try:
        cost = int(parts[1])
    except ValueError:
        raise ParseError(lineno, f"not an integer: {parts[1]!r}") from None
    triples = []
    for lineno, line in lines:
        i, j, x = _ints(lineno, line, 3)
        if i < 1 or j < 1:
            raise ParseError(lineno, "indices are 1-based")
        triples.append((i - 1, j - 1, x))
    return cost, triples


def format_solution(cost: int, triples: Iterable[tuple[int, int, int]] | None = None) -> str:
    out = [f"cost {cost}"]
    if triples is not None:
        out.extend(f"{i + 1} {j + 1} {x}" for i, j, x in triples)
    return "\n".join(out) + "\n"


def read_text(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()
