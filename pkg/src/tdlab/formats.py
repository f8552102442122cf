"""Text formats: edge-list files, graph6 strings, and ranking lines.

Edge list: first line ``n m``, then m lines ``u v`` with 0-based vertex
indices. Lines whose first non-blank character is ``#`` and blank lines are
ignored. Output is normalized: u < v on every edge line, edges ascending.

graph6: the compact ASCII encoding used by the common graph tool chains
(6 bits per character, offset 63, upper triangle packed column by column,
padded with zero bits). Both the short form (n <= 62) and the 4-character
long form are supported; an optional ``>>graph6<<`` header is accepted on
input.

Ranking line: ``k: l_0 l_1 ... l_{n-1}``.
"""

from __future__ import annotations

import re

from .graphs import Graph
from .ranking import Ranking

_GRAPH6_HEADER = ">>graph6<<"


class FormatError(ValueError):
    """Parse failure with an optional 1-based line/column location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((lineno, raw))
    return out


def _int_tokens(lineno: int, line: str, expect: int) -> list[int]:
    tokens = list(re.finditer(r"\S+", line))
    if len(tokens) != expect:
        raise FormatError(
            f"expected {expect} fields, found {len(tokens)}", line=lineno
        )
    values = []
    for tok in tokens:
        try:
            values.append(int(tok.group()))
        except ValueError:
            raise FormatError(
                f"not an integer: {tok.group()!r}", line=lineno, column=tok.start() + 1
            ) from None
    return values


# ---------------------------------------------------------------------------
# Edge-list format
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> Graph:
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty input", line=1)
    lineno, header = lines[0]
    n, m = _int_tokens(lineno, header, 2)
    if n < 1 or m < 0:
        raise FormatError(f"bad header counts n={n} m={m}", line=lineno)
    if len(lines) - 1 != m:
        raise FormatError(
            f"header promises {m} edges, found {len(lines) - 1} edge lines",
            line=lineno,
        )
    edges = []
    seen = set()
    for lineno, line in lines[1:]:
        u, v = _int_tokens(lineno, line, 2)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"vertex out of range on edge ({u}, {v})", line=lineno)
        if u == v:
            raise FormatError(f"loop at vertex {u}", line=lineno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise FormatError(f"duplicate edge ({u}, {v})", line=lineno)
        seen.add(key)
        edges.append(key)
    try:
        return Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count()}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graph6 format
# ---------------------------------------------------------------------------

def format_graph6(g: Graph) -> str:
    n = g.n
    if n <= 62:
        head = chr(63 + n)
    else:
        head = "~" + chr(63 + (n >> 12 & 63)) + chr(63 + (n >> 6 & 63)) + chr(63 + (n & 63))
    bits = []
    for col in range(1, n):
        row_bits = g.adj[col]
        for row in range(col):
            bits.append(row_bits >> row & 1)
    chars = []
    for i in range(0, len(bits), 6):
        group = bits[i : i + 6]
        group.extend([0] * (6 - len(group)))
        value = 0
        for b in group:
            value = value << 1 | b
        chars.append(chr(63 + value))
    return head + "".join(chars)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(_GRAPH6_HEADER):
        s = s[len(_GRAPH6_HEADER) :].lstrip()
    if not s:
        raise FormatError("empty graph6 input", line=1)
    for col, ch in enumerate(s, 1):
        if not 63 <= ord(ch) <= 126:
            raise FormatError(
                f"invalid graph6 character {ch!r}", line=1, column=col
            )
    if s[0] == "~":
        if len(s) >= 2 and s[1] == "~":
            raise FormatError("graph6 8-byte size form exceeds the 64-vertex cap", line=1)
        if len(s) < 4:
            raise FormatError("truncated graph6 size field", line=1)
        n = (ord(s[1]) - 63) << 12 | (ord(s[2]) - 63) << 6 | (ord(s[3]) - 63)
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]
    if n == 0:
        raise FormatError("graphs must have at least one vertex", line=1)
    if n > 64:
        raise FormatError(f"graph on {n} vertices exceeds the 64-vertex cap", line=1)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise FormatError(
            f"graph6 body for n={n} needs {need} characters, found {len(body)}", line=1
        )
    bits = []
    for ch in body:
        value = ord(ch) - 63
        bits.extend(value >> shift & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise FormatError("nonzero padding bits in graph6 body", line=1)
    edges = []
    idx = 0
    for col in range(1, n):
        for row in range(col):
            if bits[idx]:
                edges.append((row, col))
            idx += 1
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Auto-detection. Valid edge lists start with a digit line; graph6 characters
# all live in the 63..126 range, so the two first-byte profiles are disjoint.
# ---------------------------------------------------------------------------

def detect_graph_format(text: str) -> str:
    lines = _data_lines(text)
    if not lines:
        raise FormatError("empty graph input", line=1)
    first = lines[0][1].lstrip()
    return "edgelist" if first[0].isdigit() else "graph6"


def parse_graph_text(text: str, fmt: str | None = None) -> Graph:
    if fmt is None:
        fmt = detect_graph_format(text)
    if fmt == "edgelist":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def format_graph_text(g: Graph, fmt: str = "edgelist") -> str:
    if fmt == "edgelist":
        return format_edge_list(g)
    if fmt == "graph6":
        return format_graph6(g) + "\n"
    raise ValueError(f"unknown graph format {fmt!r}")


# ---------------------------------------------------------------------------
# Ranking line
# ---------------------------------------------------------------------------

def parse_ranking(text: str) -> Ranking:
    lines = _data_lines(text)
    if len(lines) != 1:
        raise FormatError(f"expected one ranking line, found {len(lines)}", line=1)
    lineno, line = lines[0]
    head, sep, tail = line.partition(":")
    if not sep:
        raise FormatError("missing ':' after the color count", line=lineno)
    try:
        colors = int(head.strip())
    except ValueError:
        raise FormatError(f"bad color count {head.strip()!r}", line=lineno) from None
    labels = _int_tokens(lineno, tail, len(tail.split()))
    if not labels:
        raise FormatError("ranking has no labels", line=lineno)
    try:
        return Ranking(tuple(labels), colors)
    except ValueError as exc:
        raise FormatError(str(exc), line=lineno) from None


def format_ranking(r: Ranking) -> str:
    return f"{r.colors}: " + " ".join(str(lab) for lab in r.labels) + "\n"
