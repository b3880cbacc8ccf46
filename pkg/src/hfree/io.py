"""Text formats: edge lists, colored edge lists, terminal sidecars and DOT export.

Edge list::

    n m
    u v        (m lines, 0-based, u < v on output)

A colored graph appends a ``colors`` line followed by ``n`` lines ``v c``.
Blank lines and ``#`` comments are ignored on input.
"""

from __future__ import annotations

from pathlib import Path
from typing import Mapping

from .graph import Coloring, Graph, GraphError


class FormatError(ValueError):
    """Malformed input file."""


def _tokens(text: str) -> list[list[str]]:
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _int(tok: str, where: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"{where}: expected integer, got {tok!r}") from None


def parse_graph(text: str, source: str = "<input>") -> tuple[Graph, Coloring | None]:
    rows = _tokens(text)
    if not rows or len(rows[0]) != 2:
        raise FormatError(f"{source}: header must be 'n m'")
    n, m = (_int(t, f"{source} header") for t in rows[0])
    if len(rows) < 1 + m:
        raise FormatError(f"{source}: expected {m} edge lines, found {len(rows) - 1}")
    edges = []
    for i, row in enumerate(rows[1 : 1 + m], start=1):
        if len(row) != 2:
            raise FormatError(f"{source}: edge line {i} must have two fields")
        edges.append((_int(row[0], f"{source} edge {i}"), _int(row[1], f"{source} edge {i}")))
    try:
        g = Graph(n, edges)
    except GraphError as e:
        raise FormatError(f"{source}: {e}") from None
    if g.m != m:
        raise FormatError(f"{source}: header says {m} edges, {g.m} distinct edges read")
    rest = rows[1 + m :]
    if not rest:
        return g, None
    if rest[0] != ["colors"]:
        raise FormatError(f"{source}: unexpected trailing content {' '.join(rest[0])!r}")
    assign = [-1] * n
    for row in rest[1:]:
        if len(row) != 2:
            raise FormatError(f"{source}: color line must be 'v c'")
        v, c = _int(row[0], source), _int(row[1], source)
        if not 0 <= v < n:
            raise FormatError(f"{source}: color for invalid vertex {v}")
        assign[v] = c
    if -1 in assign or any(c < 0 for c in assign):
        raise FormatError(f"{source}: coloring is not total")
    palette = max(3, max(assign, default=0) + 1)
    return g, Coloring(palette, assign)


def format_graph(g: Graph, coloring: Coloring | None = None) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    if coloring is not None:
        lines.append("colors")
        lines.extend(f"{v} {c}" for v, c in enumerate(coloring.assign))
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> tuple[Graph, Coloring | None]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as e:
        raise FormatError(f"{path}: {e.strerror}") from None
    return parse_graph(text, str(path))


def write_graph(path: str | Path, g: Graph, coloring: Coloring | None = None) -> None:
    Path(path).write_text(format_graph(g, coloring))


def parse_terminals(text: str, source: str = "<terminals>") -> dict[str, int]:
    out: dict[str, int] = {}
    for row in _tokens(text):
        if len(row) != 2:
            raise FormatError(f"{source}: terminal line must be 'name vertex_id'")
        if row[0] in out:
            raise FormatError(f"{source}: duplicate terminal {row[0]!r}")
        out[row[0]] = _int(row[1], source)
    return out


def format_terminals(terminals: Mapping[str, int]) -> str:
    return "".join(f"{name} {v}\n" for name, v in terminals.items())


_DOT_COLORS = ("red", "blue", "green", "orange", "purple", "cyan", "gold", "gray")


def format_dot(
    g: Graph,
    coloring: Coloring | None = None,
    terminals: Mapping[str, int] | None = None,
    name: str = "G",
) -> str:
    labels = {v: k for k, v in (terminals or {}).items()}
    out = [f"graph {name} {{"]
    for v in range(g.n):
        attrs = []
        if v in labels:
            attrs.append(f'label="{labels[v]}"')
        if coloring is not None:
            c = coloring[v]
            attrs.append(f'color="{_DOT_COLORS[c % len(_DOT_COLORS)]}"')
            attrs.append(f"colorclass={c}")
        out.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    out.extend(f"  {u} -- {v};" for u, v in g.edges())
    out.append("}")
    return "\n".join(out) + "\n"
