"""Core data model: simple undirected graphs, colorings, patterns and embeddings.

Vertices are dense 0-based integers.  Every ``Graph`` keeps both a sorted
adjacency tuple (deterministic iteration) and a per-vertex neighbor bitset
(a Python ``int``) used by the search routines for fast set algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

MAX_VERTICES = 2**31 - 1


class GraphError(ValueError):
    """Raised for malformed graphs, colorings or patterns."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    __slots__ = ("n", "adj", "bits", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0 or n > MAX_VERTICES:
            raise GraphError(f"vertex count out of range: {n}")
        bits = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside 0..{n - 1}")
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        self.n = n
        self.bits = tuple(bits)
        self.adj = tuple(tuple(iter_bits(b)) for b in bits)
        self.m = sum(len(a) for a in self.adj) // 2

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> Graph:
        g = cls.__new__(cls)
        g.n = len(bits)
        g.bits = tuple(bits)
        g.adj = tuple(tuple(iter_bits(b)) for b in bits)
        g.m = sum(len(a) for a in g.adj) // 2
        return g

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.bits[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def non_edges(self) -> list[tuple[int, int]]:
        """Non-adjacent pairs ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if not self.bits[u] >> v & 1
        ]

    def remove_edge(self, u: int, v: int) -> Graph:
        if not self.has_edge(u, v):
            raise GraphError(f"no edge ({u}, {v}) to remove")
        bits = list(self.bits)
        bits[u] &= ~(1 << v)
        bits[v] &= ~(1 << u)
        return Graph.from_bits(bits)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        return Graph(self.n, list(self.edges()) + list(edges))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.bits == other.bits

    def __hash__(self) -> int:
        return hash(self.bits)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Coloring:
    """Total vertex coloring with colors ``0..palette-1``."""

    palette: int
    assign: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.palette < 1:
            raise GraphError(f"palette must be >= 1, got {self.palette}")
        object.__setattr__(self, "assign", tuple(self.assign))
        for v, c in enumerate(self.assign):
            if not 0 <= c < self.palette:
                raise GraphError(f"vertex {v} has color {c} outside palette {self.palette}")

    def __len__(self) -> int:
        return len(self.assign)

    def __getitem__(self, v: int) -> int:
        return self.assign[v]

    def is_proper(self, g: Graph) -> bool:
        if len(self.assign) != g.n:
            return False
        a = self.assign
        return all(a[u] != a[v] for u, v in g.edges())

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.palette)]
        for v, c in enumerate(self.assign):
            out[c].append(v)
        return out


@dataclass(frozen=True)
class Pattern:
    """A forbidden pattern, optionally with a fixed 3-coloring and terminal labels."""

    graph: Graph
    fixed_coloring: Coloring | None = None
    terminals: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        c = self.fixed_coloring
        if c is not None:
            if c.palette != 3:
                raise GraphError(f"pattern coloring must use palette 3, got {c.palette}")
            if not c.is_proper(self.graph):
                raise GraphError("pattern coloring is not proper")
        seen: set[int] = set()
        for name, v in self.terminals.items():
            if not 0 <= v < self.graph.n:
                raise GraphError(f"terminal {name!r} maps to invalid vertex {v}")
            if v in seen:
                raise GraphError(f"terminal {name!r} reuses vertex {v}")
            seen.add(v)

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True)
class Embedding:
    """Injective map pattern-vertex -> host-vertex; ``mode`` is 'subgraph' or 'induced'."""

    map: tuple[int, ...]
    mode: str = "subgraph"

    def is_valid(self, pattern: Graph, host: Graph) -> bool:
        phi = self.map
        if len(phi) != pattern.n or len(set(phi)) != len(phi):
            return False
        for x in range(pattern.n):
            for y in range(x + 1, pattern.n):
                e_p = pattern.has_edge(x, y)
                e_h = host.has_edge(phi[x], phi[y])
                if e_p and not e_h:
                    return False
                if self.mode == "induced" and e_h and not e_p:
                    return False
        return True


def disjoint_union(*graphs: Graph) -> tuple[Graph, list[int]]:
    """Disjoint union; also returns the id offset of each operand."""
    offsets = []
    edges = []
    total = 0
    for g in graphs:
        offsets.append(total)
        edges.extend((u + total, v + total) for u, v in g.edges())
        total += g.n
    return Graph(total, edges), offsets
