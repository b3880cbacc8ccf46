"""Exhaustive oracles: triangles, (induced / colored) subgraph copies, induced subgraphs."""

from __future__ import annotations

from typing import Sequence

from .graph import Coloring, Embedding, Graph, GraphError, Pattern, iter_bits


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically smallest triangle ``(x, y, z)``, ``x < y < z``, or None."""
    bits = g.bits
    for x in range(g.n):
        bx = bits[x] >> (x + 1) << (x + 1)
        for y in iter_bits(bx):
            common = bx & bits[y] >> (y + 1) << (y + 1)
            if common:
                return (x, y, (common & -common).bit_length() - 1)
    return None


def count_triangles(g: Graph) -> int:
    bits = g.bits
    total = 0
    for x in range(g.n):
        bx = bits[x] >> (x + 1) << (x + 1)
        for y in iter_bits(bx):
            total += (bx & bits[y] >> (y + 1) << (y + 1)).bit_count()
    return total


def list_triangles(g: Graph) -> list[tuple[int, int, int]]:
    bits = g.bits
    out = []
    for x in range(g.n):
        bx = bits[x] >> (x + 1) << (x + 1)
        for y in iter_bits(bx):
            for z in iter_bits(bx & bits[y] >> (y + 1) << (y + 1)):
                out.append((x, y, z))
    return out


def is_triangle(g: Graph, tri: Sequence[int]) -> bool:
    x, y, z = tri
    return len({x, y, z}) == 3 and g.has_edge(x, y) and g.has_edge(y, z) and g.has_edge(x, z)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, list[int]]:
    """Subgraph on ``vertices`` (kept in the given order) with every inherited edge.

    Returns the new graph and the back-map new-id -> original id.
    """
    back = list(vertices)
    pos = {v: i for i, v in enumerate(back)}
    if len(pos) != len(back):
        raise GraphError("induced_subgraph: repeated vertex")
    keep = 0
    for v in back:
        if not 0 <= v < g.n:
            raise GraphError(f"induced_subgraph: invalid vertex {v}")
        keep |= 1 << v
    bits = []
    for v in back:
        b = 0
        for w in iter_bits(g.bits[v] & keep):
            b |= 1 << pos[w]
        bits.append(b)
    return Graph.from_bits(bits), back


def _search_order(p: Graph) -> list[int]:
    """Pattern vertex order: greedily maximise already-placed neighbours."""
    order: list[int] = []
    placed = 0
    remaining = set(range(p.n))
    while remaining:
        best = min(
            remaining,
            key=lambda v: (-(p.bits[v] & placed).bit_count(), -p.degree(v), v),
        )
        order.append(best)
        placed |= 1 << best
        remaining.discard(best)
    return order


def _embed(
    pattern: Graph,
    host: Graph,
    induced: bool,
    allowed: Sequence[int] | None = None,
) -> tuple[int, ...] | None:
    if pattern.n > host.n:
        return None
    order = _search_order(pattern)
    pbits, hbits = pattern.bits, host.bits
    full = (1 << host.n) - 1
    deg_ok = []
    for v in range(pattern.n):
        d = pattern.degree(v)
        mask = 0
        for h in range(host.n):
            if host.degree(h) >= d:
                mask |= 1 << h
        if allowed is not None:
            mask &= allowed[v]
        deg_ok.append(mask)
    # earlier (already placed) neighbours / non-neighbours of each vertex in the order
    earlier_nb: list[list[int]] = []
    earlier_non: list[list[int]] = []
    for i, v in enumerate(order):
        prev = order[:i]
        earlier_nb.append([u for u in prev if pbits[v] >> u & 1])
        earlier_non.append([u for u in prev if not pbits[v] >> u & 1])

    phi = [-1] * pattern.n

    def rec(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        cand = deg_ok[v] & ~used & full
        for u in earlier_nb[i]:
            cand &= hbits[phi[u]]
            if not cand:
                return False
        if induced:
            for u in earlier_non[i]:
                cand &= ~hbits[phi[u]]
        for h in iter_bits(cand):
            phi[v] = h
            if rec(i + 1, used | 1 << h):
                return True
        phi[v] = -1
        return False

    if rec(0, 0):
        return tuple(phi)
    return None


def find_copy(pattern: Graph, host: Graph, mode: str = "subgraph") -> Embedding | None:
    """Find a copy of ``pattern`` in ``host``; ``mode`` is 'subgraph' or 'induced'."""
    if mode not in ("subgraph", "induced"):
        raise ValueError(f"unknown mode {mode!r}")
    phi = _embed(pattern, host, mode == "induced")
    return None if phi is None else Embedding(phi, mode)


def find_colored_copy(
    pattern: Pattern, host: Graph, host_coloring: Coloring
) -> Embedding | None:
    """Color-preserving injective homomorphism of a 3-colored pattern into a 3-colored host."""
    pc = pattern.fixed_coloring
    if pc is None:
        raise GraphError("pattern has no fixed coloring")
    if pc.palette != 3 or host_coloring.palette != 3:
        raise GraphError(
            f"palette mismatch: pattern {pc.palette}, host {host_coloring.palette} (need 3)"
        )
    if len(host_coloring) != host.n:
        raise GraphError("host coloring length does not match host")
    by_color = [0, 0, 0]
    for v, c in enumerate(host_coloring.assign):
        by_color[c] |= 1 << v
    allowed = [by_color[pc[v]] for v in range(pattern.n)]
    phi = _embed(pattern.graph, host, False, allowed)
    return None if phi is None else Embedding(phi, "subgraph")
