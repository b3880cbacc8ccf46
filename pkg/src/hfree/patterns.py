"""The augmented pattern H+ and degenerate colorings."""

from __future__ import annotations

from dataclasses import dataclass

from .coloring import find_proper_coloring
from .graph import Coloring, Graph, GraphError, Pattern, iter_bits
from .search import count_triangles, list_triangles


@dataclass(frozen=True)
class AugmentedPattern:
    """H+ : ``base`` plus two degree-2 wedge vertices on every non-edge of ``base``.

    Base vertices keep their ids; ``wedge_index[(u, v)] = (x_uv, y_uv)``.
    """

    base: Pattern
    graph: Graph
    wedge_index: dict[tuple[int, int], tuple[int, int]]


def augment(h: Pattern | Graph) -> AugmentedPattern:
    if isinstance(h, Graph):
        h = Pattern(h)
    g = h.graph
    edges = g.edges()
    wedges = {}
    nxt = g.n
    for u, v in g.non_edges():
        x, y = nxt, nxt + 1
        nxt += 2
        wedges[(u, v)] = (x, y)
        edges += [(u, x), (v, x), (u, y), (v, y)]
    return AugmentedPattern(h, Graph(nxt, edges), wedges)


@dataclass(frozen=True)
class PreservationReport:
    h_colorable: bool
    hplus_colorable: bool
    h_triangles: int
    hplus_triangles: int

    @property
    def chromatic_ok(self) -> bool:
        return self.hplus_colorable or not self.h_colorable

    @property
    def triangle_ok(self) -> bool:
        return self.h_triangles == self.hplus_triangles


def verify_augment_preserves(h: Pattern | Graph, max_vertices: int = 400) -> PreservationReport:
    """Check by search that H+ keeps H's 3-colorability and triangle count."""
    aug = augment(h)
    if aug.graph.n > max_vertices:
        raise GraphError(f"H+ has {aug.graph.n} vertices, above the bound {max_vertices}")
    base = aug.base.graph
    return PreservationReport(
        h_colorable=find_proper_coloring(base, 3) is not None,
        hplus_colorable=find_proper_coloring(aug.graph, 3) is not None,
        h_triangles=count_triangles(base),
        hplus_triangles=count_triangles(aug.graph),
    )


# -- degenerate colorings -------------------------------------------------------


def _class_masks(c: Coloring) -> list[int]:
    masks = [0] * c.palette
    for v, col in enumerate(c.assign):
        masks[col] |= 1 << v
    return masks


def _check_inputs(h: Graph, c: Coloring) -> int:
    """Validate; return the vertex mask of H's triangle (0 if triangle-free)."""
    if c.palette != 3:
        raise GraphError(f"degenerate colorings use palette 3, got {c.palette}")
    if len(c) != h.n:
        raise GraphError("coloring length does not match the pattern")
    if not c.is_proper(h):
        raise GraphError("coloring is not proper")
    return _triangle_mask(h)


def _triangle_mask(h: Graph) -> int:
    tris = list_triangles(h)
    if len(tris) > 1:
        raise GraphError(f"pattern has {len(tris)} triangles; at most one is allowed")
    return sum(1 << v for v in tris[0]) if tris else 0


def _peel(bits: tuple[int, ...], color: list[int], masks: list[int], alive: int, tri: int) -> bool:
    """Greedy peel of the induced subgraph on ``alive`` (lowest-id eligible vertex first)."""
    while alive and alive != tri:
        for v in iter_bits(alive):
            nb = bits[v] & alive
            if not nb or not nb & ~masks[color[(nb & -nb).bit_length() - 1]]:
                alive ^= 1 << v
                break
        else:
            return False
    return True


def check_degenerate_coloring(h: Graph, c: Coloring) -> bool:
    """True iff every non-triangle induced subgraph has a vertex with a monochromatic
    (or empty) neighborhood under ``c``; decided by greedy peeling."""
    tri = _check_inputs(h, c)
    return _peel(h.bits, list(c.assign), _class_masks(c), (1 << h.n) - 1, tri)


def degenerate_by_definition(h: Graph, c: Coloring) -> bool:
    """Exhaustive check over all 2^n vertex subsets (reference oracle)."""
    tri = _check_inputs(h, c)
    masks = _class_masks(c)
    for s in range(1, 1 << h.n):
        if s == tri:
            continue
        ok = False
        for v in iter_bits(s):
            nb = h.bits[v] & s
            if not nb or any(nb & ~m == 0 for m in masks):
                ok = True
                break
        if not ok:
            return False
    return True


class Inconclusive(RuntimeError):
    """The search exhausted its node budget without an answer."""


def _coloring_order(h: Graph) -> list[int]:
    order: list[int] = []
    placed = 0
    remaining = set(range(h.n))
    while remaining:
        v = min(remaining, key=lambda x: (-(h.bits[x] & placed).bit_count(), -h.degree(x), x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def find_degenerate_coloring(h: Graph, node_budget: int = 10**8) -> Coloring | None:
    """Backtracking search for a degenerate proper 3-coloring.

    Colors are introduced in first-use order (value-symmetry breaking), and
    every partial coloring must leave the colored prefix peelable.  Returns
    None when the space is exhausted; raises ``Inconclusive`` past the budget.
    """
    tri = _triangle_mask(h)
    order = _coloring_order(h)
    color = [-1] * h.n
    masks = [0, 0, 0]
    nodes = 0

    def rec(i: int, prefix: int, used: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        v = order[i]
        banned = {color[w] for w in h.adj[v] if color[w] >= 0}
        for col in range(min(used + 1, 3)):
            if col in banned:
                continue
            nodes += 1
            if nodes > node_budget:
                raise Inconclusive(f"node budget {node_budget} exhausted")
            color[v] = col
            masks[col] |= 1 << v
            p = prefix | 1 << v
            if _peel(h.bits, color, masks, p, tri & p if tri & p == tri else -1):
                if rec(i + 1, p, max(used, col + 1)):
                    return True
            masks[col] ^= 1 << v
            color[v] = -1
        return False

    if rec(0, 0, 0):
        return Coloring(3, color)
    return None
