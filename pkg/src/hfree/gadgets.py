"""Coloring gadgets built from the Groetzsch graph, and the colored-to-uncolored pattern H*.

Id layout of composite gadgets: terminals / core first, then the copies of
the input pattern (one per bijection, permutations in lexicographic order),
then the internal vertices of attached equality / inequality gadgets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Any, Mapping, Sequence

from .coloring import enumerate_extendable_colorings, find_proper_coloring
from .graph import Graph, GraphError, Pattern
from .search import count_triangles, list_triangles

KINDS = ("grotzsch", "eq", "eq_set", "neq", "X", "hstar_trianglefree", "hstar_triangle")
TRIANGLE_FREE_KINDS = frozenset(KINDS) - {"hstar_triangle"}

PAIR_NAMES = (("x1", "x2"), ("y1", "y2"), ("z1", "z2"))


@dataclass(frozen=True)
class Gadget:
    graph: Graph
    terminals: dict[str, int]
    kind: str
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise GraphError(f"unknown gadget kind {self.kind!r}")
        Pattern(self.graph, terminals=self.terminals)  # validates terminal ids


class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: list[tuple[int, int]] = []

    def new(self, k: int = 1) -> list[int]:
        ids = list(range(self.n, self.n + k))
        self.n += k
        return ids

    def attach(self, gadget: Gadget, identify: Mapping[str, int]) -> dict[int, int]:
        """Glue a copy of ``gadget``: named terminals map onto existing vertices,
        every other vertex is freshly allocated (in gadget id order)."""
        vmap = {gadget.terminals[name]: v for name, v in identify.items()}
        for x in range(gadget.graph.n):
            if x not in vmap:
                vmap[x] = self.new()[0]
        self.edges.extend((vmap[a], vmap[b]) for a, b in gadget.graph.edges())
        return vmap

    def build(self) -> Graph:
        return Graph(self.n, self.edges)


def grotzsch() -> Gadget:
    """Mycielskian of C5: outer cycle 0-4, shadows 5-9 (shadow of i is i+5), apex 10."""
    edges = []
    for i in range(5):
        j = (i + 1) % 5
        edges.append((i, j))
        edges.append((i + 5, j))
        edges.append((j + 5, i))
        edges.append((i + 5, 10))
    return Gadget(Graph(11, edges), {}, "grotzsch")


EQ_REMOVED_EDGE = (0, 1)


def eq_gadget() -> Gadget:
    """Groetzsch graph minus edge pq = (0, 1); u = p, v = q.  Forces c(u) = c(v)."""
    p, q = EQ_REMOVED_EDGE
    return Gadget(grotzsch().graph.remove_edge(p, q), {"u": p, "v": q}, "eq")


def neq_gadget() -> Gadget:
    """EQ plus a pendant w on q; u = w, v = p.  Forces c(u) != c(v)."""
    p, q = EQ_REMOVED_EDGE
    base = eq_gadget().graph
    w = base.n
    return Gadget(Graph(w + 1, base.edges() + [(q, w)]), {"u": w, "v": p}, "neq")


def eq_set_gadget(s: int) -> Gadget:
    """EQ_{u,S} for an independent set S of size ``s``: ``s`` equality gadgets sharing u.

    Terminals: ``u`` (id 0) and ``s1..s<s>`` (ids 1..s).
    """
    if s < 1:
        raise GraphError(f"eq_set_gadget needs s >= 1, got {s}")
    b = _Builder()
    (u,) = b.new()
    members = b.new(s)
    eq = eq_gadget()
    for v in members:
        b.attach(eq, {"u": u, "v": v})
    terms = {"u": u} | {f"s{i + 1}": v for i, v in enumerate(members)}
    return Gadget(b.build(), terms, "eq_set")


# Each S vertex is joined to the two core vertices other than its target color.
X_EDGES = {
    "x1": ("v", "w"),
    "x2": ("u", "w"),
    "y1": ("u", "w"),
    "y2": ("u", "v"),
    "z1": ("w", "v"),
    "z2": ("u", "v"),
}


def gadget_x() -> Gadget:
    """Core u, v, w pairwise joined by NEQ gadgets; independent S = x1..z2 wired to the core."""
    b = _Builder()
    core = dict(zip("uvw", b.new(3)))
    s_names = [name for pair in PAIR_NAMES for name in pair]
    s_ids = dict(zip(s_names, b.new(6)))
    for name, (a, c) in X_EDGES.items():
        b.edges += [(s_ids[name], core[a]), (s_ids[name], core[c])]
    neq = neq_gadget()
    for a, c in (("u", "v"), ("v", "w"), ("w", "u")):
        b.attach(neq, {"u": core[a], "v": core[c]})
    return Gadget(b.build(), core | s_ids, "X")


def _require_colored(h: Pattern) -> list[int]:
    if h.fixed_coloring is None:
        raise GraphError("pattern needs a fixed proper 3-coloring")
    return list(h.fixed_coloring.assign)


def hstar_trianglefree(h: Pattern) -> Gadget:
    """X plus six disjoint copies of H, one per bijection pairs -> color classes.

    In the copy for bijection ``perm`` (pair i takes class ``perm[i]``), both
    vertices of pair i are joined to every copy vertex of color ``perm[i]``.
    """
    colors = _require_colored(h)
    if count_triangles(h.graph) != 0:
        raise GraphError("hstar_trianglefree needs a triangle-free pattern")
    x = gadget_x()
    b = _Builder()
    b.attach(x, {})  # X keeps ids 0..|X|-1
    copies = []
    for perm in permutations(range(3)):
        ids = b.new(h.n)
        b.edges += [(ids[a], ids[c]) for a, c in h.graph.edges()]
        for i, pair in enumerate(PAIR_NAMES):
            targets = [ids[p] for p in range(h.n) if colors[p] == perm[i]]
            for name in pair:
                b.edges += [(x.terminals[name], t) for t in targets]
        copies.append({"bijection": perm, "embedding": tuple(ids)})
    empty = [c for c in range(3) if c not in colors]
    return Gadget(
        b.build(),
        dict(x.terminals),
        "hstar_trianglefree",
        {"copies": copies, "empty_classes": empty, "interface": list(x.terminals.values())},
    )


def hstar_triangle(h: Pattern) -> Gadget:
    """Core triangle u, v, w plus six copies of H - {x, y, z}, one per bijection
    phi: (u, v, w) -> (x, y, z), tied to the core by equality gadgets and by
    edges replicating H's adjacency to the triangle."""
    colors = _require_colored(h)
    tris = list_triangles(h.graph)
    if len(tris) != 1:
        raise GraphError(f"hstar_triangle needs exactly one triangle, pattern has {len(tris)}")
    tri = tris[0]
    rest = [p for p in range(h.n) if p not in tri]
    b = _Builder()
    core = b.new(3)
    b.edges += [(core[0], core[1]), (core[1], core[2]), (core[0], core[2])]
    copies = []
    pending_eq = []
    for phi in permutations(tri):
        ids = b.new(len(rest))
        local = dict(zip(rest, ids))
        b.edges += [(local[a], local[c]) for a, c in h.graph.edges() if a in local and c in local]
        for ell, role in zip(core, phi):
            for p in rest:
                if h.graph.has_edge(p, role):
                    b.edges.append((local[p], ell))
                elif colors[p] == colors[role]:
                    pending_eq.append((ell, local[p]))
        emb = [0] * h.n
        for ell, role in zip(core, phi):
            emb[role] = ell
        for p in rest:
            emb[p] = local[p]
        copies.append({"bijection": phi, "embedding": tuple(emb)})
    eq = eq_gadget()
    for ell, target in pending_eq:
        b.attach(eq, {"u": ell, "v": target})
    present = {colors[p] for p in rest}
    empty = [colors[r] for r in tri if colors[r] not in present]
    return Gadget(
        b.build(),
        dict(zip("uvw", core)),
        "hstar_triangle",
        {"copies": copies, "empty_classes": empty, "interface": list(core)},
    )


def build_hstar(h: Pattern) -> Gadget:
    tris = count_triangles(h.graph)
    if tris == 0:
        return hstar_trianglefree(h)
    if tris == 1:
        return hstar_triangle(h)
    raise GraphError(f"H* is defined for at most one triangle, pattern has {tris}")


# -- verification -----------------------------------------------------------------


def check_invariants(g: Gadget) -> list[str]:
    """Names of violated kind invariants (empty list when the gadget is valid)."""
    bad = []
    t = count_triangles(g.graph)
    if g.kind in TRIANGLE_FREE_KINDS and t != 0:
        bad.append(f"expected triangle-free, found {t} triangles")
    if g.kind == "hstar_triangle":
        core = {g.terminals[k] for k in "uvw"}
        tris = list_triangles(g.graph)
        if len(tris) != 1 or set(tris[0]) != core:
            bad.append("expected exactly the core triangle")
    colorable = find_proper_coloring(g.graph, 3) is not None
    if g.kind == "grotzsch":
        if colorable:
            bad.append("Groetzsch graph must not be 3-colorable")
    elif not colorable:
        bad.append("expected 3-colorable")
    return bad


def is_four_critical(g: Graph) -> bool:
    """Not 3-colorable, but 3-colorable after deleting any single edge."""
    if find_proper_coloring(g, 3) is not None:
        return False
    return all(find_proper_coloring(g.remove_edge(u, v), 3) is not None for u, v in g.edges())


def terminal_projection(g: Gadget, names: Sequence[str]) -> list[tuple[int, ...]]:
    return enumerate_extendable_colorings(g.graph, [g.terminals[k] for k in names])


def x_pair_rigidity(g: Gadget) -> bool:
    """Every extendable coloring of core + S gives the core three distinct colors and
    the three pairs the three distinct unordered color pairs."""
    names = ["u", "v", "w"] + [k for pair in PAIR_NAMES for k in pair]
    rows = terminal_projection(g, names)
    if not rows:
        return False
    for row in rows:
        col = dict(zip(names, row))
        if len({col["u"], col["v"], col["w"]}) != 3:
            return False
        pairs = {frozenset((col[a], col[b])) for a, b in PAIR_NAMES}
        if len(pairs) != 3 or any(len(p) != 2 for p in pairs):
            return False
    return True


@dataclass(frozen=True)
class SoundnessReport:
    holds: bool
    interface_colorings: int
    matched_copies: list[int]
    empty_classes: list[int]


def _forced_match(graph: Graph, fixed: dict[int, int], emb: Sequence[int], colors: Sequence[int]) -> bool:
    """True iff every extension of ``fixed`` colors ``emb[p]`` with ``colors[p]`` for all p."""
    for p, v in enumerate(emb):
        want = colors[p]
        if v in fixed:
            if fixed[v] != want:
                return False
            continue
        for other in range(3):
            if other != want and find_proper_coloring(graph, 3, fixed | {v: other}) is not None:
                return False
    return True


def hstar_soundness(h: Pattern, hstar: Gadget) -> SoundnessReport:
    """For every extendable coloring of H*'s interface, find a copy of H inside H*
    whose coloring is forced to be exactly H's fixed coloring."""
    colors = _require_colored(h)
    copies = hstar.meta["copies"]
    for c in copies:
        emb = c["embedding"]
        if len(set(emb)) != h.n or any(not hstar.graph.has_edge(emb[a], emb[b]) for a, b in h.graph.edges()):
            raise GraphError(f"copy for bijection {c['bijection']} is not a copy of H")
    interface = hstar.meta["interface"]
    rows = enumerate_extendable_colorings(hstar.graph, interface)
    matched = []
    holds = bool(rows)
    for row in rows:
        fixed = dict(zip(interface, row))
        hit = next(
            (i for i, c in enumerate(copies) if _forced_match(hstar.graph, fixed, c["embedding"], colors)),
            None,
        )
        if hit is None:
            holds = False
            break
        matched.append(hit)
    return SoundnessReport(holds, len(rows), matched, list(hstar.meta.get("empty_classes", [])))


def verify_hstar_soundness(h: Pattern, hstar: Gadget) -> bool:
    return hstar_soundness(h, hstar).holds
