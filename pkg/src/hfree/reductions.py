"""Self-reduction from triangle detection in induced H-free graphs to unique
triangle detection on small induced subgraphs.

Pipeline: triangle-or-sqrt(n)-coloring -> class refinement -> one instance per
triplet of color classes -> vertex-subsampling sieve -> base detector.
Every instance produced here is an *induced* subgraph of the host, so
induced H-freeness is inherited by all of them.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterator, Sequence

import numpy as np

from .graph import Coloring, Graph, GraphError, Pattern, iter_bits
from .patterns import augment
from .search import find_copy, find_triangle, is_triangle

Triangle = tuple[int, int, int]


def ceil_sqrt(n: int) -> int:
    r = math.isqrt(n)
    return r if r * r == n else r + 1


class Instance:
    """A 3-colored induced subgraph of a host graph.

    Local vertex ids are ordered class 0, then class 1, then class 2;
    ``back_map[i]`` is the host id of local vertex ``i``.  The subgraph itself
    is assembled lazily from the per-class-pair edge lists it was cut from.
    """

    __slots__ = ("back_map", "class_sizes", "_edges", "_graph")

    def __init__(
        self,
        back_map: Sequence[int],
        class_sizes: Sequence[int],
        edges: Sequence[tuple[int, int]] | None = None,
        graph: Graph | None = None,
    ):
        self.back_map = tuple(back_map)
        self.class_sizes = tuple(class_sizes)
        if sum(self.class_sizes) != len(self.back_map) or len(self.class_sizes) != 3:
            raise GraphError("instance needs three classes covering the back-map")
        self._edges = edges
        self._graph = graph

    @property
    def n(self) -> int:
        return len(self.back_map)

    @property
    def subgraph(self) -> Graph:
        if self._graph is None:
            self._graph = Graph(self.n, self._edges or ())
            self._edges = None
        return self._graph

    @property
    def coloring(self) -> Coloring:
        a, b, c = self.class_sizes
        return Coloring(3, [0] * a + [1] * b + [2] * c)

    def class_masks(self) -> tuple[int, int, int]:
        a, b, c = self.class_sizes
        return ((1 << a) - 1, ((1 << b) - 1) << a, ((1 << c) - 1) << (a + b))

    def restrict(self, keep: Sequence[int]) -> Instance:
        """Induced sub-instance on the local vertices ``keep`` (sorted, class order kept)."""
        keep = sorted(keep)
        mask = self.class_masks()
        sizes = [sum(1 for v in keep if mask[k] >> v & 1) for k in range(3)]
        g = self.subgraph
        pos = {v: i for i, v in enumerate(keep)}
        keep_bits = sum(1 << v for v in keep)
        bits = []
        for v in keep:
            b = 0
            for w in iter_bits(g.bits[v] & keep_bits):
                b |= 1 << pos[w]
            bits.append(b)
        return Instance([self.back_map[v] for v in keep], sizes, graph=Graph.from_bits(bits))

    def to_host(self, tri: Sequence[int]) -> Triangle:
        return tuple(sorted(self.back_map[v] for v in tri))  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"Instance(n={self.n}, classes={self.class_sizes})"


@dataclass(frozen=True)
class PipelineConfig:
    seed: int = 0
    class_cap_factor: float = 1.0
    sieve_repetitions: int = 8
    amplification_runs: int = 15
    base_detector: str = "brute"
    audit_promise: bool = False
    colored_repetitions: int | None = None

    def __post_init__(self) -> None:
        if self.class_cap_factor < 1:
            raise ValueError(f"class_cap_factor must be >= 1, got {self.class_cap_factor}")
        for name in ("sieve_repetitions", "amplification_runs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.colored_repetitions is not None and self.colored_repetitions < 1:
            raise ValueError("colored_repetitions must be >= 1")
        if self.base_detector not in BASE_DETECTORS:
            raise ValueError(
                f"unknown base detector {self.base_detector!r}; choose from {sorted(BASE_DETECTORS)}"
            )

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)


# -- color coding -------------------------------------------------------------------


def triangle_or_sqrt_coloring(g: Graph) -> Triangle | Coloring:
    """Find a triangle, or a proper coloring with at most 2*ceil(sqrt(n)) colors.

    Phase I: while a vertex v has >= ceil(sqrt(n)) remaining neighbours, take
    the first ceil(sqrt(n)) of them as U; an edge inside U (found by scanning
    the neighbourhoods of U) closes a triangle with v, otherwise U becomes a
    new color class and is deleted.  Phase II greedily colors the rest, whose
    max degree is now below ceil(sqrt(n)).
    """
    n = g.n
    s = ceil_sqrt(n)
    alive = (1 << n) - 1
    color = [-1] * n
    ncolors = 0
    bits = g.bits
    if s > 0:
        for v in range(n):
            while alive >> v & 1 and (bits[v] & alive).bit_count() >= s:
                u_mask = 0
                rest = bits[v] & alive
                for _ in range(s):
                    low = rest & -rest
                    u_mask |= low
                    rest ^= low
                for u in iter_bits(u_mask):
                    inner = bits[u] & u_mask
                    if inner:
                        w = (inner & -inner).bit_length() - 1
                        return tuple(sorted((v, u, w)))  # type: ignore[return-value]
                for u in iter_bits(u_mask):
                    color[u] = ncolors
                ncolors += 1
                alive &= ~u_mask
    base = ncolors
    used = 0
    for v in iter_bits(alive):
        taken = {color[w] for w in iter_bits(bits[v] & alive) if color[w] >= 0}
        c = base
        while c in taken:
            c += 1
        color[v] = c
        used = max(used, c - base + 1)
    return Coloring(max(base + used, 1), color)


def refine_classes(c: Coloring, n: int, cap_factor: float = 1.0) -> Coloring:
    """Split every class larger than 2*ceil(sqrt(n)) (times ``cap_factor``) by repeatedly
    moving its first ceil(sqrt(n)) vertices to a fresh color."""
    s = ceil_sqrt(n)
    cap = max(int(cap_factor * 2 * s), 1)
    classes = [cls for cls in c.classes() if cls]
    out: list[list[int]] = []
    extra: list[list[int]] = []
    for cls in classes:
        while len(cls) > cap:
            extra.append(cls[:s])
            cls = cls[s:]
        out.append(cls)
    out += extra
    assign = [0] * len(c)
    for k, cls in enumerate(out):
        for v in cls:
            assign[v] = k
    return Coloring(max(len(out), 1), assign)


@dataclass
class ColorCoding:
    """Refined class partition of a host plus per-class-pair edge lists."""

    host: Graph
    coloring: Coloring
    classes: list[list[int]]
    pair_edges: dict[tuple[int, int], list[tuple[int, int]]] = field(repr=False)

    @property
    def instance_count(self) -> int:
        return math.comb(len(self.classes), 3)

    def instances(self) -> Iterator[Instance]:
        k = len(self.classes)
        for a, b, c in combinations(range(k), 3):
            ca, cb, cc = self.classes[a], self.classes[b], self.classes[c]
            la, lb = len(ca), len(cb)
            edges = [(i, la + j) for i, j in self.pair_edges.get((a, b), ())]
            edges += [(i, la + lb + j) for i, j in self.pair_edges.get((a, c), ())]
            edges += [(la + i, la + lb + j) for i, j in self.pair_edges.get((b, c), ())]
            yield Instance(ca + cb + cc, (la, lb, len(cc)), edges)


def color_partition(g: Graph, cap_factor: float = 1.0) -> Triangle | ColorCoding:
    first = triangle_or_sqrt_coloring(g)
    if not isinstance(first, Coloring):
        return first
    col = refine_classes(first, g.n, cap_factor)
    classes = [cls for cls in col.classes() if cls]
    pos = [0] * g.n
    for cls in classes:
        for i, v in enumerate(cls):
            pos[v] = i
    pair_edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    a = col.assign
    for u, v in g.edges():
        cu, cv = a[u], a[v]
        if cu > cv:
            u, v, cu, cv = v, u, cv, cu
        pair_edges.setdefault((cu, cv), []).append((pos[u], pos[v]))
    for lst in pair_edges.values():
        lst.sort()
    return ColorCoding(g, col, classes, pair_edges)


def color_code(g: Graph, cap_factor: float = 1.0) -> Triangle | list[Instance]:
    """Either a triangle of ``g`` or one 3-colored induced instance per triplet of
    color classes; every triangle of ``g`` lies in exactly one instance."""
    part = color_partition(g, cap_factor)
    if not isinstance(part, ColorCoding):
        return part
    return list(part.instances())


# -- sieving ------------------------------------------------------------------------


def sieve_guesses(size: int) -> list[int]:
    """1, 2, 4, ... up to the first power of two >= ``size``."""
    if size <= 0:
        return []
    out = [1]
    while out[-1] < size:
        out.append(out[-1] * 2)
    return out


def _can_hold_triangle(inst_bits: Sequence[int], masks: Sequence[int], keep: int) -> bool:
    """Cheap necessary condition: every class non-empty and every class pair joined by an edge."""
    ka, kb, kc = (m & keep for m in masks)
    if not (ka and kb and kc):
        return False
    ab = ac = bc = False
    for v in iter_bits(ka):
        nb = inst_bits[v] & keep
        ab = ab or bool(nb & kb)
        ac = ac or bool(nb & kc)
        if ab and ac:
            break
    if not (ab and ac):
        return False
    for v in iter_bits(kb):
        if inst_bits[v] & kc:
            bc = True
            break
    return bc


def iter_sieve(
    inst: Instance, config: PipelineConfig, rng: np.random.Generator | None = None, prune: bool = True
) -> Iterator[Instance]:
    """Vertex-subsampled induced sub-instances of ``inst``.

    For every guess triple (t0, t1, t2), ti a power of two up to the size of
    class i, and every repetition, each class-i vertex is kept independently
    with probability 1/ti.  Duplicate vertex sets are emitted once.  With
    ``prune`` set, outputs that cannot contain a triangle (an empty class or
    an edgeless class pair) are dropped.
    """
    if rng is None:
        rng = config.rng()
    sizes = inst.class_sizes
    guesses = [sieve_guesses(s) for s in sizes]
    if not all(guesses):
        return
    masks = inst.class_masks()
    g = inst.subgraph
    if prune and not _can_hold_triangle(g.bits, masks, (1 << inst.n) - 1):
        return
    reps = config.sieve_repetitions
    seen: set[int] = set()
    n = inst.n
    weights = np.ones(n)
    for ts in product(*guesses):
        off = 0
        for size, t in zip(sizes, ts):
            weights[off : off + size] = 1.0 / t
            off += size
        if all(t == 1 for t in ts):
            draws = np.ones((1, n), dtype=bool)
        else:
            draws = rng.random((reps, n)) < weights
        packed = np.packbits(draws, axis=1, bitorder="little")
        for row in packed:
            keep = int.from_bytes(row.tobytes(), "little")
            if keep in seen:
                continue
            seen.add(keep)
            if prune and not _can_hold_triangle(g.bits, masks, keep):
                continue
            yield inst.restrict(list(iter_bits(keep)))


def sieve(inst: Instance, config: PipelineConfig, rng: np.random.Generator | None = None) -> list[Instance]:
    return list(iter_sieve(inst, config, rng, prune=False))


def iter_reduce_to_unique(
    g: Graph, config: PipelineConfig, rng: np.random.Generator | None = None, stats: dict | None = None
) -> Triangle | Iterator[Instance]:
    part = color_partition(g, config.class_cap_factor)
    if not isinstance(part, ColorCoding):
        return part
    if rng is None:
        rng = config.rng()
    if stats is not None:
        stats["instance_count"] = part.instance_count
        stats["max_instance_size"] = 0
        stats["classes"] = len(part.classes)

    def gen() -> Iterator[Instance]:
        for inst in part.instances():
            if stats is not None:
                stats["max_instance_size"] = max(stats["max_instance_size"], inst.n)
            yield from iter_sieve(inst, config, rng)

    return gen()


def reduce_to_unique(g: Graph, config: PipelineConfig) -> Triangle | list[Instance]:
    """Color-code ``g`` and sieve every instance; outputs are induced subgraphs of ``g``."""
    out = iter_reduce_to_unique(g, config)
    return out if isinstance(out, tuple) else list(out)


# -- base detectors and the end-to-end detector ----------------------------------------


@dataclass(frozen=True)
class BaseDetector:
    """Triangle detector contract: Graph -> triangle or None.

    Only required to be correct on H+-free inputs.  ``randomized`` detectors
    are amplified by majority vote; deterministic ones are called once, since
    repeated runs return the same answer.
    """

    name: str
    fn: Callable[[Graph, np.random.Generator], Triangle | None]
    randomized: bool = False


BASE_DETECTORS: dict[str, BaseDetector] = {
    "brute": BaseDetector("brute", lambda g, rng: find_triangle(g)),
}


def register_detector(det: BaseDetector) -> None:
    BASE_DETECTORS[det.name] = det


class PromiseViolation(GraphError):
    """The host contains an induced copy of the pattern it was promised to avoid."""


@dataclass
class DetectionReport:
    verdict: str
    witness: Triangle | None
    stats: dict
    seed: int

    def __post_init__(self) -> None:
        if (self.verdict == "triangle_found") != (self.witness is not None):
            raise ValueError("witness must be present exactly when a triangle is reported")


def _run_detector(det: BaseDetector, g: Graph, runs: int, rng: np.random.Generator) -> tuple[Triangle | None, int]:
    if not det.randomized:
        return det.fn(g, rng), 1
    answers = [det.fn(g, rng) for _ in range(runs)]
    yes = [a for a in answers if a is not None]
    if 2 * len(yes) > runs:
        return yes[0], runs
    return None, runs


def detect_induced_hfree(g: Graph, h: Pattern | Graph, config: PipelineConfig) -> DetectionReport:
    """Triangle detection on a host promised to be induced H-free.

    A reported witness is always re-checked against the host, so a
    ``triangle_found`` verdict is never wrong whatever the randomness.
    """
    t0 = time.monotonic()
    hp = h.graph if isinstance(h, Pattern) else h
    if config.audit_promise:
        emb = find_copy(hp, g, "induced")
        if emb is not None:
            raise PromiseViolation(f"host contains an induced copy of the pattern at {list(emb.map)}")
    hplus = augment(hp)
    det = BASE_DETECTORS[config.base_detector]
    rng = config.rng()
    stats: dict = {
        "n": g.n,
        "m": g.m,
        "pattern_plus_vertices": hplus.graph.n,
        "instance_count": 0,
        "max_instance_size": 0,
        "sieve_outputs": 0,
        "oracle_calls": 0,
        "phase1_triangle": False,
    }
    witness: Triangle | None = None
    out = iter_reduce_to_unique(g, config, rng, stats)
    if isinstance(out, tuple):
        stats["phase1_triangle"] = True
        if is_triangle(g, out):
            witness = out
    else:
        for inst in out:
            stats["sieve_outputs"] += 1
            tri, calls = _run_detector(det, inst.subgraph, config.amplification_runs, rng)
            stats["oracle_calls"] += calls
            if tri is None:
                continue
            cand = inst.to_host(tri)
            if is_triangle(g, cand):
                witness = cand
                break
    stats["wall_ms"] = round((time.monotonic() - t0) * 1000, 3)
    return DetectionReport(
        "triangle_found" if witness else "triangle_free", witness, stats, config.seed
    )


# -- colored setting ---------------------------------------------------------------


def color_code_for_colored_setting(g: Graph, config: PipelineConfig) -> list[tuple[Graph, Coloring]]:
    """Random 3-partitions of V(g) with intra-part edges deleted.

    A fixed triangle survives one partition with probability 6/27 = 2/9; the
    default repetition count ceil(ln n / ln(9/7)) makes it survive in some
    output with probability at least 1 - 1/n.
    """
    reps = config.colored_repetitions
    if reps is None:
        reps = max(1, math.ceil(math.log(max(g.n, 2)) / math.log(9 / 7)))
    rng = config.rng()
    out = []
    for _ in range(reps):
        part = rng.integers(0, 3, size=g.n).tolist()
        edges = [(u, v) for u, v in g.edges() if part[u] != part[v]]
        out.append((Graph(g.n, edges), Coloring(3, part)))
    return out
