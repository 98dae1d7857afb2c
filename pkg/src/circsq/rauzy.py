"""Factor graphs of a word and their circuit structure.

The order-``i`` factor graph (Rauzy graph) of a word has the length-``i``
factors as vertices and the length-``i+1`` factors as edges; an edge runs
from its prefix to its suffix.  This module enumerates elementary circuits
(Johnson-style, with a result cap), computes traversal vectors and their
exact rank over the rationals, and analyses how the circuit family of a
primitive word splits at low orders.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .words import (
    canonical_rotation,
    circular_factors,
    factors,
    is_primitive,
    validate_word,
)

__all__ = [
    "DEFAULT_CIRCUIT_CAP",
    "CircuitCapExceeded",
    "RauzyGraph",
    "Circuit",
    "ClassCircuit",
    "SmallCircuitProfile",
    "build_rauzy_graph",
    "is_weakly_connected",
    "cyclomatic_number",
    "enumerate_elementary_circuits",
    "vector_cycle",
    "independent_rank",
    "circuit_root",
    "class_circuit",
    "contains_class_circuit",
    "small_circuit_profile",
    "split_point",
    "decompose_split",
    "to_dot",
]

DEFAULT_CIRCUIT_CAP = 1_000_000


class CircuitCapExceeded(RuntimeError):
    """Raised when circuit enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class RauzyGraph:
    """Directed factor graph of one order.

    ``edges`` is sorted lexicographically; that fixed order is the
    coordinate system for traversal vectors.
    """

    order: int
    vertices: frozenset[str]
    edges: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(set(self.edges))))
        for v in self.vertices:
            if len(v) != self.order:
                raise ValueError(f"vertex {v!r} does not have length {self.order}")
        for e in self.edges:
            if len(e) != self.order + 1:
                raise ValueError(f"edge {e!r} does not have length {self.order + 1}")
            if e[:-1] not in self.vertices or e[1:] not in self.vertices:
                raise ValueError(f"edge {e!r} has an endpoint outside the vertex set")

    def out_edges(self) -> dict[str, list[str]]:
        """Vertex -> outgoing edges, each list sorted."""
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            adj[e[:-1]].append(e)
        return adj

    def successors(self) -> dict[str, list[str]]:
        """Vertex -> successor vertices, each list sorted."""
        return {v: [e[1:] for e in es] for v, es in self.out_edges().items()}


def build_rauzy_graph(w: str, i: int) -> RauzyGraph:
    """Factor graph of ``w`` at order ``i`` (needs ``1 <= i <= len(w) - 1``)."""
    validate_word(w)
    if not 1 <= i <= len(w) - 1:
        raise ValueError(f"order {i} out of range 1..{len(w) - 1}")
    return RauzyGraph(i, frozenset(factors(w, i)), tuple(sorted(factors(w, i + 1))))


def is_weakly_connected(g: RauzyGraph) -> bool:
    """True when the underlying undirected graph is connected."""
    if not g.vertices:
        return True
    neighbours: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in g.edges:
        neighbours[e[:-1]].add(e[1:])
        neighbours[e[1:]].add(e[:-1])
    start = next(iter(g.vertices))
    seen = {start}
    todo = [start]
    while todo:
        v = todo.pop()
        for u in neighbours[v]:
            if u not in seen:
                seen.add(u)
                todo.append(u)
    return len(seen) == len(g.vertices)


def cyclomatic_number(g: RauzyGraph) -> int:
    """``|edges| - |vertices| + 1`` for a weakly connected graph."""
    if not is_weakly_connected(g):
        raise ValueError("cyclomatic number requires a weakly connected graph")
    return len(g.edges) - len(g.vertices) + 1


@dataclass(frozen=True)
class Circuit:
    """An elementary directed circuit, stored as its cyclic edge sequence.

    The sequence is rotated so the first edge leaves the least vertex, which
    makes equal circuits compare equal.
    """

    edges: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.edges:
            raise ValueError("a circuit needs at least one edge")
        starts = [e[:-1] for e in self.edges]
        if len(set(starts)) != len(starts):
            raise ValueError(f"circuit revisits a vertex: {self.edges}")
        r = len(self.edges)
        for j in range(r):
            if self.edges[j][1:] != self.edges[(j + 1) % r][:-1]:
                raise ValueError(f"edges do not chain: {self.edges}")
        k = starts.index(min(starts))
        object.__setattr__(self, "edges", self.edges[k:] + self.edges[:k])

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(e[:-1] for e in self.edges)

    def __str__(self) -> str:
        return " -> ".join(self.vertices + (self.vertices[0],))


def circuit_root(c: Circuit) -> str:
    """The primitive word traced by walking the circuit once."""
    spelled = c.vertices[0] + "".join(e[-1] for e in c.edges)
    return spelled[: c.length]


def _strongly_connected_components(nodes: list[str], adj: dict[str, list[str]]) -> list[list[str]]:
    """Iterative Tarjan; deterministic given node and adjacency order."""
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    sccs: list[list[str]] = []
    counter = 0
    for root in nodes:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(adj[root]))]
        while work:
            v, it = work[-1]
            pushed = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(adj[u])))
                    pushed = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if pushed:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.append(u)
                    if u == v:
                        break
                sccs.append(comp)
    return sccs


def _unblock(v: str, blocked: set[str], blocked_by: dict[str, set[str]]) -> None:
    queue = {v}
    while queue:
        u = queue.pop()
        if u in blocked:
            blocked.discard(u)
            queue |= blocked_by.get(u, set())
            blocked_by.pop(u, None)


def enumerate_elementary_circuits(g: RauzyGraph, cap: int = DEFAULT_CIRCUIT_CAP) -> list[Circuit]:
    """All elementary directed circuits of ``g``, each reported once.

    Johnson's blocked search, run per start vertex in lexicographic order so
    each circuit is found from its least vertex.  Raises
    :class:`CircuitCapExceeded` when more than ``cap`` circuits show up.
    """
    succ = g.successors()
    verts = sorted(g.vertices)
    found: list[list[str]] = []

    for s in verts:
        allowed = {v for v in verts if v >= s}
        adj = {v: [u for u in succ[v] if u in allowed] for v in allowed}
        comp = next(c for c in _strongly_connected_components(sorted(allowed), adj) if s in c)
        compset = set(comp)
        if len(compset) == 1 and s not in adj[s]:
            continue
        local = {v: [u for u in adj[v] if u in compset] for v in compset}

        path = [s]
        blocked = {s}
        closed: set[str] = set()
        blocked_by: dict[str, set[str]] = {}
        frames = [(s, iter(local[s]))]
        while frames:
            v, it = frames[-1]
            advanced = False
            for u in it:
                if u == s:
                    found.append(path[:])
                    if len(found) > cap:
                        raise CircuitCapExceeded(
                            f"graph of order {g.order} has more than {cap} elementary circuits"
                        )
                    closed.update(path)
                elif u not in blocked:
                    path.append(u)
                    blocked.add(u)
                    closed.discard(u)
                    frames.append((u, iter(local[u])))
                    advanced = True
                    break
            if advanced:
                continue
            if v in closed:
                _unblock(v, blocked, blocked_by)
            else:
                for u in local[v]:
                    blocked_by.setdefault(u, set()).add(v)
            frames.pop()
            path.pop()

    circuits = []
    for vs in found:
        r = len(vs)
        circuits.append(Circuit(tuple(vs[j] + vs[(j + 1) % r][-1] for j in range(r))))
    return sorted(circuits, key=lambda c: (c.length, c.edges))


def vector_cycle(c: Circuit, g: RauzyGraph) -> tuple[int, ...]:
    """Edge-traversal counts of ``c`` over the fixed edge order of ``g``."""
    edge_set = set(g.edges)
    for e in c.edges:
        if e not in edge_set:
            raise ValueError(f"edge {e!r} is not in the graph")
    counts = Counter(c.edges)
    return tuple(counts[e] for e in g.edges)


def independent_rank(vectors: list[tuple[int, ...]]) -> int:
    """Rank over the rationals, via fraction-free integer elimination."""
    vecs = [list(v) for v in vectors]
    if not vecs:
        return 0
    ncols = len(vecs[0])
    if any(len(v) != ncols for v in vecs):
        raise ValueError("vectors must all have the same dimension")
    rank = 0
    denom = 1
    for col in range(ncols):
        if rank == len(vecs):
            break
        pivot = next((r for r in range(rank, len(vecs)) if vecs[r][col]), None)
        if pivot is None:
            continue
        vecs[rank], vecs[pivot] = vecs[pivot], vecs[rank]
        pv = vecs[rank][col]
        for r in range(rank + 1, len(vecs)):
            f = vecs[r][col]
            for c2 in range(col + 1, ncols):
                vecs[r][c2] = (vecs[r][c2] * pv - f * vecs[rank][c2]) // denom
            vecs[r][col] = 0
        denom = pv
        rank += 1
    return rank


@dataclass(frozen=True)
class ClassCircuit:
    """The subgraph a primitive word induces at one order.

    Vertices are its circular factors of that order, edges those one longer.
    It is an elementary circuit exactly when the vertex count equals the
    root length, and small when the root fits within the order.
    """

    root: str
    order: int
    vertex_set: frozenset[str]
    edge_set: frozenset[str]
    is_elementary: bool
    is_small: bool


def class_circuit(p: str, l: int) -> ClassCircuit:
    """The circular-factor subgraph of primitive ``p`` at order ``l``."""
    validate_word(p)
    if not is_primitive(p):
        raise ValueError(f"{p!r} is not primitive")
    if l < 1:
        raise ValueError(f"order {l} must be positive")
    vs = frozenset(circular_factors(p, l))
    es = frozenset(circular_factors(p, l + 1))
    return ClassCircuit(p, l, vs, es, len(vs) == len(p), len(p) <= l)


def contains_class_circuit(w: str, p: str, l: int) -> bool:
    """True when the order-``l`` subgraph of ``p`` lies inside the graph of ``w``."""
    validate_word(w)
    if not is_primitive(p):
        raise ValueError(f"{p!r} is not primitive")
    if not 1 <= l <= len(w) - 1:
        raise ValueError(f"order {l} out of range 1..{len(w) - 1}")
    return circular_factors(p, l) <= factors(w, l) and circular_factors(p, l + 1) <= factors(
        w, l + 1
    )


@dataclass(frozen=True)
class SmallCircuitProfile:
    """Counts of small circuits (length <= order) per order, plus the total."""

    per_order: tuple[tuple[int, int], ...]
    total: int

    def count_at(self, order: int) -> int:
        return dict(self.per_order).get(order, 0)


def small_circuit_profile(w: str, cap: int = DEFAULT_CIRCUIT_CAP) -> SmallCircuitProfile:
    """Count, for each order, the elementary circuits no longer than the order."""
    validate_word(w)
    if len(w) < 2:
        raise ValueError("profiles need a word of length at least 2")
    per_order = []
    total = 0
    for i in range(1, len(w)):
        circuits = enumerate_elementary_circuits(build_rauzy_graph(w, i), cap)
        cnt = sum(1 for c in circuits if c.length <= i)
        per_order.append((i, cnt))
        total += cnt
    return SmallCircuitProfile(tuple(per_order), total)


def split_point(p: str) -> int | None:
    """The largest order at which the circuit family of ``p`` is not elementary.

    This is the largest ``m`` with fewer than ``len(p)`` circular factors of
    length ``m``; ``None`` when already the alphabet of ``p`` has full size
    (the family is elementary at every order).
    """
    validate_word(p)
    if not is_primitive(p):
        raise ValueError(f"{p!r} is not primitive")
    l = len(p)
    if len(set(p)) == l:
        return None
    m = 1
    while len(circular_factors(p, m + 1)) < l:
        m += 1
    return m


def decompose_split(p: str, m: int) -> list[Circuit]:
    """Edge-disjoint elementary circuits jointly covering the order-``m`` subgraph.

    ``m`` must be the split point of ``p``.  The periodic walk of ``p`` is
    followed for one period from the canonical rotation; every time a window
    repeats, the enclosed stretch is popped as one elementary circuit.  The
    circuit lengths always sum to ``len(p)``.
    """
    actual = split_point(p)
    if actual != m:
        raise ValueError(f"circuits of {p!r} split at {actual}, not {m}")
    base = canonical_rotation(p)
    l = len(base)
    ext = base * ((l + m + 1) // l + 1)
    stack = [ext[0:m]]
    pos = {stack[0]: 0}
    edge_stack: list[str] = []
    circuits: list[Circuit] = []
    for j in range(1, l + 1):
        edge_stack.append(ext[j - 1 : j + m])
        v = ext[j : j + m]
        if v in pos:
            k = pos[v]
            circuits.append(Circuit(tuple(edge_stack[k:])))
            for u in stack[k + 1 :]:
                del pos[u]
            del edge_stack[k:]
            del stack[k + 1 :]
        else:
            stack.append(v)
            pos[v] = len(stack) - 1
    if len(stack) != 1 or edge_stack:
        raise AssertionError(f"periodic walk of {p!r} did not close at order {m}")
    return sorted(circuits, key=lambda c: (c.length, c.edges))


def to_dot(g: RauzyGraph) -> str:
    """Graphviz DOT rendering: factor strings as labels on vertices and edges."""
    lines = [f"digraph factors_{g.order} {{", "  rankdir=LR;"]
    for v in sorted(g.vertices):
        lines.append(f'  "{v}";')
    for e in g.edges:
        lines.append(f'  "{e[:-1]}" -> "{e[1:]}" [label="{e}"];')
    lines.append("}")
    return "\n".join(lines)
