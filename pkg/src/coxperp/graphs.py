"""Simple undirected graphs, chordless cycles, cycle cores and reduced paths.

Paths are plain tuples of vertices ``(v0, v1, ..., vk)``; the length-0 path
``(v,)`` is the identity of the fundamental groupoid at ``v``.  Reduced
paths are the non-backtracking representatives of groupoid elements.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable

import networkx as nx

from .errors import InputError, LimitExceeded, PreconditionError

Vertex = Hashable
Path = tuple

DEFAULT_CYCLE_LIMIT = 10**5


@dataclass(frozen=True)
class Graph:
    """Finite simple graph.  Vertex order is kept for deterministic output."""

    vertices: tuple
    edges: frozenset = frozenset()
    _adj: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise InputError("duplicate vertices")
        object.__setattr__(self, "vertices", verts)
        vset = set(verts)
        edges = frozenset(frozenset(e) for e in self.edges)
        adj = {v: set() for v in verts}
        for e in edges:
            if len(e) != 2:
                raise InputError(f"loop or malformed edge {tuple(e)!r}")
            a, b = tuple(e)
            if a not in vset or b not in vset:
                raise InputError(f"edge {tuple(e)!r} has an endpoint outside the vertex set")
            adj[a].add(b)
            adj[b].add(a)
        object.__setattr__(self, "edges", edges)
        order = {v: i for i, v in enumerate(verts)}
        object.__setattr__(
            self, "_adj", {v: tuple(sorted(ns, key=order.__getitem__)) for v, ns in adj.items()}
        )

    @classmethod
    def from_edges(cls, vertices: Iterable, edges: Iterable) -> "Graph":
        return cls(tuple(vertices), frozenset(frozenset(e) for e in edges))

    def neighbors(self, v) -> tuple:
        try:
            return self._adj[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def has_edge(self, a, b) -> bool:
        return b in self.neighbors(a)

    def index(self, v) -> int:
        return self.vertices.index(v)

    def induced(self, subset: Iterable) -> "Graph":
        keep = set(subset)
        unknown = keep - set(self.vertices)
        if unknown:
            raise InputError(f"unknown vertices {sorted(map(str, unknown))}")
        verts = tuple(v for v in self.vertices if v in keep)
        return Graph(verts, frozenset(e for e in self.edges if e <= keep))

    def sorted_edges(self) -> list[tuple]:
        order = {v: i for i, v in enumerate(self.vertices)}
        pairs = [tuple(sorted(e, key=order.__getitem__)) for e in self.edges]
        return sorted(pairs, key=lambda p: (order[p[0]], order[p[1]]))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(tuple(e) for e in self.edges)
        return g


def connected_component(g: Graph, v) -> frozenset:
    """Vertex set of the component of ``g`` containing ``v``."""
    g.neighbors(v)
    seen = {v}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return frozenset(seen)


def components(g: Graph) -> list[frozenset]:
    out, seen = [], set()
    for v in g.vertices:
        if v not in seen:
            comp = connected_component(g, v)
            seen |= comp
            out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return len(g.vertices) > 0 and len(components(g)) == 1


def has_cycle(g: Graph) -> bool:
    """True iff some component has more edges than a spanning tree."""
    return len(g.edges) > len(g.vertices) - len(components(g))


def canonical_cycle(cycle: Iterable, order: dict) -> tuple:
    """Smallest rotation/reflection of a cyclic vertex sequence under ``order``."""
    cyc = list(cycle)
    n = len(cyc)
    best = None
    for seq in (cyc, cyc[::-1]):
        for r in range(n):
            rot = tuple(seq[r:] + seq[:r])
            key = tuple(order[v] for v in rot)
            if best is None or key < best[0]:
                best = (key, rot)
    return best[1]


def chordless_cycles(g: Graph, limit: int = DEFAULT_CYCLE_LIMIT) -> list[tuple]:
    """All chordless cycles of length >= 3, each once, in canonical form.

    A cycle ``(x0, ..., x_{n-1})`` is returned without repeating ``x0``.
    Raises :class:`LimitExceeded` when more than ``limit`` cycles exist.
    """
    order = {v: i for i, v in enumerate(g.vertices)}
    found = set()
    for cyc in nx.chordless_cycles(g.to_networkx()):
        if len(cyc) < 3:
            continue
        found.add(canonical_cycle(cyc, order))
        if len(found) > limit:
            raise LimitExceeded(f"more than {limit} chordless cycles")
    return sorted(found, key=lambda c: (len(c), [order[v] for v in c]))


def is_pre_cycle_core(g: Graph, subset: Iterable) -> bool:
    sub = frozenset(subset)
    if not sub <= set(g.vertices):
        raise InputError("subset is not contained in the vertex set")
    if not sub or not is_connected(g.induced(sub)):
        return False
    return all(set(c) <= sub for c in chordless_cycles(g))


def cycle_core(g: Graph) -> frozenset:
    """The unique minimal pre-cycle core of a connected graph with a cycle.

    Computed by repeatedly stripping degree-1 vertices: what survives is
    connected, carries every cycle, and each survivor lies on a cycle or on
    the unique path joining two cycles.
    """
    if not is_connected(g):
        raise PreconditionError("cycle core needs a connected graph")
    if not has_cycle(g):
        raise PreconditionError("cycle core needs a graph containing a cycle")
    degree = {v: len(g.neighbors(v)) for v in g.vertices}
    alive = set(g.vertices)
    leaves = deque(v for v, d in degree.items() if d <= 1)
    while leaves:
        v = leaves.popleft()
        if v not in alive:
            continue
        alive.discard(v)
        for w in g.neighbors(v):
            if w in alive:
                degree[w] -= 1
                if degree[w] == 1:
                    leaves.append(w)
    return frozenset(alive)


def tree_decomposition(g: Graph, core: Iterable) -> dict:
    """Map each core vertex to the vertex set of its hanging tree.

    Each non-core vertex is attached to the unique core vertex reachable
    without passing through another core vertex.
    """
    core = frozenset(core)
    owner = {v: v for v in core}
    queue = deque(sorted(core, key=g.index))
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in owner:
                owner[w] = owner[u]
                queue.append(w)
    parts = {v: set() for v in core}
    for v, root in owner.items():
        parts[root].add(v)
    return {k: frozenset(v) for k, v in parts.items()}


def shortest_path(g: Graph, source, targets: Iterable) -> Path | None:
    """BFS path from ``source`` to the nearest vertex in ``targets``."""
    targets = set(targets)
    parent = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return tuple(reversed(path))
        for w in g.neighbors(u):
            if w not in parent:
                parent[w] = u
                queue.append(w)
    return None


def bfs_tree_paths(g: Graph, root) -> dict:
    """Tree paths from ``root`` in the BFS tree (neighbors in vertex order)."""
    paths = {root: (root,)}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in paths:
                paths[w] = paths[u] + (w,)
                queue.append(w)
    return paths


# -- fundamental groupoid ---------------------------------------------------

def _check_adjacent(g: Graph | None, p: Path):
    if g is None:
        return
    for a, b in zip(p, p[1:]):
        if not g.has_edge(a, b):
            raise InputError(f"{a!r} and {b!r} are not adjacent")


def reduce_path(p: Iterable, g: Graph | None = None) -> Path:
    """Free-groupoid reduction: cancel every backtrack ``(a, b, a)``."""
    p = tuple(p)
    if not p:
        raise InputError("empty path")
    _check_adjacent(g, p)
    stack: list = []
    for v in p:
        if stack and stack[-1] == v:
            raise InputError(f"path repeats vertex {v!r} consecutively")
        if len(stack) >= 2 and stack[-2] == v:
            stack.pop()
        else:
            stack.append(v)
    return tuple(stack)


def is_reduced(p: Path) -> bool:
    return all(p[i] != p[i + 2] for i in range(len(p) - 2))


def compose_paths(p: Path, q: Path) -> Path:
    if p[-1] != q[0]:
        raise InputError(f"cannot compose: path ends at {p[-1]!r}, next starts at {q[0]!r}")
    return reduce_path(tuple(p) + tuple(q[1:]))


def invert_path(p: Path) -> Path:
    return tuple(reversed(p))


def path_power(p: Path, k: int) -> Path:
    """``p**k`` for a closed path ``p`` (negative powers use the inverse)."""
    if p[0] != p[-1]:
        raise InputError("only closed paths have powers")
    base = p if k >= 0 else invert_path(p)
    out: Path = (p[0],)
    for _ in range(abs(k)):
        out = compose_paths(out, base)
    return out
