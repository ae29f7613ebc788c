"""Generators of the subgroup generated by reflections commuting with ``x``.

States are pairs ``(xi, c)`` where ``xi = (mover, support)`` has an even
label and ``c`` is a reduced path in the odd Coxeter graph from ``x`` to
the mover.  Each state names the reflection along

    root(xi; c) = pi(c) . tilde_alpha(xi),

where ``pi`` sends an odd edge ``(y, z)`` with label ``2k+1`` to the group
element ``(zy)^k``.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import graphs
from .coxeter import INF, CoxeterMatrix, is_even, is_odd_edge, odd_component, odd_graph
from .errors import InconsistencyError, InputError, PreconditionError
from .oracle import TOL, RootIndex, order_of_product

DEFAULT_MAX_PATH_LEN = 16
DEFAULT_MAX_STATES = 2000


# -- the groupoid action ------------------------------------------------------

def _reflection_matrix(cm: CoxeterMatrix, s) -> np.ndarray:
    i = cm.index(s)
    mat = np.eye(len(cm))
    mat[i, :] -= 2.0 * cm.gram()[i]
    return mat


def word_matrix(cm: CoxeterMatrix, word: Iterable) -> np.ndarray:
    """Matrix of ``s1 s2 ... sr`` acting on coefficient vectors."""
    out = np.eye(len(cm))
    for s in word:
        out = out @ _reflection_matrix(cm, s)
    return out


def edge_word(cm: CoxeterMatrix, y, z) -> list:
    m = cm.m(y, z)
    if not is_odd_edge(m):
        raise InputError(f"({y}, {z}) is not an edge of the odd Coxeter graph (label {m})")
    return [z, y] * ((m - 1) // 2)


def pi_word(cm: CoxeterMatrix, path: Iterable) -> list:
    path = tuple(path)
    cm.check(*path)
    word = []
    for y, z in zip(path, path[1:]):
        word += edge_word(cm, y, z)
    return word


def pi_action(cm: CoxeterMatrix, path: Iterable) -> np.ndarray:
    """Linear action of the element attached to an odd-graph path."""
    return word_matrix(cm, pi_word(cm, path))


def apply_word(cm: CoxeterMatrix, word: Iterable, v) -> np.ndarray:
    """``s1 s2 ... sr . v``, one reflection at a time.

    Much better conditioned than multiplying matrices first: every
    intermediate vector is a root, so there is no cancellation between
    huge matrix entries.
    """
    form = cm.gram()
    v = np.array(v, dtype=float)
    for s in reversed(list(word)):
        i = cm.index(s)
        v[i] -= 2.0 * (form[i] @ v)
    return v


def _edge_matrix(cm: CoxeterMatrix, y, z) -> np.ndarray:
    # (zy)^k lies in a finite dihedral group, so its matrix stays small
    cache = cm.__dict__.setdefault("_edge_matrices", {})
    if (y, z) not in cache:
        cache[(y, z)] = word_matrix(cm, edge_word(cm, y, z))
    return cache[(y, z)]


def path_root(cm: CoxeterMatrix, path: Iterable, pair) -> np.ndarray:
    """``pi(path) . tilde_alpha(pair)``, applied edge by edge to the vector."""
    path = tuple(path)
    v = tilde_alpha(cm, pair)
    for y, z in reversed(list(zip(path, path[1:]))):
        v = _edge_matrix(cm, y, z) @ v
    return v


# -- pairs and tilde alpha ------------------------------------------------------

def tilde_alpha(cm: CoxeterMatrix, pair) -> np.ndarray:
    """Unit root in span(a_o, a_d), orthogonal to a_o, with non-negative coefficients."""
    o, d = pair
    m = cm.m(o, d)
    if o == d or not is_even(m):
        raise InputError(f"pair ({o}, {d}) needs an even finite label, got {m}")
    v = np.zeros(len(cm))
    v[cm.index(o)] = math.cos(math.pi / m)
    v[cm.index(d)] = 1.0
    return v / math.sin(math.pi / m)


def tilde_word(pair, m) -> list:
    """Word ``(d o)^(k-1) d`` for label ``m = 2k``: the reflection along ``tilde_alpha``."""
    o, d = pair
    return [d, o] * (m // 2 - 1) + [d]


def perp_pairs(cm: CoxeterMatrix, x, within: Iterable | None = None) -> list[tuple]:
    """Ordered pairs (mover, support) with the mover in the odd component of ``x``."""
    gens = cm.generators if within is None else tuple(cm.sort(within))
    comp = graphs.connected_component(odd_graph(cm, gens), x)
    return [
        (o, d) for o in cm.sort(comp) for d in gens
        if d != o and is_even(cm.m(o, d))
    ]


def _check_pair(cm, x, pair, within=None):
    o, d = pair
    cm.check(x, o, d)
    if pair not in perp_pairs(cm, x, within):
        raise InputError(f"({o}, {d}) is not an admissible pair for {x}")


# -- moves ------------------------------------------------------------------------

@dataclass(frozen=True)
class Move:
    kind: str          # "sliding" or "switching"
    source: tuple
    target: tuple
    at: object         # vertex slid to, or switched at
    trace: tuple

    def inverse(self) -> "Move":
        if self.kind == "sliding":
            return Move("sliding", self.target, self.source, self.source[0], graphs.invert_path(self.trace))
        return Move("switching", self.target, self.source, self.at, graphs.invert_path(self.trace))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "from": list(self.source), "to": list(self.target),
                "at": self.at, "trace": list(self.trace)}


def _moves(cm: CoxeterMatrix, pair, within=None) -> list[Move]:
    o, d = pair
    if cm.m(o, d) != 2:
        return []
    pool = cm.generators if within is None else cm.sort(within)
    out = []
    for z in pool:
        if z in (o, d):
            continue
        moz, mdz = cm.m(o, z), cm.m(d, z)
        if is_odd_edge(moz) and mdz == 2:
            out.append(Move("sliding", pair, (z, d), z, (o, z)))
        if moz == 3 and mdz == 3:
            out.append(Move("switching", pair, (d, o), z, (o, z, d)))
    return out


def available_moves(cm: CoxeterMatrix, x, pair, within=None) -> list[Move]:
    """All slidings and switchings leaving ``pair``."""
    _check_pair(cm, x, pair, within)
    return _moves(cm, tuple(pair), within)


# -- the eleven local configurations ------------------------------------------------

@dataclass(frozen=True)
class Configuration:
    name: str
    target: str        # "keep": (o, z), q=(o); "slide": (z, d), q=(o, z); "switch": (d, o), q=(o, z, d)
    order: object      # int, or "c" meaning the support-z label

    def resolve(self, pair, z, labels):
        o, d = pair
        if self.target == "keep":
            zeta, q = (o, z), (o,)
        elif self.target == "slide":
            zeta, q = (z, d), (o, z)
        else:
            zeta, q = (d, o), (o, z, d)
        k = labels[2] if self.order == "c" else self.order
        return zeta, q, k


CONFIGURATIONS = {
    "I": Configuration("I", "keep", "c"),
    "II": Configuration("II", "keep", 2),
    "III": Configuration("III", "keep", 4),
    "IV": Configuration("IV", "slide", 1),
    "V": Configuration("V", "switch", 1),
    "VI": Configuration("VI", "switch", 2),
    "VII": Configuration("VII", "switch", 2),
    "VIII": Configuration("VIII", "slide", 2),
    "IX": Configuration("IX", "keep", 2),
    "X": Configuration("X", "keep", 4),
    "XI": Configuration("XI", "slide", 2),
}


def classify_configuration(a, b, c) -> str | None:
    """Name of the pattern for labels a = m(o,d), b = m(o,z), c = m(d,z)."""
    if a == 2:
        if b == 2 and c != INF:
            return "I"
        if is_even(b) and c == 2:
            return "II"
        if (b, c) == (4, 3):
            return "III"
        if is_odd_edge(b) and c == 2:
            return "IV"
        return {(3, 3): "V", (3, 5): "VI", (5, 3): "VII", (3, 4): "VIII"}.get((b, c))
    if is_even(a):
        if (b, c) == (2, 2):
            return "IX"
        if a == 4:
            return {(2, 3): "X", (3, 2): "XI"}.get((b, c))
    return None


@dataclass(frozen=True)
class Relation:
    configuration: str
    z: object
    target: tuple
    trace: tuple
    order: int


def _relations(cm, pair, within=None) -> list[Relation]:
    o, d = pair
    pool = cm.generators if within is None else cm.sort(within)
    out = []
    for z in pool:
        if z in (o, d):
            continue
        labels = (cm.m(o, d), cm.m(o, z), cm.m(d, z))
        name = classify_configuration(*labels)
        if name is None:
            continue
        zeta, q, k = CONFIGURATIONS[name].resolve(pair, z, labels)
        out.append(Relation(name, z, zeta, q, k))
    return out


def relation_configurations(cm: CoxeterMatrix, x, pair, within=None) -> list[Relation]:
    """Every third generator ``z`` completing ``pair`` to one of patterns I-XI."""
    _check_pair(cm, x, pair, within)
    return _relations(cm, tuple(pair), within)


# -- generator enumeration ----------------------------------------------------------

@dataclass(eq=False)
class GeneratorElement:
    pair: tuple
    path: tuple
    root: np.ndarray

    def word(self, cm: CoxeterMatrix) -> list:
        conj = pi_word(cm, self.path)
        return conj + tilde_word(self.pair, cm.m(*self.pair)) + conj[::-1]

    def to_dict(self, cm: CoxeterMatrix, digits: int = 9) -> dict:
        return {
            "pair": list(self.pair),
            "path": list(self.path),
            "root": {g: round(float(c), digits) for g, c in zip(cm.generators, self.root) if abs(c) > TOL},
            "word": self.word(cm),
        }


@dataclass
class GeneratorSet:
    x: object
    elements: list
    saturated: bool
    loops: list = field(default_factory=list)
    max_path_len: int = DEFAULT_MAX_PATH_LEN
    rank: int = 0

    def __len__(self):
        return len(self.elements)

    @property
    def roots(self) -> np.ndarray:
        if not self.elements:
            return np.zeros((0, self.rank))
        return np.array([e.root for e in self.elements])


def spanning_tree_paths(cm: CoxeterMatrix, x) -> dict:
    """Tree paths from ``x`` in a BFS tree of its odd component."""
    comp = odd_component(cm, x)
    return graphs.bfs_tree_paths(odd_graph(cm, comp), x)


def fundamental_loops(cm: CoxeterMatrix, x) -> list[tuple]:
    """Free basis of closed odd paths at ``x``: one per edge outside the tree."""
    comp = odd_component(cm, x)
    g = odd_graph(cm, comp)
    tree = graphs.bfs_tree_paths(g, x)
    tree_edges = {frozenset(p[-2:]) for p in tree.values() if len(p) > 1}
    loops = []
    for u, v in g.sorted_edges():
        if frozenset((u, v)) in tree_edges:
            continue
        loops.append(graphs.reduce_path(tree[u] + (v,) + graphs.invert_path(tree[v])[1:]))
    return loops


def enumerate_generators(cm: CoxeterMatrix, x, max_path_len: int = DEFAULT_MAX_PATH_LEN,
                         max_states: int = DEFAULT_MAX_STATES) -> GeneratorSet:
    """Canonical generator roots, deduplicated by root.

    Starts from the tree-path state of every admissible pair and closes
    the set under the fundamental loops at ``x`` (and their inverses).
    The result is ``saturated`` when that closure finished inside the
    limits, which certifies that nothing is missing.
    """
    cm.check(x)
    tree = spanning_tree_paths(cm, x)
    index = RootIndex()
    elements: list[GeneratorElement] = []
    queue: deque = deque()

    for pair in perp_pairs(cm, x):
        c = tree[pair[0]]
        root = path_root(cm, c, pair)
        if index.add(root, len(elements)):
            elements.append(GeneratorElement(pair, c, root))
            queue.append(len(elements) - 1)

    loops = []
    for loop in fundamental_loops(cm, x):
        loops += [loop, graphs.invert_path(loop)]
    truncated = False
    while queue and not (truncated and len(elements) >= max_states):
        elem = elements[queue.popleft()]
        for loop in loops:
            path = graphs.compose_paths(loop, elem.path)
            root = path_root(cm, path, elem.pair)
            if not np.isfinite(root).all():
                truncated = True
                continue
            if index.get(root) is not None:
                continue
            if len(path) - 1 > max_path_len or len(elements) >= max_states:
                truncated = True
                continue
            index.add(root, len(elements))
            elements.append(GeneratorElement(elem.pair, path, root))
            queue.append(len(elements) - 1)
    return GeneratorSet(x, elements, not truncated, loops, max_path_len, len(cm))


# -- presentation -------------------------------------------------------------------

@dataclass
class Presentation:
    generators: GeneratorSet
    chain: list        # orders from the relation table
    numeric: list      # orders from root inner products

    @property
    def matrix(self) -> list:
        return self.chain

    def to_dict(self, cm) -> dict:
        return {
            "generators": [e.to_dict(cm) for e in self.generators.elements],
            "matrix": [[_fmt_order(k) for k in row] for row in self.chain],
            "numeric": [[_fmt_order(k) for k in row] for row in self.numeric],
        }


def _fmt_order(k):
    return "inf" if k == INF else k


def presentation(cm: CoxeterMatrix, x, max_path_len: int = DEFAULT_MAX_PATH_LEN,
                 max_states: int = DEFAULT_MAX_STATES, members_per_class: int = 400) -> Presentation:
    """Coxeter matrix on the enumerated generators, computed two ways.

    ``chain``: for each generator class, walk its members through moves and
    read off the order ``k`` of every relation leaving it.  ``numeric``:
    the order of the product of the two reflections from their roots.
    Any disagreement raises :class:`InconsistencyError`.
    """
    gens = enumerate_generators(cm, x, max_path_len, max_states)
    if not gens.saturated:
        raise PreconditionError(
            f"generator enumeration for {x} is not saturated (max path length {max_path_len}); "
            "the presentation would be incomplete"
        )
    n = len(gens)
    index = RootIndex()
    for i, e in enumerate(gens.elements):
        index.add(e.root, i)

    def class_of(pair, path):
        hit = index.get(path_root(cm, path, pair))
        if hit is None:
            raise InconsistencyError(f"root of state {pair}, {path} is not among the enumerated generators")
        return hit

    chain = [[INF] * n for _ in range(n)]
    for a, elem in enumerate(gens.elements):
        chain[a][a] = 1
        start = (elem.pair, elem.path)
        seen = {start}
        queue = deque([(elem.pair, elem.path)])
        while queue:
            pair, path = queue.popleft()
            for rel in _relations(cm, pair):
                new_path = graphs.compose_paths(path, rel.trace)
                b = class_of(rel.target, new_path)
                if rel.order == 1:
                    if b != a:
                        raise InconsistencyError(f"move {pair}->{rel.target} changed the reflection")
                    state = (rel.target, new_path)
                    if state not in seen and len(new_path) - 1 <= max_path_len and len(seen) < members_per_class:
                        seen.add(state)
                        queue.append((rel.target, new_path))
                    continue
                if b == a:
                    raise InconsistencyError(f"relation of order {rel.order} inside one generator class")
                for i, j in ((a, b), (b, a)):
                    if chain[i][j] not in (INF, rel.order):
                        raise InconsistencyError(
                            f"generators {i} and {j} related with orders {chain[i][j]} and {rel.order}"
                        )
                    chain[i][j] = rel.order

    form = cm.gram()
    numeric = [[1 if i == j else order_of_product(form, gens.elements[i].root, gens.elements[j].root)
                for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if chain[i][j] != numeric[i][j]:
                raise InconsistencyError(
                    f"order of generators {i},{j}: relation table gives {chain[i][j]}, "
                    f"root geometry gives {numeric[i][j]}"
                )
    return Presentation(gens, chain, numeric)


# -- closed move sequences ------------------------------------------------------------

@dataclass
class ClosedMoveSequence:
    moves: list
    trace: tuple

    def to_dict(self) -> dict:
        return {"moves": [m.to_dict() for m in self.moves], "trace": list(self.trace)}


def minimal_closed_move_sequence(cm: CoxeterMatrix, x, pair, max_moves: int = 256, within=None):
    """Shortest non-empty non-backtracking move sequence from ``pair`` back to itself.

    Returns ``None`` if there is none with at most ``max_moves`` moves.
    """
    _check_pair(cm, x, pair, within)
    pair = tuple(pair)
    start = (pair, None)
    parent = {start: None}
    queue = deque([(start, 0)])
    while queue:
        node, dist = queue.popleft()
        if dist >= max_moves:
            continue
        here, last = node
        for mv in _moves(cm, here, within):
            if last is not None and mv == last.inverse():
                continue
            nxt = (mv.target, mv)
            if mv.target == pair:
                moves = [mv]
                cur = node
                while parent[cur] is not None:
                    moves.append(cur[1])
                    cur = parent[cur]
                moves.reverse()
                trace = (pair[0],)
                for m in moves:
                    trace = graphs.compose_paths(trace, m.trace)
                return ClosedMoveSequence(moves, trace)
            if nxt not in parent:
                parent[nxt] = node
                queue.append((nxt, dist + 1))
    return None


def reachable_moves(cm: CoxeterMatrix, x, pair, within=None) -> tuple[list, list]:
    """Pairs reachable from ``pair`` by moves, and every move between them."""
    _check_pair(cm, x, pair, within)
    pair = tuple(pair)
    seen = [pair]
    moves = []
    queue = deque([pair])
    while queue:
        here = queue.popleft()
        for mv in _moves(cm, here, within):
            moves.append(mv)
            if mv.target not in seen:
                seen.append(mv.target)
                queue.append(mv.target)
    return seen, moves


def realized_loops(cm: CoxeterMatrix, x, pair, within=None) -> list[tuple]:
    """Generators of the loops at the mover realized by moves from ``pair`` to itself.

    Empty exactly when no non-trivial element is realized.
    """
    _check_pair(cm, x, pair, within)
    pair = tuple(pair)
    trace = {pair: (pair[0],)}
    queue = deque([pair])
    loops = []
    while queue:
        here = queue.popleft()
        for mv in _moves(cm, here, within):
            reached = graphs.compose_paths(trace[here], mv.trace)
            if mv.target not in trace:
                trace[mv.target] = reached
                queue.append(mv.target)
                continue
            loop = graphs.compose_paths(reached, graphs.invert_path(trace[mv.target]))
            if len(loop) > 1 and loop not in loops:
                loops.append(loop)
    return loops


def winding_number(trace: tuple, cycle: tuple) -> int:
    """Signed number of turns a closed path makes around the cycle ``cycle``."""
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    if trace[0] != trace[-1]:
        raise InputError("winding number needs a closed path")
    steps = 0
    for a, b in zip(trace, trace[1:]):
        diff = (pos[b] - pos[a]) % n
        if diff == 1:
            steps += 1
        elif diff == n - 1:
            steps -= 1
        else:
            raise InputError(f"step {a}->{b} leaves the cycle")
    if steps % n:
        raise InconsistencyError("closed path with fractional winding")
    return steps // n
