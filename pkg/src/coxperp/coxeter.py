"""Coxeter matrices, Coxeter graphs, odd Coxeter graphs and the sets O, E, O2."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import graphs
from .errors import InputError

INF = math.inf


def is_even(m) -> bool:
    return m != INF and m % 2 == 0


def is_odd_edge(m) -> bool:
    """Labels that survive in the odd Coxeter graph."""
    return m != INF and m >= 3 and m % 2 == 1


def format_label(m) -> str:
    return "inf" if m == INF else str(int(m))


class CoxeterMatrix:
    """Symmetric Coxeter matrix over opaque string generators.

    Unspecified off-diagonal entries default to 2.  ``INF`` marks a free
    product of the two generators.
    """

    def __init__(self, generators: Iterable[str], entries: Mapping | None = None):
        gens = tuple(generators)
        if len(set(gens)) != len(gens):
            raise InputError("duplicate generator")
        self.generators = gens
        self._index = {g: i for i, g in enumerate(gens)}
        self._m: dict[frozenset, object] = {}
        for (s, t), value in (entries or {}).items():
            self._set(s, t, value)
        self._gram = None

    def _set(self, s, t, value):
        self.check(s, t)
        if s == t:
            if value != 1:
                raise InputError(f"m({s},{s}) must be 1")
            return
        if value != INF:
            if int(value) != value:
                raise InputError(f"m({s},{t}) must be an integer or inf")
            value = int(value)
            if value < 2:
                raise InputError(f"m({s},{t}) = {value} is below 2")
        key = frozenset((s, t))
        old = self._m.get(key)
        if old is not None and old != value:
            raise InputError(f"conflicting values for m({s},{t})")
        self._m[key] = value

    # -- basic access -----------------------------------------------------

    def check(self, *gens):
        for g in gens:
            if g not in self._index:
                raise InputError(f"unknown generator {g!r}")

    def index(self, s) -> int:
        self.check(s)
        return self._index[s]

    def m(self, s, t):
        if s == t:
            self.check(s)
            return 1
        self.check(s, t)
        return self._m.get(frozenset((s, t)), 2)

    def __len__(self):
        return len(self.generators)

    def __eq__(self, other):
        if not isinstance(other, CoxeterMatrix):
            return NotImplemented
        if self.generators != other.generators:
            return False
        return all(self.m(s, t) == other.m(s, t) for s, t in self.pairs())

    def __repr__(self):
        body = ", ".join(f"{s}{t}:{format_label(m)}" for s, t, m in self.labelled_pairs() if m != 2)
        return f"CoxeterMatrix({list(self.generators)}; {body})"

    def pairs(self):
        gens = self.generators
        for i, s in enumerate(gens):
            for t in gens[i + 1:]:
                yield s, t

    def labelled_pairs(self):
        for s, t in self.pairs():
            yield s, t, self.m(s, t)

    def sort(self, gens: Iterable) -> list:
        return sorted(gens, key=self.index)

    def as_array(self) -> np.ndarray:
        n = len(self)
        out = np.ones((n, n))
        for s, t, m in self.labelled_pairs():
            i, j = self._index[s], self._index[t]
            out[i, j] = out[j, i] = m
        return out

    def gram(self) -> np.ndarray:
        """Bilinear form <a_s, a_t> = -cos(pi/m), or -1 when m is infinite."""
        if self._gram is None:
            m = self.as_array()
            with np.errstate(divide="ignore"):
                g = np.where(np.isinf(m), -1.0, -np.cos(np.pi / m))
            np.fill_diagonal(g, 1.0)
            g.setflags(write=False)
            self._gram = g
        return self._gram

    # -- derived objects --------------------------------------------------

    def relabel(self, mapping: Mapping) -> "CoxeterMatrix":
        new_gens = [mapping[g] for g in self.generators]
        return CoxeterMatrix(new_gens, {(mapping[s], mapping[t]): m for s, t, m in self.labelled_pairs()})

    def reorder(self, generators: Iterable) -> "CoxeterMatrix":
        gens = tuple(generators)
        if sorted(gens) != sorted(self.generators):
            raise InputError("reorder needs a permutation of the generators")
        return CoxeterMatrix(gens, {(s, t): m for s, t, m in self.labelled_pairs()})

    def restrict(self, subset: Iterable) -> "CoxeterMatrix":
        keep = set(subset)
        self.check(*keep)
        gens = [g for g in self.generators if g in keep]
        return CoxeterMatrix(gens, {(s, t): self.m(s, t) for i, s in enumerate(gens) for t in gens[i + 1:]})

    def coxeter_graph(self, subset: Iterable | None = None) -> graphs.Graph:
        verts = self._subset(subset)
        edges = [(s, t) for i, s in enumerate(verts) for t in verts[i + 1:] if self.m(s, t) >= 3]
        return graphs.Graph.from_edges(verts, edges)

    def _subset(self, subset) -> tuple:
        if subset is None:
            return self.generators
        keep = set(subset)
        self.check(*keep)
        return tuple(g for g in self.generators if g in keep)


@dataclass(frozen=True)
class OuterSets:
    O: frozenset
    E: frozenset
    O2: dict
    # pairs (y, s), y in O, s in E, whose label is neither even nor inf;
    # always empty for a valid Coxeter matrix
    odd_cross_pairs: tuple = ()


def odd_graph(cm: CoxeterMatrix, subset: Iterable | None = None) -> graphs.Graph:
    """Coxeter graph restricted to ``subset`` with even and infinite edges removed."""
    verts = cm._subset(subset)
    edges = [(s, t) for i, s in enumerate(verts) for t in verts[i + 1:] if is_odd_edge(cm.m(s, t))]
    return graphs.Graph.from_edges(verts, edges)


def odd_component(cm: CoxeterMatrix, x) -> frozenset:
    cm.check(x)
    return graphs.connected_component(odd_graph(cm), x)


def outer_sets(cm: CoxeterMatrix, x) -> OuterSets:
    O = odd_component(cm, x)
    E = frozenset(
        s for s in cm.generators if s not in O and any(cm.m(y, s) != INF for y in O)
    )
    O2 = {s: frozenset(y for y in O if cm.m(y, s) == 2) for s in cm.sort(E)}
    bad = tuple(
        (y, s) for s in cm.sort(E) for y in cm.sort(O)
        if not (is_even(cm.m(y, s)) or cm.m(y, s) == INF)
    )
    return OuterSets(O=O, E=E, O2=O2, odd_cross_pairs=bad)


def even_pairs(cm: CoxeterMatrix, subset: Iterable) -> list[tuple]:
    """Unordered pairs inside ``subset`` with an even label, in generator order."""
    verts = cm.sort(subset)
    return [(s, t) for i, s in enumerate(verts) for t in verts[i + 1:] if is_even(cm.m(s, t))]


def is_type_A_tilde(cm: CoxeterMatrix, k: Iterable) -> bool:
    """Coxeter graph on ``k`` is a single cycle with all labels 3."""
    k = frozenset(k)
    if len(k) < 3:
        return False
    g = cm.coxeter_graph(k)
    if not graphs.is_connected(g):
        return False
    if any(len(g.neighbors(v)) != 2 for v in g.vertices):
        return False
    return all(cm.m(*tuple(e)) == 3 for e in g.edges)


def is_bipyramid(cm: CoxeterMatrix, k: Iterable):
    """Return the commuting apex pair ``(y1, y2)`` of a bipyramid, else ``None``.

    The apexes commute, are joined by 3 to every other vertex of ``k``, and
    the remaining vertices are pairwise joined by infinity.
    """
    k = cm.sort(k)
    if len(k) < 4:
        return None
    for i, y1 in enumerate(k):
        for y2 in k[i + 1:]:
            if cm.m(y1, y2) != 2:
                continue
            rest = [s for s in k if s not in (y1, y2)]
            if not all(cm.m(y, s) == 3 for y in (y1, y2) for s in rest):
                continue
            if all(cm.m(s, t) == INF for j, s in enumerate(rest) for t in rest[j + 1:]):
                return (y1, y2)
    return None
