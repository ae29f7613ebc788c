"""Brute-force root system of the geometric representation.

Everything here is depth-limited: ``enumerate_roots(cm, d)`` returns the
roots ``w . a_s`` with ``len(w) <= d``.  Results carry ``complete=True``
only when the enumeration closed up (finite W), so a truncated set is
never mistaken for the whole root system.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coxeter import CoxeterMatrix
from .errors import LimitExceeded, PreconditionError

TOL = 1e-7
GRID = 1e-6
DEFAULT_DEPTH = 12
DEFAULT_ROOT_CAP = 10**6
# probe the other rounding when a coefficient sits this close to a cell edge
_PROBE_BAND = 0.05


class RootIndex:
    """Tolerant hash of real vectors on a ``GRID`` lattice.

    Coefficients that land near a rounding boundary are also looked up in
    the neighbouring cell, so two copies of one root computed along
    different words still collide.
    """

    def __init__(self, grid: float = GRID):
        self.grid = grid
        self._table: dict = {}

    def __len__(self):
        return len(self._table)

    @staticmethod
    def _pack(cells: np.ndarray):
        if np.abs(cells).max(initial=0.0) < 2.0**62:
            return cells.astype(np.int64).tobytes()
        # exponentially large roots (long words in infinite groups)
        return tuple(int(c) for c in cells)

    def _keys(self, v: np.ndarray):
        q = np.asarray(v, dtype=float) / self.grid
        if not np.isfinite(q).all():
            raise LimitExceeded("root coefficients overflowed")
        base = np.rint(q)
        yield self._pack(base)
        frac = q - base
        near = np.flatnonzero(np.abs(frac) > 0.5 - _PROBE_BAND)
        if near.size:
            steps = np.sign(frac[near])
            for mask in itertools.product((0, 1), repeat=near.size):
                if not any(mask):
                    continue
                alt = base.copy()
                alt[near] += steps * np.array(mask)
                yield self._pack(alt)

    def get(self, v: np.ndarray):
        for key in self._keys(v):
            hit = self._table.get(key)
            if hit is not None:
                return hit
        return None

    def add(self, v: np.ndarray, value: int) -> bool:
        """Insert unless present; returns True when inserted."""
        if self.get(v) is not None:
            return False
        self._table[next(self._keys(v))] = value
        return True


@dataclass(frozen=True)
class RootSet:
    """Roots as rows of ``roots`` (coefficients in generator order)."""

    roots: np.ndarray
    generators: tuple
    depth: int
    complete: bool

    @property
    def depth_limited(self) -> bool:
        return not self.complete

    def __len__(self):
        return len(self.roots)

    def as_dicts(self, digits: int = 9) -> list[dict]:
        return [
            {g: round(float(c), digits) for g, c in zip(self.generators, row) if abs(c) > TOL}
            for row in self.roots
        ]


def bilinear_form(cm: CoxeterMatrix) -> np.ndarray:
    return cm.gram()


def pairing(form: np.ndarray, u, v) -> float:
    return float(np.asarray(u) @ form @ np.asarray(v))


def reflect(form: np.ndarray, gamma, v) -> np.ndarray:
    """``s_gamma . v = v - 2 <gamma, v> gamma`` for a unit vector ``gamma``."""
    gamma = np.asarray(gamma, dtype=float)
    norm = pairing(form, gamma, gamma)
    if abs(norm - 1.0) > TOL * max(1.0, float(np.abs(gamma).max()) ** 2):
        raise PreconditionError(f"reflection vector has <g,g> = {norm}, expected 1")
    v = np.asarray(v, dtype=float)
    return v - 2.0 * pairing(form, gamma, v) * gamma


def is_positive(v) -> bool:
    # roots have sign-uniform coefficients, so the sum decides the sign
    return float(np.sum(v)) > 0.0


def sign_uniform(v, tol: float = TOL) -> bool:
    v = np.asarray(v)
    scale = max(1.0, float(np.abs(v).max()))
    return bool((v >= -tol * scale).all() or (v <= tol * scale).all())


def enumerate_roots(cm: CoxeterMatrix, depth: int = DEFAULT_DEPTH, cap: int = DEFAULT_ROOT_CAP) -> RootSet:
    """All roots ``w . a_s`` with ``len(w) <= depth``, positive and negative."""
    if depth < 0:
        raise PreconditionError("depth must be non-negative")
    n = len(cm)
    form = cm.gram()
    index = RootIndex()
    rows = [np.eye(n)[i] for i in range(n)]
    for i, r in enumerate(rows):
        index.add(r, i)
    frontier = np.eye(n)
    complete = False
    for _ in range(depth):
        found = []
        for s in range(n):
            images = frontier.copy()
            images[:, s] -= 2.0 * (frontier @ form[s])
            for row in images:
                if index.add(row, len(rows)):
                    rows.append(row)
                    found.append(row)
                    if len(rows) > cap:
                        raise LimitExceeded(f"more than {cap} roots at depth {depth}")
        if not found:
            complete = True
            break
        frontier = np.array(found)
    else:
        # one more level tells whether the set is already closed
        complete = _closed(frontier, form, index)
    return RootSet(np.array(rows), cm.generators, depth, complete)


def _closed(frontier, form, index) -> bool:
    for s in range(form.shape[0]):
        images = frontier.copy()
        images[:, s] -= 2.0 * (frontier @ form[s])
        if any(index.get(row) is None for row in images):
            return False
    return True


def positive_roots(roots: RootSet) -> RootSet:
    mask = roots.roots.sum(axis=1) > 0
    return RootSet(roots.roots[mask], roots.generators, roots.depth, roots.complete)


def perp_positive_roots(cm: CoxeterMatrix, x, depth: int = DEFAULT_DEPTH, cap: int = DEFAULT_ROOT_CAP,
                        roots: RootSet | None = None) -> RootSet:
    """Enumerated positive roots orthogonal to ``a_x``."""
    i = cm.index(x)
    pos = positive_roots(roots if roots is not None else enumerate_roots(cm, depth, cap))
    r = pos.roots
    pair = r @ cm.gram()[i]
    scale = np.maximum(1.0, np.abs(r).max(axis=1)) if len(r) else np.ones(0)
    mask = np.abs(pair) <= TOL * scale
    return RootSet(r[mask], pos.generators, pos.depth, pos.complete)


def canonical_generators(cm: CoxeterMatrix, x, depth: int = DEFAULT_DEPTH, cap: int = DEFAULT_ROOT_CAP,
                         roots: RootSet | None = None) -> RootSet:
    """Canonical simple roots of the reflection subgroup perpendicular to ``a_x``.

    A perpendicular positive root ``g`` is kept iff ``s_g`` sends every other
    enumerated perpendicular positive root to a positive root.  Only
    roots with ``<g, d> > 0`` can change sign, so only those are checked.
    """
    perp = perp_positive_roots(cm, x, depth, cap, roots)
    P = perp.roots
    if len(P) == 0:
        return perp
    form = cm.gram()
    G = P @ form @ P.T
    scale = np.maximum(1.0, np.abs(P).max(axis=1))
    keep = []
    for i in range(len(P)):
        cand = np.flatnonzero(G[i] > TOL * scale)
        cand = cand[cand != i]
        if cand.size:
            images = P[cand] - 2.0 * G[i, cand][:, None] * P[i][None, :]
            if (images.sum(axis=1) < 0).any():
                continue
        keep.append(i)
    return RootSet(P[keep], perp.generators, perp.depth, perp.complete)


def order_of_product(form: np.ndarray, gamma, delta, max_order: int = 64, tol: float = TOL):
    """Order of ``s_gamma s_delta`` read off from ``<gamma, delta>``.

    Returns 1 for ``d = +-g``, ``math.inf`` for other ``|<g,d>| >= 1``, an
    ``int`` for finite order, or ``None`` when
    the angle is not a rational multiple of pi with denominator
    ``<= max_order``.
    """
    gamma, delta = np.asarray(gamma, dtype=float), np.asarray(delta, dtype=float)
    scale = max(1.0, float(np.abs(gamma).max()), float(np.abs(delta).max()))
    if np.abs(gamma - delta).max() <= tol * scale or np.abs(gamma + delta).max() <= tol * scale:
        return 1  # same reflection
    c = pairing(form, gamma, delta)
    if abs(c) >= 1.0 - tol:
        return math.inf
    theta = math.acos(-c) / math.pi
    frac = Fraction(theta).limit_denominator(max_order)
    if abs(float(frac) - theta) > 1e-6:
        return None
    return frac.denominator
