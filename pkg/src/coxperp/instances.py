"""Named Coxeter systems used by the self-test and the test-suite."""
from __future__ import annotations

from .coxeter import INF, CoxeterMatrix


def type_A(n: int) -> CoxeterMatrix:
    gens = [str(i) for i in range(1, n + 1)]
    return CoxeterMatrix(gens, {(gens[i], gens[i + 1]): 3 for i in range(n - 1)})


def dihedral(m, s: str = "s", t: str = "t") -> CoxeterMatrix:
    return CoxeterMatrix([s, t], {(s, t): m})


def affine_A(n: int) -> CoxeterMatrix:
    """Cycle y0 ... y_{n-1} with every edge 3 (type A-tilde_{n-1})."""
    gens = [f"y{i}" for i in range(n)]
    return CoxeterMatrix(gens, {(gens[i], gens[(i + 1) % n]): 3 for i in range(n)})


def diamond() -> CoxeterMatrix:
    """Four-cycle with commuting apexes y1, y2 and an infinite diagonal t-b."""
    return CoxeterMatrix(
        ["y1", "t", "y2", "b"],
        {("y1", "t"): 3, ("t", "y2"): 3, ("y2", "b"): 3, ("b", "y1"): 3, ("t", "b"): INF},
    )


def bipyramid(apex_count: int) -> CoxeterMatrix:
    """Commuting y1, y2 joined by 3 to ``apex_count`` pairwise free vertices."""
    rim = [f"u{i}" for i in range(apex_count)]
    entries = {(y, u): 3 for y in ("y1", "y2") for u in rim}
    entries.update({(a, b): INF for i, a in enumerate(rim) for b in rim[i + 1:]})
    return CoxeterMatrix(["y1", "y2", *rim], entries)


def odd_triangle_pendant() -> CoxeterMatrix:
    """Triangle a, b, c with labels 3 and d commuting with a, free with b and c."""
    return CoxeterMatrix(
        ["a", "b", "c", "d"],
        {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3, ("b", "d"): INF, ("c", "d"): INF},
    )


NAMED = {
    "A3": (type_A(3), "1"),
    "B2": (dihedral(4), "s"),
    "diamond": (diamond(), "y1"),
    "G4": (odd_triangle_pendant(), "a"),
    "A~3": (affine_A(4), "y0"),
    "A~4": (affine_A(5), "y0"),
}
