import math

import numpy as np
import pytest

from coxperp import INF, CoxeterMatrix
from coxperp import coxeter, instances
from coxperp.errors import InputError


def test_defaults_and_symmetry():
    cm = CoxeterMatrix("abc", {("a", "b"): 3, ("c", "b"): INF})
    assert cm.m("a", "b") == cm.m("b", "a") == 3
    assert cm.m("a", "c") == 2
    assert cm.m("c", "b") == INF
    assert cm.m("a", "a") == 1


@pytest.mark.parametrize("entries", [{("a", "b"): 1}, {("a", "b"): 2.5}, {("a", "z"): 3}])
def test_rejects_bad_entries(entries):
    with pytest.raises(InputError):
        CoxeterMatrix("ab", entries)


def test_gram_matrix():
    cm = CoxeterMatrix("abc", {("a", "b"): 3, ("b", "c"): 4, ("a", "c"): INF})
    g = cm.gram()
    assert np.allclose(np.diag(g), 1)
    assert g[0, 1] == pytest.approx(-0.5)
    assert g[1, 2] == pytest.approx(-math.sqrt(2) / 2)
    assert g[0, 2] == -1.0
    assert np.allclose(g, g.T)


def test_odd_graph_and_sets_for_triangle_pendant():
    cm = instances.odd_triangle_pendant()
    assert coxeter.odd_graph(cm).sorted_edges() == [("a", "b"), ("a", "c"), ("b", "c")]
    outer = coxeter.outer_sets(cm, "a")
    assert outer.O == frozenset("abc")
    assert outer.E == frozenset("d")
    assert outer.O2 == {"d": frozenset("a")}
    assert outer.odd_cross_pairs == ()


def test_even_and_infinite_edges_leave_the_odd_graph():
    cm = CoxeterMatrix("abcd", {("a", "b"): 5, ("b", "c"): 4, ("c", "d"): INF, ("a", "d"): 7})
    assert coxeter.odd_graph(cm).sorted_edges() == [("a", "b"), ("a", "d")]
    assert coxeter.odd_component(cm, "b") == frozenset("abd")
    # c is reachable through an even label but not from every element of O by a finite one
    assert coxeter.outer_sets(cm, "a").E == frozenset("c")


def test_type_a_tilde_and_bipyramid_recognition():
    assert coxeter.is_type_A_tilde(instances.affine_A(4), instances.affine_A(4).generators)
    assert not coxeter.is_type_A_tilde(instances.type_A(4), instances.type_A(4).generators)
    assert coxeter.is_bipyramid(instances.diamond(), "y1 t y2 b".split()) == ("y1", "y2")
    bp = instances.bipyramid(3)
    assert coxeter.is_bipyramid(bp, bp.generators) == ("y1", "y2")
    assert coxeter.is_bipyramid(instances.affine_A(4), instances.affine_A(4).generators) is None


def test_relabel_restrict_reorder():
    cm = instances.odd_triangle_pendant()
    r = cm.relabel({"a": "p", "b": "q", "c": "r", "d": "s"})
    assert r.m("q", "s") == INF and r.m("p", "s") == 2
    sub = cm.restrict("abd")
    assert sub.generators == ("a", "b", "d") and sub.m("b", "d") == INF
    assert cm.reorder("dcba").m("a", "b") == 3
    with pytest.raises(InputError):
        cm.reorder("abc")
