import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxperp import graphs
from coxperp.errors import InputError, PreconditionError

from oracles import brute_chordless_cycles, brute_min_pre_cycle_core


def random_graph(rng, n, p):
    verts = [f"v{i}" for i in range(n)]
    edges = [(a, b) for i, a in enumerate(verts) for b in verts[i + 1:] if rng.random() < p]
    return graphs.Graph.from_edges(verts, edges)


def cycle_edges(cyc):
    return frozenset(frozenset(e) for e in zip(cyc, cyc[1:] + cyc[:1]))


def test_triangle_with_pendant():
    g = graphs.Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("a", "c"), ("c", "d")])
    assert graphs.chordless_cycles(g) == [("a", "b", "c")]
    assert graphs.cycle_core(g) == frozenset("abc")
    assert graphs.tree_decomposition(g, "abc") == {
        "a": frozenset("a"), "b": frozenset("b"), "c": frozenset("cd")}


def test_square_with_chord_has_two_triangles():
    g = graphs.Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("a", "c")])
    assert graphs.chordless_cycles(g) == [("a", "b", "c"), ("a", "c", "d")]


def test_two_cycles_joined_by_path():
    # the connecting path belongs to the core, the pendant does not
    edges = [("a", "b"), ("b", "c"), ("c", "a"), ("c", "p"), ("p", "q"), ("q", "d"),
             ("d", "e"), ("e", "f"), ("f", "d"), ("a", "z")]
    g = graphs.Graph.from_edges("abcpqdefz", edges)
    assert graphs.cycle_core(g) == frozenset("abcpqdef")


def test_cycle_core_preconditions():
    tree = graphs.Graph.from_edges("abc", [("a", "b"), ("b", "c")])
    with pytest.raises(PreconditionError):
        graphs.cycle_core(tree)
    split = graphs.Graph.from_edges("abcd", [("a", "b"), ("b", "c"), ("a", "c")])
    with pytest.raises(PreconditionError):
        graphs.cycle_core(split)


def test_chordless_cycles_match_dfs_oracle():
    rng = random.Random(7)
    for _ in range(150):
        g = random_graph(rng, rng.randint(3, 8), rng.uniform(0.2, 0.7))
        ours = {cycle_edges(list(c)) for c in graphs.chordless_cycles(g)}
        ref = brute_chordless_cycles(list(g.vertices), g.sorted_edges())
        assert ours == ref


def test_has_cycle_agrees_with_chordless_cycles():
    rng = random.Random(8)
    for _ in range(200):
        g = random_graph(rng, rng.randint(1, 9), rng.uniform(0.05, 0.5))
        assert graphs.has_cycle(g) == bool(graphs.chordless_cycles(g))


def test_cycle_core_against_subset_oracle_and_decomposition():
    rng = random.Random(9)
    checked = 0
    while checked < 60:
        g = random_graph(rng, rng.randint(4, 8), rng.uniform(0.2, 0.5))
        if not graphs.is_connected(g) or not graphs.has_cycle(g):
            continue
        checked += 1
        core = graphs.cycle_core(g)
        assert brute_min_pre_cycle_core(list(g.vertices), g.sorted_edges()) == [core]
        assert graphs.is_pre_cycle_core(g, core)
        parts = graphs.tree_decomposition(g, core)
        assert set().union(*parts.values()) == set(g.vertices)
        assert sum(len(p) for p in parts.values()) == len(g.vertices)
        for k, part in parts.items():
            assert part & core == {k}
            tree = g.induced(part)
            assert graphs.is_connected(tree) and not graphs.has_cycle(tree)


def test_cycle_core_is_convex():
    # any path between core vertices that leaves the core must come back the same way
    rng = random.Random(10)
    for _ in range(40):
        g = random_graph(rng, 7, 0.35)
        if not graphs.is_connected(g) or not graphs.has_cycle(g):
            continue
        core = graphs.cycle_core(g)
        for v in set(g.vertices) - core:
            outside = g.induced(set(g.vertices) - core)
            comp = graphs.connected_component(outside, v)
            attach = {w for u in comp for w in g.neighbors(u) if w in core}
            assert len(attach) == 1


def test_reduce_path():
    assert graphs.reduce_path(("a", "b", "a")) == ("a",)
    assert graphs.reduce_path(("a", "b", "c", "b", "d")) == ("a", "b", "d")
    assert graphs.reduce_path(("a", "b", "c", "b", "a", "e")) == ("a", "e")
    with pytest.raises(InputError):
        graphs.reduce_path(("a", "a"))
    g = graphs.Graph.from_edges("abc", [("a", "b")])
    with pytest.raises(InputError):
        graphs.reduce_path(("a", "c"), g)


def test_path_power():
    loop = ("a", "b", "c", "a")
    assert graphs.path_power(loop, 0) == ("a",)
    assert graphs.path_power(loop, 2) == ("a", "b", "c", "a", "b", "c", "a")
    assert graphs.path_power(loop, -1) == ("a", "c", "b", "a")
    with pytest.raises(InputError):
        graphs.path_power(("a", "b"), 2)


# -- groupoid laws on the complete graph K4 ---------------------------------------

K4 = "abcd"
walks = st.lists(st.sampled_from(K4), min_size=1, max_size=12).map(
    lambda vs: tuple(v for i, v in enumerate(vs) if i == 0 or v != vs[i - 1]))


def closed_at(start):
    def close(w):
        w = (start,) + w if w[0] != start else w
        return w + (start,) if w[-1] != start else w
    return walks.map(close)


@settings(max_examples=200, deadline=None)
@given(walks, walks, walks)
def test_composition_is_associative(p, q, r):
    q = (p[-1],) + q if q[0] != p[-1] else q
    r = (q[-1],) + r if r[0] != q[-1] else r
    left = graphs.compose_paths(graphs.compose_paths(p, q), r)
    right = graphs.compose_paths(p, graphs.compose_paths(q, r))
    assert left == right
    assert graphs.is_reduced(left)


@settings(max_examples=200, deadline=None)
@given(walks)
def test_inverse_and_identity(p):
    p = graphs.reduce_path(p)
    assert graphs.compose_paths(p, graphs.invert_path(p)) == (p[0],)
    assert graphs.compose_paths((p[0],), p) == p
    assert graphs.compose_paths(p, (p[-1],)) == p


@settings(max_examples=100, deadline=None)
@given(closed_at("a"), st.integers(-3, 3), st.integers(-3, 3))
def test_powers_add(loop, j, k):
    loop = graphs.reduce_path(loop)
    both = graphs.compose_paths(graphs.path_power(loop, j), graphs.path_power(loop, k))
    assert both == graphs.path_power(loop, j + k)
