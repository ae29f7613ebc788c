import random

import numpy as np
import pytest

from coxperp import INF, CoxeterMatrix
from coxperp import instances, oracle, perp
from coxperp.coxeter import odd_component
from coxperp.decider import corollary_check, decide, finite_rank3, infinite_witness_family
from coxperp.errors import InputError, PreconditionError

from conftest import random_matrix


def test_a3_acyclic():
    v = decide(instances.type_A(3), "1")
    assert (v.decision, v.branch, v.case) == ("finite", "acyclic", "acyclic")
    assert all(v.conditions.values())


def test_diamond_bipyramid_case():
    v = decide(instances.diamond(), "y1")
    assert (v.decision, v.branch, v.case) == ("finite", "with-cycle", "1c")
    assert set(v.K) == {"y1", "t", "y2", "b"}


def test_g4_condition_four():
    cm, x = instances.NAMED["G4"]
    v = decide(cm, x)
    assert (v.decision, v.case) == ("infinite", "1a")
    assert v.conditions == {"1": True, "2": True, "3": True, "4": False}
    assert v.violation["condition"] == "4" and v.violation["vertex"] == "d"
    assert v.O2 == {"d": ("a",)}
    assert v.violation["missing_from_core"] == ["b", "c"]


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_affine_a_case_1b(n):
    v = decide(instances.affine_A(n), "y0")
    assert (v.decision, v.case) == ("finite", "1b")


def test_odd_triangle_is_case_1a():
    cm = CoxeterMatrix("abc", {("a", "b"): 3, ("b", "c"): 5, ("a", "c"): 3})
    assert decide(cm, "a").case == "1a"


def test_even_pair_outside_core_violates_condition_one():
    # a triangle with a tail whose end commutes with a triangle vertex
    cm = CoxeterMatrix("abcde", {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3, ("c", "d"): 3,
                                 ("d", "e"): 3, ("a", "e"): 4, ("b", "e"): INF, ("b", "d"): INF,
                                 ("a", "d"): INF})
    v = decide(cm, "a")
    assert v.decision == "infinite" and v.violation["condition"] == "1"


def test_condition_three():
    cm = CoxeterMatrix("abcd", {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3, ("a", "d"): 4,
                                ("b", "d"): 2, ("c", "d"): 2})
    v = decide(cm, "a")
    assert v.decision == "infinite" and v.violation["condition"] == "3"
    assert v.violation["pair"] == ["a", "d"]


def test_unknown_generator():
    with pytest.raises(InputError):
        decide(instances.type_A(3), "9")


def test_witnesses_are_consistent():
    rng = random.Random(21)
    for _ in range(200):
        cm = random_matrix(rng, rng.randint(1, 7))
        x = rng.choice(cm.generators)
        v = decide(cm, x)
        assert set(v.K) <= set(v.O)
        assert not set(v.E) & set(v.O)
        assert all(set(ys) <= set(v.O) for ys in v.O2.values())
        assert (v.branch == "with-cycle") == bool(v.K)
        if not v.finite:
            assert v.conditions[v.violation["condition"]] is False


def test_relabel_invariance():
    rng = random.Random(22)
    for _ in range(100):
        cm = random_matrix(rng, rng.randint(2, 7))
        names = [f"g{i}" for i in range(len(cm))]
        rng.shuffle(names)
        mapping = dict(zip(cm.generators, names))
        x = rng.choice(cm.generators)
        a, b = decide(cm, x), decide(cm.relabel(mapping), mapping[x])
        assert (a.decision, a.branch, a.case) == (b.decision, b.branch, b.case)
        assert {mapping[s] for s in a.O} == set(b.O)


def test_conjugacy_invariance():
    rng = random.Random(23)
    for _ in range(100):
        cm = random_matrix(rng, rng.randint(2, 7))
        x = rng.choice(cm.generators)
        ref = decide(cm, x)
        for y in odd_component(cm, x):
            v = decide(cm, y)
            assert (v.decision, v.case) == (ref.decision, ref.case)


# -- corollaries --------------------------------------------------------------------

def test_finite_rank3_table():
    assert finite_rank3((2, 2, 9)) and finite_rank3((3, 2, 3)) and finite_rank3((4, 3, 2))
    assert finite_rank3((5, 2, 3))
    assert not finite_rank3((2, 3, 6)) and not finite_rank3((3, 3, 3)) and not finite_rank3((2, 2, INF))


def test_even_corollary_applies_and_agrees():
    rng = random.Random(24)
    for _ in range(50):
        cm = random_matrix(rng, rng.randint(2, 6), labels=(2, 4, 6, INF))
        x = rng.choice(cm.generators)
        v = decide(cm, x)
        even = {r.name: r for r in corollary_check(cm, x, v)}["even"]
        assert even.applicable and even.predicted == "finite" and v.finite


def test_two_spherical_all_odd():
    cm = CoxeterMatrix("abcd", {(a, b): 3 for a, b in ["ab", "bc", "cd", "da", "ac", "bd"]})
    v = decide(cm, "a")
    res = {r.name: r for r in corollary_check(cm, "a", v)}
    assert res["2-spherical"].applicable and res["2-spherical"].predicted == "finite"
    assert v.finite


def test_skew_angled_with_even_pair_is_infinite():
    cm = CoxeterMatrix("abcd", {("a", "b"): 3, ("b", "c"): 3, ("a", "c"): 3, ("a", "d"): 4,
                                ("b", "d"): INF, ("c", "d"): INF})
    v = decide(cm, "a")
    res = {r.name: r for r in corollary_check(cm, "a", v)}
    assert res["skew-angled"].applicable and res["skew-angled"].predicted == "infinite"
    assert not v.finite


# -- infinite families --------------------------------------------------------------

def test_g4_family():
    cm, x = instances.NAMED["G4"]
    v = decide(cm, x)
    fam = infinite_witness_family(cm, x, v, 5)
    assert len(fam) == 5 and fam.pair == ("a", "d") and fam.lemma == "adjacent-closed-path"
    assert infinite_witness_family(cm, x, v, 1).elements[0].path == ("a",)
    assert len(infinite_witness_family(cm, x, v, 0)) == 0


def test_family_needs_infinite_verdict():
    cm = instances.type_A(3)
    with pytest.raises(PreconditionError):
        infinite_witness_family(cm, "1", decide(cm, "1"), 3)


def test_families_on_random_infinite_instances():
    rng = random.Random(25)
    found = built = 0
    while found < 60:
        cm = random_matrix(rng, rng.randint(3, 6))
        x = rng.choice(cm.generators)
        v = decide(cm, x)
        if v.finite:
            continue
        found += 1
        fam = infinite_witness_family(cm, x, v, 4)
        if not len(fam):
            continue
        built += 1
        form = cm.gram()
        ax = np.eye(len(cm))[cm.index(x)]
        for el in fam.elements:
            scale = max(1.0, np.abs(el.root).max())
            assert abs(oracle.pairing(form, el.root, ax)) <= 1e-6 * scale
            assert el.root.sum() > 0
    assert built >= 0.9 * found


# -- the decision against the brute-force oracle ----------------------------------

def test_small_systems_against_oracle():
    """finite verdict: generators saturate and match the oracle's canonical roots."""
    rng = random.Random(26)
    for _ in range(25):
        cm = random_matrix(rng, rng.randint(2, 4), labels=(2, 3, 4, 5, INF))
        roots = oracle.enumerate_roots(cm, 6)
        for x in cm.generators:
            v = decide(cm, x)
            gens = perp.enumerate_generators(cm, x, max_states=300)
            assert gens.saturated == v.finite
            canon = oracle.canonical_generators(cm, x, roots=roots)
            index = oracle.RootIndex()
            for i, el in enumerate(gens.elements):
                index.add(el.root, i)
            assert all(index.get(r) is not None for r in canon.roots)
            if roots.complete:
                assert len(canon) == len(gens)
