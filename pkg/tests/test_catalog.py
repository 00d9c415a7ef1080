import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqa.auslander import (
    auslander_algebra,
    dominant_dimension_at_least_2,
    find_special_tilting,
    global_dimension,
    hom_functor,
    projective_injectives,
)
from pqa.decompose import brute_force_catalog, decompose, find_isomorphism
from pqa.errors import BudgetExceeded
from pqa.fixtures import default_fixtures, load_fixture
from pqa.homological import is_injective, is_projective, projective
from pqa.modules import direct_sum, hom_dim
from pqa.present import find_presentation_isomorphism
from pqa.qcat import build_B
from pqa.textformat import parse_presentation


def test_decompose_examples():
    cat = load_fixture("trunc:2", 2).catalog
    S, R = cat["S"], cat["A"]
    X, _, _ = direct_sum([R, S])
    dec = decompose(X)
    assert sorted(U.dim for U in dec.summands) == [1, 2]
    assert dec.iso_from_sum().is_iso()
    assert len(decompose(R)) == 1
    SSS, _, _ = direct_sum([S, S, S])
    assert [U.dim for U in decompose(SSS).summands] == [1, 1, 1]


def test_truncated_catalog_dimensions():
    cat = load_fixture("trunc:3", 3).catalog
    assert sorted(U.dim for U in cat.modules) == [1, 2, 3]


def test_brute_force_catalog_dual_numbers():
    fx = load_fixture("trunc:2", 2)
    cat = brute_force_catalog(fx.algebra, 3)
    ref = fx.catalog
    assert len(cat) == 2
    for U in cat.modules:
        assert sum(find_isomorphism(U, V) is not None for V in ref.modules) == 1


def test_brute_force_budget():
    A = load_fixture("trunc:3", 2).algebra
    with pytest.raises(BudgetExceeded):
        brute_force_catalog(A, 6, budget=100)


@pytest.mark.parametrize("name", ["dynkin:A_3", "dynkin:A_3:rl", "commuting-square"])
def test_brute_force_agrees_with_builtin(name):
    fx = load_fixture(name, 2)
    found = brute_force_catalog(fx.algebra, 4)
    assert len(found) == len(fx.catalog)
    for U in found.modules:
        assert any(find_isomorphism(U, V) is not None for V in fx.catalog.modules)


def test_nilpotent_cycle_catalog():
    cat = load_fixture("cycle:3:4", 2).catalog
    assert len(cat) == 12
    tops = sorted((U.name[1], U.dim) for U in cat.modules)
    assert tops == sorted((str(i), r) for i in (1, 2, 3) for r in (1, 2, 3, 4))
    for U in cat.modules:
        assert list(U.top_dims()).count(1) == 1 and sum(U.top_dims()) == 1


@pytest.mark.parametrize("name", default_fixtures())
def test_catalog_certified_and_complete(name):
    cat = load_fixture(name, 2).catalog
    cat.certify()
    cat.check_complete()


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square", "dynkin:A_3:rl"])
def test_fingerprint_separates_iso_classes(name):
    cat = load_fixture(name, 2).catalog
    mods = cat.modules
    for a, b in itertools.combinations_with_replacement(range(len(mods)), 2):
        X, _, _ = direct_sum([mods[a], mods[b]])
        for U in decompose(X).summands:
            for V in mods:
                same_fp = np.array_equal(cat.fingerprint(U), cat.fingerprint(V))
                assert same_fp == (find_isomorphism(U, V) is not None)


@given(st.sampled_from(["trunc:4", "commuting-square", "dynkin:A_3"]), st.data())
@settings(max_examples=25)
def test_decompose_inverts_direct_sum(name, data):
    cat = load_fixture(name, 2).catalog
    k = len(cat)
    picks = data.draw(st.lists(st.integers(0, k - 1), min_size=1, max_size=3))
    X, _, _ = direct_sum([cat.modules[i] for i in picks])
    mult = cat.multiplicities(X)
    assert list(mult) == [picks.count(i) for i in range(k)]
    found = sorted(cat.identify(U)[0] for U in decompose(X).summands)
    assert found == sorted(picks)


def test_auslander_algebra_dual_numbers():
    aus = auslander_algebra(load_fixture("trunc:2", 2).catalog)
    G = aus.gamma
    assert G.n == 2 and G.dim == 5


def test_auslander_algebra_of_semisimple():
    fx = load_fixture("semisimple:2", 2)
    G = auslander_algebra(fx.catalog).gamma
    assert find_presentation_isomorphism(fx.algebra, G) is not None


@pytest.mark.parametrize("name", ["trunc:2", "trunc:3", "trunc:4", "cycle:3:4"])
def test_B_is_auslander_for_self_injective(name):
    fx = load_fixture(name, 2)
    assert fx.self_injective
    G = auslander_algebra(fx.catalog).gamma
    B = build_B(fx.algebra, fx.catalog).B
    assert find_presentation_isomorphism(G, B) is not None


@pytest.mark.parametrize("name", default_fixtures())
def test_auslander_characterization(name):
    G = auslander_algebra(load_fixture(name, 2).catalog).gamma
    assert global_dimension(G) <= 2
    assert dominant_dimension_at_least_2(G)


def test_dominant_dimension_examples():
    A2 = parse_presentation("algebra A2\nfield 2\nvertices 1 2\narrow a: 1 -> 2\n")
    assert not dominant_dimension_at_least_2(A2)
    assert dominant_dimension_at_least_2(load_fixture("semisimple:2", 2).algebra)


def test_special_tilting_semisimple():
    fx = load_fixture("semisimple:2", 3)
    G = auslander_algebra(fx.catalog).gamma
    rep = find_special_tilting(G)
    assert rep.module.dim == G.dim
    assert all(is_projective(U) and is_injective(U) for U in rep.summands)


def test_special_tilting_dual_numbers():
    G = auslander_algebra(load_fixture("trunc:2", 2).catalog).gamma
    rep = find_special_tilting(G)
    assert len(rep.summands) == 2
    assert sum(is_projective(U) and is_injective(U) for U in rep.summands) == 1
    pi = projective_injectives(G)
    assert len(pi) == 1
    assert any(find_isomorphism(U, projective(G, pi[0])) is not None for U in rep.summands)


def test_special_tilting_square():
    G = auslander_algebra(load_fixture("commuting-square", 3).catalog).gamma
    rep = find_special_tilting(G)
    assert rep.ok and len(rep.summands) == G.n


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square"])
def test_auslander_corner_is_A(name):
    fx = load_fixture(name, 2)
    aus = auslander_algebra(fx.catalog)
    for X in fx.catalog.modules:
        eps = aus.restrict(hom_functor(aus, X)[0])
        assert find_isomorphism(eps, X) is not None
        assert hom_dim(eps, X) == hom_dim(X, X)
