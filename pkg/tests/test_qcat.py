import itertools

import numpy as np
import pytest

from pqa import linalg as la
from pqa.auslander import global_dimension
from pqa.fixtures import load_fixture
from pqa.homological import free_coordinates, free_module, is_projective, map_from_free, simple
from pqa.present import find_presentation_isomorphism
from pqa.qcat import QObject, build_B, h_indecomposables, hom_H, hom_Q
from pqa.textformat import parse_presentation

LINEAR_A3 = """
algebra A3
field 2
vertices 1 2 3
arrow a: 1 -> 2
arrow b: 2 -> 3
"""


@pytest.fixture(scope="module")
def dual_objects():
    A = load_fixture("trunc:2", 2).algebra
    G0 = QObject.zero_target(free_module(A, [0]))
    GS = QObject.cover(simple(A, 0))
    return A, G0, GS


def test_dual_number_hom_dimensions(dual_objects):
    A, G0, GS = dual_objects
    assert hom_Q(G0, G0).dim_Q == 2
    assert hom_Q(G0, GS).dim_Q == 1
    assert hom_H(GS, G0).dim_H == 1
    assert hom_H(GS, GS).dim_H == 1
    assert hom_H(G0, G0).dim_H == 2


def test_identity_is_a_q_morphism(dual_objects):
    _, G0, GS = dual_objects
    for X in (G0, GS):
        sp = hom_Q(X, X)
        basis = np.stack([t.flat() for t in sp.t_basis], axis=1)
        ident = X.P.identity().flat().reshape(-1, 1)
        assert la.rank(np.concatenate([basis, ident], axis=1), 2) == sp.dim_Q


def test_identity_objects_vanish_in_h(dual_objects):
    A, _, _ = dual_objects
    P = free_module(A, [0])
    one = QObject.identity(P)
    assert hom_Q(one, one).dim_Q == 2
    assert hom_H(one, one).dim_H == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_h_indecomposables_truncated(n):
    fx = load_fixture(f"trunc:{n}", 2)
    objs, members = h_indecomposables(fx.algebra, fx.catalog)
    assert len(objs) == n
    assert len(members) == n - 1


def test_h_indecomposables_cycle():
    fx = load_fixture("cycle:3:4", 2)
    objs, _ = h_indecomposables(fx.algebra, fx.catalog)
    assert len(objs) == 12


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square", "dynkin:A_3"])
def test_hom_from_vertex_object_is_kernel(name):
    fx = load_fixture(name, 2)
    A = fx.algebra
    objs, _ = h_indecomposables(A, fx.catalog)
    for b in objs:
        K, _ = b.kernel
        for i in range(A.n):
            assert hom_H(objs[i], b).dim_H == K.dims[i]


def test_B_dual_numbers(dual):
    B = dual.bp.B
    assert B.n == 2 and B.dim == 5
    assert len(B.relations) >= 1


@pytest.mark.parametrize("name", ["trunc:2", "trunc:3", "commuting-square", "dynkin:A_3:rl", "semisimple:2"])
def test_B_vertex_count(ctx, name):
    c = ctx(name, 2)
    A, cat = c.fixture.algebra, c.fixture.catalog
    non_projective = sum(1 for U in cat.modules if not is_projective(U))
    assert c.bp.B.n == A.n + non_projective
    assert global_dimension(c.bp.B) <= 2


def test_B_for_a2_matches_hand_computation():
    # (P1 -> 0), (P2 -> 0), (P1 -> S1); Hom_H((P_i -> 0), f) is (ker f)_i and the
    # only null-homotopic maps out of (P1 -> S1) factor through S1 -> P1, which is zero.
    fx = load_fixture("dynkin:A_2", 2)
    bp = build_B(fx.algebra, fx.catalog)
    table = [[bp.homs[v][w].dim_H for w in range(3)] for v in range(3)]
    assert table == [[1, 0, 0], [1, 1, 1], [1, 0, 1]]
    assert bp.B.dim == 6
    assert find_presentation_isomorphism(bp.B, parse_presentation(LINEAR_A3)) is not None


def _split_inclusion_target(a: QObject, extra: int, quotient=True):
    """``(P + P_extra -> X')`` with ``f' = (q f, 0)`` and the inclusion ``P -> P + P_extra``."""
    A = a.P.algebra
    verts = list(a.P.free_gens)
    big = free_module(A, verts + [extra])
    gens = free_coordinates(big.identity())
    theta = map_from_free(a.P, big, gens[: len(verts)])
    if quotient:
        _, q = a.X.top()
    else:
        q = a.X.identity()
    images = free_coordinates(q @ a.f) + [np.zeros(q.codomain.dims[extra], dtype=np.int64)]
    f2 = map_from_free(big, q.codomain, images)
    return theta, QObject(big, q.codomain, f2)


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square", "dynkin:A_3:rl"])
def test_split_mono_induces_mono_in_h(name):
    fx = load_fixture(name, 2)
    A = fx.algebra
    objs, _ = h_indecomposables(A, fx.catalog)
    for a in objs[A.n :]:
        for extra, quotient in itertools.product(range(A.n), (False, True)):
            theta, b = _split_inclusion_target(a, extra, quotient)
            assert theta.is_homomorphism() and theta.is_injective()
            for T in objs:
                src, dst = hom_H(T, a), hom_H(T, b)
                if not src.dim_H:
                    continue
                img = np.stack([dst.coords_H(theta @ u) for u in src.h_basis], axis=1)
                assert la.rank(img, 2) == src.dim_H


def test_non_split_map_need_not_be_mono_in_h(dual_objects):
    # multiplication by x on (P -> 0) is not split and kills the class of x
    _, G0, _ = dual_objects
    sp = hom_H(G0, G0)
    combos = [sp.element_H(c) for c in itertools.product(range(2), repeat=sp.dim_H)]
    t = next(m for m in combos if not m.is_zero() and not m.is_iso())
    img = np.stack([sp.coords_H(t @ u) for u in sp.h_basis], axis=1)
    assert la.rank(img, 2) < sp.dim_H
