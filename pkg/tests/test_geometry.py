import functools
import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqa.errors import InputError
from pqa.fixtures import load_fixture
from pqa.geometry import (
    QuiverPoint,
    deframe,
    degeneration_table,
    desingularization_check,
    enumerate_submodules,
    gaussian_binomial,
    hom_order_leq,
    image_of_e_classes,
    iso_classes,
    path_entry,
    smooth_certificate,
    subspaces,
    trace_invariant,
)
from pqa.modules import direct_sum, submodule, zero_module
from pqa.quiver import Arrow, Quiver
from pqa.verify import deframe_oracle, random_instance


def all_vectors(m, p):
    return [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=m)]


def span(vecs, m, p):
    """The set of all vectors in the span, as a frozenset of tuples."""
    out = {tuple([0] * m)}
    for v in vecs:
        out = {tuple((np.array(w) + c * v) % p) for w in out for c in range(p)}
    return frozenset(out)


@functools.lru_cache(maxsize=None)
def brute_subspaces(m, k, p):
    """All ``k``-dimensional subspaces of ``F_p^m`` as sets of vectors."""
    found = set()
    for vecs in itertools.combinations(all_vectors(m, p), k):
        s = span(vecs, m, p)
        if len(s) == p**k:
            found.add(s)
    return found


def brute_submodule_count(M, dimv):
    """Arrow-stable tuples of subspaces, by listing every tuple of subspaces."""
    p, A = M.p, M.algebra
    choices = [brute_subspaces(M.dims[v], dimv[v], p) for v in range(A.n)]
    count = 0
    for tup in itertools.product(*choices):
        ok = True
        for a, arr in enumerate(A.quiver.arrows):
            mat = M.mats[a]
            for w in tup[arr.source]:
                if mat.shape[0] and tuple(mat @ np.array(w, dtype=np.int64) % p) not in tup[arr.target]:
                    ok = False
                    break
            if not ok:
                break
        count += ok
    return count


def is_stable_tuple(M, bases):
    p = M.p
    for a, arr in enumerate(M.algebra.quiver.arrows):
        U, V = bases[arr.source], bases[arr.target]
        if U.shape[1] == 0 or M.dims[arr.target] == 0:
            continue
        img = (M.mats[a] @ U) % p
        both = np.concatenate([V, img], axis=1)
        if len(span(list(both.T), M.dims[arr.target], p)) != p ** V.shape[1]:
            return False
    return True


@pytest.mark.parametrize("m,k,q", [(2, 1, 2), (3, 1, 2), (3, 2, 2), (4, 2, 2), (3, 1, 3), (2, 1, 5), (4, 0, 3)])
def test_gaussian_binomial_counts_subspaces(m, k, q):
    expect = len(brute_subspaces(m, k, q))
    assert gaussian_binomial(m, k, q) == expect
    assert len(list(subspaces(m, k, q))) == expect


def test_grassmannian_examples(dual):
    cat = dual.fixture.catalog
    S, A = cat["S"], cat["A"]
    rep = enumerate_submodules(A, (1,), catalog=cat)
    assert rep.count == 1 and rep.strata == {"S": 1}
    M, _, _ = direct_sum([A, S])
    rep = enumerate_submodules(M, (1,), q=2, catalog=cat)
    assert rep.count == 3 and rep.strata == {"S": 3}
    assert enumerate_submodules(A, (2,)).count == 1


def test_grassmannian_rejects_other_fields(dual):
    A = dual.fixture.catalog["A"]
    with pytest.raises(InputError):
        enumerate_submodules(A, (1,), q=4)


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square", "dynkin:A_3:rl"])
def test_enumeration_matches_brute_force(name):
    fx = load_fixture(name, 2)
    mods = [U for U in fx.catalog.modules if U.dim <= 3]
    for U, V in itertools.islice(itertools.combinations_with_replacement(mods, 2), 12):
        M, _, _ = direct_sum([U, V])
        if max(M.dims) > 4:
            continue
        for dv in itertools.product(*[range(k + 1) for k in M.dims]):
            rep = enumerate_submodules(M, dv)
            assert rep.count == brute_submodule_count(M, dv)
            for pt in rep.points:
                assert is_stable_tuple(M, pt)
                assert list(submodule(M, pt)[0].dims) == list(dv)


def test_desingularization_examples(dual):
    R, cat = dual.rec, dual.fixture.catalog
    S, A = cat["S"], cat["A"]
    M, _, _ = direct_sum([A, S])
    rep = desingularization_check(R, M, S)
    assert rep.ok, rep.text()
    assert rep.count_A == rep.count_B == 3
    assert rep.fibers == {"S": (1,)}
    rep = desingularization_check(R, A, A)
    assert rep.ok and rep.count_A == rep.count_B == 1
    rep = desingularization_check(R, A, zero_module(dual.fixture.algebra))
    assert rep.ok and rep.count_A == rep.count_B == 1


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square", "dynkin:A_3"])
def test_desingularization_over_fixtures(ctx, name):
    c = ctx(name, 2)
    R, cat = c.rec, c.fixture.catalog
    mods = [U for U in cat.modules if R.cext(U).dim <= 8]
    checked = 0
    for M in mods[:6]:
        for N in mods:
            if not all(a <= b for a, b in zip(N.dims, M.dims)) or N.dim >= M.dim:
                continue
            occurs = cat.label(N) in enumerate_submodules(M, N.dims, catalog=cat).labels
            if not occurs:
                with pytest.raises(InputError):
                    desingularization_check(R, M, N)
                continue
            rep = desingularization_check(R, M, N)
            assert rep.ok, rep.text()
            checked += 1
    assert checked


def test_hom_order_examples(dual):
    cat = dual.fixture.catalog
    A, SS = cat["A"], cat.parse_sum("2*S")
    v = hom_order_leq(SS, A, cat)
    assert v.leq
    assert sorted(v.rows) == [("A", 2, 2), ("S", 2, 1)]
    assert hom_order_leq(A, A, cat).leq
    assert not hom_order_leq(A, SS, cat).leq
    with pytest.raises(InputError):
        hom_order_leq(A, cat["S"], cat)


def test_image_of_e_examples(dual):
    R = dual.rec
    assert sorted(image_of_e_classes(R, (2, 1))) == ["2*S", "A"]
    assert image_of_e_classes(R, (2, 0)) == ["2*S"]
    assert image_of_e_classes(R, (0, 0)) == ["0"]
    with pytest.raises(InputError):
        image_of_e_classes(R, (1, -1))


@pytest.mark.parametrize("name", ["trunc:3", "trunc:4", "commuting-square", "dynkin:A_3:rl"])
def test_image_of_e_agrees_with_hom_order(ctx, name):
    c = ctx(name, 2)
    R, cat = c.rec, c.fixture.catalog
    for dv in sorted({tuple(U.dims) for U in cat.modules}):
        for mult in iso_classes(cat, dv):
            M = cat.parse_sum(cat.format_multiplicities(mult))
            for _, by_c, by_hom in degeneration_table(R, M):
                assert by_c == by_hom


def test_iso_classes_of_dual_numbers(dual):
    cat = dual.fixture.catalog
    labels = sorted(cat.format_multiplicities(m) for m in iso_classes(cat, (3,)))
    assert labels == ["3*S", "S+A"]


def test_deframe_examples():
    QB = Quiver(("1", "2"), (Arrow("a", 0, 1),))
    dq = deframe(QB, 1, (2,), (3,))
    assert dq.arrow_counts() == {(0, 1): 2}
    assert dq.N == 4
    loop = Quiver(("1",), (Arrow("x", 0, 0),))
    dq = deframe(loop, 1, (2,), ())
    assert dq.arrow_counts() == {(0, 0): 4}
    inner = Quiver(("1", "2", "3"), (Arrow("b", 1, 2),))
    dq = deframe(inner, 1, (3,), (1, 1))
    assert dq.arrow_counts() == {(1, 2): 1}
    assert dq.quiver.vertices[0] == "inf"
    with pytest.raises(InputError):
        deframe(QB, 1, (2, 2), (3,))


def test_trace_of_loop_entry_over_f7():
    loop = Quiver(("1",), (Arrow("x", 0, 0),))
    dq = deframe(loop, 1, (2,), ())
    point = QuiverPoint(loop, (2,), [np.array([[5, 1], [0, 2]], dtype=np.int64)])
    cyc = dq.entry_cycle((0,), 0, 0)
    assert trace_invariant(dq, cyc, point, 7) == 5
    assert trace_invariant(dq, dq.entry_cycle((0,), 0, 1), point, 7) == 1


def test_trace_of_inner_cycle_is_ordinary_trace():
    QB = Quiver(("1", "2", "3"), (Arrow("b", 1, 2), Arrow("c", 2, 1)))
    dq = deframe(QB, 1, (1,), (2, 2))
    rng = np.random.default_rng(3)
    point = QuiverPoint.random(QB, (1, 2, 2), 5, rng)
    got = trace_invariant(dq, [0, 1], point, 5)
    assert got == int(np.trace(point.mats[1] @ point.mats[0]) % 5)
    with pytest.raises(InputError):
        trace_invariant(dq, [0], point, 5)


@given(st.integers(0, 2**32 - 1))
@settings(max_examples=40)
def test_deframe_matches_oracle_and_traces_match_entries(seed):
    rng = np.random.default_rng(seed)
    QB, n, d, r = random_instance(rng)
    dq = deframe(QB, n, d, r)
    assert dq.arrow_counts() == {k: v for k, v in deframe_oracle(QB, n, d, r).items() if v}
    point = QuiverPoint.random(QB, tuple(d) + tuple(r), 3, rng)
    for path in dq.primitive[:10]:
        src, dst = QB.arrows[path[0]].source, QB.arrows[path[-1]].target
        for row, col in itertools.product(range(d[dst]), range(d[src])):
            cyc = dq.entry_cycle(path, row, col)
            assert trace_invariant(dq, cyc, point, 3) == path_entry(point, path, row, col, 3)


@pytest.mark.parametrize("name", ["trunc:2", "trunc:4", "commuting-square", "dynkin:A_3", "cycle:3:4"])
def test_smooth_certificate_on_cext(ctx, name):
    c = ctx(name, 2)
    for U in c.fixture.catalog.modules:
        assert smooth_certificate(c.rec.cext(U))


def test_smooth_certificate_on_stable_submodules(ctx):
    c = ctx("commuting-square", 2)
    for U in c.fixture.catalog.modules:
        F = c.rec.cext(U)
        if F.dim > 6:
            continue
        for dv in itertools.product(*[range(k + 1) for k in F.dims]):
            for pt in enumerate_submodules(F, dv).points:
                X = submodule(F, pt)[0]
                assert c.rec.is_stable(X) and smooth_certificate(X)


def test_smooth_certificate_module_type_simple(dual):
    from pqa.homological import simple

    S = simple(dual.bp.B, 1)
    assert not smooth_certificate(S)
