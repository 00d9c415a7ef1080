import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pqa.decompose import find_isomorphism
from pqa.errors import InputError
from pqa.fixtures import default_fixtures, load_fixture
from pqa.homological import (
    ext,
    free_module,
    injective,
    is_injective,
    nakayama,
    projective,
    projective_cover,
    simple,
    standard_modules,
    syzygy,
    tau_minus,
)
from pqa.modules import direct_sum, hom, hom_dim
from pqa.quiver import PresentationError
from pqa.textformat import format_document, parse_document, parse_presentation

TRUNC = """
algebra trunc
field {p}
vertices 1
arrow x: 1 -> 1
relation x^{n}
"""

SQUARE = """
# 1 -> 2 -> 4 and 1 -> 3 -> 4, commuting
algebra square
field 3
vertices 1 2 3 4
arrow a: 1 -> 2
arrow b: 1 -> 3
arrow c: 2 -> 4
arrow d: 3 -> 4
relation c*a = d*b
"""

A2 = """
algebra A2
field 2
vertices 1 2
arrow a: 1 -> 2
"""


def count_paths(arrows, n_vertices, max_len=6):
    """Number of paths (trivial ones included) of a quiver given as (source, target) pairs."""
    frontier = [(a[1], (k,)) for k, a in enumerate(arrows)]
    out = n_vertices
    for _ in range(max_len):
        out += len(frontier)
        frontier = [(arrows[k][1], pth + (k,)) for t, pth in frontier for k, a in enumerate(arrows) if a[0] == t]
    return out


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_truncated_ring_has_path_basis(n):
    A = parse_presentation(TRUNC.format(p=3, n=n))
    assert A.n == 1 and A.dim == n
    assert A.block_dim(0, 0) == n


def test_commuting_square_dimension_matches_path_count():
    A = parse_presentation(SQUARE)
    # 10 paths, one relation identifies the two paths 1 -> 4
    assert count_paths([(0, 1), (0, 2), (1, 3), (2, 3)], 4) == 10
    assert A.dim == 9


def test_a2_is_three_dimensional():
    assert parse_presentation(A2).dim == 3


def test_relation_must_be_admissible():
    bad = A2 + "relation a\n"
    with pytest.raises(PresentationError):
        parse_presentation(bad)


def test_non_nilpotent_rejected():
    loop = "algebra L\nfield 2\nvertices 1\narrow x: 1 -> 1\n"
    with pytest.raises(PresentationError):
        parse_presentation(loop, max_length=8)


def test_unknown_arrow_is_input_error():
    with pytest.raises(InputError):
        parse_presentation(A2 + "relation b*a\n")


def test_standard_modules_dual_numbers():
    A = parse_presentation(TRUNC.format(p=2, n=2))
    P, I, S = standard_modules(A)
    assert P[0].dim == 2 and S[0].dim == 1
    assert find_isomorphism(I[0], P[0]) is not None


def test_standard_modules_a2():
    A = parse_presentation(A2)
    P, I, S = standard_modules(A)
    assert list(P[0].dims) == [1, 1]
    assert list(P[1].dims) == [0, 1]
    assert find_isomorphism(P[1], S[1]) is not None
    soc = I[0].socle()[0]
    assert list(soc.dims) == [1, 0]
    assert list(I[0].dims) == [1, 0]
    assert find_isomorphism(S[0], I[0]) is not None


def test_sink_projective_is_simple():
    A = parse_presentation(SQUARE)
    assert find_isomorphism(projective(A, 3), simple(A, 3)) is not None


def test_hom_examples_dual_numbers():
    A = parse_presentation(TRUNC.format(p=2, n=2))
    R, S = projective(A, 0), simple(A, 0)
    assert hom_dim(R, S) == 1
    assert hom_dim(S, R) == 1
    X, _, _ = direct_sum([R, S])
    assert hom_dim(X, X) == 5


@pytest.mark.parametrize("name", default_fixtures())
def test_hom_from_projective_is_dimension(name):
    fx = load_fixture(name, 3)
    A = fx.algebra
    for M in fx.catalog.modules:
        for i in range(A.n):
            assert hom_dim(projective(A, i), M) == M.dims[i]


def test_hom_basis_maps_are_homomorphisms():
    fx = load_fixture("commuting-square", 2)
    for M, N in itertools.product(fx.catalog.modules[:6], repeat=2):
        for f in hom(M, N):
            assert f.is_homomorphism()


def test_projective_cover_examples():
    A = parse_presentation(TRUNC.format(p=2, n=2))
    S, R = simple(A, 0), projective(A, 0)
    P, epi = projective_cover(S)
    assert P.dim == 2 and epi.kernel()[0].dim == 1
    P, epi = projective_cover(R)
    assert epi.is_iso()
    SS, _, _ = direct_sum([S, S])
    P, _ = projective_cover(SS)
    RR, _, _ = direct_sum([R, R])
    assert find_isomorphism(P, RR) is not None


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square", "dynkin:A_3:rl", "cycle:3:4"])
def test_cover_kernel_lies_in_radical(name):
    fx = load_fixture(name, 2)
    for M in fx.catalog.modules:
        P, epi = projective_cover(M)
        K, inc = epi.kernel()
        _, to_top = P.top()
        assert (to_top @ inc).is_zero()


def test_ext_examples_dual_numbers():
    A = parse_presentation(TRUNC.format(p=2, n=2))
    S, R = simple(A, 0), projective(A, 0)
    assert ext(1, S, S).dim == 1
    assert ext(2, S, S).dim == 1
    assert ext(1, R, S).dim == 0


@pytest.mark.parametrize("n", [2, 3, 4])
def test_truncated_syzygy_of_simple(n):
    fx = load_fixture(f"trunc:{n}", 3)
    S = fx.catalog["S"]
    assert ext(1, S, S).dim == 1
    omega, _, _ = syzygy(S)
    assert omega.dim == n - 1


@pytest.mark.parametrize("name", ["trunc:3", "commuting-square", "dynkin:A_3"])
def test_ext_ignores_projective_summands(name):
    fx = load_fixture(name, 2)
    A = fx.algebra
    mods = fx.catalog.modules
    for M in mods[:4]:
        MP, _, _ = direct_sum([M, projective(A, 0)])
        for N in mods[:4]:
            assert ext(1, MP, N).dim == ext(1, M, N).dim


def test_nakayama_examples():
    # left modules over 1 -> 2: P_1 = (1,1), I_1 = S_1 = (1,0), I_2 = (1,1)
    A = parse_presentation(A2)
    for v, dims in [(0, [1, 0]), (1, [1, 1])]:
        nP = nakayama(projective(A, v))
        assert list(nP.dims) == dims
        assert find_isomorphism(nP, injective(A, v)) is not None
    sq = parse_presentation(SQUARE)
    for v in range(sq.n):
        P = projective(sq, v)
        assert find_isomorphism(nakayama(nakayama(P), "nu-"), P) is not None
    D = parse_presentation(TRUNC.format(p=2, n=2))
    R = projective(D, 0)
    assert find_isomorphism(nakayama(R), R) is not None


def test_tau_minus_examples():
    D = parse_presentation(TRUNC.format(p=2, n=2))
    S = simple(D, 0)
    assert find_isomorphism(tau_minus(S).module, S) is not None
    A = parse_presentation(A2)
    S1 = simple(A, 0)
    assert is_injective(S1)
    assert tau_minus(S1).module.dim == 0
    assert tau_minus(injective(A, 1)).module.dim == 0


@given(st.sampled_from(["trunc:3", "commuting-square", "dynkin:A_3:rl"]), st.data())
@settings(max_examples=20)
def test_modules_satisfy_relations(name, data):
    fx = load_fixture(name, 2)
    A = fx.algebra
    k = data.draw(st.integers(0, len(fx.catalog) - 1))
    M = fx.catalog.modules[k]
    for rel in A.relations:
        acc = np.zeros((M.dim, M.dim), dtype=np.int64)
        off = M.offsets()
        for path, c in rel.items():
            pm = M.path_matrix(path)
            s, t = path.source, path.target
            acc[off[t] : off[t] + M.dims[t], off[s] : off[s] + M.dims[s]] += c * pm
        assert not np.any(acc % A.p)


def test_free_module_dimension():
    fx = load_fixture("commuting-square", 2)
    F = free_module(fx.algebra, [0, 0, 3])
    assert F.dim == 2 * 4 + 1


def test_document_roundtrip():
    text = SQUARE + "\nmodule P2 dim 2=1,4=1\nmatrix c [[1]]\n"
    doc = parse_document(text)
    again = parse_document(format_document(doc.algebra, doc.modules))
    assert again.algebra.dim == doc.algebra.dim
    M, N = again.modules[0], doc.modules[0]
    assert M.dims == N.dims
    assert all(np.array_equal(a, b) for a, b in zip(M.mats, N.mats))
