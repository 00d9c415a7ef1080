import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqa import linalg as la

PRIMES = [2, 3, 5]


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    p = draw(st.sampled_from(PRIMES))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    vals = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return np.array(vals, dtype=np.int64).reshape(r, c), p


def brute_image_size(m, p):
    """Number of distinct vectors ``m @ x`` over all ``x`` in ``F_p^cols``."""
    rows, cols = m.shape
    seen = set()
    for x in itertools.product(range(p), repeat=cols):
        seen.add(tuple((m @ np.array(x, dtype=np.int64)) % p) if cols else (0,) * rows)
    return len(seen)


def brute_kernel_size(m, p):
    cols = m.shape[1]
    return sum(1 for x in itertools.product(range(p), repeat=cols) if not np.any((m @ np.array(x, dtype=np.int64)) % p))


def test_rank_examples():
    assert la.rank(np.eye(3, dtype=np.int64), 2) == 3
    assert la.rank(np.zeros((2, 3), dtype=np.int64), 2) == 0
    assert la.rank(np.array([[1, 1], [1, 1]]), 2) == 1


def test_nullspace_examples():
    assert la.nullspace_basis(np.eye(2, dtype=np.int64), 2) == []
    basis = la.nullspace_basis(np.zeros((2, 2), dtype=np.int64), 2)
    assert sorted(tuple(b) for b in basis) == [(0, 1), (1, 0)]
    basis = la.nullspace_basis(np.array([[1, 1]]), 2)
    assert [tuple(b) for b in basis] == [(1, 1)]


def test_cokernel_examples():
    _, k = la.cokernel_data(np.eye(2, dtype=np.int64), 3)
    assert k == 0
    proj, k = la.cokernel_data(np.zeros((3, 2), dtype=np.int64), 2)
    assert k == 3
    assert la.rank(proj, 2) == 3
    _, k = la.cokernel_data(np.array([[1], [0]]), 3)
    assert k == 1


def test_non_prime_rejected():
    with pytest.raises(la.LinAlgError):
        la.check_prime(9)


@given(matrices())
def test_rank_matches_brute_force_image(mp):
    m, p = mp
    assert p ** la.rank(m, p) == brute_image_size(m, p)


@given(matrices())
def test_rank_nullity(mp):
    m, p = mp
    basis = la.nullspace_basis(m, p)
    assert la.rank(m, p) + len(basis) == m.shape[1]
    assert p ** len(basis) == brute_kernel_size(m, p)
    for b in basis:
        assert not np.any(la.matmul(m, b.reshape(-1, 1), p))


@given(matrices())
def test_cokernel_projection_kills_image(mp):
    m, p = mp
    proj, k = la.cokernel_data(m, p)
    assert k == m.shape[0] - la.rank(m, p)
    assert proj.shape == (k, m.shape[0])
    if m.shape[1] and k:
        assert not np.any(la.matmul(proj, m, p))
    assert la.rank(proj, p) == k


@given(matrices())
def test_echelon_determinism(mp):
    m, p = mp
    r1, piv1 = la.rref(m.copy(), p)
    r2, piv2 = la.rref(m.copy(), p)
    assert piv1 == piv2
    assert r1.tobytes() == r2.tobytes()
    n1, n2 = la.nullspace(m, p), la.nullspace(m, p)
    assert n1.tobytes() == n2.tobytes()


@given(matrices(max_rows=4, max_cols=4))
def test_solve_and_inverse(mp):
    m, p = mp
    if m.shape[0] != m.shape[1] or la.rank(m, p) < m.shape[0] or m.shape[0] == 0:
        return
    inv = la.inverse(m, p)
    assert np.array_equal(la.matmul(m, inv, p), np.eye(m.shape[0], dtype=np.int64))
    b = np.arange(m.shape[0], dtype=np.int64).reshape(-1, 1) % p
    x = la.solve(m, b, p)
    assert np.array_equal(la.matmul(m, x, p), b)
