"""
Dense exact linear algebra over prime fields F_p.

Matrices are numpy ``int64`` arrays whose entries are kept reduced into
``[0, p)``.  Every routine is a pure function of its inputs, and row
reduction uses a fixed pivoting rule (first nonzero entry in the column,
lowest row index wins), so bases returned here are reproducible bit for bit.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

__all__ = [
    "LinAlgError",
    "check_prime",
    "as_matrix",
    "inverse_table",
    "rref",
    "rank",
    "nullspace",
    "nullspace_basis",
    "left_nullspace",
    "cokernel_data",
    "column_space",
    "complement_columns",
    "solve",
    "try_solve",
    "inverse",
    "matmul",
    "as_columns",
    "intersect_columns",
    "sum_columns",
    "in_span",
    "right_inverse",
]


class LinAlgError(ValueError):
    """Raised for inconsistent systems or bad field parameters."""


@lru_cache(maxsize=None)
def check_prime(p: int) -> int:
    """Return ``p`` if it is a prime that fits comfortably in a machine word.

    The bound keeps products of two reduced entries inside ``int64``.
    """
    p = int(p)
    if p < 2 or p >= 2**31:
        raise LinAlgError(f"modulus {p} is not a supported prime")
    if p < 4:
        return p
    if p % 2 == 0:
        raise LinAlgError(f"modulus {p} is not prime")
    k = 3
    while k * k <= p:
        if p % k == 0:
            raise LinAlgError(f"modulus {p} is not prime")
        k += 2
    return p


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Multiplicative inverses mod ``p`` (entry 0 is 0 by convention)."""
    p = check_prime(p)
    if p > 1 << 16:
        raise LinAlgError("inverse table only built for small primes")
    tab = np.zeros(p, dtype=np.int64)
    for x in range(1, p):
        tab[x] = pow(x, p - 2, p)
    return tab


def _inv(x: int, p: int) -> int:
    if p <= 1 << 16:
        return int(inverse_table(p)[x])
    return pow(int(x), p - 2, p)


def as_matrix(m, p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``m`` into a reduced 2-D ``int64`` array.

    Args:
        m: Anything ``np.array`` accepts; nested lists of integers are typical.
        p: The prime modulus.
        shape: Optional shape used when ``m`` is empty.
    """
    a = np.array(m, dtype=np.int64)
    if a.size == 0 and shape is not None:
        return np.zeros(shape, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else np.zeros((0, 0), dtype=np.int64)
    if a.ndim != 2:
        raise LinAlgError(f"expected a matrix, got an array of shape {a.shape}")
    return a % p


def as_columns(b, n: int) -> np.ndarray:
    """View ``b`` as an ``n x k`` matrix of column vectors (``k`` may be 0)."""
    b = np.asarray(b, dtype=np.int64)
    if b.size == 0:
        return np.zeros((n, 0), dtype=np.int64)
    return b.reshape(n, -1)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Matrix product reduced mod ``p``."""
    if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    return (a @ b) % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Args:
        m: Matrix with integer entries.
        p: Prime modulus.

    Returns:
        ``(R, pivots)`` where ``R`` has the same shape as ``m`` and
        ``pivots[k]`` is the pivot column of row ``k``.  Rows past
        ``len(pivots)`` are zero.
    """
    a = np.array(m, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        piv = int(a[r, c])
        if piv != 1:
            a[r] = (a[r] * _inv(piv, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m, p: int) -> int:
    """Row rank of ``m`` over F_p."""
    a = np.asarray(m)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Right nullspace of ``m`` as the columns of a ``cols x k`` matrix.

    The basis is read off the reduced echelon form: one vector per free
    column, with a 1 in that column and zeros in the other free columns.
    """
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((cols, len(free)), dtype=np.int64)
    if not free:
        return out
    pr = np.array(piv, dtype=np.int64)
    for k, f in enumerate(free):
        out[f, k] = 1
        if len(piv):
            out[pr, k] = (-r[: len(piv), f]) % p
    return out


def nullspace_basis(m, p: int) -> list[np.ndarray]:
    """List form of :func:`nullspace`: one 1-D vector per basis element."""
    ns = nullspace(np.atleast_2d(np.asarray(m, dtype=np.int64)), p)
    return [ns[:, k].copy() for k in range(ns.shape[1])]


def left_nullspace(m: np.ndarray, p: int) -> np.ndarray:
    """Rows ``y`` with ``y @ m == 0``, stacked as a matrix."""
    m = np.asarray(m, dtype=np.int64)
    return nullspace(m.T, p).T.copy()


def cokernel_data(m: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Projection onto the cokernel of ``m``.

    Returns:
        ``(proj, k)`` with ``proj`` of shape ``k x rows`` surjective,
        ``proj @ m == 0`` and ``k = rows - rank(m)``.
    """
    m = np.asarray(m, dtype=np.int64)
    proj = left_nullspace(m, p) if m.shape[1] else np.eye(m.shape[0], dtype=np.int64)
    return proj, proj.shape[0]


def column_space(m: np.ndarray, p: int) -> np.ndarray:
    """Basis of the column space: the pivot columns of ``m`` itself."""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.int64)
    _, piv = rref(m, p)
    return m[:, piv] % p


def complement_columns(basis: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the column span of ``basis`` to F_p^n."""
    basis = as_columns(basis, n)
    full = np.concatenate([basis, np.eye(n, dtype=np.int64)], axis=1)
    _, piv = rref(full, p)
    k = basis.shape[1]
    extra = [c - k for c in piv if c >= k]
    return np.eye(n, dtype=np.int64)[:, extra]


def try_solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """Solve ``a @ x == b`` for ``x`` (``b`` may have several columns).

    Returns ``None`` when the system is inconsistent.  Among all solutions
    the one with zero free coordinates is returned.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    rows, cols = a.shape
    if rows == 0:
        x = np.zeros((cols, b.shape[1]), dtype=np.int64)
        return x[:, 0] if vec else x
    aug = np.concatenate([a % p, b % p], axis=1)
    r, piv = rref(aug, p)
    if any(c >= cols for c in piv):
        return None
    x = np.zeros((cols, b.shape[1]), dtype=np.int64)
    for k, c in enumerate(piv):
        x[c] = r[k, cols:]
    return x[:, 0] if vec else x


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Like :func:`try_solve` but raise :class:`LinAlgError` when inconsistent."""
    x = try_solve(a, b, p)
    if x is None:
        raise LinAlgError("inconsistent linear system")
    return x


def inverse(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square matrix over F_p."""
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[0]
    if a.shape != (n, n):
        raise LinAlgError("inverse of a non-square matrix")
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise LinAlgError("matrix is singular")
    return r[:, n:].copy()


def right_inverse(a: np.ndarray, p: int) -> np.ndarray:
    """A matrix ``r`` with ``a @ r == I`` for a surjective ``a``."""
    a = np.asarray(a, dtype=np.int64)
    return solve(a, np.eye(a.shape[0], dtype=np.int64), p)


def sum_columns(u: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    """Basis of the sum of two column spans."""
    return column_space(np.concatenate([u, w], axis=1), p)


def intersect_columns(u: np.ndarray, w: np.ndarray, p: int) -> np.ndarray:
    """Basis of the intersection of two column spans in the same ambient space."""
    n = u.shape[0]
    if u.shape[1] == 0 or w.shape[1] == 0:
        return np.zeros((n, 0), dtype=np.int64)
    ns = nullspace(np.concatenate([u, (-w) % p], axis=1), p)
    return column_space(matmul(u, ns[: u.shape[1]], p), p)


def in_span(basis: np.ndarray, v: np.ndarray, p: int) -> bool:
    """Whether every column of ``v`` lies in the column span of ``basis``."""
    v = np.asarray(v, dtype=np.int64)
    if v.ndim == 1:
        v = v.reshape(-1, 1)
    if not np.any(v % p):
        return True
    if basis.shape[1] == 0:
        return False
    return try_solve(basis, v, p) is not None
