"""
Modules over a presented algebra as quiver representations, module maps,
hom spaces and the basic constructions built from them (sums, submodules,
quotients, kernels, images, tops, socles and duals).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .errors import InputError
from .quiver import Algebra, Path

__all__ = [
    "Module",
    "ModuleMap",
    "HomSpace",
    "ModuleError",
    "hom",
    "direct_sum",
    "submodule",
    "quotient",
    "zero_module",
]


class ModuleError(InputError):
    """Raised for inconsistent module data."""


def _zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


class Module:
    """A finite-dimensional left module, given as a representation of the quiver.

    Args:
        algebra: The owning presentation.
        dims: Dimension at each vertex.
        mats: One matrix per arrow, of shape ``(dims[target], dims[source])``.
        name: Optional display name.
        check: Verify shapes and relations (on by default).
    """

    __slots__ = ("algebra", "dims", "mats", "name", "free_gens", "_path_cache", "_dual", "__weakref__")

    def __init__(self, algebra: Algebra, dims: Sequence[int], mats: Sequence, name: str = "", check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        if len(self.dims) != algebra.n or min(self.dims, default=0) < 0:
            raise ModuleError("dimension vector does not match the quiver")
        p = algebra.p
        arrows = algebra.quiver.arrows
        if len(mats) != len(arrows):
            raise ModuleError("need exactly one matrix per arrow")
        clean = []
        for a, m in zip(arrows, mats):
            shape = (self.dims[a.target], self.dims[a.source])
            arr = _zeros(*shape) if m is None else np.array(m, dtype=np.int64)
            if arr.size == 0:
                arr = _zeros(*shape)
            elif arr.ndim != 2 and arr.size == shape[0] * shape[1]:
                arr = arr.reshape(shape)
            arr = arr % p
            if arr.shape != shape:
                raise ModuleError(f"matrix for arrow {a.name} has shape {arr.shape}, expected {shape}")
            arr.setflags(write=False)
            clean.append(arr)
        self.mats = tuple(clean)
        self.name = name
        self.free_gens: tuple[int, ...] | None = None
        self._path_cache: dict = {}
        self._dual: Module | None = None
        if check:
            self.validate()

    # ------------------------------------------------------------------
    def validate(self):
        """Check that every relation of the algebra acts as zero."""
        for rel in self.algebra.relations:
            q0 = next(iter(rel))
            acc = _zeros(self.dims[q0.target], self.dims[q0.source])
            for q, c in rel.items():
                acc = acc + c * self.path_matrix(q)
            if np.any(acc % self.algebra.p):
                raise ModuleError(f"relation {self.algebra.relation_text(rel)} does not vanish on module {self.name!r}")

    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def dim(self) -> int:
        return sum(self.dims)

    @property
    def dimv(self) -> np.ndarray:
        return np.array(self.dims, dtype=np.int64)

    def is_zero(self) -> bool:
        return self.dim == 0

    def offsets(self) -> list[int]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return out

    def __repr__(self) -> str:
        label = self.name or "M"
        return f"Module({label}, dims={self.dims})"

    def renamed(self, name: str) -> "Module":
        m = Module(self.algebra, self.dims, self.mats, name=name, check=False)
        m.free_gens = self.free_gens
        return m

    # ------------------------------------------------------------------
    # action of paths and algebra elements
    def path_matrix(self, path: Path) -> np.ndarray:
        """Matrix of a path acting from the source space to the target space."""
        path = Path(*path)
        hit = self._path_cache.get(path)
        if hit is not None:
            return hit
        p = self.p
        out = np.eye(self.dims[path.source], dtype=np.int64)
        for a in path.arrows:
            out = la.matmul(self.mats[a], out, p)
        out.setflags(write=False)
        self._path_cache[path] = out
        return out

    def element_matrix(self, x: np.ndarray, s: int, t: int) -> np.ndarray:
        """Action of the (s, t) block of an element, as a ``dims[t] x dims[s]`` matrix."""
        out = _zeros(self.dims[t], self.dims[s])
        A = self.algebra
        for k in A.block(s, t):
            c = int(x[k])
            if c:
                out = out + c * self.path_matrix(A.basis[k])
        return out % self.p

    def total_arrow(self, a: int) -> np.ndarray:
        """The arrow's matrix embedded into the total space."""
        off = self.offsets()
        arr = self.algebra.quiver.arrows[a]
        out = _zeros(self.dim, self.dim)
        out[off[arr.target] : off[arr.target] + self.dims[arr.target], off[arr.source] : off[arr.source] + self.dims[arr.source]] = self.mats[a]
        return out

    # ------------------------------------------------------------------
    def identity(self) -> "ModuleMap":
        return ModuleMap(self, self, [np.eye(d, dtype=np.int64) for d in self.dims], check=False)

    def zero_map(self, other: "Module") -> "ModuleMap":
        return ModuleMap(self, other, [_zeros(other.dims[v], self.dims[v]) for v in range(self.algebra.n)], check=False)

    def dual(self) -> "Module":
        """``D M``: the dual space, as a module over the opposite presentation."""
        if self._dual is None:
            op = self.algebra.opposite()
            d = Module(op, self.dims, [m.T for m in self.mats], name=f"D({self.name})" if self.name else "", check=False)
            d._dual = self
            self._dual = d
        return self._dual

    def same_as(self, other: "Module") -> bool:
        """Literal equality of representations (not isomorphism)."""
        return (
            self.algebra is other.algebra
            and self.dims == other.dims
            and all(np.array_equal(a, b) for a, b in zip(self.mats, other.mats))
        )

    # ------------------------------------------------------------------
    def radical_bases(self) -> list[np.ndarray]:
        """Per-vertex bases of ``rad M`` (sum of images of incoming arrows)."""
        q = self.algebra.quiver
        out = []
        for v in range(q.n):
            parts = [self.mats[a] for a in q.in_arrows[v]]
            if parts and self.dims[v]:
                out.append(la.column_space(np.concatenate(parts, axis=1), self.p))
            else:
                out.append(_zeros(self.dims[v], 0))
        return out

    def socle_bases(self) -> list[np.ndarray]:
        """Per-vertex bases of ``soc M`` (common kernel of outgoing arrows)."""
        q = self.algebra.quiver
        out = []
        for v in range(q.n):
            parts = [self.mats[a] for a in q.out_arrows[v]]
            if parts and self.dims[v]:
                out.append(la.nullspace(np.concatenate(parts, axis=0), self.p))
            else:
                out.append(np.eye(self.dims[v], dtype=np.int64))
        return out

    def top_dims(self) -> np.ndarray:
        return np.array([d - b.shape[1] for d, b in zip(self.dims, self.radical_bases())], dtype=np.int64)

    def socle_dims(self) -> np.ndarray:
        return np.array([b.shape[1] for b in self.socle_bases()], dtype=np.int64)

    def radical(self) -> tuple["Module", "ModuleMap"]:
        return submodule(self, self.radical_bases())

    def socle(self) -> tuple["Module", "ModuleMap"]:
        return submodule(self, self.socle_bases())

    def top(self) -> tuple["Module", "ModuleMap"]:
        return quotient(self, self.radical_bases())


def zero_module(algebra: Algebra) -> Module:
    return Module(algebra, [0] * algebra.n, [None] * len(algebra.quiver.arrows), name="0", check=False)


class ModuleMap:
    """A homomorphism given by one matrix per vertex.

    Args:
        domain: Source module.
        codomain: Target module.
        mats: Per-vertex matrices of shape ``(codomain.dims[v], domain.dims[v])``.
        check: Verify the intertwining identities.
    """

    __slots__ = ("domain", "codomain", "mats")

    def __init__(self, domain: Module, codomain: Module, mats: Sequence, check: bool = True):
        if domain.algebra is not codomain.algebra:
            raise ModuleError("module map between different presentations")
        p = domain.p
        clean = []
        for v, m in enumerate(mats):
            shape = (codomain.dims[v], domain.dims[v])
            arr = np.array(m, dtype=np.int64)
            if arr.size == 0:
                arr = _zeros(*shape)
            arr = arr % p
            if arr.shape != shape:
                raise ModuleError(f"map matrix at vertex {v} has shape {arr.shape}, expected {shape}")
            clean.append(arr)
        self.domain = domain
        self.codomain = codomain
        self.mats = tuple(clean)
        if check and not self.is_homomorphism():
            raise ModuleError("matrices do not intertwine the arrow actions")

    @property
    def p(self) -> int:
        return self.domain.p

    def is_homomorphism(self) -> bool:
        p = self.p
        for k, a in enumerate(self.domain.algebra.quiver.arrows):
            lhs = la.matmul(self.mats[a.target], self.domain.mats[k], p)
            rhs = la.matmul(self.codomain.mats[k], self.mats[a.source], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def __matmul__(self, other: "ModuleMap") -> "ModuleMap":
        """Composition ``self o other``."""
        if other.codomain.dims != self.domain.dims:
            raise ModuleError("maps are not composable")
        return ModuleMap(other.domain, self.codomain, [la.matmul(a, b, self.p) for a, b in zip(self.mats, other.mats)], check=False)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.domain, self.codomain, [(a + b) % self.p for a, b in zip(self.mats, other.mats)], check=False)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.domain, self.codomain, [(a - b) % self.p for a, b in zip(self.mats, other.mats)], check=False)

    def scale(self, c: int) -> "ModuleMap":
        return ModuleMap(self.domain, self.codomain, [(int(c) * a) % self.p for a in self.mats], check=False)

    def flat(self) -> np.ndarray:
        """Row-major concatenation of the vertex matrices."""
        if not self.mats:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([m.reshape(-1) for m in self.mats])

    def total(self) -> np.ndarray:
        """Block-diagonal matrix on the total spaces."""
        out = _zeros(self.codomain.dim, self.domain.dim)
        ro, co = self.codomain.offsets(), self.domain.offsets()
        for v, m in enumerate(self.mats):
            out[ro[v] : ro[v] + m.shape[0], co[v] : co[v] + m.shape[1]] = m
        return out

    def is_zero(self) -> bool:
        return not any(np.any(m) for m in self.mats)

    def rank(self) -> int:
        return sum(la.rank(m, self.p) for m in self.mats)

    def is_injective(self) -> bool:
        return self.rank() == self.domain.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.codomain.dim

    def is_iso(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.is_injective()

    def inverse(self) -> "ModuleMap":
        return ModuleMap(self.codomain, self.domain, [la.inverse(m, self.p) for m in self.mats], check=False)

    def kernel(self) -> tuple[Module, "ModuleMap"]:
        return submodule(self.domain, [la.nullspace(m, self.p) for m in self.mats])

    def image(self) -> tuple[Module, "ModuleMap"]:
        return submodule(self.codomain, [la.column_space(m, self.p) for m in self.mats])

    def cokernel(self) -> tuple[Module, "ModuleMap"]:
        return quotient(self.codomain, [la.column_space(m, self.p) for m in self.mats])

    def dual(self) -> "ModuleMap":
        return ModuleMap(self.codomain.dual(), self.domain.dual(), [m.T for m in self.mats], check=False)

    def __repr__(self) -> str:
        return f"ModuleMap({self.domain!r} -> {self.codomain!r}, rank={self.rank()})"


# ----------------------------------------------------------------------
# hom spaces


class HomSpace:
    """A basis of ``Hom(M, N)`` with coordinate extraction.

    Attributes:
        domain: The module ``M``.
        codomain: The module ``N``.
        basis: Linearly independent maps spanning all homomorphisms.
    """

    def __init__(self, domain: Module, codomain: Module, basis: list[ModuleMap]):
        self.domain = domain
        self.codomain = codomain
        self.basis = basis
        total = sum(codomain.dims[v] * domain.dims[v] for v in range(domain.algebra.n))
        if basis:
            self.matrix = np.stack([b.flat() for b in basis], axis=1)
        else:
            self.matrix = _zeros(total, 0)
        self._solver = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, k: int) -> ModuleMap:
        return self.basis[k]

    def element(self, coeffs: Iterable[int]) -> ModuleMap:
        coeffs = np.asarray(list(coeffs), dtype=np.int64)
        flat = la.matmul(self.matrix, coeffs.reshape(-1, 1), self.domain.p).reshape(-1)
        return unflatten(self.domain, self.codomain, flat)

    def coords(self, phi: ModuleMap) -> np.ndarray:
        """Coordinates of ``phi`` in the basis."""
        return self.coords_flat(phi.flat())

    def coords_flat(self, flat: np.ndarray) -> np.ndarray:
        """Coordinates of a flattened map (see :meth:`ModuleMap.flat`)."""
        p = self.domain.p
        flat = np.asarray(flat, dtype=np.int64) % p
        if self.dim == 0:
            if np.any(flat):
                raise ModuleError("map is not in the hom space")
            return np.zeros(0, dtype=np.int64)
        if self._solver is None:
            _, rows = la.rref(self.matrix.T, p)
            self._solver = (rows, la.inverse(self.matrix[rows, :], p))
        rows, inv = self._solver
        x = la.matmul(inv, flat[rows].reshape(-1, 1), p).reshape(-1)
        if not np.array_equal(la.matmul(self.matrix, x.reshape(-1, 1), p).reshape(-1), flat):
            raise ModuleError("map is not in the hom space")
        return x


def unflatten(domain: Module, codomain: Module, flat: np.ndarray) -> ModuleMap:
    mats, pos = [], 0
    for v in range(domain.algebra.n):
        r, c = codomain.dims[v], domain.dims[v]
        mats.append(np.asarray(flat[pos : pos + r * c]).reshape(r, c))
        pos += r * c
    return ModuleMap(domain, codomain, mats, check=False)


def hom_system(M: Module, N: Module) -> np.ndarray:
    """Coefficient matrix of the intertwining equations for ``Hom(M, N)``."""
    A = M.algebra
    p = A.p
    q = A.quiver
    var_off, acc = [], 0
    for v in range(q.n):
        var_off.append(acc)
        acc += N.dims[v] * M.dims[v]
    blocks = []
    for k, a in enumerate(q.arrows):
        s, t = a.source, a.target
        rows = N.dims[t] * M.dims[s]
        if rows == 0:
            continue
        eq = _zeros(rows, acc)
        if N.dims[t] * M.dims[t]:
            eq[:, var_off[t] : var_off[t] + N.dims[t] * M.dims[t]] += np.kron(np.eye(N.dims[t], dtype=np.int64), M.mats[k].T)
        if N.dims[s] * M.dims[s]:
            eq[:, var_off[s] : var_off[s] + N.dims[s] * M.dims[s]] -= np.kron(N.mats[k], np.eye(M.dims[s], dtype=np.int64))
        blocks.append(eq % p)
    if not blocks:
        return _zeros(0, acc)
    return np.concatenate(blocks, axis=0)


def hom(M: Module, N: Module) -> HomSpace:
    """All homomorphisms ``M -> N`` as the nullspace of the intertwining system."""
    if M.algebra is not N.algebra:
        raise ModuleError("hom between modules over different presentations")
    system = hom_system(M, N)
    ns = la.nullspace(system, M.p)
    basis = [unflatten(M, N, ns[:, k]) for k in range(ns.shape[1])]
    return HomSpace(M, N, basis)


def hom_dim(M: Module, N: Module) -> int:
    system = hom_system(M, N)
    return system.shape[1] - la.rank(system, M.p)


# ----------------------------------------------------------------------
# constructions


def direct_sum(modules: Sequence[Module], name: str = "") -> tuple[Module, list[ModuleMap], list[ModuleMap]]:
    """Direct sum with its injections and projections."""
    if not modules:
        raise ModuleError("empty direct sum needs an algebra; use zero_module")
    A = modules[0].algebra
    dims = [sum(M.dims[v] for M in modules) for v in range(A.n)]
    mats = []
    for k, a in enumerate(A.quiver.arrows):
        out = _zeros(dims[a.target], dims[a.source])
        r = c = 0
        for M in modules:
            m = M.mats[k]
            out[r : r + m.shape[0], c : c + m.shape[1]] = m
            r += m.shape[0]
            c += m.shape[1]
        mats.append(out)
    S = Module(A, dims, mats, name=name or "+".join(M.name or "?" for M in modules), check=False)
    gens: list[int] = []
    if all(M.free_gens is not None for M in modules):
        for M in modules:
            gens.extend(M.free_gens)  # type: ignore[arg-type]
        S.free_gens = tuple(gens)
    incs, projs = [], []
    start = [0] * A.n
    for M in modules:
        inc_m, proj_m = [], []
        for v in range(A.n):
            e = _zeros(dims[v], M.dims[v])
            e[start[v] : start[v] + M.dims[v], :] = np.eye(M.dims[v], dtype=np.int64)
            inc_m.append(e)
            proj_m.append(e.T.copy())
            start[v] += M.dims[v]
        incs.append(ModuleMap(M, S, inc_m, check=False))
        projs.append(ModuleMap(S, M, proj_m, check=False))
    return S, incs, projs


def submodule(M: Module, bases: Sequence[np.ndarray], name: str = "") -> tuple[Module, ModuleMap]:
    """The submodule spanned by per-vertex column bases (which must be arrow-stable).

    Returns:
        ``(U, inclusion)``.
    """
    A = M.algebra
    p = A.p
    bases = [la.as_columns(b, M.dims[v]) % p for v, b in enumerate(bases)]
    dims = [b.shape[1] for b in bases]
    mats = []
    for k, a in enumerate(A.quiver.arrows):
        img = la.matmul(M.mats[k], bases[a.source], p)
        if dims[a.source] == 0:
            mats.append(_zeros(dims[a.target], 0))
            continue
        x = la.try_solve(bases[a.target], img, p) if dims[a.target] else (None if np.any(img) else _zeros(0, dims[a.source]))
        if x is None:
            raise ModuleError("subspaces are not stable under the arrows")
        mats.append(x)
    U = Module(A, dims, mats, name=name, check=False)
    return U, ModuleMap(U, M, bases, check=False)


def quotient(M: Module, bases: Sequence[np.ndarray], name: str = "") -> tuple[Module, ModuleMap]:
    """``M / U`` for an arrow-stable family of subspaces, with the projection."""
    A = M.algebra
    p = A.p
    projs, rinv = [], []
    for v in range(A.n):
        b = la.as_columns(bases[v], M.dims[v])
        proj, _ = la.cokernel_data(b, p)
        projs.append(proj)
        rinv.append(la.right_inverse(proj, p) if proj.shape[0] else _zeros(M.dims[v], 0))
    dims = [pr.shape[0] for pr in projs]
    mats = []
    for k, a in enumerate(A.quiver.arrows):
        mats.append(la.matmul(la.matmul(projs[a.target], M.mats[k], p), rinv[a.source], p))
    Q = Module(A, dims, mats, name=name, check=False)
    pi = ModuleMap(M, Q, projs, check=False)
    return Q, pi
