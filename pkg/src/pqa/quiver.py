"""
Quivers, paths and path algebras with admissible relations over F_p.

A path is stored in the order its arrows are applied, so the text ``c*a``
(apply ``a``, then ``c``) becomes the arrow tuple ``(a, c)``.  The algebra
``KQ/I`` is computed by exhaustive enumeration of paths up to a length
bound: the relation ideal is spanned degree by degree and the standard
monomials (shortest, then lexicographically smallest, paths outside the
leading terms) form the path basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple

import numpy as np

from . import linalg as la
from .errors import InputError

__all__ = [
    "Arrow",
    "Quiver",
    "Path",
    "Algebra",
    "PresentationError",
    "DEFAULT_MAX_LENGTH",
]

DEFAULT_MAX_LENGTH = 32


class PresentationError(InputError):
    """Raised for malformed or non-admissible presentations."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass(frozen=True)
class Quiver:
    """A finite quiver with labelled vertices and named arrows."""

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise PresentationError("vertex labels must be unique")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError("arrow names must be unique")
        n = len(self.vertices)
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise PresentationError(f"arrow {a.name} has an endpoint out of range")

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def out_arrows(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.vertices]
        for k, a in enumerate(self.arrows):
            out[a.source].append(k)
        return tuple(tuple(x) for x in out)

    @cached_property
    def in_arrows(self) -> tuple[tuple[int, ...], ...]:
        inn = [[] for _ in self.vertices]
        for k, a in enumerate(self.arrows):
            inn[a.target].append(k)
        return tuple(tuple(x) for x in inn)

    def vertex_index(self, label: str) -> int:
        try:
            return self.vertices.index(str(label))
        except ValueError:
            raise PresentationError(f"unknown vertex {label!r}") from None

    def arrow_index(self, name: str) -> int:
        for k, a in enumerate(self.arrows):
            if a.name == name:
                return k
        raise PresentationError(f"unknown arrow {name!r}")

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, tuple(Arrow(a.name, a.target, a.source) for a in self.arrows))


class Path(NamedTuple):
    """A path: ``arrows`` lists arrow indices in the order they are applied."""

    source: int
    target: int
    arrows: tuple[int, ...] = ()

    def __len__(self) -> int:  # type: ignore[override]
        return len(self.arrows)

    @property
    def length(self) -> int:
        return len(self.arrows)

    def then(self, other: "Path") -> "Path":
        """The path that first follows ``self`` and then ``other``."""
        if self.target != other.source:
            raise PresentationError("paths are not composable")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))

    def text(self, quiver: Quiver) -> str:
        if not self.arrows:
            return f"e_{quiver.vertices[self.source]}"
        return "*".join(quiver.arrows[k].name for k in reversed(self.arrows))


def trivial(v: int) -> Path:
    return Path(v, v, ())


def _sort_key(path: Path):
    return (len(path.arrows), path.arrows)


@dataclass
class _Block:
    """Normal-form data for the paths from ``s`` to ``t``."""

    paths: list[Path]
    col: dict
    reduced: np.ndarray
    pivots: list[int]
    basis_cols: list[int]
    global_index: list[int] = field(default_factory=list)

    def __post_init__(self):
        self.pivot_row = {c: r for r, c in enumerate(self.pivots)}
        self.basis_pos = {c: k for k, c in enumerate(self.basis_cols)}


class Algebra:
    """A basic algebra ``KQ/I`` with its path basis and multiplication.

    Args:
        quiver: The quiver ``Q``.
        relations: Linear combinations of parallel paths of length at least 2,
            each a mapping from :class:`Path` to an integer coefficient.
        p: Prime characteristic of the ground field.
        name: Display name.
        max_length: Bound for the nilpotency search of the arrow ideal.

    Raises:
        PresentationError: if a relation is not admissible or no power of the
            arrow ideal up to ``max_length`` lies in the relation ideal.
    """

    def __init__(
        self,
        quiver: Quiver,
        relations: Iterable[Mapping[Path, int]] = (),
        p: int = 2,
        name: str = "A",
        max_length: int = DEFAULT_MAX_LENGTH,
    ):
        self.p = la.check_prime(p)
        self.quiver = quiver
        self.name = name
        self.max_length = int(max_length)
        self.relations = self._clean_relations(relations)
        self._opposite: Algebra | None = None
        self._nf_cache: dict[Path, np.ndarray] = {}
        self._mult_cache: dict[tuple[int, int], np.ndarray] = {}
        self._build()

    # ------------------------------------------------------------------
    # construction
    def _clean_relations(self, relations) -> tuple[dict, ...]:
        out = []
        for k, rel in enumerate(relations):
            clean = {}
            for path, c in dict(rel).items():
                path = Path(*path)
                c = int(c) % self.p
                if c:
                    clean[path] = (clean.get(path, 0) + c) % self.p
            clean = {q: c for q, c in clean.items() if c}
            if not clean:
                continue
            ends = {(q.source, q.target) for q in clean}
            if len(ends) != 1:
                raise PresentationError(f"relation {k + 1} mixes non-parallel paths")
            for q in clean:
                if len(q.arrows) < 2:
                    raise PresentationError(
                        f"relation {k + 1} is not admissible: term {q.text(self.quiver)} has length < 2"
                    )
                self._check_path(q)
            out.append(clean)
        return tuple(out)

    def _check_path(self, q: Path):
        v = q.source
        for a in q.arrows:
            arr = self.quiver.arrows[a]
            if arr.source != v:
                raise PresentationError("path arrows do not compose")
            v = arr.target
        if v != q.target:
            raise PresentationError("path target mismatch")

    def _paths_by_pair(self, bound: int) -> dict[tuple[int, int], list[Path]]:
        """All paths of length < ``bound``, grouped by (source, target)."""
        q = self.quiver
        groups: dict[tuple[int, int], list[Path]] = {}
        frontier = [trivial(v) for v in range(q.n)]
        length = 0
        while frontier and length < bound:
            nxt = []
            for path in frontier:
                groups.setdefault((path.source, path.target), []).append(path)
                if length + 1 < bound:
                    for a in q.out_arrows[path.target]:
                        nxt.append(Path(path.source, q.arrows[a].target, path.arrows + (a,)))
            frontier = nxt
            length += 1
        return groups

    def _ideal_rows(self, groups, bound):
        """Spanning rows of (I + J^bound) / J^bound, per block."""
        rows: dict[tuple[int, int], list[dict]] = {}
        from_vertex: dict[int, list[Path]] = {}
        to_vertex: dict[int, list[Path]] = {}
        for (s, t), ps in groups.items():
            from_vertex.setdefault(s, []).extend(ps)
            to_vertex.setdefault(t, []).extend(ps)
        for rel in self.relations:
            (s_r, t_r) = next(iter(rel)).source, next(iter(rel)).target
            low = min(len(q.arrows) for q in rel)
            for v in to_vertex.get(s_r, []):
                if low + len(v.arrows) >= bound:
                    continue
                for u in from_vertex.get(t_r, []):
                    if low + len(v.arrows) + len(u.arrows) >= bound:
                        continue
                    row = {}
                    for q, c in rel.items():
                        full = Path(v.source, u.target, v.arrows + q.arrows + u.arrows)
                        if len(full.arrows) < bound:
                            row[full] = c
                    if row:
                        rows.setdefault((v.source, u.target), []).append(row)
        return rows

    def _blocks_for(self, bound: int) -> dict[tuple[int, int], _Block]:
        groups = self._paths_by_pair(bound)
        rows = self._ideal_rows(groups, bound)
        blocks = {}
        for key, ps in groups.items():
            ordered = sorted(ps, key=_sort_key, reverse=True)
            col = {q: k for k, q in enumerate(ordered)}
            rel_rows = rows.get(key, [])
            mat = np.zeros((len(rel_rows), len(ordered)), dtype=np.int64)
            for i, row in enumerate(rel_rows):
                for q, c in row.items():
                    mat[i, col[q]] = (mat[i, col[q]] + c) % self.p
            if len(rel_rows):
                red, piv = la.rref(mat, self.p)
                red = red[: len(piv)]
            else:
                red, piv = np.zeros((0, len(ordered)), dtype=np.int64), []
            pset = set(piv)
            basis_cols = sorted((c for c in range(len(ordered)) if c not in pset), key=lambda c: _sort_key(ordered[c]))
            blocks[key] = _Block(ordered, col, red, list(piv), basis_cols)
        return blocks

    def _build(self):
        for bound in range(2, self.max_length + 2):
            blocks = self._blocks_for(bound)
            ok = True
            for blk in blocks.values():
                for c, q in enumerate(blk.paths):
                    if len(q.arrows) != bound - 1:
                        continue
                    r = blk.pivot_row.get(c)
                    if r is None or np.any(blk.reduced[r, blk.basis_cols]):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                # the surviving basis never contains paths of length bound - 1
                self._bound = bound
                self.nilpotency = bound - 1
                self._blocks = blocks
                break
        else:
            raise PresentationError(
                f"arrow ideal is not nilpotent modulo the relations within length {self.max_length}"
            )
        basis: list[Path] = []
        self._block_of: list[tuple[int, int]] = []
        for key in sorted(self._blocks):
            blk = self._blocks[key]
            blk.global_index = []
            for c in blk.basis_cols:
                blk.global_index.append(len(basis))
                basis.append(blk.paths[c])
                self._block_of.append(key)
        self.basis: tuple[Path, ...] = tuple(basis)
        self.index = {q: k for k, q in enumerate(self.basis)}
        self.block_indices: dict[tuple[int, int], np.ndarray] = {}
        for k, key in enumerate(self._block_of):
            self.block_indices.setdefault(key, [])
            self.block_indices[key].append(k)  # type: ignore[union-attr]
        self.block_indices = {k: np.array(v, dtype=np.int64) for k, v in self.block_indices.items()}

    # ------------------------------------------------------------------
    # basic data
    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"Algebra({self.name!r}, vertices={self.n}, arrows={len(self.quiver.arrows)}, dim={self.dim}, p={self.p})"

    def block(self, s: int, t: int) -> np.ndarray:
        """Global indices of basis paths from ``s`` to ``t``."""
        return self.block_indices.get((s, t), np.zeros(0, dtype=np.int64))

    def block_dim(self, s: int, t: int) -> int:
        return len(self.block(s, t))

    def cartan(self) -> np.ndarray:
        """``C[t, s] = dim e_t A e_s`` (paths from s to t)."""
        c = np.zeros((self.n, self.n), dtype=np.int64)
        for (s, t), idx in self.block_indices.items():
            c[t, s] = len(idx)
        return c

    def idempotent(self, v: int) -> np.ndarray:
        return self.nf(trivial(v))

    def arrow_element(self, a: int) -> np.ndarray:
        arr = self.quiver.arrows[a]
        return self.nf(Path(arr.source, arr.target, (a,)))

    # ------------------------------------------------------------------
    # normal forms and multiplication
    def nf(self, path: Path) -> np.ndarray:
        """Coordinates of a path in the path basis."""
        path = Path(*path)
        hit = self._nf_cache.get(path)
        if hit is not None:
            return hit
        vec = np.zeros(self.dim, dtype=np.int64)
        if len(path.arrows) < self._bound:
            blk = self._blocks.get((path.source, path.target))
            if blk is not None and path in blk.col:
                c = blk.col[path]
                if c in blk.basis_pos:
                    vec[blk.global_index[blk.basis_pos[c]]] = 1
                else:
                    r = blk.pivot_row[c]
                    for gi, bc in zip(blk.global_index, blk.basis_cols):
                        vec[gi] = (-blk.reduced[r, bc]) % self.p
        vec.setflags(write=False)
        self._nf_cache[path] = vec
        return vec

    def basis_product(self, i: int, j: int) -> np.ndarray:
        """``b_i * b_j`` (apply ``b_j`` first)."""
        key = (i, j)
        hit = self._mult_cache.get(key)
        if hit is not None:
            return hit
        bi, bj = self.basis[i], self.basis[j]
        if bj.target != bi.source:
            out = np.zeros(self.dim, dtype=np.int64)
            out.setflags(write=False)
        else:
            out = self.nf(bj.then(bi))
        self._mult_cache[key] = out
        return out

    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product ``x * y`` of two elements given by coordinates."""
        out = np.zeros(self.dim, dtype=np.int64)
        for i in np.flatnonzero(x):
            for j in np.flatnonzero(y):
                out += int(x[i]) * int(y[j]) * self.basis_product(int(i), int(j))
        return out % self.p

    def element_of_paths(self, combo: Mapping[Path, int]) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for q, c in combo.items():
            out += int(c) * self.nf(q)
        return out % self.p

    def left_mult_matrix(self, x: np.ndarray, s: int, u: int, t: int) -> np.ndarray:
        """Matrix of ``y -> x*y`` from block (s, u) to block (s, t)."""
        src, dst = self.block(s, u), self.block(s, t)
        out = np.zeros((len(dst), len(src)), dtype=np.int64)
        for k, j in enumerate(src):
            e = np.zeros(self.dim, dtype=np.int64)
            e[j] = 1
            out[:, k] = self.mul(x, e)[dst]
        return out

    def right_mult_matrix(self, x: np.ndarray, s: int, u: int, t: int) -> np.ndarray:
        """Matrix of ``y -> y*x`` from block (u, t) to block (s, t); ``x`` in block (s, u)."""
        src, dst = self.block(u, t), self.block(s, t)
        out = np.zeros((len(dst), len(src)), dtype=np.int64)
        for k, j in enumerate(src):
            e = np.zeros(self.dim, dtype=np.int64)
            e[j] = 1
            out[:, k] = self.mul(e, x)[dst]
        return out

    def paths_up_to(self, length: int) -> list[Path]:
        """Every path of length at most ``length``, shortest first."""
        groups = self._paths_by_pair(length + 1)
        out = [q for ps in groups.values() for q in ps]
        return sorted(out, key=lambda q: (len(q.arrows), q.source, q.arrows))

    # ------------------------------------------------------------------
    def opposite(self) -> "Algebra":
        """The opposite presentation: reversed arrows and reversed relation paths."""
        if self._opposite is None:
            rels = [{q.reversed(): c for q, c in rel.items()} for rel in self.relations]
            op = Algebra(self.quiver.opposite(), rels, self.p, name=self.name + "^op", max_length=self.max_length)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def relation_text(self, rel: Mapping[Path, int]) -> str:
        parts = []
        for q, c in sorted(rel.items(), key=lambda qc: _sort_key(qc[0])):
            c = int(c) % self.p
            sign = "+"
            if c > self.p // 2 and self.p > 2:
                c, sign = self.p - c, "-"
            coeff = "" if c == 1 else f"{c} "
            parts.append((sign, coeff + q.text(self.quiver)))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text
