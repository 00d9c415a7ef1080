"""Surjections from projectives, their homotopy quotient and the algebra ``B``.

Objects of ``Q`` are surjections ``f: P -> X`` with ``P`` projective.  A
morphism ``(t, s)`` satisfies ``f' t = s f``; since ``f`` is onto, ``s`` is
determined by ``t`` and exists exactly when ``f' t`` kills ``ker f``.  So a
``Q``-morphism is stored through its component ``t: P -> P'``.

``H`` is ``Q`` modulo the morphisms factoring through objects ``1: P -> P``;
those are the pairs ``(h f, f' h)`` with ``h: X -> P'``.

``B = End_H(G)^op`` for ``G`` the sum of the ``H``-indecomposables
``(P_i -> 0)`` and ``(P_U -> U)`` (projective covers of the non-projective
indecomposables ``U``).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .auslander import _restrict_corner, check_corner
from .decompose import Catalog
from .errors import CertificateFailure, InputError
from .homological import free_module, is_projective, projective_cover, right_multiplication
from .modules import Module, ModuleMap, hom, unflatten, zero_module
from .present import CategoryPresentation, LinearCategory, present_category
from .quiver import Algebra

__all__ = ["QObject", "QMorphismSpace", "hom_Q", "hom_H", "h_indecomposables", "BPresentation", "build_B"]


@dataclass
class QObject:
    """A surjection ``f: P -> X`` from a projective (free) module.

    Attributes:
        P: Free module (``free_gens`` set).
        X: The quotient.
        f: The surjection.
        label: Display label.
    """

    P: Module
    X: Module
    f: ModuleMap
    label: str = ""
    _ker: tuple | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.P.free_gens is None:
            raise InputError("the source of a QObject must be a free module with known generators")
        if not self.f.is_surjective():
            raise InputError("a QObject needs a surjection")

    @property
    def kernel(self) -> tuple[Module, ModuleMap]:
        if self._ker is None:
            self._ker = self.f.kernel()
        return self._ker

    @classmethod
    def zero_target(cls, P: Module, label: str = "") -> "QObject":
        Z = zero_module(P.algebra)
        return cls(P, Z, P.zero_map(Z), label=label)

    @classmethod
    def identity(cls, P: Module, label: str = "") -> "QObject":
        return cls(P, P, P.identity(), label=label)

    @classmethod
    def cover(cls, X: Module, label: str = "") -> "QObject":
        pc = projective_cover(X)
        return cls(pc.cover, X, pc.epi, label=label)


class _Coords:
    """Coordinates with respect to linearly independent columns."""

    def __init__(self, mat: np.ndarray, p: int):
        self.mat = mat
        self.p = p
        if mat.shape[1]:
            _, rows = la.rref(mat.T, p)
            self.rows = rows
            self.inv = la.inverse(mat[rows, :], p)
        else:
            self.rows, self.inv = [], np.zeros((0, 0), dtype=np.int64)

    def __call__(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.mat.shape[1]:
            if np.any(v):
                raise CertificateFailure("vector outside the span")
            return np.zeros(0, dtype=np.int64)
        x = la.matmul(self.inv, v[self.rows].reshape(-1, 1), self.p).reshape(-1)
        if not np.array_equal(la.matmul(self.mat, x.reshape(-1, 1), self.p).reshape(-1), v):
            raise CertificateFailure("vector outside the span")
        return x


@dataclass
class QMorphismSpace:
    """``Hom_Q(a, b)`` and its quotient ``Hom_H(a, b)``.

    Attributes:
        source, target: The objects.
        t_basis: Basis of ``Hom_Q`` through the ``t`` components.
        factoring: Basis of the ``t`` components ``h f`` of maps factoring
            through ``E``.
        h_basis: Representatives (``t`` components) of a basis of ``Hom_H``.
    """

    source: QObject
    target: QObject
    t_basis: list[ModuleMap]
    factoring: list[ModuleMap]
    h_basis: list[ModuleMap]
    _solver: _Coords | None = field(default=None, repr=False)

    @property
    def dim_Q(self) -> int:
        return len(self.t_basis)

    @property
    def dim_H(self) -> int:
        return len(self.h_basis)

    @property
    def dim_factoring(self) -> int:
        return len(self.factoring)

    def s_component(self, t: ModuleMap) -> ModuleMap:
        """The induced ``s: X -> X'`` with ``f' t = s f``."""
        a, b = self.source, self.target
        p = t.p
        ft = b.f @ t
        mats = []
        for v in range(t.domain.algebra.n):
            fv = a.f.mats[v]
            if fv.shape[0] == 0:
                mats.append(np.zeros((b.X.dims[v], 0), dtype=np.int64))
                continue
            mats.append(la.matmul(ft.mats[v], la.right_inverse(fv, p), p))
        return ModuleMap(a.X, b.X, mats)

    def coords_H(self, t: ModuleMap) -> np.ndarray:
        """Coordinates of the class of ``t`` in ``Hom_H``."""
        if self._solver is None:
            n = len(self.h_basis)
            cols = [m.flat() for m in self.h_basis] + [m.flat() for m in self.factoring]
            size = t.flat().size
            mat = np.stack(cols, axis=1) if cols else np.zeros((size, 0), dtype=np.int64)
            self._solver = _Coords(mat, t.p)
            self._nh = n
        return self._solver(t.flat())[: self._nh]

    def element_H(self, coeffs) -> ModuleMap:
        p = self.source.P.p
        out = self.source.P.zero_map(self.target.P)
        for c, m in zip(coeffs, self.h_basis):
            if c:
                out = out + m.scale(int(c))
        return ModuleMap(out.domain, out.codomain, [x % p for x in out.mats], check=False)


def hom_Q(a: QObject, b: QObject) -> QMorphismSpace:
    """``Hom_Q(a, b)``: maps ``t: P -> P'`` with ``f' t (ker f) = 0``."""
    p = a.P.p
    H = hom(a.P, b.P)
    K, k = a.kernel
    cols = [(b.f @ t @ k).flat() for t in H.basis]
    if cols and cols[0].size:
        ns = la.nullspace(np.stack(cols, axis=1), p)
    else:
        ns = np.eye(H.dim, dtype=np.int64)
    t_basis = [H.element(ns[:, j]) for j in range(ns.shape[1])]
    return QMorphismSpace(a, b, t_basis, [], [])


def hom_H(a: QObject, b: QObject) -> QMorphismSpace:
    """``Hom_H(a, b) = Hom_Q(a, b) / {h f}``, with representatives of a quotient basis."""
    sp = hom_Q(a, b)
    p = a.P.p
    hs = hom(a.X, b.P)
    fact_maps = [h @ a.f for h in hs.basis]
    size = sum(a.P.dims[v] * b.P.dims[v] for v in range(a.P.algebra.n))
    fmat = np.stack([m.flat() for m in fact_maps], axis=1) if fact_maps else np.zeros((size, 0), dtype=np.int64)
    fbasis = la.column_space(fmat, p) if fact_maps else fmat
    tmat = np.stack([m.flat() for m in sp.t_basis], axis=1) if sp.t_basis else np.zeros((size, 0), dtype=np.int64)
    full = np.concatenate([fbasis, tmat], axis=1)
    _, piv = la.rref(full, p) if full.shape[1] else (None, [])
    k0 = fbasis.shape[1]
    reps = [sp.t_basis[c - k0] for c in piv if c >= k0]
    factoring = [unflatten(a.P, b.P, fbasis[:, j]) for j in range(k0)]
    return QMorphismSpace(a, b, sp.t_basis, factoring, reps)


def h_indecomposables(A: Algebra, cat: Catalog) -> tuple[list[QObject], list[int]]:
    """``(P_i -> 0)`` for every vertex, then ``(P_U -> U)`` for non-projective ``U``.

    Returns:
        The objects and, for the module-type ones, their catalog indices.
    """
    objs = [QObject.zero_target(free_module(A, [i]), label=A.quiver.vertices[i]) for i in range(A.n)]
    members = []
    for k, U in enumerate(cat.modules):
        if is_projective(U):
            continue
        objs.append(QObject.cover(U, label=U.name))
        members.append(k)
    return objs, members


@dataclass
class BPresentation:
    """``B`` with its vertex objects, ``H``-hom spaces and the corner ``eBe = A``.

    Attributes:
        algebra: The base algebra ``A``.
        catalog: Catalog of ``A``.
        objects: ``G_v`` for each vertex of ``B`` (projective type first).
        members: Catalog index of each module-type vertex.
        homs: ``homs[v][w] = Hom_H(G_v, G_w)``.
        presentation: ``B`` as quiver with relations.
        corner_images: Image in ``B`` of each basis element of ``A``.
    """

    algebra: Algebra
    catalog: Catalog
    objects: list[QObject]
    members: list[int]
    homs: list[list[QMorphismSpace]]
    presentation: CategoryPresentation
    corner_images: list[np.ndarray] = field(default_factory=list)

    @property
    def B(self) -> Algebra:
        return self.presentation.algebra

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def e_vertices(self) -> list[int]:
        return list(range(self.n))

    @property
    def module_vertices(self) -> list[int]:
        return list(range(self.n, len(self.objects)))

    def arrow_t(self, a: int) -> ModuleMap:
        """The ``t`` component realizing arrow ``a: w -> v`` as a map ``P_v -> P_w``."""
        arr = self.B.quiver.arrows[a]
        return self.homs[arr.target][arr.source].element_H(self.presentation.arrow_maps[a])

    def restrict(self, F: Module) -> Module:
        """``e F`` as an ``A``-module."""
        return _restrict_corner(F, self.algebra, self.e_vertices, self.corner_images)

    def split_dims(self, F: Module) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """``(d, r)``: dimensions at projective-type and module-type vertices."""
        return tuple(F.dims[: self.n]), tuple(F.dims[self.n :])

    def vertex_report(self) -> str:
        lines = []
        for v, obj in enumerate(self.objects):
            kind = "projective-type" if v < self.n else "module-type"
            src = f"P{obj.label} -> 0" if v < self.n else f"cover of {obj.label}"
            lines.append(f"{self.B.quiver.vertices[v]}\t{kind}\t{src}")
        return "\n".join(lines)


def build_B(
    A: Algebra,
    cat: Catalog,
    name: str = "B",
    projective_label=None,
    module_label=None,
    arrow_namer=None,
) -> BPresentation:
    """Construct ``B = End_H(G)^op`` and verify ``eBe = A``.

    Args:
        A: The algebra.
        cat: A certified catalog of ``A``.
        name: Name of the resulting algebra.
        projective_label: Vertex label for ``(P_i -> 0)`` from ``i``'s label.
        module_label: Vertex label for ``(P_U -> U)`` from ``U``'s name.
        arrow_namer: Optional arrow naming rule (see :func:`present_category`).

    Raises:
        CertificateFailure: if ``eBe`` is not isomorphic to ``A``.
    """
    projective_label = projective_label or (lambda v: f"[{v}]")
    module_label = module_label or (lambda u: f"[{u}]")
    objs, members = h_indecomposables(A, cat)
    m = len(objs)
    homs = [[hom_H(objs[v], objs[w]) for w in range(m)] for v in range(m)]
    dims = [[homs[v][w].dim_H for w in range(m)] for v in range(m)]

    def compose(v, w, u, a, b):
        return homs[v][u].coords_H(homs[w][u].h_basis[a] @ homs[v][w].h_basis[b])

    def identity(v):
        return homs[v][v].coords_H(objs[v].P.identity())

    labels = [projective_label(A.quiver.vertices[i]) for i in range(A.n)]
    labels += [module_label(cat.modules[k].name) for k in members]
    lc = LinearCategory(labels, dims, compose, identity, A.p)
    pres = present_category(lc, name=name, arrow_namer=arrow_namer)
    bp = BPresentation(A, cat, objs, members, homs, pres)

    def rho(a_elem, s, t):
        return homs[t][s].coords_H(right_multiplication(A, a_elem, s, t))

    bp.corner_images = check_corner(A, pres, list(range(A.n)), rho)
    return bp
