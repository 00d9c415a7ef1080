"""
Homological calculus over a presented algebra: standard modules, projective
covers and syzygies, Ext via syzygies, injective envelopes (through the
opposite presentation), the Nakayama functors and the inverse
Auslander-Reiten translate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .modules import HomSpace, Module, ModuleMap, direct_sum, hom, zero_module
from .quiver import Algebra, Path

__all__ = [
    "projective",
    "injective",
    "simple",
    "free_module",
    "regular_module",
    "standard_modules",
    "map_from_free",
    "free_coordinates",
    "ProjectiveCover",
    "projective_cover",
    "syzygy",
    "is_projective",
    "is_injective",
    "projective_dimension",
    "injective_dimension",
    "ExtGroup",
    "ext",
    "injective_envelope",
    "injective_copresentation",
    "nakayama",
    "nakayama_map",
    "TauMinus",
    "tau_minus",
    "right_multiplication",
]


def _zeros(r: int, c: int) -> np.ndarray:
    return np.zeros((r, c), dtype=np.int64)


def projective(A: Algebra, v: int) -> Module:
    """``P_v = A e_v``: basis at vertex ``w`` is the basis paths from ``v`` to ``w``."""
    cache = A.__dict__.setdefault("_proj_cache", {})
    if v in cache:
        return cache[v]
    q = A.quiver
    dims = [A.block_dim(v, w) for w in range(A.n)]
    mats = []
    for ai, a in enumerate(q.arrows):
        src, dst = A.block(v, a.source), A.block(v, a.target)
        m = _zeros(len(dst), len(src))
        for k, j in enumerate(src):
            m[:, k] = A.nf(A.basis[j].then(Path(a.source, a.target, (ai,))))[dst]
        mats.append(m)
    P = Module(A, dims, mats, name=f"P{q.vertices[v]}", check=False)
    P.free_gens = (v,)
    cache[v] = P
    return P


def simple(A: Algebra, v: int) -> Module:
    dims = [1 if w == v else 0 for w in range(A.n)]
    return Module(A, dims, [None] * len(A.quiver.arrows), name=f"S{A.quiver.vertices[v]}", check=False)


def injective(A: Algebra, v: int) -> Module:
    """``I_v = D(e_v A)``, the dual of the projective of the opposite presentation."""
    I = projective(A.opposite(), v).dual()
    return I.renamed(f"I{A.quiver.vertices[v]}")


def free_module(A: Algebra, verts: Sequence[int], name: str = "") -> Module:
    """``P_{v_1} + ... + P_{v_k}`` remembering its generator vertices."""
    verts = list(verts)
    if not verts:
        Z = zero_module(A)
        Z.free_gens = ()
        return Z
    S, _, _ = direct_sum([projective(A, v) for v in verts], name=name or "+".join(f"P{A.quiver.vertices[v]}" for v in verts))
    S.free_gens = tuple(verts)
    return S


def regular_module(A: Algebra) -> Module:
    return free_module(A, range(A.n), name="A")


def standard_modules(A: Algebra) -> tuple[list[Module], list[Module], list[Module]]:
    """Indecomposable projectives, injectives and simples, one per vertex."""
    return (
        [projective(A, v) for v in range(A.n)],
        [injective(A, v) for v in range(A.n)],
        [simple(A, v) for v in range(A.n)],
    )


def _generator_positions(P: Module) -> list[tuple[int, int]]:
    """(vertex, index in P at that vertex) of each generator ``e_{v_k}``."""
    A = P.algebra
    out = []
    seen = [0] * A.n
    for v in P.free_gens or ():
        # the summands are stacked in order; each P_w contributes block_dim(w, u) at vertex u
        pos = seen[v]
        local = list(A.block(v, v)).index(A.index[Path(v, v, ())])
        out.append((v, pos + local))
        for u in range(A.n):
            seen[u] += A.block_dim(v, u)
    return out


def map_from_free(P: Module, M: Module, images: Sequence[np.ndarray]) -> ModuleMap:
    """The map ``P -> M`` sending the k-th generator of a free module to ``images[k]``."""
    A = P.algebra
    p = A.p
    mats = [_zeros(M.dims[w], P.dims[w]) for w in range(A.n)]
    start = [0] * A.n
    for v, img in zip(P.free_gens or (), images):
        img = np.asarray(img, dtype=np.int64).reshape(-1)
        for w in range(A.n):
            idx = A.block(v, w)
            for k, j in enumerate(idx):
                mats[w][:, start[w] + k] = la.matmul(M.path_matrix(A.basis[j]), img.reshape(-1, 1), p).reshape(-1)
            start[w] += len(idx)
    return ModuleMap(P, M, mats, check=False)


def free_coordinates(phi: ModuleMap) -> list[np.ndarray]:
    """Images of the generators under a map out of a free module."""
    out = []
    for v, pos in _generator_positions(phi.domain):
        out.append(phi.mats[v][:, pos].copy())
    return out


# ----------------------------------------------------------------------
# projective covers and syzygies


@dataclass
class ProjectiveCover:
    module: Module
    cover: Module
    epi: ModuleMap

    def __iter__(self):
        return iter((self.cover, self.epi))


def projective_cover(M: Module) -> ProjectiveCover:
    """Minimal projective cover: one generator per basis vector of ``top M``."""
    A = M.algebra
    rad = M.radical_bases()
    verts, images = [], []
    for v in range(A.n):
        comp = la.complement_columns(rad[v], M.dims[v], A.p)
        for k in range(comp.shape[1]):
            verts.append(v)
            images.append(comp[:, k])
    P = free_module(A, verts)
    epi = map_from_free(P, M, images)
    return ProjectiveCover(M, P, epi)


def syzygy(M: Module) -> tuple[Module, ModuleMap, ProjectiveCover]:
    """``Omega M`` with its inclusion into the projective cover."""
    pc = projective_cover(M)
    K, inc = pc.epi.kernel()
    return K, inc, pc


def is_projective(M: Module) -> bool:
    pc = projective_cover(M)
    return pc.cover.dim == M.dim


def is_injective(M: Module) -> bool:
    return is_projective(M.dual())


def projective_dimension(M: Module, bound: int = 16) -> int | None:
    """Projective dimension (``-1`` for the zero module); ``None`` past ``bound``."""
    if M.is_zero():
        return -1
    X = M
    for k in range(bound + 1):
        K, _, _ = syzygy(X)
        if K.is_zero():
            return k
        X = K
    return None


def injective_dimension(M: Module, bound: int = 16) -> int | None:
    return projective_dimension(M.dual(), bound)


@dataclass
class ExtGroup:
    """``Ext^k(M, N)`` as the cokernel of restriction along ``Omega^k M -> P_{k-1}``.

    Attributes:
        dim: The dimension of the group.
        hom_syzygy: ``Hom(Omega^k M, N)``.
        restriction: Matrix of ``Hom(P_{k-1}, N) -> Hom(Omega^k M, N)`` in coordinates.
        projection: Cokernel projection on coordinates of ``Hom(Omega^k M, N)``.
    """

    k: int
    dim: int
    hom_syzygy: HomSpace | None
    restriction: np.ndarray
    projection: np.ndarray

    def __int__(self) -> int:
        return self.dim


def ext(k: int, M: Module, N: Module) -> ExtGroup:
    """``Ext^k(M, N)`` via iterated syzygies, for ``k >= 1``."""
    if k < 1:
        raise ValueError("ext degree must be positive")
    p = M.p
    X = M
    for _ in range(k - 1):
        X, _, _ = syzygy(X)
    K, inc, pc = syzygy(X)
    if K.is_zero():
        return ExtGroup(k, 0, None, _zeros(0, 0), _zeros(0, 0))
    HK = hom(K, N)
    HP = hom(pc.cover, N)
    cols = [HK.coords(g @ inc) for g in HP.basis]
    R = np.stack(cols, axis=1) if cols else _zeros(HK.dim, 0)
    proj, d = la.cokernel_data(R, p)
    return ExtGroup(k, d, HK, R, proj)


# ----------------------------------------------------------------------
# injective side


def injective_envelope(M: Module) -> tuple[Module, ModuleMap]:
    """Minimal injective envelope ``M -> I`` built from the socle of ``M``."""
    pc = projective_cover(M.dual())
    I = pc.cover.dual()
    return I, pc.epi.dual()


def injective_copresentation(M: Module) -> tuple[ModuleMap, ModuleMap]:
    """Minimal ``0 -> M -> I -> J``: returns ``(M -> I, I -> J)``."""
    I, iota = injective_envelope(M)
    Cq, pi = iota.cokernel()
    J, jota = injective_envelope(Cq)
    return iota, jota @ pi


# ----------------------------------------------------------------------
# Nakayama functors


def right_multiplication(A: Algebra, a_elem: np.ndarray, i: int, j: int) -> ModuleMap:
    """``P_j -> P_i``, ``x -> x * a`` for an element ``a`` in block (i, j)."""
    Pj, Pi = projective(A, j), projective(A, i)
    mats = []
    for w in range(A.n):
        src, dst = A.block(j, w), A.block(i, w)
        m = _zeros(len(dst), len(src))
        for k, b in enumerate(src):
            e = np.zeros(A.dim, dtype=np.int64)
            e[b] = 1
            m[:, k] = A.mul(e, a_elem)[dst]
        mats.append(m)
    return ModuleMap(Pj, Pi, mats, check=False)


def _hom_into_regular(M: Module):
    """``Hom_A(M, A)`` as a module over the opposite presentation, with the hom spaces."""
    A = M.algebra
    spaces = [hom(M, projective(A, i)) for i in range(A.n)]
    op = A.opposite()
    mats = []
    for k, a in enumerate(A.quiver.arrows):
        rho = right_multiplication(A, A.arrow_element(k), a.source, a.target)
        Hs, Ht = spaces[a.target], spaces[a.source]
        m = _zeros(Ht.dim, Hs.dim)
        for c, phi in enumerate(Hs.basis):
            m[:, c] = Ht.coords(rho @ phi)
        mats.append(m)
    X = Module(op, [S.dim for S in spaces], mats, name=f"Hom({M.name},A)")
    return X, spaces


def nakayama(M: Module, direction: str = "nu") -> Module:
    """``nu M = D Hom_A(M, A)`` or ``nu^- M = Hom_A(D M, A)``.

    Args:
        M: Any module; the functors are exact equivalences only between
            projectives and injectives.
        direction: ``"nu"`` or ``"nu-"``.
    """
    if direction == "nu":
        X, _ = _hom_into_regular(M)
        return X.dual()
    if direction in ("nu-", "nu_inv", "nuinv"):
        return nakayama(M.dual(), "nu").dual()
    raise ValueError(f"unknown Nakayama direction {direction!r}")


def nakayama_map(g: ModuleMap, direction: str = "nu") -> ModuleMap:
    """The Nakayama functor applied to a morphism."""
    if direction == "nu":
        M, N = g.domain, g.codomain
        XM, SM = _hom_into_regular(M)
        XN, SN = _hom_into_regular(N)
        mats = []
        for i in range(M.algebra.n):
            m = _zeros(SM[i].dim, SN[i].dim)
            for c, psi in enumerate(SN[i].basis):
                m[:, c] = SM[i].coords(psi @ g)
            mats.append(m)
        h = ModuleMap(XN, XM, mats, check=False)
        return h.dual()
    if direction in ("nu-", "nu_inv", "nuinv"):
        return nakayama_map(g.dual(), "nu").dual()
    raise ValueError(f"unknown Nakayama direction {direction!r}")


@dataclass
class TauMinus:
    """``tau^- M`` together with the copresentation it was built from."""

    module: Module
    embedding: ModuleMap
    theta: ModuleMap
    nu_theta: ModuleMap
    projection: ModuleMap


def tau_minus(M: Module) -> TauMinus:
    """``tau^- M = coker(nu^- I -> nu^- J)`` for the minimal copresentation ``0 -> M -> I -> J``."""
    iota, theta = injective_copresentation(M)
    nt = nakayama_map(theta, "nu-")
    T, pi = nt.cokernel()
    T = T.renamed(f"tau-({M.name})" if M.name else "")
    pi = ModuleMap(pi.domain, T, pi.mats, check=False)
    return TauMinus(T, iota, theta, nt, pi)
