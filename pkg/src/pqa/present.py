"""Quiver-with-relations presentations of finite linear categories.

A basic algebra ``End(G)^op`` of an additive generator ``G = G_0 + ... + G_{m-1}``
(pairwise non-isomorphic indecomposables with local endomorphism rings) is
presented as follows.  Radical morphisms are all morphisms between distinct
objects and the non-invertible endomorphisms; a complement of ``rad^2`` in
``rad`` gives the arrows, and relations are extracted degree by degree from
the kernel of the path evaluation map.

Conventions: a morphism ``G_v -> G_w`` becomes a quiver arrow ``w -> v`` (left
modules over ``End(G)^op`` are contravariant functors), and a path ``q*p``
(``p`` first) evaluates to ``phi_p o phi_q``.  Consequently the block of paths
from ``s`` to ``t`` is identified with ``Hom(G_t, G_s)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import linalg as la
from .errors import CertificateFailure
from .quiver import Algebra, Arrow, Path, Quiver, trivial

__all__ = [
    "LinearCategory",
    "CategoryPresentation",
    "present_category",
    "find_presentation_isomorphism",
    "rename_arrows",
]


class LinearCategory:
    """A finite ``F_p``-linear category given by structure constants.

    Args:
        labels: Object labels.
        dims: ``dims[v][w] = dim Hom(v, w)``.
        compose: ``compose(v, w, u, a, b)`` returns the coordinates in
            ``Hom(v, u)`` of ``g_a o f_b`` for basis elements ``f_b`` of
            ``Hom(v, w)`` and ``g_a`` of ``Hom(w, u)``.
        identity: ``identity(v)`` gives the coordinates of ``1_v``.
        p: Characteristic.
    """

    def __init__(self, labels: Sequence[str], dims, compose: Callable, identity: Callable, p: int):
        self.labels = list(labels)
        self.dims = np.array(dims, dtype=np.int64)
        self.p = p
        self._compose = compose
        self._identity = identity
        self._tables: dict[tuple[int, int, int], np.ndarray] = {}
        self._ids: dict[int, np.ndarray] = {}

    @property
    def m(self) -> int:
        return len(self.labels)

    def identity(self, v: int) -> np.ndarray:
        if v not in self._ids:
            self._ids[v] = np.asarray(self._identity(v), dtype=np.int64) % self.p
        return self._ids[v]

    def table(self, v: int, w: int, u: int) -> np.ndarray:
        """``T[k, a, b]``: coordinate ``k`` of ``g_a o f_b``."""
        key = (v, w, u)
        if key not in self._tables:
            d_vw, d_wu, d_vu = self.dims[v, w], self.dims[w, u], self.dims[v, u]
            t = np.zeros((d_vu, d_wu, d_vw), dtype=np.int64)
            for a in range(d_wu):
                for b in range(d_vw):
                    t[:, a, b] = np.asarray(self._compose(v, w, u, a, b), dtype=np.int64) % self.p
            self._tables[key] = t
        return self._tables[key]

    def compose(self, v: int, w: int, u: int, g: np.ndarray, f: np.ndarray) -> np.ndarray:
        """``g o f`` for ``f`` in ``Hom(v, w)`` and ``g`` in ``Hom(w, u)`` (coordinates)."""
        if self.dims[v, u] == 0 or not np.any(g) or not np.any(f):
            return np.zeros(self.dims[v, u], dtype=np.int64)
        t = self.table(v, w, u)
        return np.einsum("kab,a,b->k", t, g, f) % self.p

    # ------------------------------------------------------------------
    def is_nilpotent(self, v: int, x: np.ndarray) -> bool:
        y = x % self.p
        for _ in range(int(self.dims[v, v]) + 1):
            if not np.any(y):
                return True
            y = self.compose(v, v, v, x, y)
        return not np.any(y)

    def radical(self, v: int, w: int) -> np.ndarray:
        """Basis (columns) of ``rad(v, w)``."""
        d = int(self.dims[v, w])
        if v != w:
            return np.eye(d, dtype=np.int64)
        one = self.identity(v)
        cols = []
        for b in range(d):
            e = np.zeros(d, dtype=np.int64)
            e[b] = 1
            for lam in range(self.p):
                x = (e - lam * one) % self.p
                if self.is_nilpotent(v, x):
                    cols.append(x)
                    break
            else:
                raise CertificateFailure(f"endomorphism ring of {self.labels[v]} is not local with residue field F_p")
        mat = np.stack(cols, axis=1) if cols else np.zeros((d, 0), dtype=np.int64)
        rad = la.column_space(mat, self.p)
        if rad.shape[1] != d - 1:
            raise CertificateFailure(f"radical of End({self.labels[v]}) has codimension {d - rad.shape[1]}")
        return rad


@dataclass
class CategoryPresentation:
    """``End(G)^op`` as ``KQ/I`` with the evaluation isomorphism.

    Attributes:
        algebra: The presented algebra.
        category: The category it came from.
        arrow_maps: For each arrow ``w -> v``, coordinates of its morphism in
            ``Hom(G_v, G_w)``.
        basis_eval: For each basis path from ``s`` to ``t``, the coordinates of
            its evaluation in ``Hom(G_t, G_s)``.
        radical_layers: Nilpotency index of the radical.
    """

    algebra: Algebra
    category: LinearCategory
    arrow_maps: list[np.ndarray]
    basis_eval: list[np.ndarray]
    radical_layers: int
    _solvers: dict = field(default_factory=dict, repr=False)

    def eval_path(self, path: Path) -> np.ndarray:
        cat = self.category
        out = cat.identity(path.source)
        cur = path.source
        q = self.algebra.quiver
        for a in path.arrows:
            arr = q.arrows[a]
            # out: G_cur -> G_s; arrow cur -> t realized by G_t -> G_cur
            out = cat.compose(arr.target, cur, path.source, out, self.arrow_maps[a])
            cur = arr.target
        return out

    def to_morphism(self, x: np.ndarray, s: int, t: int) -> np.ndarray:
        """The morphism ``G_t -> G_s`` of the (s, t) block of an algebra element."""
        A = self.algebra
        out = np.zeros(self.category.dims[t, s], dtype=np.int64)
        for k in A.block(s, t):
            if x[k]:
                out = out + int(x[k]) * self.basis_eval[k]
        return out % A.p

    def from_morphism(self, s: int, t: int, phi: np.ndarray) -> np.ndarray:
        """Algebra element (block (s, t)) evaluating to ``phi: G_t -> G_s``."""
        A = self.algebra
        key = (s, t)
        idx = A.block(s, t)
        if key not in self._solvers:
            mat = np.stack([self.basis_eval[k] for k in idx], axis=1) if len(idx) else np.zeros((self.category.dims[t, s], 0), dtype=np.int64)
            self._solvers[key] = la.inverse(mat, A.p) if len(idx) else mat.T
        coeffs = la.matmul(self._solvers[key], np.asarray(phi, dtype=np.int64).reshape(-1, 1), A.p).reshape(-1)
        out = np.zeros(A.dim, dtype=np.int64)
        out[idx] = coeffs
        return out


def _arrow_name_default(k: int) -> str:
    return f"a{k + 1}"


def present_category(
    cat: LinearCategory,
    name: str = "B",
    arrow_namer: Callable[[str, str], str | None] | None = None,
) -> CategoryPresentation:
    """Present ``End(G)^op`` by a quiver with relations.

    Raises:
        CertificateFailure: if an endomorphism ring is not local or the
            extracted presentation does not reproduce the hom dimensions.
    """
    p = cat.p
    m = cat.m
    rad = {(v, w): cat.radical(v, w) for v in range(m) for w in range(m)}

    def product_span(left: dict, right: dict) -> dict:
        """span of g o f with f in right(v, u), g in left(u, w)."""
        out = {}
        for v in range(m):
            for w in range(m):
                cols = []
                for u in range(m):
                    F, G = right[(v, u)], left[(u, w)]
                    for b in range(F.shape[1]):
                        for a in range(G.shape[1]):
                            c = cat.compose(v, u, w, G[:, a], F[:, b])
                            if np.any(c):
                                cols.append(c)
                d = int(cat.dims[v, w])
                mat = np.stack(cols, axis=1) if cols else np.zeros((d, 0), dtype=np.int64)
                out[(v, w)] = la.column_space(mat, p) if cols else mat
        return out

    powers = [None, rad]
    while any(b.shape[1] for b in powers[-1].values()):
        if len(powers) > 64:
            raise CertificateFailure("radical is not nilpotent")
        powers.append(product_span(powers[-1], rad))
    layers = len(powers) - 1  # rad^layers == 0
    rad2 = powers[2] if len(powers) > 2 else {k: np.zeros((int(cat.dims[k]), 0), dtype=np.int64) for k in rad}

    # arrows: complement of rad^2 in rad, one arrow w -> v per morphism G_v -> G_w
    arrows: list[Arrow] = []
    arrow_maps: list[np.ndarray] = []
    pending = []
    for w in range(m):
        for v in range(m):
            R, R2 = rad[(v, w)], rad2[(v, w)]
            if R.shape[1] == 0:
                continue
            full = np.concatenate([R2, R], axis=1)
            _, piv = la.rref(full, p)
            for c in piv:
                if c >= R2.shape[1]:
                    pending.append((w, v, R[:, c - R2.shape[1]]))
    used = set()
    for k, (s, t, phi) in enumerate(pending):
        nm = arrow_namer(cat.labels[s], cat.labels[t]) if arrow_namer else None
        if nm is None or nm in used:
            nm = _arrow_name_default(k)
        used.add(nm)
        arrows.append(Arrow(nm, s, t))
        arrow_maps.append(phi % p)
    quiver = Quiver(tuple(cat.labels), tuple(arrows))

    # evaluate all paths of length < layers (longer ones vanish)
    evals: dict[Path, np.ndarray] = {}
    by_len: list[dict[tuple[int, int], list[Path]]] = []
    frontier = [trivial(v) for v in range(m)]
    for v in range(m):
        evals[trivial(v)] = cat.identity(v)
    length = 0
    while True:
        grouped: dict[tuple[int, int], list[Path]] = {}
        for q in frontier:
            grouped.setdefault((q.source, q.target), []).append(q)
        by_len.append(grouped)
        if length >= layers:
            break
        nxt = []
        for q in frontier:
            for a in quiver.out_arrows[q.target]:
                arr = quiver.arrows[a]
                nq = Path(q.source, arr.target, q.arrows + (a,))
                if length + 1 < layers:
                    evals[nq] = cat.compose(arr.target, q.target, q.source, evals[q], arrow_maps[a])
                else:
                    evals[nq] = np.zeros(int(cat.dims[arr.target, q.source]), dtype=np.int64)
                nxt.append(nq)
        frontier = nxt
        length += 1
        if not frontier:
            break

    # leading forms and lifts, degree by degree
    leading: list[tuple[int, dict[Path, int]]] = []  # (degree, leading form)
    relations: list[dict[Path, int]] = []
    paths_to: dict[int, list[Path]] = {}
    paths_from: dict[int, list[Path]] = {}
    for grouped in by_len:
        for (s, t), ps in grouped.items():
            paths_from.setdefault(s, []).extend(ps)
            paths_to.setdefault(t, []).extend(ps)
    for k in range(2, len(by_len)):
        for (s, t), ps in sorted(by_len[k].items()):
            ps = sorted(ps, key=lambda q: q.arrows)
            col = {q: i for i, q in enumerate(ps)}
            d = int(cat.dims[t, s])
            E = np.stack([evals[q] for q in ps], axis=1) if d else np.zeros((0, len(ps)), dtype=np.int64)
            nxt_pow = powers[k + 1][(t, s)] if k + 1 < len(powers) else np.zeros((d, 0), dtype=np.int64)
            proj, _ = la.cokernel_data(nxt_pow, p) if d else (np.zeros((0, 0), dtype=np.int64), 0)
            graded = la.matmul(proj, E, p) if d else np.zeros((0, len(ps)), dtype=np.int64)
            kernel = la.nullspace(graded, p) if graded.shape[0] else np.eye(len(ps), dtype=np.int64)
            if kernel.shape[1] == 0:
                continue
            # degree-k part of the ideal generated by earlier leading forms
            ideal_cols = []
            for deg, lf in leading:
                r0 = next(iter(lf))
                room = k - deg
                for l1 in range(room + 1):
                    l2 = room - l1
                    for v in (x for x in paths_to.get(r0.source, []) if x.source == s and len(x.arrows) == l1):
                        for u in (x for x in paths_from.get(r0.target, []) if x.target == t and len(x.arrows) == l2):
                            vec = np.zeros(len(ps), dtype=np.int64)
                            for q, c in lf.items():
                                vec[col[Path(s, t, v.arrows + q.arrows + u.arrows)]] += c
                            ideal_cols.append(vec % p)
            span = np.stack(ideal_cols, axis=1) if ideal_cols else np.zeros((len(ps), 0), dtype=np.int64)
            r0 = la.rank(span, p) if span.shape[1] else 0
            higher = [q for kk in range(k + 1, len(by_len)) for q in by_len[kk].get((s, t), [])]
            H = np.stack([evals[q] for q in higher], axis=1) if higher and d else np.zeros((d, len(higher)), dtype=np.int64)
            for c in range(kernel.shape[1]):
                x = kernel[:, c]
                trial = np.concatenate([span, x.reshape(-1, 1)], axis=1)
                r1 = la.rank(trial, p)
                if r1 == r0:
                    continue
                span, r0 = trial, r1
                lf = {ps[i]: int(x[i]) for i in np.flatnonzero(x)}
                leading.append((k, lf))
                target = la.matmul(E, x.reshape(-1, 1), p).reshape(-1) if d else np.zeros(0, dtype=np.int64)
                rel = dict(lf)
                if np.any(target):
                    y = la.try_solve(H, target, p)
                    if y is None:
                        raise CertificateFailure("relation lift failed: radical filtration is inconsistent")
                    for i in np.flatnonzero(y):
                        rel[higher[i]] = (rel.get(higher[i], 0) - int(y[i])) % p
                relations.append({q: c for q, c in rel.items() if c % p})

    algebra = Algebra(quiver, relations, p, name=name, max_length=max(layers + 2, 4))
    for s in range(m):
        for t in range(m):
            if algebra.block_dim(s, t) != cat.dims[t, s]:
                raise CertificateFailure(
                    f"presentation has {algebra.block_dim(s, t)} paths {cat.labels[s]} -> {cat.labels[t]}, "
                    f"expected {cat.dims[t, s]}"
                )
    pres = CategoryPresentation(algebra, cat, arrow_maps, [], layers)
    pres.basis_eval = [pres.eval_path(q) for q in algebra.basis]
    for q in algebra.relations:
        r0 = next(iter(q))
        acc = np.zeros(int(cat.dims[r0.target, r0.source]), dtype=np.int64)
        for path, c in q.items():
            acc = acc + c * pres.eval_path(path)
        if np.any(acc % p):
            raise CertificateFailure("an extracted relation does not vanish")
    for s in range(m):
        for t in range(m):
            idx = algebra.block(s, t)
            if len(idx):
                mat = np.stack([pres.basis_eval[k] for k in idx], axis=1)
                if la.rank(mat, p) != len(idx):
                    raise CertificateFailure("path basis does not evaluate to a basis of the hom space")
    return pres


# ----------------------------------------------------------------------
# comparison of presentations


def rename_arrows(A: Algebra, names: Sequence[str], vertices: Sequence[str] | None = None) -> Algebra:
    """Same algebra with new arrow names (and optionally vertex labels)."""
    q = A.quiver
    arrows = tuple(Arrow(nm, a.source, a.target) for nm, a in zip(names, q.arrows))
    nq = Quiver(tuple(vertices) if vertices is not None else q.vertices, arrows)
    return Algebra(nq, A.relations, A.p, name=A.name, max_length=A.max_length)


def _arrow_counts(q: Quiver) -> np.ndarray:
    c = np.zeros((q.n, q.n), dtype=np.int64)
    for a in q.arrows:
        c[a.source, a.target] += 1
    return c


def find_presentation_isomorphism(A1: Algebra, A2: Algebra, scalar_budget: int = 1_000_000) -> tuple[list[int], list[int], list[int]] | None:
    """Search an isomorphism ``A1 -> A2`` sending arrows to scaled arrows.

    The search runs over vertex bijections preserving the arrow-count
    matrix, then over arrow bijections between parallel arrows and nonzero
    scalars, pruning whenever a relation of ``A1`` whose arrows are all
    assigned fails to vanish in ``A2``.  Because both algebras are compared
    with equal dimensions, ``I_1`` mapping into ``I_2`` forces equality.

    Returns:
        ``(vertex_map, arrow_map, scalars)`` or ``None``.
    """
    if A1.p != A2.p or A1.n != A2.n or len(A1.quiver.arrows) != len(A2.quiver.arrows) or A1.dim != A2.dim:
        return None
    p = A1.p
    q1, q2 = A1.quiver, A2.quiver
    c1, c2 = _arrow_counts(q1), _arrow_counts(q2)
    n = q1.n
    cart1, cart2 = A1.cartan(), A2.cartan()

    def signature(c, cart, v):
        return (int(c[v].sum()), int(c[:, v].sum()), int(c[v, v]), int(cart[v, v]), tuple(sorted(cart[v])), tuple(sorted(cart[:, v])))

    sig1 = [signature(c1, cart1, v) for v in range(n)]
    sig2 = [signature(c2, cart2, v) for v in range(n)]
    rels = list(A1.relations)
    rel_arrows = [set(a for path in rel for a in path.arrows) for rel in rels]
    order = sorted(range(n), key=lambda v: -int(c1[v].sum() + c1[:, v].sum()))
    visited = [0]
    # rescaling vertices acts on arrows by mu_t / mu_s and preserves every ideal
    # generated by parallel combinations, so a spanning forest can be fixed to 1
    gauge_fixed: set[int] = set()
    parent = list(range(n))

    def root(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    in_relations = set().union(*rel_arrows) if rel_arrows else set()
    for a, arr in enumerate(q1.arrows):
        if a not in in_relations:
            gauge_fixed.add(a)
            continue
        ra, rb = root(arr.source), root(arr.target)
        if ra != rb:
            parent[ra] = rb
            gauge_fixed.add(a)

    def vertex_search(k: int, vmap: dict[int, int], used: set[int]):
        if k == n:
            res = arrow_search(vmap)
            if res is not None:
                yield res
            return
        v = order[k]
        for w in range(n):
            if w in used or sig1[v] != sig2[w]:
                continue
            ok = True
            for u, x in vmap.items():
                if c1[v, u] != c2[w, x] or c1[u, v] != c2[x, w] or cart1[v, u] != cart2[w, x] or cart1[u, v] != cart2[x, w]:
                    ok = False
                    break
            if not ok:
                continue
            vmap[v] = w
            used.add(w)
            yield from vertex_search(k + 1, vmap, used)
            del vmap[v]
            used.discard(w)

    def arrow_search(vmap: dict[int, int]):
        arrs = list(range(len(q1.arrows)))
        amap: dict[int, int] = {}
        scal: dict[int, int] = {}

        def rel_ok(idx: int) -> bool:
            img: dict[Path, int] = {}
            for path, c in rels[idx].items():
                coeff = c
                for a in path.arrows:
                    coeff = coeff * scal[a] % p
                np_ = Path(vmap[path.source], vmap[path.target], tuple(amap[a] for a in path.arrows))
                img[np_] = (img.get(np_, 0) + coeff) % p
            return not np.any(A2.element_of_paths(img))

        def rec(k: int, taken: set[int]):
            visited[0] += 1
            if visited[0] > scalar_budget:
                return None
            if k == len(arrs):
                return dict(amap), dict(scal)
            a = arrs[k]
            arr = q1.arrows[a]
            lams = (1,) if a in gauge_fixed else range(1, p)
            for b, brr in enumerate(q2.arrows):
                if b in taken or brr.source != vmap[arr.source] or brr.target != vmap[arr.target]:
                    continue
                for lam in lams:
                    amap[a], scal[a] = b, lam
                    ok = all(rel_ok(idx) for idx, ra in enumerate(rel_arrows) if a in ra and ra <= set(amap))
                    if ok:
                        taken.add(b)
                        res = rec(k + 1, taken)
                        taken.discard(b)
                        if res is not None:
                            return res
                    del amap[a], scal[a]
            return None

        res = rec(0, set())
        if res is None:
            return None
        amap_r, scal_r = res
        return ([vmap[v] for v in range(n)], [amap_r[a] for a in arrs], [scal_r[a] for a in arrs])

    for found in vertex_search(0, {}, set()):
        return found
    return None
