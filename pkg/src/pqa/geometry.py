"""Point-level checks over finite fields: quiver Grassmannians, the map
``pi(U) = e U``, the degeneration order and deframing of quivers.

Everything here counts ``F_q``-points; none of it is a statement about
varieties over an algebraically closed field.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

import numpy as np

from . import linalg as la
from .decompose import Catalog
from .errors import BudgetExceeded, CertificateFailure, InputError
from .homological import ext
from .modules import Module, hom_dim, quotient, submodule
from .quiver import Arrow, Quiver
from .recollement import Recollement

__all__ = [
    "canonical_subspace",
    "gaussian_binomial",
    "subspaces",
    "GrassmannianReport",
    "enumerate_submodules",
    "DesingularizationReport",
    "desingularization_check",
    "DegenerationVerdict",
    "hom_order_leq",
    "iso_classes",
    "image_of_e_classes",
    "degeneration_table",
    "QuiverPoint",
    "DeframedQuiver",
    "deframe",
    "trace_invariant",
    "path_entry",
    "smooth_certificate",
]


# ----------------------------------------------------------------------
# subspaces
def canonical_subspace(U: np.ndarray, p: int) -> np.ndarray:
    """Column basis of ``span(U)`` in reduced echelon form (unique per subspace)."""
    U = np.asarray(U, dtype=np.int64)
    if U.shape[1] == 0:
        return U.reshape(U.shape[0], 0)
    R, piv = la.rref(U.T, p)
    return R[: len(piv)].T.copy()


def _key(bases: Sequence[np.ndarray]) -> tuple:
    return tuple((b.shape, b.tobytes()) for b in bases)


def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of ``k``-dimensional subspaces of ``F_q^m``."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def subspaces(m: int, k: int, p: int) -> Iterator[np.ndarray]:
    """All ``k``-dimensional subspaces of ``F_p^m`` as ``m x k`` echelon column bases."""
    if k == 0:
        yield np.zeros((m, 0), dtype=np.int64)
        return
    for piv in itertools.combinations(range(m), k):
        free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, m) if c not in piv]
        for vals in itertools.product(range(p), repeat=len(free)):
            R = np.zeros((k, m), dtype=np.int64)
            for r, pc in enumerate(piv):
                R[r, pc] = 1
            for (r, c), x in zip(free, vals):
                R[r, c] = x
            yield R.T


def _between(W: np.ndarray, V: np.ndarray, k: int, p: int) -> Iterator[np.ndarray]:
    """All ``k``-dimensional ``U`` with ``span W <= U <= span V`` (``W`` inside ``V``)."""
    dv = V.shape[1]
    coords = la.solve(V, W, p) if W.shape[1] else np.zeros((dv, 0), dtype=np.int64)
    proj, qd = la.cokernel_data(coords, p)
    need = k - W.shape[1]
    if need < 0 or need > qd:
        return
    sec = la.right_inverse(proj, p) if qd else np.zeros((dv, 0), dtype=np.int64)
    for S in subspaces(qd, need, p):
        lifted = la.matmul(V, la.matmul(sec, S, p), p)
        yield np.concatenate([W, lifted], axis=1) if W.shape[1] else lifted


def _vertex_order(q: Quiver) -> list[int]:
    """Targets before sources where possible, so images are known early."""
    seen, order = set(), []

    def visit(v):
        if v in seen:
            return
        seen.add(v)
        for a in q.arrows:
            if a.source == v and a.target != v:
                visit(a.target)
        order.append(v)

    for v in range(q.n):
        visit(v)
    return order


# ----------------------------------------------------------------------
@dataclass
class GrassmannianReport:
    """The ``F_q``-points of ``Gr(M, d)``.

    Attributes:
        module: The ambient module.
        dimv: Target dimension vector.
        q: Field size.
        points: Echelonized per-vertex bases, sorted.
        labels: Iso-class label of each point (``None`` if unlabelled).
        visited: Search nodes visited.
    """

    module: Module
    dimv: tuple[int, ...]
    q: int
    points: list[list[np.ndarray]]
    labels: list[str | None]
    visited: int = 0

    @property
    def count(self) -> int:
        return len(self.points)

    @property
    def strata(self) -> dict[str, int]:
        c = Counter(lab for lab in self.labels if lab is not None)
        return dict(sorted(c.items()))

    def index(self) -> dict[tuple, int]:
        return {_key(pt): k for k, pt in enumerate(self.points)}

    def submodule(self, k: int) -> tuple[Module, object]:
        return submodule(self.module, self.points[k])

    def text(self) -> str:
        lines = [f"Gr({self.module.name or 'M'}, {list(self.dimv)}) over F_{self.q}: {self.count} points"]
        for lab, c in self.strata.items():
            lines.append(f"  stratum [{lab}]: {c}")
        return "\n".join(lines)


def enumerate_submodules(
    M: Module,
    dimv: Sequence[int],
    q: int | None = None,
    max_total_dim: int = 8,
    budget: int = 2_000_000,
    labeler: Callable[[Module], str] | None = None,
    catalog: Catalog | None = None,
) -> GrassmannianReport:
    """Exhaustive list of submodules of ``M`` with dimension vector ``dimv``.

    Args:
        M: Ambient module.
        dimv: Dimension vector of the submodules.
        q: Field size; must equal the prime of ``M``.
        max_total_dim: Refuse ambient modules of larger total dimension.
        budget: Bound on the Gaussian-binomial estimate and on visited nodes.
        labeler: Iso-class label of a submodule.
        catalog: Labels points by catalog multiplicities if no labeler is given.

    Raises:
        InputError: bad field size or dimension vector.
        BudgetExceeded: when the estimate or the search exceeds ``budget``.
    """
    p = M.p
    q = p if q is None else q
    if q != p:
        raise InputError(f"field size {q} must equal the prime {p} of the module")
    dimv = tuple(int(x) for x in dimv)
    if len(dimv) != len(M.dims) or any(x < 0 for x in dimv):
        raise InputError(f"dimension vector {list(dimv)} does not fit {list(M.dims)}")
    if M.dim > max_total_dim:
        raise BudgetExceeded(f"total dimension {M.dim} exceeds the bound {max_total_dim}")
    if any(d > m for d, m in zip(dimv, M.dims)):
        return GrassmannianReport(M, dimv, q, [], [])
    est = 1
    for m, d in zip(M.dims, dimv):
        est *= gaussian_binomial(m, d, q)
    if est > budget:
        raise BudgetExceeded(f"Gaussian-binomial estimate {est} exceeds the budget {budget}")
    quiver = M.algebra.quiver
    order = _vertex_order(quiver)
    chosen: dict[int, np.ndarray] = {}
    points: list[list[np.ndarray]] = []
    visited = 0

    def lower_upper(v):
        imgs = [la.matmul(M.mats[a], chosen[arr.source], p) for a, arr in enumerate(quiver.arrows) if arr.target == v and arr.source in chosen and arr.source != v]
        W = la.column_space(np.concatenate(imgs, axis=1), p) if imgs else np.zeros((M.dims[v], 0), dtype=np.int64)
        V = np.eye(M.dims[v], dtype=np.int64)
        for a, arr in enumerate(quiver.arrows):
            if arr.source == v and arr.target in chosen and arr.target != v:
                # preimage of the chosen target subspace, intersected with V
                cond = la.matmul(_annihilator(chosen[arr.target], M.dims[arr.target], p), M.mats[a], p)
                pre = la.nullspace(cond, p) if cond.shape[0] else np.eye(M.dims[v], dtype=np.int64)
                V = la.intersect_columns(V, pre, p)
        return W, V

    def loops_ok(v, U):
        for a, arr in enumerate(quiver.arrows):
            if arr.source == v and arr.target == v and U.shape[1]:
                if not la.in_span(U, la.matmul(M.mats[a], U, p), p):
                    return False
        return True

    def rec(k):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded(f"submodule search visited more than {budget} nodes")
        if k == len(order):
            points.append([canonical_subspace(chosen[v], p) for v in range(quiver.n)])
            return
        v = order[k]
        W, V = lower_upper(v)
        if W.shape[1] and not all(la.in_span(V, W[:, [c]], p) for c in range(W.shape[1])):
            return
        for U in _between(W, V, dimv[v], p):
            if not loops_ok(v, U):
                continue
            chosen[v] = U
            rec(k + 1)
            del chosen[v]

    rec(0)
    points.sort(key=_key)
    for pt in points:
        if not _is_stable_tuple(M, pt):
            raise CertificateFailure("enumerated subspace tuple is not arrow-stable")
    if labeler is None and catalog is not None:
        labeler = catalog.label
    labels: list[str | None] = []
    for pt in points:
        labels.append(labeler(submodule(M, pt)[0]) if labeler else None)
    return GrassmannianReport(M, dimv, q, points, labels, visited)


def _annihilator(U: np.ndarray, n: int, p: int) -> np.ndarray:
    """Rows spanning the linear forms vanishing on ``span U``."""
    if U.shape[1] == 0:
        return np.eye(n, dtype=np.int64)
    return la.nullspace(U.T, p).T


def _is_stable_tuple(M: Module, bases: Sequence[np.ndarray]) -> bool:
    p = M.p
    for a, arr in enumerate(M.algebra.quiver.arrows):
        src = bases[arr.source]
        if src.shape[1] == 0:
            continue
        img = la.matmul(M.mats[a], src, p)
        if np.any(img) and (bases[arr.target].shape[1] == 0 or la.rank(np.concatenate([bases[arr.target], img], axis=1), p) != bases[arr.target].shape[1]):
            return False
    return True


# ----------------------------------------------------------------------
# the map pi and the desingularization statements
@dataclass
class DesingularizationReport:
    """Point-level checks of ``pi: Gr_B(c(M), (d, r)) -> Gr_A(M, d)``.

    ``checks`` maps a check name to ``(ok, detail)``; ``fibers`` maps an
    ``A``-stratum label to the fiber sizes seen over its points and
    ``tangent`` maps a ``B``-stratum label to the tangent dimensions seen.
    """

    module: str
    stratum: str
    dim_pair: tuple[tuple[int, ...], tuple[int, ...]]
    count_A: int
    count_B: int
    fibers: dict[str, tuple[int, ...]] = field(default_factory=dict)
    tangent: dict[str, tuple[int, ...]] = field(default_factory=dict)
    checks: dict[str, tuple[bool, str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def text(self) -> str:
        d, r = self.dim_pair
        lines = [f"pi: Gr_B(c({self.module}), ({','.join(map(str, d))};{','.join(map(str, r))})) -> Gr_A({self.module}) at stratum [{self.stratum}]"]
        lines.append(f"  |Gr_A| = {self.count_A}, |Gr_B| = {self.count_B}")
        for name, (ok, detail) in self.checks.items():
            lines.append(f"  {name}\t{'PASS' if ok else 'FAIL'}\t{detail}")
        return "\n".join(lines)


def desingularization_check(
    rec: Recollement,
    M: Module,
    N: Module,
    q: int | None = None,
    budget: int = 2_000_000,
    max_total_dim: int = 24,
    fiber_samples: int | None = None,
) -> DesingularizationReport:
    """Verify the point-level content of the desingularization theorem.

    Args:
        rec: Recollement data of ``B``.
        M: The ambient ``A``-module.
        N: The stratum representative; ``(d, r) = Dim c(N)``.
        q: Field size (must equal the prime).
        budget: Enumeration budget.
        max_total_dim: Bound on the total dimension of ``c(M)``.
        fiber_samples: Check the fiber formula at this many image points
            (all of them if ``None``).

    Raises:
        InputError: if no submodule of ``M`` is isomorphic to ``N``.
    """
    cat = rec.bp.catalog
    n = rec.A.n
    p = rec.p
    FM = rec.cext(M)
    FN = rec.cext(N)
    d = tuple(FN.dims[:n])
    dr = tuple(FN.dims)
    if d != tuple(N.dims):
        raise CertificateFailure("e c(N) has the wrong dimension vector")
    lab_N = cat.label(N)
    grA = enumerate_submodules(M, d, q, max_total_dim=max(M.dim, 1), budget=budget, catalog=cat)
    if lab_N not in grA.labels:
        raise InputError(f"{lab_N} does not occur as a submodule of {M.name or 'M'}")

    def b_label(U: Module) -> str:
        eU = rec.restrict_e(U)
        base = cat.label(eU)
        return f"c({base})" if rec.is_bistable(U) and rec.is_intermediate_extension(U) else f"~{base}"

    grB = enumerate_submodules(FM, dr, q, max_total_dim=max_total_dim, budget=budget, labeler=b_label)
    rep = DesingularizationReport(M.name or "M", lab_N, rec.split_dims(FN), grA.count, grB.count)
    idxA = grA.index()

    # (a) pi lands in Gr_A(M, d)
    images = []
    bad = 0
    for pt in grB.points:
        img = [canonical_subspace(pt[v], p) for v in range(n)]
        k = idxA.get(_key(img))
        if k is None:
            bad += 1
        images.append(k)
    rep.checks["pi lands in Gr_A"] = (bad == 0, f"{grB.count} points, {bad} outside")

    # (b) bijection over the stratum of N
    target = f"c({lab_N})"
    src = [k for k, lab in enumerate(grB.labels) if lab == target]
    onto = sorted(images[k] for k in src)
    stratum_A = sorted(k for k, lab in enumerate(grA.labels) if lab == lab_N)
    rep.checks["pi bijective over stratum"] = (onto == stratum_A, f"{len(src)} points over {len(stratum_A)}")

    # (c) fibers
    fib = Counter(k for k in images if k is not None)
    sizes: dict[str, set[int]] = {}
    for k, c in fib.items():
        sizes.setdefault(grA.labels[k] or "?", set()).add(c)
    rep.fibers = {lab: tuple(sorted(v)) for lab, v in sorted(sizes.items())}
    agree, checked = True, 0
    keys = sorted(fib)
    if fiber_samples is not None:
        keys = keys[:fiber_samples]
    for k in keys:
        U_A, incl = grA.submodule(k)
        cinc = rec.cext_map(incl)
        img_mod, img_incl = cinc.image()
        Q, _ = quotient(FM, [img_incl.mats[v] for v in range(rec.B.n)])
        delta = tuple(int(a) - int(b) for a, b in zip(dr, img_mod.dims))
        expect = 0 if any(x < 0 for x in delta) else enumerate_submodules(Q, delta, q, max_total_dim=max_total_dim, budget=budget).count
        checked += 1
        if expect != fib[k]:
            agree = False
    rep.checks["fiber = Gr_B(c(M)/c(U))"] = (agree, f"{checked} image points")
    rep.checks["sum of fibers = |Gr_B|"] = (sum(fib.values()) == grB.count, f"{sum(fib.values())} vs {grB.count}")

    # (d) tangent spaces
    tangent: dict[str, set[int]] = {}
    for k, pt in enumerate(grB.points):
        U, _ = submodule(FM, pt)
        Qt, _ = quotient(FM, pt)
        tangent.setdefault(grB.labels[k], set()).add(hom_dim(U, Qt))
    rep.tangent = {lab: tuple(sorted(v)) for lab, v in tangent.items()}
    want = hom_dim(N, M) - hom_dim(N, N)
    got = rep.tangent.get(target, ())
    rep.checks["tangent dim on stratum"] = (got == (want,), f"{list(got)} vs Hom(N,M)-End(N) = {want}")
    below = [lab for lab in rep.tangent if _label_below(cat, lab, N, M)]
    values = set().union(*(set(rep.tangent[lab]) for lab in below)) if below else set()
    rep.checks["tangent dim constant on closure"] = (values <= {want}, f"values {sorted(values)} over {len(below)} strata")
    return rep


def _label_below(cat: Catalog, b_label: str, N: Module, M: Module) -> bool:
    """Whether the ``A``-part of a ``B``-stratum label degenerates from ``N``."""
    base = b_label[2:-1] if b_label.startswith("c(") else b_label[1:]
    X = cat.parse_sum(base)
    return X.dims == N.dims and hom_order_leq(X, N, cat).leq


# ----------------------------------------------------------------------
# degeneration order
@dataclass
class DegenerationVerdict:
    """``N <= M`` in the hom order, with the table it was read from.

    Attributes:
        N, M: Labels of the pair.
        rows: ``(member, dim Hom(X, N), dim Hom(X, M))`` per catalog member.
        leq: Whether every row has ``dim Hom(X, N) >= dim Hom(X, M)``.
    """

    N: str
    M: str
    rows: list[tuple[str, int, int]]
    leq: bool

    def text(self) -> str:
        lines = [f"{self.N} <= {self.M}: {self.leq}"]
        lines += [f"  {x}\t{a}\t{b}" for x, a, b in self.rows]
        return "\n".join(lines)


def hom_order_leq(N: Module, M: Module, cat: Catalog) -> DegenerationVerdict:
    """Hom-order comparison over the catalog.

    Raises:
        InputError: if the dimension vectors differ.
    """
    if tuple(N.dims) != tuple(M.dims):
        raise InputError(f"dimension vectors differ: {list(N.dims)} vs {list(M.dims)}")
    fN, fM = cat.fingerprint(N), cat.fingerprint(M)
    rows = [(X.name, int(a), int(b)) for X, a, b in zip(cat.modules, fN, fM)]
    return DegenerationVerdict(N.name or cat.label(N), M.name or cat.label(M), rows, bool(np.all(fN >= fM)))


def iso_classes(cat: Catalog, dimv: Sequence[int]) -> list[np.ndarray]:
    """All multiplicity vectors over the catalog with total dimension vector ``dimv``."""
    dimv = np.asarray(dimv, dtype=np.int64)
    dims = [np.asarray(U.dims, dtype=np.int64) for U in cat.modules]
    out = []
    mult = np.zeros(len(dims), dtype=np.int64)

    def rec(k, rest):
        if not np.any(rest):
            out.append(mult.copy())
            return
        if k == len(dims):
            return
        dk = dims[k]
        c = 0
        while True:
            rec(k + 1, rest - c * dk)
            c += 1
            if not np.all(rest - c * dk >= 0) or not np.any(dk):
                break
            mult[k] = c
        mult[k] = 0

    rec(0, dimv)
    return out


def _sum_dims(vecs: Sequence[np.ndarray], mult: np.ndarray, size: int) -> np.ndarray:
    tot = np.zeros(size, dtype=np.int64)
    for v, c in zip(vecs, mult):
        tot += int(c) * np.asarray(v, dtype=np.int64)
    return tot


def image_of_e_classes(rec: Recollement, dim_pair: Sequence[int], cat: Catalog | None = None) -> list[str]:
    """Iso classes ``N`` with ``Dim c(N) <= (d, r)`` pointwise, ``d`` the first block.

    ``Dim c`` is additive, so it is read off the catalog members.
    """
    cat = cat or rec.bp.catalog
    dim_pair = np.asarray(dim_pair, dtype=np.int64)
    n = rec.A.n
    if np.any(dim_pair < 0):
        raise InputError("dimension pair must be nonnegative")
    cvecs = [np.asarray(F.dims, dtype=np.int64) for F in rec.C_summands()]
    labels = []
    for mult in iso_classes(cat, dim_pair[:n]):
        if np.all(_sum_dims(cvecs, mult, len(dim_pair)) <= dim_pair):
            labels.append(cat.format_multiplicities(mult))
    return labels


def degeneration_table(rec: Recollement, M: Module, cat: Catalog | None = None) -> list[tuple[str, bool, bool]]:
    """For each class ``N`` with ``Dim N = Dim M``: ``(label, Dim c(N) <= Dim c(M), N <= M)``."""
    cat = cat or rec.bp.catalog
    cvecs = [np.asarray(F.dims, dtype=np.int64) for F in rec.C_summands()]
    cM = np.asarray(rec.cext(M).dims, dtype=np.int64)
    fM = cat.fingerprint(M)
    H = cat.hom_table
    rows = []
    for mult in iso_classes(cat, M.dims):
        cN = _sum_dims(cvecs, mult, len(cM))
        fN = H @ mult
        rows.append((cat.format_multiplicities(mult), bool(np.all(cN <= cM)), bool(np.all(fN >= fM))))
    return rows


# ----------------------------------------------------------------------
# deframing
@dataclass
class DeframedQuiver:
    """The quiver ``Q^inf`` built from ``Q_B`` and ``(d, r)``.

    Attributes:
        source: The quiver ``Q_B``.
        n: Number of vertices collapsed to ``inf``.
        d, r: The dimension vector split.
        quiver: ``Q^inf``; vertex 0 is ``inf``, vertex ``k`` is ``Q_B``-vertex ``n + k - 1``.
        origin: Per arrow of ``Q^inf``: ``(case, arrow of Q_B, row, column)``;
            row/column index the matrix entry it carries (``None`` if unused).
        theta: Weights; ``theta[0]`` is the weight at ``inf``.
        N: ``1 + sum(r)``.
        primitive: Primitive paths of length at most ``N**2`` as tuples of arrow indices.
        qa: The quiver ``Q_A`` on vertices ``1..n`` with one arrow per primitive path.
    """

    source: Quiver
    n: int
    d: tuple[int, ...]
    r: tuple[int, ...]
    quiver: Quiver
    origin: list[tuple[int, int, int | None, int | None]]
    theta: np.ndarray
    N: int
    primitive: list[tuple[int, ...]]
    qa: Quiver

    def vertex(self, v: int) -> int:
        """Vertex of ``Q^inf`` for a vertex of ``Q_B``."""
        return 0 if v < self.n else v - self.n + 1

    def arrow_counts(self) -> dict[tuple[int, int], int]:
        return dict(Counter((a.source, a.target) for a in self.quiver.arrows))

    def deframe_point(self, point) -> list[np.ndarray]:
        """Matrices of the ``Q^inf`` representation of a ``Q_B`` representation."""
        out = []
        for case, a, row, col in self.origin:
            m = np.asarray(point.mats[a], dtype=np.int64)
            if case == 1:
                out.append(m)
            elif case == 2:
                out.append(m[:, [col]])
            elif case == 3:
                out.append(m[[row], :])
            else:
                out.append(m[[row], :][:, [col]])
        return out

    def entry_cycle(self, path: Sequence[int], row: int, col: int) -> list[int]:
        """The cycle through ``inf`` carrying entry ``(row, col)`` of a primitive path."""
        path = tuple(path)
        if path not in self._prim_index():
            raise InputError(f"{path} is not a primitive path of length at most N^2")
        if len(path) == 1:
            return [self._find(4, path[0], row, col)]
        first, last = path[0], path[-1]
        cyc = [self._find(2, first, None, col)]
        cyc += [self._find(1, a, None, None) for a in path[1:-1]]
        cyc.append(self._find(3, last, row, None))
        return cyc

    def _find(self, case, a, row, col) -> int:
        for k, o in enumerate(self.origin):
            if o == (case, a, row, col):
                return k
        raise InputError(f"no deframed arrow for {(case, a, row, col)}")

    def _prim_index(self) -> set:
        return set(self.primitive)


def deframe(QB: Quiver, n: int, d: Sequence[int], r: Sequence[int], max_paths: int = 100_000) -> DeframedQuiver:
    """Deframe ``Q_B`` at its first ``n`` vertices for the dimension vector ``(d, r)``.

    Raises:
        InputError: if the dimension vector does not fit.
        BudgetExceeded: if there are more than ``max_paths`` primitive paths.
    """
    d, r = tuple(int(x) for x in d), tuple(int(x) for x in r)
    if len(d) != n or len(r) != QB.n - n or min(d + r, default=0) < 0:
        raise InputError("dimension vector does not fit the vertex split")
    labels = ("inf",) + tuple(QB.vertices[n:])

    def vx(v):
        return 0 if v < n else v - n + 1

    arrows, origin = [], []
    for k, a in enumerate(QB.arrows):
        i, j = a.source, a.target
        if i >= n and j >= n:
            arrows.append(Arrow(a.name, vx(i), vx(j)))
            origin.append((1, k, None, None))
        elif i < n <= j:
            for c in range(d[i]):
                arrows.append(Arrow(f"{a.name}[:,{c}]", 0, vx(j)))
                origin.append((2, k, None, c))
        elif j < n <= i:
            for rr in range(d[j]):
                arrows.append(Arrow(f"{a.name}[{rr},:]", vx(i), 0))
                origin.append((3, k, rr, None))
        else:
            for rr in range(d[j]):
                for c in range(d[i]):
                    arrows.append(Arrow(f"{a.name}[{rr},{c}]", 0, 0))
                    origin.append((4, k, rr, c))
    N = 1 + sum(r)
    theta = np.array([sum(r)] + [-1] * (QB.n - n), dtype=np.int64)
    prim = _primitive_paths(QB, n, N * N, max_paths)
    qa = Quiver(tuple(QB.vertices[:n]), tuple(Arrow("*".join(QB.arrows[a].name for a in reversed(pth)), QB.arrows[pth[0]].source, QB.arrows[pth[-1]].target) for pth in prim))
    return DeframedQuiver(QB, n, d, r, Quiver(labels, tuple(arrows)), origin, theta, N, prim, qa)


def _primitive_paths(QB: Quiver, n: int, max_len: int, max_paths: int) -> list[tuple[int, ...]]:
    out = []
    outgoing = [[k for k, a in enumerate(QB.arrows) if a.source == v] for v in range(QB.n)]
    visited = 0

    def extend(path, v):
        nonlocal visited
        visited += 1
        if len(out) > max_paths or visited > 4 * max_paths:
            raise BudgetExceeded(f"primitive path search exceeded {max_paths} paths")
        for k in outgoing[v]:
            t = QB.arrows[k].target
            new = path + (k,)
            if t < n:
                out.append(new)
            elif len(new) < max_len:
                extend(new, t)

    for i in range(n):
        extend((), i)
    return out


@dataclass
class QuiverPoint:
    """A representation of a quiver without relations: a point of ``R_(d,r)(Q_B)``."""

    quiver: Quiver
    dims: tuple[int, ...]
    mats: list[np.ndarray]

    @classmethod
    def random(cls, quiver: Quiver, dims: Sequence[int], p: int, rng: np.random.Generator) -> "QuiverPoint":
        dims = tuple(int(x) for x in dims)
        mats = [rng.integers(0, p, size=(dims[a.target], dims[a.source])).astype(np.int64) for a in quiver.arrows]
        return cls(quiver, dims, mats)


def trace_invariant(dq: DeframedQuiver, cycle: Sequence[int], point, p: int) -> int:
    """Trace of the deframed point along a closed walk in ``Q^inf``.

    Args:
        dq: Deframing data.
        cycle: Arrow indices of ``Q^inf`` in the order they are traversed.
        point: Representation of ``Q_B`` (anything with ``mats``) of dimension ``(d, r)``.
        p: The prime.

    Raises:
        InputError: if the walk is not closed or longer than ``N**2``.
    """
    arrs = dq.quiver.arrows
    cycle = list(cycle)
    if not cycle:
        raise InputError("empty cycle")
    if len(cycle) > dq.N ** 2:
        raise InputError(f"cycle length {len(cycle)} exceeds N^2 = {dq.N ** 2}")
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if arrs[a].target != arrs[b].source:
            raise InputError("cycle is not closed")
    mats = dq.deframe_point(point)
    prod = None
    for a in cycle:
        prod = mats[a] % p if prod is None else la.matmul(mats[a], prod, p)
    return int(np.trace(prod) % p)


def path_entry(point, path: Sequence[int], row: int, col: int, p: int) -> int:
    """Entry ``(row, col)`` of the matrix of a path, composed directly."""
    prod = None
    for a in path:
        m = np.asarray(point.mats[a], dtype=np.int64) % p
        prod = m if prod is None else (m @ prod) % p
    return int(prod[row, col])


def smooth_certificate(F: Module) -> bool:
    """``Ext^2(F, F) = 0``, which makes ``F`` a smooth point of its module variety."""
    return ext(2, F, F).dim == 0
