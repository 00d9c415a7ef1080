"""Krull-Schmidt decomposition, isomorphism tests and catalogs of indecomposables.

Indecomposability is certified through the endomorphism ring.  A module is
indecomposable exactly when ``End(M)`` is local; for a finite-dimensional
ring over ``F_p`` with residue field ``F_p`` that means every basis element
``b`` has a scalar ``l_b`` with ``b - l_b`` nilpotent, and the span of those
differences is a nilpotent two-sided ideal of codimension one.  Whenever the
test fails we look for an endomorphism that is neither nilpotent nor
invertible and split along its Fitting decomposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .errors import BudgetExceeded, CertificateFailure, InputError
from .modules import HomSpace, Module, ModuleMap, direct_sum, hom, hom_dim, submodule, unflatten
from .quiver import Algebra

__all__ = [
    "CertificationError",
    "Decomposition",
    "Catalog",
    "decompose",
    "is_indecomposable",
    "find_isomorphism",
    "is_isomorphic",
    "brute_force_catalog",
    "user_catalog",
]

DEFAULT_SEED = 20240607


class CertificationError(CertificateFailure):
    """The endomorphism ring analysis was inconclusive."""


# ----------------------------------------------------------------------
# endomorphism ring helpers (elements are per-vertex matrix tuples)


def _is_nilpotent(phi: ModuleMap) -> bool:
    p = phi.p
    for m in phi.mats:
        if m.size == 0:
            continue
        power = m.copy()
        for _ in range(m.shape[0]):
            if not np.any(power):
                break
            power = la.matmul(power, m, p)
        if np.any(power):
            return False
    return True


def _shift(phi: ModuleMap, lam: int) -> ModuleMap:
    if lam == 0:
        return phi
    return phi - phi.domain.identity().scale(lam)


def _classify(phi: ModuleMap) -> str:
    """'nil', 'unit' or 'split' (neither nilpotent nor invertible)."""
    if _is_nilpotent(phi):
        return "nil"
    if phi.is_iso():
        return "unit"
    return "split"


@dataclass
class LocalityReport:
    """Outcome of the endomorphism-ring analysis of one module.

    Attributes:
        local: Whether ``End(M)`` was certified local.
        splitter: An endomorphism that is neither nilpotent nor invertible,
            when one was found.
        method: Which stage produced the verdict.
    """

    local: bool
    splitter: ModuleMap | None = None
    method: str = ""


def _radical_candidate(E: HomSpace, lambdas: list[int]) -> bool:
    """Check that ``span{b - l_b}`` is a nilpotent ideal of codimension one."""
    M = E.domain
    p = M.p
    J = [_shift(b, lam) for b, lam in zip(E.basis, lambdas)]
    Jmat = np.stack([j.flat() for j in J], axis=1) if J else np.zeros((0, 0), dtype=np.int64)
    if la.rank(Jmat, p) != E.dim - 1:
        return False
    jbasis = la.column_space(Jmat, p)
    jmaps = [unflatten(M, M, jbasis[:, k]) for k in range(jbasis.shape[1])]
    # closure under multiplication by E on both sides
    for x in jmaps:
        for b in E.basis:
            for y in (x @ b, b @ x):
                if not la.in_span(jbasis, y.flat(), p):
                    return False
    # nilpotency of the ideal: powers J^k shrink to zero
    level = jmaps
    for _ in range(M.dim + 1):
        if not level:
            return True
        prods = [x @ y for x in level for y in jmaps]
        flat = [z.flat() for z in prods if not z.is_zero()]
        if not flat:
            return True
        cs = la.column_space(np.stack(flat, axis=1), p)
        level = [unflatten(M, M, cs[:, k]) for k in range(cs.shape[1])]
    return False


def analyse_endomorphisms(M: Module, budget: int = 4096, seed: int = DEFAULT_SEED) -> LocalityReport:
    """Decide whether ``End(M)`` is local, or produce a splitting endomorphism.

    Args:
        M: A nonzero module.
        budget: Maximal number of extra ring elements inspected in the
            fallback search.
        seed: Seed for the fallback pseudo-random search.

    Raises:
        CertificationError: if neither a certificate of locality nor a
            splitting endomorphism was found.
    """
    E = hom(M, M)
    p = M.p
    lambdas: list[int] = []
    residue_ok = True
    for b in E.basis:
        found = None
        for lam in range(p):
            kind = _classify(_shift(b, lam))
            if kind == "nil":
                found = lam
                break
            if kind == "split":
                return LocalityReport(False, _shift(b, lam), "basis shift")
        if found is None:
            residue_ok = False
            break
        lambdas.append(found)
    if residue_ok and _radical_candidate(E, lambdas):
        return LocalityReport(True, None, "radical certificate")
    # pairwise sums often expose idempotents that single basis elements hide
    for i, j in itertools.combinations(range(E.dim), 2):
        for c in range(1, p):
            x = E.basis[i] + E.basis[j].scale(c)
            for lam in range(p):
                if _classify(_shift(x, lam)) == "split":
                    return LocalityReport(False, _shift(x, lam), "pair search")
    total = p ** E.dim
    if total <= budget:
        for coeffs in itertools.product(range(p), repeat=E.dim):
            x = E.element(coeffs)
            if _classify(x) == "split":
                return LocalityReport(False, x, "exhaustive search")
        # every element is a unit or nilpotent: local, possibly with a larger residue field
        return LocalityReport(True, None, "exhaustive search")
    rng = np.random.default_rng(seed)
    for _ in range(budget):
        x = E.element(rng.integers(0, p, size=E.dim))
        if _classify(x) == "split":
            return LocalityReport(False, x, "random search")
    raise CertificationError(f"could not decide whether End({M.name or 'M'}) is local (dim {E.dim})")


def _fitting(phi: ModuleMap) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Per-vertex bases of ``Im phi^N`` and ``Ker phi^N`` for ``N`` large."""
    p = phi.p
    ims, kers = [], []
    for m in phi.mats:
        power = np.eye(m.shape[0], dtype=np.int64)
        for _ in range(max(m.shape[0], 1)):
            power = la.matmul(power, m, p)
        ims.append(la.column_space(power, p))
        kers.append(la.nullspace(power, p))
    return ims, kers


# ----------------------------------------------------------------------
# decomposition


@dataclass
class Decomposition:
    """``M`` written as a direct sum of certified indecomposables.

    Attributes:
        module: The decomposed module.
        summands: Indecomposable modules, in canonical order.
        inclusions: Split monomorphisms ``summand -> module``; together they
            give an isomorphism from the direct sum onto ``module``.
    """

    module: Module
    summands: list[Module]
    inclusions: list[ModuleMap]

    def __len__(self) -> int:
        return len(self.summands)

    def iso_from_sum(self) -> ModuleMap:
        """Isomorphism ``(+) summands -> module`` assembled from the inclusions."""
        M = self.module
        if not self.summands:
            return M.zero_map(M)
        S, _, projs = direct_sum(self.summands)
        mats = []
        for v in range(M.algebra.n):
            acc = np.zeros((M.dims[v], S.dims[v]), dtype=np.int64)
            for inc, pr in zip(self.inclusions, projs):
                acc = acc + la.matmul(inc.mats[v], pr.mats[v], M.p)
            mats.append(acc % M.p)
        return ModuleMap(S, M, mats, check=False)

    def projections(self) -> list[ModuleMap]:
        """Retractions ``module -> summand`` compatible with the inclusions."""
        if not self.summands:
            return []
        iso = self.iso_from_sum()
        inv = iso.inverse()
        _, _, projs = direct_sum(self.summands)
        out = []
        for pr, U in zip(projs, self.summands):
            out.append(ModuleMap(self.module, U, (pr @ inv).mats, check=False))
        return out


def _split(M: Module, incl: ModuleMap, budget: int, seed: int, out: list):
    if M.dim == 0:
        return
    rep = analyse_endomorphisms(M, budget=budget, seed=seed)
    if rep.local:
        out.append((M, incl))
        return
    ims, kers = _fitting(rep.splitter)
    U, iu = submodule(M, ims)
    V, iv = submodule(M, kers)
    if U.dim == 0 or V.dim == 0:
        raise CertificationError("Fitting splitting produced a trivial summand")
    _split(U, incl @ iu, budget, seed, out)
    _split(V, incl @ iv, budget, seed, out)


def _canonical_key(U: Module) -> tuple:
    return (tuple(U.dims), U.dim, tuple(int(x) for m in U.mats for x in m.reshape(-1)))


def decompose(M: Module, budget: int = 4096, seed: int = DEFAULT_SEED, catalog: "Catalog | None" = None) -> Decomposition:
    """Split ``M`` into indecomposable summands.

    Args:
        M: The module.
        budget: Search budget per endomorphism ring (see
            :func:`analyse_endomorphisms`).
        seed: Seed of the fallback random search.
        catalog: When given, each summand is replaced by the isomorphic
            catalog member (and the inclusion adjusted accordingly).

    Returns:
        A :class:`Decomposition` sorted by dimension vector and then by the
        matrices of the summands.
    """
    parts: list[tuple[Module, ModuleMap]] = []
    _split(M, M.identity(), budget, seed, parts)
    if catalog is not None:
        relabelled = []
        for U, inc in parts:
            k, iso = catalog.identify(U)
            X = catalog.modules[k]
            relabelled.append((X, inc @ iso))
        parts = relabelled
        parts.sort(key=lambda t: (catalog.index_of_name(t[0].name), _canonical_key(t[0])))
    else:
        parts.sort(key=lambda t: _canonical_key(t[0]))
    return Decomposition(M, [u for u, _ in parts], [i for _, i in parts])


def is_indecomposable(M: Module, budget: int = 4096, seed: int = DEFAULT_SEED) -> bool:
    if M.dim == 0:
        return False
    return analyse_endomorphisms(M, budget=budget, seed=seed).local


# ----------------------------------------------------------------------
# isomorphism


def _indecomposable_iso(U: Module, V: Module) -> ModuleMap | None:
    """Isomorphism between indecomposables, or ``None``.

    The non-isomorphisms ``U -> V`` form a proper subspace whenever
    ``U`` and ``V`` are isomorphic, so some basis element must be invertible.
    """
    if U.dims != V.dims:
        return None
    for phi in hom(U, V).basis:
        if phi.is_iso():
            return phi
    return None


def find_isomorphism(M: Module, N: Module, budget: int = 4096, seed: int = DEFAULT_SEED) -> ModuleMap | None:
    """An explicit isomorphism ``M -> N`` or ``None`` if the modules differ."""
    if M.algebra is not N.algebra:
        raise InputError("modules over different presentations")
    if M.dims != N.dims:
        return None
    if M.dim == 0:
        return M.zero_map(N)
    if hom_dim(M, M) != hom_dim(N, N) or hom_dim(M, N) != hom_dim(M, M):
        return None
    direct = _indecomposable_iso(M, N)
    if direct is not None:
        return direct
    dm = decompose(M, budget, seed)
    dn = decompose(N, budget, seed)
    if len(dm) != len(dn):
        return None
    used = [False] * len(dn)
    pieces: list[tuple[int, ModuleMap]] = []
    for U in dm.summands:
        for k, V in enumerate(dn.summands):
            if used[k]:
                continue
            iso = _indecomposable_iso(U, V)
            if iso is not None:
                used[k] = True
                pieces.append((k, iso))
                break
        else:
            return None
    # assemble  M -> (+) U -> (+) V -> N
    projs = dm.projections()
    p = M.p
    mats = [np.zeros((N.dims[v], M.dims[v]), dtype=np.int64) for v in range(M.algebra.n)]
    for (k, iso), pr in zip(pieces, projs):
        f = dn.inclusions[k] @ iso @ pr
        mats = [(a + b) % p for a, b in zip(mats, f.mats)]
    out = ModuleMap(M, N, mats, check=False)
    if not out.is_iso():
        raise CertificationError("assembled isomorphism is not invertible")
    return out


def is_isomorphic(M: Module, N: Module) -> bool:
    return find_isomorphism(M, N) is not None


# ----------------------------------------------------------------------
# catalogs


@dataclass
class Catalog:
    """Pairwise non-isomorphic indecomposables of one algebra.

    Attributes:
        algebra: The owning presentation.
        modules: The indecomposables; their ``name`` fields are the labels.
        provenance: ``"built-in"``, ``"brute-force"`` or ``"user-supplied"``.
        bound: Total dimension bound of a brute-force catalog.
    """

    algebra: Algebra
    modules: list[Module]
    provenance: str = "built-in"
    bound: int | None = None
    _hom_table: np.ndarray | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    @property
    def names(self) -> list[str]:
        return [m.name for m in self.modules]

    def __getitem__(self, key) -> Module:
        if isinstance(key, str):
            return self.modules[self.index_of_name(key)]
        return self.modules[key]

    def index_of_name(self, name: str) -> int:
        for k, m in enumerate(self.modules):
            if m.name == name:
                return k
        raise InputError(f"no catalog member named {name!r}; known: {', '.join(self.names)}")

    @property
    def hom_table(self) -> np.ndarray:
        """``H[j, k] = dim Hom(X_j, X_k)``."""
        if self._hom_table is None:
            n = len(self.modules)
            h = np.zeros((n, n), dtype=np.int64)
            for j, X in enumerate(self.modules):
                for k, Y in enumerate(self.modules):
                    h[j, k] = hom_dim(X, Y)
            self._hom_table = h
        return self._hom_table

    def fingerprint(self, M: Module) -> np.ndarray:
        """``(dim Hom(X, M))_X`` over the catalog."""
        return np.array([hom_dim(X, M) for X in self.modules], dtype=np.int64)

    def multiplicities(self, M: Module) -> np.ndarray:
        """Multiplicity of each member as a summand of ``M``, read off the fingerprint.

        The hom table is invertible over the rationals for a complete catalog
        (Auslander), so the fingerprint determines the multiplicities.
        """
        f = self.fingerprint(M)
        h = self.hom_table.astype(float)
        m = np.linalg.solve(h, f.astype(float))
        r = np.rint(m).astype(np.int64)
        if np.any(r < 0) or not np.array_equal(self.hom_table @ r, f):
            raise CertificateFailure(f"module {M.name!r} is not a sum of catalog members")
        return r

    def label(self, M: Module) -> str:
        """A human label such as ``"2*S+A"`` (``"0"`` for the zero module)."""
        return self.format_multiplicities(self.multiplicities(M))

    def format_multiplicities(self, mult) -> str:
        """Label of the direct sum with the given member multiplicities."""
        parts = []
        for k, c in enumerate(mult):
            if c == 1:
                parts.append(self.modules[k].name)
            elif c > 1:
                parts.append(f"{c}*{self.modules[k].name}")
        return "+".join(parts) if parts else "0"

    def identify(self, U: Module) -> tuple[int, ModuleMap]:
        """Catalog index of an indecomposable ``U`` and an iso ``member -> U``."""
        f = self.fingerprint(U)
        for k, X in enumerate(self.modules):
            if X.dims != U.dims or not np.array_equal(self.hom_table[:, k], f):
                continue
            iso = _indecomposable_iso(X, U)
            if iso is not None:
                return k, iso
        raise CertificateFailure(f"indecomposable with dimension vector {U.dims} is missing from the catalog")

    def parse_sum(self, text: str) -> Module:
        """Build a direct sum from text like ``"A+2*S"`` or ``"0"``."""
        from .modules import zero_module

        text = text.strip()
        if text in ("", "0"):
            return zero_module(self.algebra)
        parts = []
        for term in text.split("+"):
            term = term.strip()
            mult = 1
            if "*" in term:
                c, term = term.split("*", 1)
                mult = int(c)
            parts.extend([self[term.strip()]] * mult)
        if len(parts) == 1:
            return parts[0]
        S, _, _ = direct_sum(parts, name=text.replace(" ", ""))
        return S

    def certify(self, budget: int = 4096) -> None:
        """Check indecomposability and pairwise non-isomorphism of the members."""
        for X in self.modules:
            if not is_indecomposable(X, budget=budget):
                raise CertificateFailure(f"catalog member {X.name!r} is decomposable")
        h = self.hom_table
        for j, k in itertools.combinations(range(len(self.modules)), 2):
            X, Y = self.modules[j], self.modules[k]
            same_print = X.dims == Y.dims and np.array_equal(h[:, j], h[:, k])
            if same_print or _indecomposable_iso(X, Y) is not None:
                raise CertificateFailure(f"catalog members {X.name!r} and {Y.name!r} are not separated")

    def check_complete(self) -> None:
        """Completeness test via the regular module and its dual.

        Every indecomposable of a representation-finite algebra is reached by
        the Auslander-Reiten translates of projectives, so a complete catalog
        must be closed under ``tau^-`` and contain the projectives and
        injectives.  This is a consistency check, not a proof of finiteness.
        """
        from .homological import injective, projective, tau_minus

        A = self.algebra
        for v in range(A.n):
            for X in (projective(A, v), injective(A, v)):
                self.identify(X)
        for X in self.modules:
            T = tau_minus(X).module
            if T.dim:
                for U in decompose(T).summands:
                    self.identify(U)


def _enumerate_reps(A: Algebra, dims: tuple[int, ...]) -> Iterable[list[np.ndarray]]:
    p = A.p
    shapes = [(dims[a.target], dims[a.source]) for a in A.quiver.arrows]
    sizes = [r * c for r, c in shapes]
    for entries in itertools.product(range(p), repeat=sum(sizes)):
        mats, pos = [], 0
        for (r, c), s in zip(shapes, sizes):
            mats.append(np.array(entries[pos : pos + s], dtype=np.int64).reshape(r, c))
            pos += s
        yield mats


def _dimension_vectors(n: int, total: int) -> Iterable[tuple[int, ...]]:
    for t in range(1, total + 1):
        for combo in itertools.combinations_with_replacement(range(n), t):
            d = [0] * n
            for v in combo:
                d[v] += 1
            yield tuple(d)


def brute_force_catalog(A: Algebra, max_dim: int, budget: int = 200_000, names: Sequence[str] | None = None) -> Catalog:
    """Classify all indecomposables of total dimension at most ``max_dim``.

    Every representation of every dimension vector in range is enumerated
    over ``F_p``, checked against the relations and classified up to
    isomorphism.

    Raises:
        BudgetExceeded: if more than ``budget`` representations would be
            visited.
    """
    p = A.p
    planned = 0
    for d in _dimension_vectors(A.n, max_dim):
        planned += p ** sum(d[a.target] * d[a.source] for a in A.quiver.arrows)
        if planned > budget:
            raise BudgetExceeded(f"brute-force catalog needs more than {budget} representations")
    found: list[Module] = []
    for d in _dimension_vectors(A.n, max_dim):
        same = []
        for mats in _enumerate_reps(A, d):
            try:
                M = Module(A, d, mats)
            except InputError:
                continue
            if any(_indecomposable_iso(X, M) is not None for X in same):
                continue
            if not is_indecomposable(M):
                continue
            same.append(M)
        found.extend(same)
    mods = []
    for k, M in enumerate(found):
        label = names[k] if names is not None else "X" + "".join(str(x) for x in M.dims) + (f"_{k}" if sum(1 for Y in found if Y.dims == M.dims) > 1 else "")
        mods.append(M.renamed(label))
    return Catalog(A, mods, provenance="brute-force", bound=max_dim)


def user_catalog(A: Algebra, modules: Sequence[Module], check_complete: bool = True) -> Catalog:
    """Wrap user-supplied modules as a certified catalog."""
    cat = Catalog(A, list(modules), provenance="user-supplied")
    cat.certify()
    if check_complete:
        cat.check_complete()
    return cat
