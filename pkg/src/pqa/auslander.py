"""The Auslander algebra of a representation-finite algebra and its tilting module.

``Gamma = End_A(E)^op`` for ``E`` the sum of one copy of each catalog member.
Left ``Gamma``-modules are contravariant functors on ``add E``; the functor
``Hom_A(E, X)`` is the basic example and gives the projective ``Gamma e_U``
for ``X = U``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg as la
from .decompose import Catalog, decompose, find_isomorphism
from .errors import CertificateFailure
from .homological import (
    ext,
    injective_copresentation,
    injective_dimension,
    is_injective,
    is_projective,
    projective,
    projective_dimension,
    regular_module,
    right_multiplication,
    simple,
)
from .modules import HomSpace, Module, ModuleMap, direct_sum, hom, zero_module
from .present import CategoryPresentation, LinearCategory, present_category
from .quiver import Algebra

__all__ = [
    "AuslanderData",
    "auslander_algebra",
    "hom_functor",
    "hom_functor_map",
    "check_corner",
    "global_dimension",
    "dominant_dimension_at_least_2",
    "TiltingReport",
    "find_special_tilting",
    "projective_injectives",
    "generated_by",
    "cogenerated_by",
    "basic_part",
]


def _category_of_modules(mods: list[Module], p: int, labels: list[str] | None = None) -> tuple[LinearCategory, list[list[HomSpace]]]:
    m = len(mods)
    H = [[hom(mods[v], mods[w]) for w in range(m)] for v in range(m)]
    dims = [[H[v][w].dim for w in range(m)] for v in range(m)]

    def compose(v, w, u, a, b):
        return H[v][u].coords(H[w][u].basis[a] @ H[v][w].basis[b])

    def identity(v):
        return H[v][v].coords(mods[v].identity())

    cat = LinearCategory(labels or [X.name for X in mods], dims, compose, identity, p)
    return cat, H


@dataclass
class AuslanderData:
    """``Gamma`` with the bookkeeping that ties it to ``A``.

    Attributes:
        catalog: The catalog ``E`` was built from.
        presentation: ``Gamma`` as a quiver with relations plus evaluation data.
        homs: ``homs[v][w] = Hom_A(U_v, U_w)`` with the bases used for ``Gamma``.
        eps_vertices: ``eps_vertices[i]`` is the ``Gamma``-vertex of ``P_i``.
        projective_isos: Isomorphisms ``P_i -> U_{eps_vertices[i]}``.
    """

    catalog: Catalog
    presentation: CategoryPresentation
    homs: list[list[HomSpace]]
    eps_vertices: list[int]
    projective_isos: list[ModuleMap]
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def gamma(self) -> Algebra:
        return self.presentation.algebra

    @property
    def vertex_of_member(self) -> dict[str, int]:
        return {X.name: k for k, X in enumerate(self.catalog.modules)}

    def restrict(self, X: Module) -> Module:
        """``eps X`` as an ``A``-module (through ``eps Gamma eps = A``)."""
        return _restrict_corner(X, self.catalog.algebra, self.eps_vertices, self._corner_map())

    def _corner_map(self):
        if "corner" not in self._cache:
            self._cache["corner"] = check_corner(self.catalog.algebra, self.presentation, self.eps_vertices, self._rho)
        return self._cache["corner"]

    def _rho(self, a_elem: np.ndarray, s: int, t: int) -> np.ndarray:
        """Coordinates of ``rho_a`` transported to ``Hom(U_{eps t}, U_{eps s})``."""
        A = self.catalog.algebra
        rho = right_multiplication(A, a_elem, s, t)
        ps, pt = self.eps_vertices[s], self.eps_vertices[t]
        f = self.projective_isos[s] @ rho @ self.projective_isos[t].inverse()
        return self.homs[pt][ps].coords(f)


def check_corner(A: Algebra, pres: CategoryPresentation, corner: list[int], rho) -> list[np.ndarray]:
    """Verify that ``a -> rho_a`` identifies ``A`` with the corner ``e B e``.

    Args:
        A: The algebra.
        pres: Presentation of ``B = End(G)^op``.
        corner: ``corner[i]`` is the vertex of ``B`` playing the role of ``i``.
        rho: ``rho(a, s, t)`` gives the morphism ``G_{corner t} -> G_{corner s}``
            (coordinates) attached to an element ``a`` of the (s, t) block.

    Returns:
        For each basis element of ``A``, its image in ``B`` (coordinates).

    Raises:
        CertificateFailure: if the map is not bijective or not multiplicative.
    """
    B = pres.algebra
    images = []
    for k, q in enumerate(A.basis):
        e = np.zeros(A.dim, dtype=np.int64)
        e[k] = 1
        s, t = q.source, q.target
        phi = rho(e, s, t)
        images.append(pres.from_morphism(corner[s], corner[t], phi))
    # bijectivity onto e B e
    eBe = sum(B.block_dim(corner[s], corner[t]) for s in range(A.n) for t in range(A.n))
    if eBe != A.dim:
        raise CertificateFailure(f"dim eBe = {eBe} but dim A = {A.dim}")
    mat = np.stack(images, axis=1) if images else np.zeros((B.dim, 0), dtype=np.int64)
    if la.rank(mat, A.p) != A.dim:
        raise CertificateFailure("A -> eBe is not injective")
    for i in range(A.dim):
        for j in range(A.dim):
            prod = A.basis_product(i, j)
            lhs = la.matmul(mat, prod.reshape(-1, 1), A.p).reshape(-1)
            rhs = B.mul(images[i], images[j])
            if not np.array_equal(lhs % A.p, rhs):
                raise CertificateFailure("A -> eBe is not multiplicative")
    return images


def _restrict_corner(X: Module, A: Algebra, corner: list[int], images: list[np.ndarray]) -> Module:
    """``e X`` as an ``A``-module, using the corner identification."""
    dims = [X.dims[corner[i]] for i in range(A.n)]
    mats = []
    for a in range(len(A.quiver.arrows)):
        arr = A.quiver.arrows[a]
        elem = A.arrow_element(a)
        img = np.zeros(X.algebra.dim, dtype=np.int64)
        for k in np.flatnonzero(elem):
            img = img + int(elem[k]) * images[k]
        img %= A.p
        mats.append(X.element_matrix(img, corner[arr.source], corner[arr.target]))
    return Module(A, dims, mats, name=f"e({X.name})" if X.name else "")


def auslander_algebra(cat: Catalog, name: str = "Gamma") -> AuslanderData:
    """Present ``Gamma = End_A(E)^op`` and locate ``eps``."""
    A = cat.algebra
    mods = list(cat.modules)
    lc, H = _category_of_modules(mods, A.p)
    pres = present_category(lc, name=name)
    eps, isos = [], []
    for i in range(A.n):
        P = projective(A, i)
        k, iso = cat.identify(P)  # iso: member -> P
        eps.append(k)
        isos.append(iso.inverse())
    data = AuslanderData(cat, pres, H, eps, isos)
    data._corner_map()
    total = sum(H[v][w].dim for v in range(len(mods)) for w in range(len(mods)))
    if total != pres.algebra.dim:
        raise CertificateFailure("dim Gamma differs from the total hom dimension")
    return data


def hom_functor(data: AuslanderData, X: Module, name: str = "") -> tuple[Module, list[HomSpace]]:
    """``Hom_A(E, X)`` as a ``Gamma``-module, with the hom spaces used at each vertex."""
    G = data.gamma
    mods = data.catalog.modules
    spaces = [hom(U, X) for U in mods]
    mats = []
    for a, arr in enumerate(G.quiver.arrows):
        w, v = arr.source, arr.target
        phi = data.homs[v][w].element(data.presentation.arrow_maps[a])  # U_v -> U_w
        m = np.zeros((spaces[v].dim, spaces[w].dim), dtype=np.int64)
        for c, g in enumerate(spaces[w].basis):
            m[:, c] = spaces[v].coords(g @ phi)
        mats.append(m)
    return Module(G, [S.dim for S in spaces], mats, name=name or f"Hom(E,{X.name})"), spaces


def hom_functor_map(data: AuslanderData, f: ModuleMap) -> ModuleMap:
    """``Hom_A(E, f)``."""
    FX, SX = hom_functor(data, f.domain)
    FY, SY = hom_functor(data, f.codomain)
    mats = []
    for v in range(len(SX)):
        m = np.zeros((SY[v].dim, SX[v].dim), dtype=np.int64)
        for c, g in enumerate(SX[v].basis):
            m[:, c] = SY[v].coords(f @ g)
        mats.append(m)
    return ModuleMap(FX, FY, mats)


# ----------------------------------------------------------------------
# homological invariants


def global_dimension(L: Algebra, bound: int = 12) -> int | None:
    """Maximum of ``pdim S_v`` over the simples (``None`` beyond ``bound``)."""
    worst = 0
    for v in range(L.n):
        d = projective_dimension(simple(L, v), bound=bound)
        if d is None:
            return None
        worst = max(worst, d)
    return worst


def dominant_dimension_at_least_2(L: Algebra) -> bool:
    """Whether the first two terms of the minimal injective copresentation of ``L`` are projective."""
    R = regular_module(L)
    iota, theta = injective_copresentation(R)
    return is_projective(iota.codomain) and is_projective(theta.codomain)


def projective_injectives(L: Algebra) -> list[int]:
    """Vertices whose indecomposable projective is also injective."""
    return [v for v in range(L.n) if is_injective(projective(L, v))]


def generated_by(X: Module, Q: Module) -> bool:
    """Whether ``X`` is a quotient of a sum of copies of ``Q``."""
    if X.dim == 0:
        return True
    H = hom(Q, X)
    if H.dim == 0:
        return False
    p = X.p
    for v in range(X.algebra.n):
        if X.dims[v] == 0:
            continue
        cols = np.concatenate([phi.mats[v] for phi in H.basis], axis=1)
        if la.rank(cols, p) != X.dims[v]:
            return False
    return True


def cogenerated_by(X: Module, Q: Module) -> bool:
    """Whether ``X`` embeds into a sum of copies of ``Q``."""
    if X.dim == 0:
        return True
    H = hom(X, Q)
    if H.dim == 0:
        return False
    p = X.p
    for v in range(X.algebra.n):
        if X.dims[v] == 0:
            continue
        rows = np.concatenate([phi.mats[v] for phi in H.basis], axis=0)
        if la.rank(rows, p) != X.dims[v]:
            return False
    return True


def basic_part(M: Module) -> list[Module]:
    """One representative of each isomorphism class of indecomposable summands."""
    out: list[Module] = []
    for U in decompose(M).summands:
        if not any(V.dims == U.dims and find_isomorphism(V, U) is not None for V in out):
            out.append(U)
    return out


@dataclass
class TiltingReport:
    """The module ``T`` and the outcome of each certificate."""

    module: Module
    summands: list[Module]
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def find_special_tilting(L: Algebra) -> TiltingReport:
    """``T = Q' + Im(theta)`` (basic part) for the copresentation ``0 -> L -> Q' -> Q''``.

    Certificates: ``pdim T <= 1``, ``idim T <= 1``, ``Ext^1(T, T) = 0``, the
    number of summands equals the number of simples, and every summand is
    generated and cogenerated by the projective-injectives.

    Raises:
        CertificateFailure: if any certificate fails.
    """
    R = regular_module(L)
    iota, theta = injective_copresentation(R)
    Qp = iota.codomain
    im, _ = theta.image()
    parts = [Qp] + ([im] if im.dim else [])
    S, _, _ = direct_sum(parts)
    summands = basic_part(S)
    T, _, _ = direct_sum(summands, name="T")
    pi_verts = projective_injectives(L)
    Qpi = direct_sum([projective(L, v) for v in pi_verts])[0] if pi_verts else zero_module(L)
    checks = {
        "pdim<=1": (projective_dimension(T, bound=4) or 0) <= 1 and projective_dimension(T, bound=4) is not None,
        "idim<=1": (injective_dimension(T, bound=4) or 0) <= 1 and injective_dimension(T, bound=4) is not None,
        "ext1=0": ext(1, T, T).dim == 0,
        "summands=simples": len(summands) == L.n,
        "gen-cogen": all(generated_by(U, Qpi) and cogenerated_by(U, Qpi) for U in summands),
    }
    rep = TiltingReport(T, summands, checks)
    if not rep.ok:
        bad = ", ".join(k for k, v in checks.items() if not v)
        raise CertificateFailure(f"special tilting module failed: {bad}")
    return rep
