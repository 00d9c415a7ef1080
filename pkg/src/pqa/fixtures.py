"""Built-in example algebras with their catalogs of indecomposables.

Fixture names::

    trunc:n                 K[x]/(x^n)
    cycle:N:n               oriented N-cycle modulo all paths of length n
    commuting-square        1 -> 2 -> 4, 1 -> 3 -> 4 with the square commuting
    dynkin:A_k[:orient]     type A_k; orient is a word in {r, l} of length k-1
                            ('r' means i -> i+1, 'l' means i+1 -> i)
    semisimple:n            n vertices, no arrows

Every fixture accepts a prime via :func:`load_fixture` (default 2).  The
catalog members are constructed directly from their known normal forms and
then certified (indecomposable, pairwise non-isomorphic) by
:meth:`~pqa.decompose.Catalog.certify` in the test suite.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .decompose import Catalog
from .errors import InputError
from .modules import Module
from .quiver import Algebra, Arrow, Path, Quiver

__all__ = ["Fixture", "load_fixture", "FIXTURE_NAMES", "default_fixtures"]


@dataclass
class Fixture:
    """An algebra, its catalog and presentation hints for derived algebras.

    Attributes:
        name: The fixture name as given on the command line.
        algebra: The algebra ``A``.
        catalog: All indecomposable ``A``-modules.
        projective_label: Label of the vertex ``(P_i -> 0)`` of ``B``, given
            the label of vertex ``i`` of ``A``.
        module_label: Label of the vertex ``(P_U -> U)``, given ``U``'s name.
        arrow_namer: Optional naming rule for the arrows of ``B``; receives
            source and target labels and returns a name or ``None``.
        self_injective: Whether ``A`` is self-injective.
    """

    name: str
    algebra: Algebra
    catalog: Catalog
    projective_label: Callable[[str], str] = lambda v: f"[{v}]"
    module_label: Callable[[str], str] = lambda u: f"[{u}]"
    arrow_namer: Callable[[str, str], str | None] | None = None
    self_injective: bool = False
    meta: dict = field(default_factory=dict)


def _shift(r: int) -> np.ndarray:
    """Matrix of multiplication by x on K[x]/(x^r) in the basis 1, x, ..., x^(r-1)."""
    m = np.zeros((r, r), dtype=np.int64)
    for k in range(r - 1):
        m[k + 1, k] = 1
    return m


def truncated(n: int, p: int = 2) -> Fixture:
    if n < 1:
        raise InputError("trunc:n needs n >= 1")
    q = Quiver(("1",), (Arrow("x", 0, 0),))
    rel = {Path(0, 0, (0,) * n): 1} if n >= 2 else {}
    A = Algebra(q, [rel] if n >= 2 else [], p, name=f"trunc{n}")
    if n == 1:
        # K[x]/(x) is presented by a vertex without the loop
        q = Quiver(("1",), ())
        A = Algebra(q, [], p, name="trunc1")
    mods = []
    for r in range(1, n + 1):
        name = "S" if r == 1 else ("A" if r == n else f"M{r}")
        mats = [_shift(r)] if A.quiver.arrows else []
        mods.append(Module(A, (r,), mats, name=name))
    if n == 1:
        mods = [Module(A, (1,), [], name="S")]

    def mlabel(u: str) -> str:
        return "1" if u == "S" else u[1:]

    def namer(s: str, t: str) -> str | None:
        rs = 0 if s == "[0]" else int(s)
        rt = 0 if t == "[0]" else int(t)
        return f"p_{rs}" if rt == rs - 1 else f"j_{rt}"

    return Fixture(
        f"trunc:{n}",
        A,
        Catalog(A, mods, provenance="built-in"),
        projective_label=lambda v: "[0]",
        module_label=mlabel,
        arrow_namer=namer,
        self_injective=True,
        meta={"n": n},
    )


def nilpotent_cycle(N: int, n: int, p: int = 2) -> Fixture:
    if N < 1 or n < 1:
        raise InputError("cycle:N:n needs N, n >= 1")
    labels = tuple(str(i) for i in range(1, N + 1))
    arrows = tuple(Arrow(f"x{i + 1}", i, (i + 1) % N) for i in range(N))
    q = Quiver(labels, arrows)
    rels = []
    if n >= 2:
        for i in range(N):
            arrs = tuple((i + k) % N for k in range(n))
            rels.append({Path(i, (i + n) % N, arrs): 1})
    else:
        q = Quiver(labels, ())
    A = Algebra(q, rels, p, name=f"cycle{N}_{n}")
    mods = []
    for i in range(N):
        for r in range(1, n + 1):
            dims = [0] * N
            for k in range(r):
                dims[(i + k) % N] += 1
            # basis vector k sits at vertex i + k; record its position there
            pos, seen = [], [0] * N
            for k in range(r):
                v = (i + k) % N
                pos.append(seen[v])
                seen[v] += 1
            mats = []
            for a in q.arrows:
                m = np.zeros((dims[a.target], dims[a.source]), dtype=np.int64)
                for k in range(r - 1):
                    if (i + k) % N == a.source:
                        m[pos[k + 1], pos[k]] = 1
                mats.append(m)
            mods.append(Module(A, dims, mats, name=f"E{i + 1}[{r}]"))

    def mlabel(u: str) -> str:
        m = re.fullmatch(r"E(\d+)\[(\d+)\]", u)
        return f"({m.group(1)},{m.group(2)})"

    def namer(s: str, t: str) -> str | None:
        (i, r), (k, u) = (tuple(int(x) for x in lab.strip("[]()").split(",")) for lab in (s, t))
        kind = "j" if u == r + 1 else "p"
        return f"{kind}{i}_{r}"

    # only the projectives E_i[n] are projective-type; module-type vertices
    # are (i, r) for 1 <= r <= n - 1
    return Fixture(
        f"cycle:{N}:{n}",
        A,
        Catalog(A, mods, provenance="built-in"),
        projective_label=lambda v: f"[({v},0)]",
        module_label=mlabel,
        arrow_namer=namer,
        self_injective=True,
        meta={"N": N, "n": n},
    )


def commuting_square(p: int = 2) -> Fixture:
    q = Quiver(
        ("1", "2", "3", "4"),
        (Arrow("a", 0, 1), Arrow("b", 0, 2), Arrow("c", 1, 3), Arrow("d", 2, 3)),
    )
    rel = {Path(0, 3, (0, 2)): 1, Path(0, 3, (1, 3)): p - 1}
    A = Algebra(q, [rel], p, name="square")
    one = np.ones((1, 1), dtype=np.int64)

    def rep(name, dims, a=None, b=None, c=None, d=None):
        return Module(A, dims, [a, b, c, d], name=name)

    mods = [
        rep("S1", (1, 0, 0, 0)),
        rep("S2", (0, 1, 0, 0)),
        rep("S3", (0, 0, 1, 0)),
        rep("S4", (0, 0, 0, 1)),
        rep("P1", (1, 1, 1, 1), one, one, one, one),
        rep("P2", (0, 1, 0, 1), c=one),
        rep("P3", (0, 0, 1, 1), d=one),
        rep("I2", (1, 1, 0, 0), a=one),
        rep("I3", (1, 0, 1, 0), b=one),
        rep("radP1", (0, 1, 1, 1), c=one, d=one),
        rep("P1/S4", (1, 1, 1, 0), a=one, b=one),
    ]
    return Fixture("commuting-square", A, Catalog(A, mods, provenance="built-in"))


def dynkin_a(k: int, orient: str | None = None, p: int = 2) -> Fixture:
    if k < 1:
        raise InputError("dynkin:A_k needs k >= 1")
    orient = orient or "r" * (k - 1)
    if len(orient) != k - 1 or set(orient) - {"r", "l"}:
        raise InputError(f"orientation for A_{k} must be a word of length {k - 1} in r/l")
    labels = tuple(str(i) for i in range(1, k + 1))
    arrows = []
    for i, o in enumerate(orient):
        s, t = (i, i + 1) if o == "r" else (i + 1, i)
        arrows.append(Arrow(f"a{i + 1}", s, t))
    q = Quiver(labels, tuple(arrows))
    A = Algebra(q, [], p, name=f"A{k}{orient}")
    mods = []
    for lo in range(k):
        for hi in range(lo, k):
            dims = [1 if lo <= v <= hi else 0 for v in range(k)]
            mats = []
            for a in q.arrows:
                inside = lo <= a.source <= hi and lo <= a.target <= hi
                mats.append(np.ones((1, 1), dtype=np.int64) if inside else None)
            mods.append(Module(A, dims, mats, name=f"M{lo + 1}{hi + 1}" if k < 10 else f"M{lo + 1}_{hi + 1}"))
    return Fixture(f"dynkin:A_{k}" + (f":{orient}" if orient != "r" * (k - 1) else ""), A, Catalog(A, mods, provenance="built-in"))


def semisimple(n: int, p: int = 2) -> Fixture:
    labels = tuple(str(i) for i in range(1, n + 1))
    A = Algebra(Quiver(labels, ()), [], p, name=f"semisimple{n}")
    mods = []
    for v in range(n):
        dims = [1 if w == v else 0 for w in range(n)]
        mods.append(Module(A, dims, [], name=f"S{v + 1}"))
    return Fixture(f"semisimple:{n}", A, Catalog(A, mods, provenance="built-in"), self_injective=True)


FIXTURE_NAMES = ("trunc:n", "cycle:N:n", "commuting-square", "dynkin:A_k[:orient]", "semisimple:n")


def load_fixture(name: str, p: int = 2) -> Fixture:
    """Resolve a fixture name such as ``trunc:3`` or ``dynkin:A_3:rl``."""
    parts = name.strip().split(":")
    try:
        if parts[0] == "trunc" and len(parts) == 2:
            return truncated(int(parts[1]), p)
        if parts[0] == "cycle" and len(parts) == 3:
            return nilpotent_cycle(int(parts[1]), int(parts[2]), p)
        if parts[0] == "commuting-square" and len(parts) == 1:
            return commuting_square(p)
        if parts[0] == "dynkin" and len(parts) in (2, 3) and parts[1].startswith("A_"):
            return dynkin_a(int(parts[1][2:]), parts[2] if len(parts) == 3 else None, p)
        if parts[0] == "semisimple" and len(parts) == 2:
            return semisimple(int(parts[1]), p)
    except ValueError as exc:
        raise InputError(f"bad fixture name {name!r}: {exc}") from None
    raise InputError(f"unknown fixture {name!r}; known forms: {', '.join(FIXTURE_NAMES)}")


def default_fixtures() -> list[str]:
    """Fixtures exercised by the full verification run."""
    return ["trunc:2", "trunc:3", "trunc:4", "cycle:3:4", "commuting-square", "dynkin:A_3", "dynkin:A_3:rl", "semisimple:2"]
