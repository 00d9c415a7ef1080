"""The acceptance gate: ten criteria evaluated over the built-in fixtures.

Each ``criterion_k`` returns a :class:`CriterionResult`; failures are
collected rather than raised so a report always lists every criterion.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .auslander import AuslanderData, auslander_algebra, dominant_dimension_at_least_2, find_special_tilting, global_dimension
from .decompose import DEFAULT_SEED
from .errors import BudgetExceeded, InputError, PqaError
from .expected import SQUARE_CEXT_ARRAYS, golden_B, square_module_dims, truncated_B
from .fixtures import Fixture, default_fixtures, load_fixture
from .geometry import (
    QuiverPoint,
    degeneration_table,
    deframe,
    desingularization_check,
    enumerate_submodules,
    image_of_e_classes,
    iso_classes,
    path_entry,
    smooth_certificate,
    trace_invariant,
)
from .homological import ext, projective_dimension, simple
from .modules import hom_dim, quotient, submodule
from .present import find_presentation_isomorphism
from .qcat import BPresentation, build_B
from .quiver import Arrow, Quiver
from .recollement import Recollement

__all__ = ["CriterionResult", "FixtureContext", "context", "CRITERIA", "run_criterion", "run_criteria", "deframe_oracle", "random_instance"]


@dataclass
class CriterionResult:
    """Outcome of one acceptance criterion."""

    number: int
    title: str
    ok: bool = True
    details: list[str] = field(default_factory=list)
    failures: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, msg: str):
        self.ok = False
        self.failures.append(msg)

    def expect(self, cond: bool, msg: str):
        if not cond:
            self.fail(msg)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f" ({'; '.join(self.failures[:3])})" if self.failures else ""
        return f"criterion {self.number:2d} {status}  {self.title}  [{self.seconds:.1f}s]{extra}"


@dataclass
class FixtureContext:
    """A fixture with its ``B``, ``Gamma`` and recollement, built once."""

    fixture: Fixture
    bp: BPresentation
    aus: AuslanderData
    rec: Recollement
    build_seconds: float


@lru_cache(maxsize=None)
def context(name: str, p: int) -> FixtureContext:
    t = time.perf_counter()
    fx = load_fixture(name, p)
    bp = build_B(fx.algebra, fx.catalog, projective_label=fx.projective_label, module_label=fx.module_label, arrow_namer=fx.arrow_namer)
    elapsed = time.perf_counter() - t
    aus = auslander_algebra(fx.catalog)
    return FixtureContext(fx, bp, aus, Recollement(bp, aus), elapsed)


def _timed_build(name: str, p: int) -> tuple[BPresentation, float]:
    t = time.perf_counter()
    fx = load_fixture(name, p)
    bp = build_B(fx.algebra, fx.catalog, projective_label=fx.projective_label, module_label=fx.module_label, arrow_namer=fx.arrow_namer)
    return bp, time.perf_counter() - t


# ----------------------------------------------------------------------
def criterion_1(primes=(2, 3), ns=(2, 3, 4), limit: float = 10.0) -> CriterionResult:
    res = CriterionResult(1, "truncated polynomial rings: B reproduced")
    for n, p in itertools.product(ns, primes):
        bp, secs = _timed_build(f"trunc:{n}", p)
        B = bp.B
        tag = f"trunc:{n} p={p}"
        res.expect(secs < limit, f"{tag} took {secs:.1f}s")
        res.expect(B.n == n, f"{tag} has {B.n} vertices")
        names = {a.name for a in B.quiver.arrows}
        want = {f"p_{r}" for r in range(1, n)} | {f"j_{r}" for r in range(1, n)}
        res.expect(names == want, f"{tag} arrow names {sorted(names)}")
        res.expect(find_presentation_isomorphism(truncated_B(n, p), B) is not None, f"{tag} relations differ")
        res.details.append(f"{tag}: dim B = {B.dim}, {len(B.relations)} relations, {secs:.2f}s")
    return res


def criterion_2(primes=(2, 3), limit: float = 60.0) -> CriterionResult:
    res = CriterionResult(2, "nilpotent 3-cycle modulo length 4: B reproduced")
    for p in primes:
        bp, secs = _timed_build("cycle:3:4", p)
        B = bp.B
        tag = f"cycle:3:4 p={p}"
        res.expect(secs < limit, f"{tag} took {secs:.1f}s")
        res.expect(B.n == 12, f"{tag} has {B.n} vertices")
        labels = set(B.quiver.vertices)
        want = {f"[({i},0)]" for i in (1, 2, 3)} | {f"({i},{r})" for i in (1, 2, 3) for r in (1, 2, 3)}
        res.expect(labels == want, f"{tag} vertex labels {sorted(labels)}")
        res.expect(find_presentation_isomorphism(golden_B("cycle:3:4", p), B) is not None, f"{tag} differs from the reference quiver")
        res.details.append(f"{tag}: {len(B.quiver.arrows)} arrows, {len(B.relations)} relations, {secs:.2f}s")
    return res


def criterion_3(primes=(2, 3)) -> CriterionResult:
    res = CriterionResult(3, "commuting square: B, c(S_i) and the four arrays")
    for p in primes:
        ctx = context("commuting-square", p)
        B, cat, R = ctx.bp.B, ctx.fixture.catalog, ctx.rec
        tag = f"p={p}"
        G = golden_B("commuting-square", p)
        iso = find_presentation_isomorphism(G, B)
        if iso is None:
            res.fail(f"{tag}: B differs from the reference quiver")
            continue
        vmap = iso[0]
        for i in range(1, 5):
            F = R.cext(cat[f"S{i}"])
            v = B.quiver.vertices.index(f"[{i}]")
            res.expect(F.dim == 1 and F.dims[v] == 1, f"{tag}: c(S{i}) is not S_[{i}]")
        for array, values in SQUARE_CEXT_ARRAYS.items():
            dims = square_module_dims(array)
            members = [U for U in cat.modules if tuple(U.dims) == dims]
            if len(members) != 1:
                res.fail(f"{tag}: no unique module with array {array}")
                continue
            F = R.cext(members[0])
            for glabel, want in values.items():
                got = F.dims[vmap[G.quiver.vertices.index(glabel)]]
                res.expect(got == want, f"{tag}: c{array} at {glabel} is {got}, expected {want}")
        res.details.append(f"{tag}: vertex map {[B.quiver.vertices[k] for k in vmap]}")
    return res


def criterion_4(fixtures=None, primes=(2, 3)) -> CriterionResult:
    res = CriterionResult(4, "homological suite: Ext1, pdim, idim, gldim B, full faithfulness")
    for name, p in itertools.product(fixtures or default_fixtures(), primes):
        ctx = context(name, p)
        R, cat, B = ctx.rec, ctx.fixture.catalog, ctx.bp.B
        tag = f"{name} p={p}"
        for v in range(B.n):
            pd = projective_dimension(simple(B, v), bound=4)
            res.expect(pd is not None and pd <= 2, f"{tag}: pdim S_{B.quiver.vertices[v]} = {pd}")
        C = [R.cext(U) for U in cat.modules]
        for U in cat.modules:
            rep = R.certify_homological(U)
            for nm, ok, detail in rep.lines:
                res.expect(ok, f"{tag}: {nm} {detail}")
        pairs = 0
        for (i, U), (j, V) in itertools.product(enumerate(cat.modules), repeat=2):
            e1 = ext(1, C[i], C[j]).dim
            res.expect(e1 == 0, f"{tag}: Ext1(c({U.name}), c({V.name})) = {e1}")
            hb, ha = hom_dim(C[i], C[j]), int(cat.hom_table[i, j])
            res.expect(hb == ha, f"{tag}: Hom(c({U.name}), c({V.name})) = {hb} vs {ha}")
            pairs += 1
        res.details.append(f"{tag}: {len(cat)} modules, {pairs} pairs")
    return res


def criterion_5(fixtures=None, primes=(2, 3)) -> CriterionResult:
    res = CriterionResult(5, "three constructions of c agree")
    for name, p in itertools.product(fixtures or default_fixtures(), primes):
        ctx = context(name, p)
        n = 0
        for U in ctx.fixture.catalog.modules:
            try:
                out = ctx.rec.intermediate_extension(U)
                res.expect(out.agree, f"{name} p={p}: {U.name} lacks an isomorphism")
            except PqaError as exc:
                res.fail(f"{name} p={p}: {U.name}: {exc}")
            n += 1
        res.details.append(f"{name} p={p}: {n} modules")
    return res


def criterion_6(fixtures=None, primes=(2,)) -> CriterionResult:
    res = CriterionResult(6, "Auslander algebra and tilting suite")
    for name, p in itertools.product(fixtures or default_fixtures(), primes):
        ctx = context(name, p)
        G = ctx.aus.gamma
        tag = f"{name} p={p}"
        gd = global_dimension(G)
        res.expect(gd is not None and gd <= 2, f"{tag}: gldim Gamma = {gd}")
        res.expect(dominant_dimension_at_least_2(G), f"{tag}: dominant dimension < 2")
        try:
            find_special_tilting(G)
        except PqaError as exc:
            res.fail(f"{tag}: {exc}")
        rep = ctx.rec.tilting_checks()
        for nm, ok, detail in rep.lines:
            res.expect(ok, f"{tag}: {nm} {detail}")
        res.details.append(f"{tag}: gldim {gd}, {len(rep.lines)} tilting certificates")
    return res


def criterion_7(fixtures=None, primes=(2,)) -> CriterionResult:
    res = CriterionResult(7, "degeneration order equals the image of e")
    for name, p in itertools.product(fixtures or default_fixtures(), primes):
        ctx = context(name, p)
        R, cat = ctx.rec, ctx.fixture.catalog
        dimvs = sorted({tuple(U.dims) for U in cat.modules})
        pairs = 0
        for dv in dimvs:
            classes = [cat.parse_sum(cat.format_multiplicities(m)) for m in iso_classes(cat, dv)]
            for M in classes:
                table = degeneration_table(R, M)
                for lab, by_c, by_hom in table:
                    res.expect(by_c == by_hom, f"{name}: {lab} vs {cat.label(M)}")
                    pairs += 1
                below = sorted(lab for lab, _, by_hom in table if by_hom)
                image = sorted(image_of_e_classes(R, R.cext(M).dims))
                res.expect(below == image, f"{name}: image of e at {cat.label(M)}: {image} vs {below}")
        res.details.append(f"{name} p={p}: {pairs} pairs")
    return res


def _grass_modules(cat, max_dim: int = 6, pair_dim: int = 4):
    mods = [U for U in cat.modules if U.dim <= max_dim]
    for a, b in itertools.combinations_with_replacement(range(len(cat)), 2):
        X = cat.parse_sum(f"{cat.names[a]}+{cat.names[b]}")
        if X.dim <= pair_dim:
            mods.append(X)
    return mods


def criterion_8(fixtures=None, q: int = 2, max_dim: int = 6) -> CriterionResult:
    res = CriterionResult(8, "Grassmannian point-level suite over F_2")
    for name in fixtures or default_fixtures():
        ctx = context(name, q)
        R, cat = ctx.rec, ctx.fixture.catalog
        checks = 0
        for M in _grass_modules(cat, max_dim):
            for dv in itertools.product(*[range(k + 1) for k in M.dims]):
                rep = enumerate_submodules(M, dv, q, catalog=cat)
                for lab in rep.strata:
                    out = desingularization_check(R, M, cat.parse_sum(lab), q)
                    checks += 1
                    for nm, (ok, detail) in out.checks.items():
                        res.expect(ok, f"{name}: {cat.label(M)} d={list(dv)} [{lab}] {nm}: {detail}")
        res.details.append(f"{name}: {checks} strata checked")
    return res


def random_instance(rng: np.random.Generator) -> tuple[Quiver, int, tuple[int, ...], tuple[int, ...]]:
    """A random quiver with a vertex split and a dimension vector."""
    n = int(rng.integers(1, 4))
    m = n + int(rng.integers(0, 4))
    k = int(rng.integers(1, 8))
    arrows = tuple(Arrow(f"a{t}", int(rng.integers(0, m)), int(rng.integers(0, m))) for t in range(k))
    q = Quiver(tuple(str(v + 1) for v in range(m)), arrows)
    d = tuple(int(x) for x in rng.integers(0, 4, size=n))
    r = tuple(int(x) for x in rng.integers(0, 3, size=m - n))
    return q, n, d, r


def deframe_oracle(q: Quiver, n: int, d, r) -> dict[tuple[int, int], int]:
    """Arrow counts of the deframed quiver, counted case by case."""
    counts: dict[tuple[int, int], int] = {}

    def node(v):
        return 0 if v < n else v - n + 1

    for a in q.arrows:
        i, j = a.source, a.target
        if i >= n and j >= n:
            mult = 1
        elif i < n <= j:
            mult = d[i]
        elif j < n <= i:
            mult = d[j]
        else:
            mult = d[i] * d[j]
        if mult:
            key = (node(i), node(j))
            counts[key] = counts.get(key, 0) + mult
    return counts


def criterion_9(instances: int = 20, triples: int = 100, p: int = 3, seed: int = DEFAULT_SEED) -> CriterionResult:
    res = CriterionResult(9, "deframing: arrow multiplicities and trace identity")
    rng = np.random.default_rng(seed)
    done = 0
    while done < instances:
        q, n, d, r = random_instance(rng)
        try:
            dq = deframe(q, n, d, r, max_paths=50_000)
        except BudgetExceeded:
            continue
        res.expect(dq.arrow_counts() == deframe_oracle(q, n, d, r), f"instance {done}: counts differ")
        res.expect(bool(np.all(dq.theta[1:] == -1)), f"instance {done}: theta off the inf vertex")
        done += 1
    checked = 0
    while checked < triples:
        q, n, d, r = random_instance(rng)
        if sum(r) > 3:
            continue
        try:
            dq = deframe(q, n, d, r, max_paths=20_000)
        except BudgetExceeded:
            continue
        usable = [pth for pth in dq.primitive if d[q.arrows[pth[0]].source] and d[q.arrows[pth[-1]].target]]
        if not usable:
            continue
        pth = usable[int(rng.integers(0, len(usable)))]
        i, j = q.arrows[pth[0]].source, q.arrows[pth[-1]].target
        row, col = int(rng.integers(0, d[j])), int(rng.integers(0, d[i]))
        point = QuiverPoint.random(q, d + r, p, rng)
        cyc = dq.entry_cycle(pth, row, col)
        if len(cyc) > dq.N ** 2:
            continue
        got = trace_invariant(dq, cyc, point, p)
        want = path_entry(point, pth, row, col, p)
        res.expect(got == want, f"triple {checked}: trace {got} vs entry {want}")
        checked += 1
    res.details.append(f"{done} instances, {checked} triples over F_{p}")
    return res


def criterion_10(fixtures=None, p: int = 2, max_cdim: int = 10, budget: int = 200_000) -> CriterionResult:
    res = CriterionResult(10, "stability suite")
    for name in fixtures or default_fixtures():
        ctx = context(name, p)
        R, cat = ctx.rec, ctx.fixture.catalog
        tested = 0
        for U in cat.modules:
            F = R.cext(U)
            res.expect(R.is_bistable(F), f"{name}: c({U.name}) not bistable")
            res.expect(smooth_certificate(F), f"{name}: Ext2(c({U.name}), c({U.name})) != 0")
            extra = [R.ell(U), R.r(U)]
            for X in extra:
                res.expect(R.stability_crosscheck(X), f"{name}: p/q criteria disagree on {X.name}")
            tested += 2
            if F.dim > max_cdim:
                continue
            for dv in itertools.product(*[range(k + 1) for k in F.dims]):
                if sum(dv) in (0, F.dim):
                    continue
                rep = enumerate_submodules(F, dv, p, max_total_dim=F.dim, budget=budget)
                for pt in rep.points:
                    S, _ = submodule(F, pt)
                    Q, _ = quotient(F, pt)
                    res.expect(R.is_stable(S), f"{name}: submodule of c({U.name}) not stable")
                    res.expect(R.is_costable(Q), f"{name}: quotient of c({U.name}) not costable")
                    res.expect(smooth_certificate(S) and smooth_certificate(Q), f"{name}: Ext2 nonzero below c({U.name})")
                    res.expect(R.stability_crosscheck(S) and R.stability_crosscheck(Q), f"{name}: p/q criteria disagree")
                    tested += 2
        for v in ctx.bp.module_vertices:
            S = simple(ctx.bp.B, v)
            res.expect(not R.is_stable(S) and not R.is_costable(S), f"{name}: simple at {v} counted stable")
            res.expect(R.stability_crosscheck(S), f"{name}: p/q criteria disagree on a simple")
        res.details.append(f"{name}: {tested} modules tested")
    return res


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


def run_criterion(k: int, seed: int = DEFAULT_SEED) -> CriterionResult:
    """Evaluate criterion ``k``; library errors become a failed result."""
    t = time.perf_counter()
    try:
        res = CRITERIA[k](seed=seed) if k == 9 else CRITERIA[k]()
    except PqaError as exc:
        res = CriterionResult(k, CRITERIA[k].__name__)
        res.fail(f"{type(exc).__name__}: {exc}")
    res.seconds = time.perf_counter() - t
    return res


def run_criteria(selected=None, seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    unknown = [k for k in (selected or ()) if k not in CRITERIA]
    if unknown:
        raise InputError(f"unknown criteria {unknown}; choose from 1..{len(CRITERIA)}")
    return [run_criterion(k, seed) for k in (selected or sorted(CRITERIA))]
