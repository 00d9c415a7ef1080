"""Command line: ``pqa build-b | cext | grass | degeneration | verify-all``.

Every command reads either a built-in fixture (``--fixture trunc:3``) or an
algebra file (``--input algebra.txt``), prints a text or CSV report and
exits with 0 on success, 1 on a failed certificate, 2 on bad input and 3
when a budget is exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .auslander import auslander_algebra
from .decompose import DEFAULT_SEED, brute_force_catalog, user_catalog
from .errors import CertificateFailure, InputError, PqaError
from .expected import expected_B
from .fixtures import Fixture, load_fixture
from .geometry import desingularization_check, enumerate_submodules, hom_order_leq, image_of_e_classes, iso_classes
from .present import find_presentation_isomorphism
from .qcat import build_B
from .recollement import Recollement
from .textformat import format_presentation, parse_document

COMMANDS = ("build-b", "cext", "grass", "degeneration", "verify-all")


@dataclass
class RunConfig:
    """Everything a command needs, resolved from flags and the environment.

    Attributes:
        command: One of :data:`COMMANDS`.
        fixture: Built-in fixture name (mutually exclusive with ``input``).
        input: Path of an algebra definition file.
        p: The prime; files carry their own ``field`` line, which wins.
        q: Field size for point counts; must equal ``p``.
        max_dim: Bound on total dimensions for enumeration and brute-force
            catalogs.
        max_path_length: Longest path kept when reducing relations.
        budget: Search budget for enumeration.
        format: ``"text"`` or ``"csv"``.
        seed: Seed for randomized certificates.
    """

    command: str
    fixture: str | None = None
    input: Path | None = None
    p: int = 2
    q: int | None = None
    module: str | None = None
    dim: tuple[int, ...] | None = None
    max_dim: int = 8
    max_path_length: int = 32
    budget: int = 2_000_000
    format: str = "text"
    out: Path | None = None
    seed: int = DEFAULT_SEED
    criteria: tuple[int, ...] = ()
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.p < 2 or any(self.p % k == 0 for k in range(2, int(self.p ** 0.5) + 1)):
            raise InputError(f"p = {self.p} is not prime")
        if self.q is None:
            self.q = self.p
        if self.q != self.p:
            raise InputError(f"q must equal p (got q = {self.q}, p = {self.p})")
        if self.max_dim <= 0 or self.budget <= 0 or self.max_path_length <= 0:
            raise InputError("budgets must be positive")
        if self.format not in ("text", "csv"):
            raise InputError(f"unknown format {self.format!r}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(";", ",").split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pqa", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"pqa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            src = sp.add_mutually_exclusive_group(required=True)
            src.add_argument("--fixture", help="built-in fixture, e.g. trunc:3, cycle:3:4, commuting-square, dynkin:A_3:rl")
            src.add_argument("--input", type=Path, help="algebra definition file")
        sp.add_argument("--p", type=int, default=2, help="prime for built-in fixtures (default 2)")
        sp.add_argument("--q", type=int, default=None, help="field size for point counts (must equal p)")
        sp.add_argument("--max-dim", type=int, default=8, help="total dimension bound for enumeration")
        sp.add_argument("--max-path-length", type=int, default=32)
        sp.add_argument("--budget", type=int, default=2_000_000)
        sp.add_argument("--format", choices=("text", "csv"), default="text")
        sp.add_argument("--out", type=Path, help="write the report here instead of stdout")
        sp.add_argument("--seed", type=int, default=None, help="overrides PQA_SEED")

    sp = sub.add_parser("build-b", help="construct B with its vertex report")
    common(sp)
    sp = sub.add_parser("cext", help="c(M) by three constructions with certificates")
    common(sp)
    sp.add_argument("--module", required=True, help="catalog member or sum, e.g. A+2*S")
    sp = sub.add_parser("grass", help="F_q-points of Gr(M, d) and the desingularization checks")
    common(sp)
    sp.add_argument("--module", required=True)
    sp.add_argument("--dim", type=_int_list, required=True, help="dimension vector, e.g. 1 or 1,0,1")
    sp = sub.add_parser("degeneration", help="hom-order Hasse data and the image of e")
    common(sp)
    sp.add_argument("--module", required=True)
    sp = sub.add_parser("verify-all", help="run the acceptance criteria over all fixtures")
    common(sp, needs_input=False)
    sp.add_argument("--criteria", type=_int_list, default=(), help="subset, e.g. 1,2,3")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("PQA_SEED")
        try:
            seed = int(env) if env else DEFAULT_SEED
        except ValueError:
            raise InputError(f"PQA_SEED must be an integer, got {env!r}") from None
    return RunConfig(
        command=args.command,
        fixture=getattr(args, "fixture", None),
        input=getattr(args, "input", None),
        p=args.p,
        q=args.q,
        module=getattr(args, "module", None),
        dim=getattr(args, "dim", None),
        max_dim=args.max_dim,
        max_path_length=args.max_path_length,
        budget=args.budget,
        format=args.format,
        out=args.out,
        seed=seed,
        criteria=tuple(getattr(args, "criteria", ()) or ()),
    )


# ----------------------------------------------------------------------
class Report:
    """Text lines or CSV rows, rendered once at the end."""

    def __init__(self, fmt: str, columns: list[str]):
        self.fmt = fmt
        self.columns = columns
        self.lines: list[str] = []
        self.rows: list[list] = []

    def line(self, text: str = ""):
        self.lines.append(text)

    def row(self, *values):
        self.rows.append(list(values))

    def render(self) -> str:
        if self.fmt == "text":
            return "\n".join(self.lines) + "\n"
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        w.writerows(self.rows)
        return buf.getvalue()


def load_input(cfg: RunConfig) -> Fixture:
    """Fixture from ``--fixture`` or from an algebra file."""
    if cfg.fixture:
        return load_fixture(cfg.fixture, cfg.p)
    try:
        text = Path(cfg.input).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {cfg.input}: {exc}") from None
    doc = parse_document(text, max_length=cfg.max_path_length)
    A = doc.algebra
    cat = None
    if doc.modules:
        try:
            cat = user_catalog(A, doc.modules)
        except CertificateFailure:
            cat = None
    if cat is None:
        cat = complete_catalog(A, cfg.max_dim, budget=min(cfg.budget, 200_000))
    return Fixture(Path(cfg.input).stem, A, cat)


def complete_catalog(A, max_dim: int, budget: int):
    """Brute-force catalogs of growing total dimension until one is complete.

    Raises:
        CertificateFailure: if no bound up to ``max_dim`` gives a complete
            catalog.
    """
    last = None
    for bound in range(1, max_dim + 1):
        cat = brute_force_catalog(A, bound, budget=budget)
        try:
            cat.check_complete()
        except CertificateFailure as exc:
            last = exc
            continue
        return cat
    raise CertificateFailure(f"no complete catalog up to total dimension {max_dim}: {last}")


@dataclass
class Loaded:
    fixture: Fixture
    bp: object
    rec: Recollement


def load_all(cfg: RunConfig, with_gamma: bool = False) -> Loaded:
    fx = load_input(cfg)
    bp = build_B(fx.algebra, fx.catalog, projective_label=fx.projective_label, module_label=fx.module_label, arrow_namer=fx.arrow_namer)
    aus = auslander_algebra(fx.catalog) if with_gamma else None
    return Loaded(fx, bp, Recollement(bp, aus))


def _pair(dims, n) -> str:
    return f"({','.join(map(str, dims[:n]))};{','.join(map(str, dims[n:]))})"


# ----------------------------------------------------------------------
def cmd_build_b(cfg: RunConfig) -> tuple[int, Report]:
    ld = load_all(cfg)
    B = ld.bp.B
    rep = Report(cfg.format, ["vertex", "kind", "source"])
    text = format_presentation(B)
    if cfg.out is not None and cfg.format == "text":
        # the presentation goes to the file, the report to stdout
        Path(cfg.out).write_text(text)
        cfg.extra["written"] = True
        rep.line(f"# presentation written to {cfg.out}")
    else:
        rep.line(text.rstrip())
        rep.line()
    rep.line("# vertices")
    for ln in ld.bp.vertex_report().splitlines():
        rep.line("# " + ln)
        rep.row(*ln.split("\t"))
    rep.line(f"# eBe = A verified ({ld.fixture.algebra.n} corner vertices, dim {ld.fixture.algebra.dim})")
    status = 0
    ref = expected_B(cfg.fixture, cfg.p) if cfg.fixture else None
    if ref is not None:
        ok = find_presentation_isomorphism(ref, B) is not None
        rep.line(f"# reference presentation: {'isomorphic' if ok else 'NOT isomorphic'}")
        status = 0 if ok else 1
    return status, rep


def cmd_cext(cfg: RunConfig) -> tuple[int, Report]:
    ld = load_all(cfg, with_gamma=True)
    cat, R = ld.fixture.catalog, ld.rec
    M = cat.parse_sum(cfg.module)
    n = ld.bp.n
    rep = Report(cfg.format, ["vertex", "dim"])
    res = R.intermediate_extension(M)
    cert = R.certify_homological(M)
    F = res.cext
    for v, lab in enumerate(ld.bp.B.quiver.vertices):
        rep.row(lab, F.dims[v])

    def mark(name):
        return "✓" if all(ok for nm, ok, _ in cert.lines if nm.startswith(name)) else "✗"

    agree = "methods agree" if res.agree else "methods DISAGREE"
    rep.line(f"Dim = {_pair(F.dims, n)}, {agree}, pdim≤1 {mark('pdim')} idim≤1 {mark('idim')}")
    nonzero = [f"{lab}={F.dims[v]}" for v, lab in enumerate(ld.bp.B.quiver.vertices) if F.dims[v]]
    rep.line("c(" + (M.name or cfg.module) + ") at " + (", ".join(nonzero) if nonzero else "no vertex (zero module)"))
    if F.dim == 1:
        rep.line(f"c({cfg.module}) is the simple module at {nonzero[0].split('=')[0]}")
    rep.line(f"constructions: coker{''.join(' = ' + k for k in sorted(res.isos))}")
    rep.line(cert.text())
    return (0 if res.agree and cert.ok else 1), rep


def cmd_grass(cfg: RunConfig) -> tuple[int, Report]:
    ld = load_all(cfg)
    cat, R = ld.fixture.catalog, ld.rec
    M = cat.parse_sum(cfg.module)
    if len(cfg.dim) != M.algebra.n:
        raise InputError(f"--dim needs {M.algebra.n} entries")
    if M.dim > cfg.max_dim:
        raise InputError(f"dim M = {M.dim} exceeds --max-dim {cfg.max_dim}")
    gr = enumerate_submodules(M, cfg.dim, cfg.q, max_total_dim=cfg.max_dim, budget=cfg.budget, catalog=cat)
    rep = Report(cfg.format, ["stratum", "points", "dim_pair", "fiber_sizes", "check", "status"])
    checks = [desingularization_check(R, M, cat.parse_sum(lab), cfg.q, budget=cfg.budget) for lab in gr.strata]
    fibers = sorted({size for c in checks for sizes in c.fibers.values() for size in sizes})
    fiber_text = "fibers all singletons" if fibers == [1] else f"fiber sizes {fibers}" if fibers else "no fibers"
    ns = len(gr.strata)
    rep.line(f"{gr.count} point{'s' if gr.count != 1 else ''}, {ns} strat{'um' if ns == 1 else 'a'}, {fiber_text}")
    rep.line(gr.text())
    ok = True
    for lab, c in zip(gr.strata, checks):
        rep.line(c.text())
        ok &= c.ok
        pair = _pair(list(c.dim_pair[0]) + list(c.dim_pair[1]), len(c.dim_pair[0]))
        sizes = " ".join(str(s) for s in sorted({x for v in c.fibers.values() for x in v}))
        for name, (good, _) in c.checks.items():
            rep.row(lab, gr.strata[lab], pair, sizes, name, "PASS" if good else "FAIL")
    return (0 if ok else 1), rep


def _hasse(labels: list[str], leq) -> list[tuple[str, str]]:
    """Covering pairs ``(upper, lower)`` of a partial order."""
    below = {(a, b) for a in labels for b in labels if a != b and leq[b, a]}
    covers = []
    for a, b in below:
        if not any((a, c) in below and (c, b) in below for c in labels):
            covers.append((a, b))
    return sorted(covers)


def cmd_degeneration(cfg: RunConfig) -> tuple[int, Report]:
    ld = load_all(cfg)
    cat, R = ld.fixture.catalog, ld.rec
    M = cat.parse_sum(cfg.module)
    mlabel = cat.label(M)
    classes = [cat.format_multiplicities(m) for m in iso_classes(cat, M.dims)]
    mods = {lab: cat.parse_sum(lab) for lab in classes}
    leq = {(a, b): hom_order_leq(mods[a], mods[b], cat).leq for a in classes for b in classes}
    cM = np.asarray(R.cext(M).dims)
    rep = Report(cfg.format, ["class", "hom_leq_M", "dim_c_leq_dim_cM", "in_image_of_e"])
    image = set(image_of_e_classes(R, cM))
    ok = True
    for lab in classes:
        by_hom = leq[lab, mlabel]
        by_c = bool(np.all(np.asarray(R.cext(mods[lab]).dims) <= cM))
        ok &= by_hom == by_c == (lab in image)
        rep.row(lab, by_hom, by_c, lab in image)
    covers = _hasse(classes, leq)
    chain = None
    if len(covers) == len(classes) - 1:
        order = sorted(classes, key=lambda x: -sum(leq[y, x] for y in classes))
        if all((order[k], order[k + 1]) in covers for k in range(len(order) - 1)):
            chain = order
    n = ld.bp.n
    rep.line(f"{len(classes)} classes with dimension vector {list(M.dims)}")
    if chain:
        rep.line("chain " + " > ".join(chain))
    else:
        for a, b in covers:
            rep.line(f"cover {a} > {b}")
    rep.line(f"Dim c({mlabel}) = {_pair(list(cM), n)}")
    rep.line(f"below {mlabel} in hom order: {', '.join(sorted(x for x in classes if leq[x, mlabel]))}")
    rep.line(f"image of e at Dim c({mlabel}): {', '.join(sorted(image))}")
    rep.line(f"cross-check {'PASS' if ok else 'FAIL'}")
    return (0 if ok else 1), rep


def cmd_verify_all(cfg: RunConfig) -> tuple[int, Report]:
    from .verify import run_criteria

    results = run_criteria(cfg.criteria or None, seed=cfg.seed)
    rep = Report(cfg.format, ["criterion", "status", "seconds", "title", "first_failure"])
    for r in results:
        rep.line(r.line())
        for d in r.details:
            rep.line(f"    {d}")
        rep.row(r.number, "PASS" if r.ok else "FAIL", f"{r.seconds:.2f}", r.title, r.failures[0] if r.failures else "")
    bad = [r for r in results if not r.ok]
    rep.line(f"{len(results) - len(bad)}/{len(results)} criteria pass")
    if bad:
        rep.line(f"first failure: criterion {bad[0].number}: {bad[0].failures[0]}")
    return (1 if bad else 0), rep


HANDLERS = {
    "build-b": cmd_build_b,
    "cext": cmd_cext,
    "grass": cmd_grass,
    "degeneration": cmd_degeneration,
    "verify-all": cmd_verify_all,
}


def run(cfg: RunConfig) -> tuple[int, str]:
    status, rep = HANDLERS[cfg.command](cfg)
    return status, rep.render()


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        status, text = run(cfg)
    except PqaError as exc:
        print(f"pqa: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    if cfg.out is not None and not cfg.extra.get("written"):
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
