"""Line-oriented text format for algebras and modules.

Example::

    # the commuting square
    algebra square
    field 3
    vertices 1 2 3 4
    arrow a: 1 -> 2
    arrow b: 1 -> 3
    arrow c: 2 -> 4
    arrow d: 3 -> 4
    relation c*a = d*b

    module P2 dim 2=1,4=1
    matrix c [[1]]

Paths are written right to left: ``c*a`` applies ``a`` first.  ``x^3`` is
shorthand for ``x*x*x``.  A relation is a signed sum of terms
``[coefficient] path``; ``lhs = rhs`` stands for ``lhs - (rhs)``.
Coefficients are integers reduced modulo the field characteristic.
Matrices are nested lists of rows; arrows without a ``matrix`` line act
as zero.  Blank lines and everything after ``#`` are ignored.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from .quiver import Algebra, Arrow, Path, PresentationError, Quiver, trivial
from .modules import Module, ModuleError

__all__ = [
    "Document",
    "parse_document",
    "parse_presentation",
    "parse_path",
    "parse_relation",
    "format_presentation",
    "format_module",
    "format_document",
]

_DIM_ITEM = re.compile(r"\s*,?\s*(.+?)=(\d+)(?=\s*,|\s*$)")


@dataclass
class Document:
    """A parsed file: one algebra plus any module literals that follow it."""

    algebra: Algebra
    modules: list[Module] = field(default_factory=list)

    def module(self, name: str) -> Module:
        for m in self.modules:
            if m.name == name:
                return m
        raise ModuleError(f"no module named {name!r} in document")


def _err(lineno: int, msg: str) -> PresentationError:
    return PresentationError(f"line {lineno}: {msg}")


def parse_path(text: str, quiver: Quiver) -> Path:
    """Parse ``c*b*a`` (or ``e_<label>``) into a :class:`Path`."""
    text = text.strip()
    if text.startswith("e_") and text[2:] in quiver.vertices and text not in {a.name for a in quiver.arrows}:
        return trivial(quiver.vertex_index(text[2:]))
    names: list[str] = []
    for tok in text.split("*"):
        tok = tok.strip()
        power = 1
        if "^" in tok:
            tok, exp = tok.split("^", 1)
            power = int(exp)
        names.extend([tok] * power)
    arrows = [quiver.arrow_index(nm) for nm in reversed(names)]
    for a, b in zip(arrows, arrows[1:]):
        if quiver.arrows[a].target != quiver.arrows[b].source:
            raise PresentationError(f"path {text!r} does not compose")
    first, last = quiver.arrows[arrows[0]], quiver.arrows[arrows[-1]]
    return Path(first.source, last.target, tuple(arrows))


def _split_terms(expr: str) -> list[tuple[int, str]]:
    terms = []
    sign = 1
    buf = ""
    for ch in expr:
        if ch in "+-":
            if buf.strip():
                terms.append((sign, buf.strip()))
            elif ch == "-":
                sign = -sign
                continue
            sign = 1 if ch == "+" else -1
            buf = ""
        else:
            buf += ch
    if buf.strip():
        terms.append((sign, buf.strip()))
    return terms


def parse_relation(text: str, quiver: Quiver) -> dict[Path, int]:
    """Parse a relation into a mapping ``path -> coefficient``."""
    sides = text.split("=")
    if len(sides) > 2:
        raise PresentationError(f"relation {text!r} has more than one '='")
    out: dict[Path, int] = {}
    for side_sign, side in zip((1, -1), sides):
        for sign, term in _split_terms(side):
            coeff = 1
            factors = [f.strip() for f in re.split(r"\s+|\*", term) if f.strip()]
            while factors and re.fullmatch(r"\d+", factors[0]):
                coeff *= int(factors.pop(0))
            if not factors:
                raise PresentationError(f"term {term!r} has no path")
            q = parse_path("*".join(factors), quiver)
            out[q] = out.get(q, 0) + side_sign * sign * coeff
    return out


def _parse_dims(text: str, quiver: Quiver, lineno: int) -> list[int]:
    text = text.strip()
    dims = [0] * quiver.n
    if "=" not in text:
        vals = [int(x) for x in re.split(r"[,\s]+", text) if x]
        if len(vals) != quiver.n:
            raise _err(lineno, "dimension list has the wrong length")
        return vals
    pos = 0
    for m in _DIM_ITEM.finditer(text):
        if m.start() != pos:
            break
        label = m.group(1).strip()
        if label not in quiver.vertices:
            raise _err(lineno, f"unknown vertex {label!r}")
        dims[quiver.vertex_index(label)] = int(m.group(2))
        pos = m.end()
    if text[pos:].strip(" ,"):
        raise _err(lineno, f"cannot read dimension vector {text!r}")
    return dims


def parse_document(text: str, max_length: int = 32) -> Document:
    """Parse an algebra definition followed by optional module literals."""
    name, p = "A", None
    vertices: list[str] = []
    arrows: list[Arrow] = []
    rel_lines: list[tuple[int, str]] = []
    mod_blocks: list[dict] = []
    algebra: Algebra | None = None

    def finish_algebra(lineno: int) -> Algebra:
        if p is None:
            raise _err(lineno, "missing 'field' line")
        if not vertices:
            raise _err(lineno, "missing 'vertices' line")
        try:
            q = Quiver(tuple(vertices), tuple(arrows))
        except (PresentationError, ValueError) as exc:
            raise _err(lineno, str(exc)) from exc
        rels = []
        for ln, body in rel_lines:
            try:
                rels.append(parse_relation(body, q))
            except (PresentationError, KeyError, ValueError) as exc:
                raise _err(ln, str(exc)) from exc
        return Algebra(q, rels, p, name=name, max_length=max_length)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("algebra", "field", "vertices", "arrow", "relation") and algebra is not None:
            raise _err(lineno, f"'{key}' after the first module literal")
        if key == "algebra":
            name = rest or "A"
        elif key == "field":
            try:
                p = int(rest)
            except ValueError:
                raise _err(lineno, f"bad field characteristic {rest!r}") from None
        elif key == "vertices":
            vertices = rest.split()
        elif key == "arrow":
            m = re.fullmatch(r"(\S+?)\s*:\s*(\S+)\s*->\s*(\S+)", rest)
            if not m or not vertices:
                raise _err(lineno, "expected 'arrow <name>: <src> -> <tgt>' after 'vertices'")
            nm, s, t = m.groups()
            if s not in vertices or t not in vertices:
                raise _err(lineno, f"arrow {nm} uses an unknown vertex")
            arrows.append(Arrow(nm, vertices.index(s), vertices.index(t)))
        elif key == "relation":
            rel_lines.append((lineno, rest))
        elif key == "module":
            if algebra is None:
                algebra = finish_algebra(lineno)
            m = re.fullmatch(r"(\S+)\s+dim\s+(.*)", rest)
            if not m:
                raise _err(lineno, "expected 'module <name> dim <...>'")
            dims = _parse_dims(m.group(2), algebra.quiver, lineno)
            mod_blocks.append({"name": m.group(1), "dims": dims, "mats": {}, "line": lineno})
        elif key == "matrix":
            if not mod_blocks:
                raise _err(lineno, "'matrix' outside a module block")
            m = re.fullmatch(r"(\S+)\s+(.*)", rest)
            if not m:
                raise _err(lineno, "expected 'matrix <arrow> [[...]]'")
            try:
                rows = json.loads(m.group(2))
            except json.JSONDecodeError as exc:
                raise _err(lineno, f"bad matrix literal: {exc.msg}") from None
            mod_blocks[-1]["mats"][m.group(1)] = (lineno, rows)
        else:
            raise _err(lineno, f"unknown keyword {key!r}")
    if algebra is None:
        algebra = finish_algebra(len(text.splitlines()))
    modules = []
    q = algebra.quiver
    for blk in mod_blocks:
        mats: list = [None] * len(q.arrows)
        for nm, (ln, rows) in blk["mats"].items():
            try:
                k = q.arrow_index(nm)
            except (KeyError, PresentationError):
                raise _err(ln, f"unknown arrow {nm!r}") from None
            mats[k] = np.array(rows, dtype=np.int64)
        try:
            modules.append(Module(algebra, blk["dims"], mats, name=blk["name"]))
        except ModuleError as exc:
            raise _err(blk["line"], str(exc)) from exc
    return Document(algebra, modules)


def parse_presentation(text: str, max_length: int = 32) -> Algebra:
    """Parse an algebra definition (module literals, if any, are ignored)."""
    return parse_document(text, max_length=max_length).algebra


def _matrix_text(m: np.ndarray) -> str:
    return json.dumps([[int(x) for x in row] for row in m]).replace(" ", "")


def format_presentation(A: Algebra) -> str:
    """Emit ``A`` in the text format; :func:`parse_presentation` reads it back."""
    q = A.quiver
    lines = [f"algebra {A.name}", f"field {A.p}", "vertices " + " ".join(q.vertices)]
    for a in q.arrows:
        lines.append(f"arrow {a.name}: {q.vertices[a.source]} -> {q.vertices[a.target]}")
    for rel in A.relations:
        lines.append("relation " + A.relation_text(rel))
    return "\n".join(lines) + "\n"


def format_module(M: Module) -> str:
    """Canonical dump: dimension vector and the nonzero arrow matrices."""
    q = M.algebra.quiver
    dims = ",".join(f"{q.vertices[v]}={d}" for v, d in enumerate(M.dims) if d)
    lines = [f"module {M.name or 'M'} dim {dims or ','.join(f'{v}=0' for v in q.vertices[:1])}"]
    for a, m in zip(q.arrows, M.mats):
        if m.size and np.any(m):
            lines.append(f"matrix {a.name} {_matrix_text(m)}")
    return "\n".join(lines) + "\n"


def format_document(A: Algebra, modules=()) -> str:
    parts = [format_presentation(A)]
    parts.extend(format_module(M) for M in modules)
    return "\n".join(parts)
