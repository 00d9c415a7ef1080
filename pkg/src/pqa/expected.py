"""Reference presentations of ``B`` and reference dimension arrays.

The truncated polynomial rings are described by a formula; the cycle and the
commuting square are read from the text files in ``pqa/golden``.
"""

from __future__ import annotations

from importlib import resources

from .errors import InputError
from .quiver import Algebra
from .textformat import parse_presentation

__all__ = ["truncated_B", "golden_B", "expected_B", "SQUARE_CEXT_ARRAYS", "square_module_dims"]


def truncated_B(n: int, p: int, literal_zero_relation: bool = False) -> Algebra:
    """``B`` for ``K[x]/(x^n)``: vertices ``[0], 1, ..., n-1``.

    Arrows ``p_r: r -> r-1`` and ``j_r: r-1 -> r``; relations
    ``p_r j_r = j_{r-1} p_{r-1}`` (composition of maps, ``j`` applied first)
    for ``1 <= r-1 < n-1`` and the zero relation at vertex ``n-1``, where
    ``p_{n-1}`` is applied first.

    Args:
        n: Nilpotency index, at least 2.
        p: The prime.
        literal_zero_relation: Read the zero relation with the same
            composition order as the others (``j_{n-1}`` first).  This
            gives an algebra of the wrong dimension and exists only to
            document that reading.
    """
    if n < 2:
        raise InputError("the truncated reference needs n >= 2")
    verts = ["[0]"] + [str(r) for r in range(1, n)]
    lines = ["algebra B_expected", f"field {p}", "vertices " + " ".join(verts)]
    for r in range(1, n):
        lines.append(f"arrow p_{r}: {verts[r]} -> {verts[r - 1]}")
        lines.append(f"arrow j_{r}: {verts[r - 1]} -> {verts[r]}")
    for r in range(2, n):
        lines.append(f"relation p_{r}*j_{r} - j_{r - 1}*p_{r - 1}")
    k = n - 1
    lines.append(f"relation p_{k}*j_{k}" if literal_zero_relation else f"relation j_{k}*p_{k}")
    return parse_presentation("\n".join(lines) + "\n")


_GOLDEN_FILES = {"cycle:3:4": "cycle_3_4.txt", "commuting-square": "commuting_square.txt"}


def golden_B(name: str, p: int) -> Algebra:
    """Reference ``B`` read from the golden file of a fixture, over ``F_p``."""
    try:
        fname = _GOLDEN_FILES[name]
    except KeyError:
        raise InputError(f"no golden presentation for {name!r}") from None
    text = resources.files("pqa").joinpath("golden").joinpath(fname).read_text()
    lines = [f"field {p}" if ln.startswith("field ") else ln for ln in text.splitlines()]
    return parse_presentation("\n".join(lines) + "\n")


def expected_B(name: str, p: int) -> Algebra | None:
    """Reference ``B`` for a fixture, or ``None`` if there is none."""
    if name.startswith("trunc:"):
        n = int(name.split(":")[1])
        return truncated_B(n, p) if n >= 2 else None
    if name in _GOLDEN_FILES:
        return golden_B(name, p)
    return None


def square_module_dims(array: str) -> tuple[int, int, int, int]:
    """Dimension vector at vertices 1..4 of a commuting-square array ``"(d2 d1;d4 d3)"``."""
    top, bottom = array.strip("()").split(";")
    d2, d1 = (int(x) for x in top)
    d4, d3 = (int(x) for x in bottom)
    return (d1, d2, d3, d4)


# Dimension arrays of c(M) over the commuting square, keyed by the
# dimension array of M and then by the golden vertex labels.
SQUARE_CEXT_ARRAYS: dict[str, dict[str, int]] = {
    "(10;10)": {
        "[2]": 1, "[S2]": 1, "[(01;01)]": 0, "[4]": 1, "[tau-S4]": 1, "[(11;01)]": 0,
        "[S1]": 0, "[1]": 0, "[S3]": 0, "[(11;00)]": 0, "[3]": 0,
    },
    "(01;01)": {
        "[2]": 0, "[S2]": 0, "[(01;01)]": 0, "[4]": 0, "[tau-S4]": 0, "[(11;01)]": 0,
        "[S1]": 1, "[1]": 1, "[S3]": 0, "[(11;00)]": 1, "[3]": 1,
    },
    "(10;11)": {
        "[2]": 1, "[S2]": 1, "[(01;01)]": 0, "[4]": 1, "[tau-S4]": 1, "[(11;01)]": 0,
        "[S1]": 0, "[1]": 0, "[S3]": 1, "[(11;00)]": 0, "[3]": 1,
    },
    "(11;11)": {
        "[2]": 1, "[S2]": 1, "[(01;01)]": 1, "[4]": 1, "[tau-S4]": 1, "[(11;01)]": 1,
        "[S1]": 1, "[1]": 1, "[S3]": 1, "[(11;00)]": 1, "[3]": 1,
    },
}
