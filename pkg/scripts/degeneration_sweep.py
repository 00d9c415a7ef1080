"""Compare the hom order with ``Dim c`` over every pair of iso classes.

For each fixture and each dimension vector of a catalog member, every pair
``(N, M)`` of iso classes with that dimension vector is tested both ways and
the counts written as CSV.  Any disagreement is listed on stderr.
"""

from __future__ import annotations

import csv
import sys
import time
from dataclasses import dataclass

import numpy as np

from _config import parse_config
from pqa.geometry import degeneration_table, image_of_e_classes, iso_classes
from pqa.verify import context


@dataclass
class SweepConfig:
    """Degeneration order against the image of e."""

    fixtures: tuple[str, ...] = ("trunc:2", "trunc:3", "trunc:4", "commuting-square", "dynkin:A_3", "dynkin:A_3:rl", "cycle:3:4")
    p: int = 2
    max_total_dim: int = 8
    out: str = "-"


def sweep(cfg: SweepConfig):
    rows = []
    for name in cfg.fixtures:
        t = time.perf_counter()
        ctx = context(name, cfg.p)
        R, cat = ctx.rec, ctx.fixture.catalog
        dims = sorted({tuple(U.dims) for U in cat.modules if U.dim <= cfg.max_total_dim})
        pairs = related = mismatches = image_mismatches = 0
        for dv in dims:
            for mult in iso_classes(cat, dv):
                M = cat.parse_sum(cat.format_multiplicities(mult))
                table = degeneration_table(R, M)
                pairs += len(table)
                related += sum(by_hom for _, _, by_hom in table)
                bad = [lab for lab, by_c, by_hom in table if by_c != by_hom]
                mismatches += len(bad)
                for lab in bad:
                    print(f"{name}: {lab} vs {cat.label(M)} disagree", file=sys.stderr)
                below = sorted(lab for lab, _, by_hom in table if by_hom)
                image_mismatches += below != sorted(image_of_e_classes(R, np.asarray(R.cext(M).dims)))
        rows.append([name, cfg.p, len(dims), pairs, related, mismatches, image_mismatches, f"{time.perf_counter() - t:.2f}"])
    return rows


def main(argv=None):
    cfg = parse_config(SweepConfig, argv)
    rows = sweep(cfg)
    fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["fixture", "p", "dimension_vectors", "pairs", "hom_related", "mismatches", "image_mismatches", "seconds"])
    w.writerows(rows)
    if fh is not sys.stdout:
        fh.close()
    return int(any(r[5] or r[6] for r in rows))


if __name__ == "__main__":
    sys.exit(main())
