"""Random deframings: sizes of Q^inf and the trace identity.

Draws random quivers with a vertex split and a dimension vector, deframes
them, and records arrow counts, the number of primitive paths and the result
of the trace-versus-entry comparison on random points.
"""

from __future__ import annotations

import csv
import sys
import time
from dataclasses import dataclass

import numpy as np

from _config import parse_config
from pqa.decompose import DEFAULT_SEED
from pqa.errors import BudgetExceeded
from pqa.geometry import QuiverPoint, deframe, path_entry, trace_invariant
from pqa.verify import deframe_oracle, random_instance


@dataclass
class DeframeConfig:
    """Randomized deframing experiment."""

    instances: int = 50
    points_per_instance: int = 5
    p: int = 3
    max_paths: int = 20_000
    seed: int = DEFAULT_SEED
    out: str = "-"


def run(cfg: DeframeConfig):
    rng = np.random.default_rng(cfg.seed)
    for k in range(cfg.instances):
        QB, n, d, r = random_instance(rng)
        t = time.perf_counter()
        try:
            dq = deframe(QB, n, d, r, max_paths=cfg.max_paths)
        except BudgetExceeded:
            yield [k, QB.n, n, len(QB.arrows), "", "", "", "", "", "budget"]
            continue
        counts_ok = dq.arrow_counts() == deframe_oracle(QB, n, d, r)
        agree = tried = 0
        for _ in range(cfg.points_per_instance):
            point = QuiverPoint.random(QB, tuple(d) + tuple(r), cfg.p, rng)
            for pth in dq.primitive[:20]:
                i, j = QB.arrows[pth[0]].source, QB.arrows[pth[-1]].target
                if not d[i] or not d[j]:
                    continue
                row, col = int(rng.integers(0, d[j])), int(rng.integers(0, d[i]))
                tried += 1
                agree += trace_invariant(dq, dq.entry_cycle(pth, row, col), point, cfg.p) == path_entry(point, pth, row, col, cfg.p)
        status = "PASS" if counts_ok and agree == tried else "FAIL"
        yield [k, QB.n, n, len(QB.arrows), len(dq.quiver.arrows), dq.N, len(dq.primitive), f"{agree}/{tried}", f"{time.perf_counter() - t:.3f}", status]


def main(argv=None):
    cfg = parse_config(DeframeConfig, argv)
    fh = sys.stdout if cfg.out == "-" else open(cfg.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["instance", "vertices", "n", "arrows", "deframed_arrows", "N", "primitive_paths", "traces_agree", "seconds", "status"])
    failed = 0
    for row in run(cfg):
        w.writerow(row)
        failed += row[-1] == "FAIL"
    if fh is not sys.stdout:
        fh.close()
    return int(failed > 0)


if __name__ == "__main__":
    sys.exit(main())
