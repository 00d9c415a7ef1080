"""Acceptance criteria 1 to 10, one test each.

Each test prints a ``criterion k PASS|FAIL`` line (also collected into the
pytest summary).  Run ``python3 tests/test_acceptance.py`` for the lines alone.

Pinned tolerances: criterion 1 builds ``B`` for ``trunc:2..4`` within 10 s
each, criterion 2 builds the cycle within 60 s, criterion 8 works over
``F_2`` with ``dim M <= 6``, criterion 9 checks 20 random deframings and
100 random point/path/entry triples over ``F_3`` with exact equality, and
criterion 10 caps ``dim c(M)`` at 10 and the enumeration budget at 200000
nodes.  Every other criterion tolerates zero failures.
"""

import sys

import pytest

from pqa.verify import CRITERIA, DEFAULT_SEED, run_criterion

try:
    from conftest import record_acceptance
except ImportError:  # pragma: no cover - running outside pytest
    def record_acceptance(line):
        pass


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    res = run_criterion(k, seed=DEFAULT_SEED)
    line = res.line()
    print(line)
    record_acceptance(line)
    assert res.ok, "\n".join(res.failures[:10])


if __name__ == "__main__":
    bad = 0
    for k in sorted(CRITERIA):
        res = run_criterion(k)
        print(res.line(), flush=True)
        bad += not res.ok
    sys.exit(1 if bad else 0)
