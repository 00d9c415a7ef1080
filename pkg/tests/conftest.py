import os

import hypothesis
import numpy as np
import pytest

from pqa.verify import context

np.seterr(all="raise")

hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.register_profile("ci", max_examples=60, deadline=None, derandomize=True)
hypothesis.settings.register_profile("debugger", report_multiple_bugs=False, deadline=None, max_examples=5)
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


@pytest.fixture(scope="session")
def ctx():
    """Cached fixture contexts: ``ctx("trunc:2", 2)``."""
    return context


@pytest.fixture(scope="session")
def dual(ctx):
    """``K[x]/(x^2)`` over ``F_2`` with ``B``, ``Gamma`` and the recollement."""
    return ctx("trunc:2", 2)


_ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str):
    _ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
