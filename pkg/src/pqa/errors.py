"""Exception hierarchy shared by the library and the command line."""

from __future__ import annotations


class PqaError(Exception):
    """Base class; ``exit_code`` is what the command line returns."""

    exit_code = 1


class InputError(PqaError, ValueError):
    exit_code = 2


class CertificateFailure(PqaError):
    """A mathematical certificate did not hold."""

    exit_code = 1


class BudgetExceeded(PqaError):
    exit_code = 3
