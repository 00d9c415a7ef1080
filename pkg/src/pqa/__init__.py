"""Projective quotient algebras of representation-finite algebras over F_p.

The package builds ``B = End_H(G)^op`` from a basic algebra ``A`` given by a
quiver with relations, computes the intermediate extension ``c`` of the
idempotent recollement three ways, and checks homological, tilting and
finite-field geometric statements about them.
"""

from .errors import BudgetExceeded, CertificateFailure, InputError, PqaError
from .fixtures import load_fixture
from .quiver import Algebra, Arrow, Path, Quiver
from .modules import Module, ModuleMap

__version__ = "0.1.0"

__all__ = [
    "Algebra",
    "Arrow",
    "BudgetExceeded",
    "CertificateFailure",
    "InputError",
    "Module",
    "ModuleMap",
    "Path",
    "PqaError",
    "Quiver",
    "load_fixture",
]
