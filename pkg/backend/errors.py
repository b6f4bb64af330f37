"""
LieVerify Backend - Errors Module
Exception hierarchy shared by the library modules
"""


class LieVerifyError(Exception):
    """Base class for every error raised by the library"""


class KindMismatchError(LieVerifyError, TypeError):
    """Scalars or matrices of different algebra kinds were combined"""


class DomainError(LieVerifyError, ValueError):
    """A parameter lies outside the supported range"""


class ContractViolation(LieVerifyError):
    """A documented precondition or impossible state was reached"""


class DecompositionError(LieVerifyError):
    """An eigenspace split left a non-semisimple or unexpected remainder"""


class ConstructionError(LieVerifyError):
    """An internal consistency check of a constructor failed"""
