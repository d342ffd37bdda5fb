"""
Exceptions raised by seppoly.

Every error derives from SeppolyError. The intermediate classes decide the CLI exit code:
DocumentError -> 1, ValidationError -> 2, GuardExceededError -> 3.
"""


class SeppolyError(Exception):
    pass


class DocumentError(SeppolyError):
    """Malformed input document."""


class ValidationError(SeppolyError):
    """Input is well formed but violates a structural or semantic invariant."""


class GuardExceededError(SeppolyError):
    """Problem size is above an enumeration or dimension guard."""


# -------------------------
# Partitions
# -------------------------

class OverlapError(ValidationError):
    pass


class CoverError(ValidationError):
    pass


class EmptyBlockError(ValidationError):
    pass


class MismatchedPartySetError(ValidationError):
    pass


class EmptySetError(ValidationError):
    pass


class IndexOutOfRangeError(ValidationError):
    pass


class NotAntichainError(ValidationError):
    pass


class EmptyAntichainError(ValidationError):
    pass


# -------------------------
# Complexes and maps
# -------------------------

class NotSimplicialError(ValidationError):

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnmappedVertexError(ValidationError):
    pass


class ChainMismatchError(ValidationError):
    pass


# -------------------------
# Quantum
# -------------------------

class DimMismatchError(ValidationError):
    pass


class WeightError(ValidationError):
    pass


class EmptyKeepSetError(ValidationError):
    pass


class BadSubsetError(ValidationError):
    pass


class WitnessMismatchError(ValidationError):
    pass


class InconsistentCertificatesError(ValidationError):
    pass


class NotUnitaryError(ValidationError):
    pass


class StateValidationError(ValidationError):
    pass


# -------------------------
# Classification
# -------------------------

class NotThreePartiesError(ValidationError):
    pass


class UnrecognizedAntichainError(ValidationError):
    pass
