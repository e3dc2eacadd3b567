# ============================================================================
# utils/errors.py - Exception hierarchy and CLI exit codes
# ============================================================================


class AlgebraError(Exception):
    """Base class for every error raised by the library"""
    exit_code = 4


class InvalidInput(AlgebraError):
    """Input rejected before any computation"""
    exit_code = 2


class NotPrime(InvalidInput):
    pass


class NotIrreducible(InvalidInput):
    pass


class NonSplitModulus(InvalidInput):
    """The modulus has an irreducible factor of degree > 1"""
    pass


class NotAUnit(InvalidInput):
    pass


class LiteralError(InvalidInput):
    """A field element, polynomial or modulus literal could not be parsed"""
    pass


class SizeLimit(AlgebraError):
    """A configured size bound would be exceeded"""
    exit_code = 3


class InternalInvariant(AlgebraError):
    """A mathematical invariant failed; always a bug"""
    exit_code = 4


class DTSquared(AlgebraError):
    pass


class NotReducible(AlgebraError):
    pass


class NegativePower(AlgebraError):
    """Window exchange would need a negative power of a prime"""
    pass
