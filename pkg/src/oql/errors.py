"""Exception hierarchy.

Every structural failure carries a ``witness``: the first tuple of
element/object names, in canonical index order, exhibiting the violation.
"""

from __future__ import annotations


class OQLError(Exception):
    """Base class for all errors raised by this package."""

    def __init__(self, message: str = "", witness: tuple | None = None):
        self.witness = tuple(witness) if witness is not None else None
        if witness is not None:
            message = f"{message} (witness: {', '.join(map(str, witness))})"
        super().__init__(message)


class LoadError(OQLError):
    """Malformed input file; the message names the offending position."""


class BadSize(OQLError):
    pass


class SizeBound(OQLError):
    """An enumeration exceeded its candidate budget."""

    def __init__(self, what: str, limit: int):
        self.what = what
        self.limit = limit
        super().__init__(f"budget of {limit} candidates exceeded while enumerating {what}")


# quantale validation
class LatticeInvalid(OQLError):
    pass


class NotMonotone(OQLError):
    pass


class NotAssociative(OQLError):
    pass


class NotCommutative(OQLError):
    pass


class UnitLawFails(OQLError):
    pass


class JoinDistributionFails(OQLError):
    pass


class NotIntegral(OQLError):
    pass


class NotGirard(OQLError):
    pass


# categories and lattices
class ReflexivityFails(OQLError):
    pass


class TransitivityFails(OQLError):
    pass


class NotAFunctor(OQLError):
    pass


class NotAPresheaf(OQLError):
    pass


class NoAdjoint(OQLError):
    pass


class NotAntisymmetric(OQLError):
    pass


class UnderlyingNotComplete(OQLError):
    pass


class NotTensored(OQLError):
    pass


class NotCotensored(OQLError):
    pass


class ModuleLawFails(OQLError):
    pass


class NotCD(OQLError):
    pass


class NotAnOperator(OQLError):
    """Raised when a map fails the closure/kernel operator axioms."""


class InternalInconsistency(OQLError):
    """Two independent computation routes disagreed on a theorem instance."""
