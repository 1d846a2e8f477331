"""Exception hierarchy shared by all matinv2 modules."""


class MatInv2Error(Exception):
    """Base class for every error raised by this package."""


class NonPrimeModulusError(MatInv2Error):
    """Requested prime-field modulus is not prime."""


class UnsupportedExtensionDegreeError(MatInv2Error):
    """Requested GF(2^k) degree has no entry in the shipped modulus table."""


class FieldMismatchError(MatInv2Error):
    """Operands belong to different fields."""


class SingularConjugatorError(MatInv2Error):
    """Conjugation requested with a non-invertible matrix."""


class IndexOutOfRangeError(MatInv2Error):
    """Word or descriptor index outside [1, d]."""


class PreconditionViolatedError(MatInv2Error):
    """Input does not satisfy a documented operation precondition."""


class DimensionMismatchError(MatInv2Error):
    """Tuples have different lengths d."""


class DescriptorNotInSetError(MatInv2Error):
    """Witness requested for a descriptor outside the catalog."""


class CatalogTooLargeError(MatInv2Error):
    """Characteristic-2 generating catalog requested beyond the supported d."""


class RingMismatchError(MatInv2Error):
    """Polynomial operands have different coefficient rings."""


class MalformedChainError(MatInv2Error):
    """Substitution chain is circular or touches a declared unit."""


class IllegalDenominatorError(MatInv2Error):
    """Denominator is not a product of the declared units."""


class MissingParameterError(MatInv2Error):
    """Free variable of a case has no value in the supplied parameters."""


class UnitVanishesError(MatInv2Error):
    """A declared unit evaluates to zero for the supplied parameters."""


class ParseError(MatInv2Error):
    """Malformed scalar, descriptor, case file, or document."""
