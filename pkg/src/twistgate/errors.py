"""Exception types shared across the package.

Everything raised on purpose derives from TwistgateError, so callers (and the
CLI exit-code mapping) can treat "the input is outside the supported desk
scale" uniformly.
"""


class TwistgateError(Exception):
    """Base class for all library errors."""


class CompositeResidueError(TwistgateError):
    """Trial division left a cofactor above 10^12 that we cannot certify prime."""


class EvenModulusError(TwistgateError):
    """Jacobi symbol requested for an even modulus."""


class ZeroInputError(TwistgateError):
    """Valuation (or squarefree part) of zero requested."""


class SingularCurveError(TwistgateError):
    """Weierstrass equation has discriminant zero."""


class NotSquarefreeError(TwistgateError):
    """Twist parameter must be a nonzero squarefree integer."""


class UnsupportedPrimeError(TwistgateError):
    """Operation not implemented at this prime."""


class PrimeTooLargeError(TwistgateError):
    """Point counting requested beyond the enumeration bound."""


class NonMinimalModelError(TwistgateError):
    """Model is visibly non-minimal at a prime where we cannot minimalize."""


class UnsupportedReductionError(TwistgateError):
    """Conductor exponent not computable for this reduction type and prime."""


class UnsupportedPlaceError(TwistgateError):
    """Local root number not covered at this place."""


class HypothesisViolationError(TwistgateError):
    """A precondition of the twist root-number formula failed."""


class BadAuxPrimeError(TwistgateError):
    """Auxiliary prime for the surjectivity check must be a good prime."""


class NotOnCurveError(TwistgateError):
    """Point does not satisfy its curve equation."""


class NonCommutingActionError(TwistgateError):
    """Generator matrices of a signed module must commute."""


class NonInvolutiveActionError(TwistgateError):
    """Generator matrices of a signed module must square to the identity."""


class TermBudgetError(TwistgateError):
    """Requested series length exceeds the coefficient budget."""


class CurveTableError(TwistgateError):
    """Curve table file is malformed or fails validation."""
