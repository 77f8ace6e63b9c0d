"""Exception hierarchy.

Mathematical negatives that are *answers* (a failing identity, a certificate
that does not verify) are returned as values by the checking functions.  The
classes below are for broken preconditions and for constructions that cannot
be completed.
"""


class LeibnizError(Exception):
    """Base class for every error raised by this package."""


class FieldMismatch(LeibnizError):
    pass


class AmbientMismatch(LeibnizError):
    pass


class DimensionMismatch(LeibnizError):
    pass


class NotContained(LeibnizError):
    pass


class NotAnIdeal(LeibnizError):
    pass


class NotLeibniz(LeibnizError):
    """Raised by ``LeibnizAlgebra.validated`` when the identity fails."""

    def __init__(self, counterexample):
        self.counterexample = counterexample
        super().__init__(str(counterexample))


class UnvalidatedAlgebra(LeibnizError):
    pass


class NotAnIsomorphism(LeibnizError):
    pass


class StemReductionIncomplete(LeibnizError):
    pass


class FactorIdentityViolated(LeibnizError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class LeibnizCheckFailed(LeibnizError):
    def __init__(self, counterexample):
        self.counterexample = counterexample
        super().__init__(str(counterexample))


class CertificateInvalid(LeibnizError):
    def __init__(self, violation):
        self.violation = violation
        super().__init__(str(violation))


class NotStem(LeibnizError):
    pass


class CenterNotPreserved(LeibnizError):
    pass


class VerificationFailed(LeibnizError):
    pass


class ParseError(LeibnizError):
    def __init__(self, message, line=None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class SingularMatrix(LeibnizError):
    pass
