"""Exception hierarchy shared by every module."""


class PPFunError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class InvalidPermutation(PPFunError, ValueError):
    pass


class ClosureExceedsCap(PPFunError):
    pass


class CapExceeded(PPFunError):
    pass


class UnknownName(PPFunError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown name"


class ParseError(PPFunError, ValueError):
    pass


class CatalogueIncomplete(PPFunError):
    pass


class CharDividesOrder(PPFunError, ValueError):
    pass


class VanishingEssentialAlgebra(PPFunError):
    pass


class NotAGenerator(PPFunError, ValueError):
    pass


class NotInGHat(PPFunError, ValueError):
    pass


class WrongPairForW(PPFunError, ValueError):
    pass


class OracleCapExceeded(PPFunError):
    pass


class FieldTableExhausted(PPFunError):
    pass


class CertificateFailure(PPFunError):
    pass


class SingularBrauerTable(PPFunError):
    pass


class NonIntegralCartan(PPFunError):
    pass


class DenominatorDivisibleByP(PPFunError):
    pass


class OracleInconsistency(PPFunError):
    """A cross-check inside the modular representation oracle failed."""
