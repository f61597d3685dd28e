"""Exception hierarchy shared by all raagpal modules."""


class RaagError(Exception):
    """Base class; `code` is the machine-readable name used in CLI reports."""

    @property
    def code(self):
        return type(self).__name__


class UnknownVertex(RaagError):
    pass


class SizeLimit(RaagError):
    pass


class GraphMismatch(RaagError):
    pass


class InvalidGraph(RaagError):
    pass


class EmptyWord(RaagError):
    pass


class NotReverseInvariant(RaagError):
    pass


class RootSearchBudget(RaagError):
    pass


class IllegalGenerator(RaagError):
    pass


class NoProvenance(RaagError):
    pass


class NotPalindromic(RaagError):
    pass


class NotGraphAutomorphism(RaagError):
    pass


class NotInTheta(RaagError):
    pass


class NotInCentralizer(RaagError):
    pass


class DescentStall(RaagError):
    pass


class AssumptionFailed(RaagError):
    pass


class TorelliBudget(RaagError):
    pass


class FixedSetViolated(RaagError):
    pass


class ParseError(RaagError):
    pass
