"""Exception hierarchy."""


class HomLRError(Exception):
    pass


class DimensionMismatch(HomLRError, ValueError):
    pass


class SubspaceNotContained(HomLRError, ValueError):
    pass


class EliminationTooLarge(HomLRError, RuntimeError):
    pass


class NotLieEndomorphism(HomLRError, ValueError):
    pass


class AlphaNotInvertible(HomLRError, ValueError):
    pass


class PhiNotInvertible(HomLRError, ValueError):
    pass


class NotLREndomorphism(HomLRError, ValueError):
    pass


class NotRepresentationByDerivations(HomLRError, ValueError):
    pass


class AlgebraMismatch(HomLRError, ValueError):
    pass


class InvalidDegree(HomLRError, ValueError):
    pass


class ImageNotInCochainSpace(HomLRError, AssertionError):
    pass


class NotACochain(HomLRError, ValueError):
    pass


class NotACocycle(HomLRError, ValueError):
    pass


class ActionInvalid(HomLRError, ValueError):
    pass


class NoSection(HomLRError, ValueError):
    pass


class SectionInvalid(HomLRError, ValueError):
    pass


class NotExtensionAutomorphism(HomLRError, ValueError):
    pass


class NotFreeModule(HomLRError, ValueError):
    pass


class AxiomFailure(HomLRError, ValueError):
    pass


class ModuleAxiomFailure(HomLRError, ValueError):
    pass


class NotPhiDerivation(HomLRError, ValueError):
    pass


class NoSolution(HomLRError, AssertionError):
    pass


class PoissonAxiomFailure(HomLRError, ValueError):
    pass


class SpecError(HomLRError):
    """Base class for input-document errors (CLI exit status 2)."""


class ParseError(SpecError):
    def __init__(self, msg, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            msg = "%s (line %d, column %d)" % (msg, line, column)
        super().__init__(msg)


class SchemaError(SpecError):
    pass


class DimensionError(SpecError):
    pass
