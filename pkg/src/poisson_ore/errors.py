"""Exception hierarchy shared by every module of the package."""


class AlgebraError(Exception):
    """Base class for all errors raised by poisson_ore."""


class ZeroDivisor(AlgebraError, ZeroDivisionError):
    pass


class RegistryMismatch(AlgebraError):
    pass


class DimMismatch(AlgebraError):
    pass


class InvalidStep(AlgebraError):
    """A Poisson-Ore step whose alpha/delta fail the derivation axioms."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotGraded(AlgebraError):
    pass


class NotIterated(AlgebraError):
    pass


class InvalidParameter(AlgebraError):
    pass


class NonvanishingClassicalPart(AlgebraError):
    pass


class NotPoisson(AlgebraError):
    pass


class NoRationalRoot(AlgebraError):
    """The parameter of a parametric class is not in Q(i).

    ``invariant`` carries the value whose square root is missing; ``verdict``
    optionally carries the classification without the parameter.
    """

    def __init__(self, message, invariant=None, verdict=None):
        super().__init__(message)
        self.invariant = invariant
        self.verdict = verdict


class InvalidWitness(AlgebraError):
    pass


class ParseError(AlgebraError):
    """Syntax or name error in an expression or input file."""

    def __init__(self, message, line=1, column=None, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        super().__init__(str(self))

    def relocate(self, line: int, col_offset: int = 0, source=None) -> "ParseError":
        """Shift a position reported inside a fragment to file coordinates."""
        if self.column is not None and self.line == 1:
            self.column += col_offset
        self.line = line + self.line - 1
        if source is not None:
            self.source = source
        self.args = (str(self),)
        return self

    def __str__(self):
        where = self.source or "<expr>"
        if self.column is None:
            return f"{where}:{self.line}: {self.message}"
        return f"{where}:{self.line}:{self.column}: {self.message}"
