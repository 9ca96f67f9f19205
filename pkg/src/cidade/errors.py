"""Exception hierarchy shared by every layer of the engine."""


class CidadeError(Exception):
    """Base class for all engine errors."""


class DivisionByZero(CidadeError, ZeroDivisionError):
    pass


class RingMismatch(CidadeError, ValueError):
    pass


class NotDivisible(CidadeError, ArithmeticError):
    pass


class NotHomogeneous(CidadeError, ValueError):
    pass


class NotInIdeal(CidadeError, ArithmeticError):
    pass


class NotRegularSequence(CidadeError, ValueError):
    pass


class DegreeCapExceeded(CidadeError, RuntimeError):
    def __init__(self, degree, cap):
        super().__init__(f"degree {degree} exceeds the configured cap {cap}")
        self.degree = degree
        self.cap = cap


class IndexOutOfWindow(CidadeError, IndexError):
    pass


class CommutationFailure(CidadeError, AssertionError):
    """A constructed operator failed to commute with the differential."""


class NotAResolution(CidadeError, AssertionError):
    pass


class LESExactnessFailure(CidadeError, AssertionError):
    pass


class InconsistentTables(CidadeError, AssertionError):
    """Homology tables that must agree by construction do not."""


class InhomogeneousSection(CidadeError, ValueError):
    pass


class NotASection(CidadeError, ValueError):
    pass


class ParseError(CidadeError, ValueError):
    def __init__(self, message, line=None, column=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)
        self.line = line
        self.column = column
