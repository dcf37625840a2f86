"""Exception types shared across the package."""


class DiagcatError(Exception):
    """Base class for all library errors."""


class OutOfRangeError(DiagcatError):
    def __init__(self, label, m, n):
        self.label = label
        super().__init__(f"label {label} out of range for a ({m},{n}) diagram")


class DuplicateLabelError(DiagcatError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"label {label} occurs in more than one block")


class IncompleteCoverError(DiagcatError):
    def __init__(self, label):
        self.label = label
        super().__init__(f"label {label} is not covered by any block")


class ShapeMismatchError(DiagcatError):
    def __init__(self, cod, dom):
        self.cod = cod
        self.dom = dom
        super().__init__(f"cannot compose: codomain {cod} != domain {dom}")


class NoDiagramImageError(DiagcatError):
    pass


class UnknownSpecError(DiagcatError):
    pass


class BudgetExceededError(DiagcatError):
    pass


class BadGradingError(DiagcatError):
    pass


class DescendFailureError(DiagcatError):
    pass


class NoMatchError(DiagcatError):
    pass


class UnassignedEdgeError(DiagcatError):
    pass


class TermSyntaxError(DiagcatError):
    def __init__(self, message, line, col):
        self.line = line
        self.col = col
        super().__init__(f"{message} (line {line}, column {col})")


class TermTypeError(DiagcatError):
    def __init__(self, message, cod=None, dom=None):
        self.cod = cod
        self.dom = dom
        super().__init__(message)
