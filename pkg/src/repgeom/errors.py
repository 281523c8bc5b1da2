"""Exception hierarchy.

Every error carries a stable ``code`` so the command line can report it
without depending on message wording.
"""


class WorkbenchError(Exception):
    code = "error"


class FieldMismatch(WorkbenchError, ValueError):
    code = "field-mismatch"


class ParseError(WorkbenchError, ValueError):
    code = "syntax"

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class IndexOutOfRange(WorkbenchError, ValueError):
    code = "index-out-of-range"


class BudgetExceeded(WorkbenchError, RuntimeError):
    code = "budget-exceeded"


class GroupTooLarge(BudgetExceeded):
    code = "group-too-large"


class IllDefinedAction(WorkbenchError, ValueError):
    code = "ill-defined-action"


class SingularMatrix(WorkbenchError, ValueError):
    code = "singular-matrix"


class InvalidRepresentation(WorkbenchError, ValueError):
    code = "invalid-representation"


class NotRightIdeal(WorkbenchError, ValueError):
    code = "not-right-ideal"


class NotTwoSided(WorkbenchError, ValueError):
    code = "not-two-sided"


class NotNormal(WorkbenchError, ValueError):
    code = "not-normal"


class NotInKernel(WorkbenchError, ValueError):
    code = "not-in-kernel"


class NotEpimorphism(WorkbenchError, ValueError):
    code = "not-epimorphism"


class InvalidFilter(WorkbenchError, ValueError):
    code = "invalid-filter"
