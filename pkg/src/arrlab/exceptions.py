"""Exception types shared across the package."""


class ArrangementError(Exception):
    """Base class for errors raised by arrlab."""


class DegenerateInputError(ArrangementError, ValueError):
    """Coincident lines or other input that does not define an arrangement."""


class ReductionError(ArrangementError):
    """The m-reduced decomposition cannot be formed for this arrangement."""


class ConstructionError(ArrangementError, ValueError):
    """Parameters of a combinatorial construction are infeasible."""


class NotApplicableError(ArrangementError):
    """A sufficient test was asked to run outside its hypothesis."""


class BudgetExceeded(ArrangementError):
    """A search gave up before exhausting its space."""

    def __init__(self, message: str, explored: int = 0):
        super().__init__(message)
        self.explored = explored


class ArrangementFileError(ArrangementError, ValueError):
    """Malformed arrangement file; carries a location when one is known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None,
                 path: str | None = None):
        loc = []
        if path:
            loc.append(path)
        if line is not None:
            loc.append(f"line {line}")
            if column is not None:
                loc.append(f"column {column}")
        super().__init__(f"{': '.join([', '.join(loc), message]) if loc else message}")
        self.line = line
        self.column = column
