"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Invalid parameters or inputs that violate a precondition."""


class FitError(RuntimeError):
    """A distribution fit failed (degenerate data or non-convergence)."""


class ParseError(ValidationError):
    """Malformed corpus input; carries file position information."""

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}"
            if line is not None:
                where += f":{line}"
            where = f" ({where})"
        super().__init__(f"{message}{where}")
