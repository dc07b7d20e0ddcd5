"""Exception types shared across the package."""


class CohodepthError(Exception):
    """Base class for all package-specific errors."""


class AmbientMismatchError(CohodepthError):
    """Operands live over different rings or presentations."""


class PolyParseError(CohodepthError, ValueError):
    """Syntax error in a polynomial expression.

    Carries the 0-based offset of the offending character in ``pos``.
    """

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class DegreeCapExceeded(CohodepthError):
    """A Groebner computation exceeded the configured degree cap.

    Raised instead of returning a (possibly wrong) truncated basis.
    """


class InternalCheckError(CohodepthError):
    """Two independent computations of the same invariant disagree.

    This is a bug trap, never a data diagnosis.
    """


class GroupFileError(CohodepthError, ValueError):
    """Malformed group file (cycle notation, degree header, ...)."""


class PackageError(CohodepthError, ValueError):
    """Malformed or inconsistent cohomology package file."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
