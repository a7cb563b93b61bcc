"""Exception and warning types shared across the kernel."""

from __future__ import annotations


class PqError(Exception):
    """Base class for every error raised by this package."""


class ExponentOverflowError(PqError):
    """A dimension exponent left the representable range [-32, 32]."""


class ArityMismatchError(PqError):
    """Vectors from a standard and a strict-angle configuration were mixed."""


class RegistryError(PqError):
    """A unit-definitions file could not be loaded.

    ``line`` is the 1-based line number of the offending definition, or
    None for whole-file problems.
    """

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class UnitParseError(PqError):
    """A unit expression string could not be parsed.

    ``position`` is the 0-based character offset of the offending token
    within the parsed string.
    """

    def __init__(self, message: str, position: int = 0):
        super().__init__(message)
        self.position = position


class DimensionMismatchError(PqError):
    """Conversion between unit expressions of different dimensions."""

    def __init__(self, message: str, left_unit: str = "", right_unit: str = "",
                 left_dim: str = "", right_dim: str = ""):
        super().__init__(message)
        self.left_unit = left_unit
        self.right_unit = right_unit
        self.left_dim = left_dim
        self.right_dim = right_dim


class Type1UnitError(DimensionMismatchError):
    """Addition or subtraction of quantities with incompatible dimensions."""


class QuantityError(PqError):
    """Invalid quantity arithmetic: non-finite value, division by zero,
    or zero raised to a negative power."""


class KoqDeclarationError(PqError):
    """A kind-of-quantity relation declaration was malformed or degenerate."""


class Type1KoqError(PqError):
    """Addition or subtraction of quantities of different kinds."""

    def __init__(self, left: str, right: str):
        super().__init__(f"Type 1 Kind of Quantity error: {left} vs '{right}'")
        self.left = left
        self.right = right


class Type2KoqError(PqError):
    """A kind tag that does not match any declared relation for the name."""

    def __init__(self, name: str, actual: str, admissible: list[str]):
        super().__init__(
            f"Type 2 Kind of Quantity error: '{name} = {admissible!r}'")
        self.name = name
        self.actual = actual
        self.admissible = admissible


class UntaggedOperandWarning(UserWarning):
    """Addition of a kind-tagged quantity and an untagged one."""
