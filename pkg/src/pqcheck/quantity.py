"""Arithmetic on (magnitude, unit, kind-signature) triples.

Addition auto-converts the right operand into the left operand's unit, so
``10.5 cm + 3.3 ft`` stays in centimetres.  Unit checks always run before
kind-of-quantity checks: a dimension error on a node suppresses any KOQ
diagnostic for the same node.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .dimension import DimVector, dim_eq, dim_mul, dim_pow
from .errors import QuantityError, Type1UnitError
from .koq import KoqSignature, check_add, combine_mul, sig_pow
from .units import UnitExpr, conversion_factor


@dataclass(frozen=True, slots=True)
class Quantity:
    """Immutable finite magnitude with a unit and an optional kind signature.

    A dimensionless quantity with an empty display behaves as a pure
    scalar; the untagged signature is the empty one.
    """

    value: float
    unit: UnitExpr
    sig: KoqSignature = field(default_factory=KoqSignature.empty)

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise QuantityError(
                f"quantity value must be finite, got {self.value!r}")

    @property
    def dimension(self) -> DimVector:
        return self.unit.dimension

    def scalar_like(self, value: float) -> Quantity:
        """Dimensionless untagged quantity in this quantity's configuration."""
        return Quantity(float(value),
                        UnitExpr(DimVector.zero(self.dimension.arity), 1.0, ()))

    def display(self) -> str:
        """``<value> <unit-display>`` with shortest round-trip value text."""
        unit_text = self.unit.display_str()
        return f"{self.value!r} {unit_text}" if unit_text else repr(self.value)

    def __str__(self) -> str:
        return self.display()

    # Operator sugar over the q_* functions; plain numbers lift to scalars.

    def _coerce(self, other) -> Quantity | None:
        if isinstance(other, Quantity):
            return other
        if isinstance(other, (int, float)):
            return self.scalar_like(other)
        return None

    def __add__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else q_add(self, rhs, +1)

    def __radd__(self, other):
        lhs = self._coerce(other)
        return NotImplemented if lhs is None else q_add(lhs, self, +1)

    def __sub__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else q_add(self, rhs, -1)

    def __rsub__(self, other):
        lhs = self._coerce(other)
        return NotImplemented if lhs is None else q_add(lhs, self, -1)

    def __mul__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else q_mul(self, rhs, "*")

    def __rmul__(self, other):
        lhs = self._coerce(other)
        return NotImplemented if lhs is None else q_mul(lhs, self, "*")

    def __truediv__(self, other):
        rhs = self._coerce(other)
        return NotImplemented if rhs is None else q_mul(self, rhs, "/")

    def __rtruediv__(self, other):
        lhs = self._coerce(other)
        return NotImplemented if lhs is None else q_mul(lhs, self, "/")

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return q_pow(self, n)


def q_add(a: Quantity, b: Quantity, sign: int = +1) -> Quantity:
    """Add (sign=+1) or subtract (sign=-1) with auto-conversion to a's unit.

    Raises:
        Type1UnitError: operands of different dimensions, carrying both
            unit displays and both named dimension displays.
        Type1KoqError: unit-compatible operands of different kinds.
    """
    if not dim_eq(a.dimension, b.dimension):
        raise Type1UnitError(
            f"cannot add '{a.unit}' ({a.dimension.named()}) and "
            f"'{b.unit}' ({b.dimension.named()})",
            left_unit=str(a.unit), right_unit=str(b.unit),
            left_dim=a.dimension.named(), right_dim=b.dimension.named())
    sig = check_add(a.sig, b.sig)
    value = a.value + sign * b.value * conversion_factor(b.unit, a.unit)
    return Quantity(value, a.unit, sig)


def q_mul(a: Quantity, b: Quantity, op: str = "*") -> Quantity:
    """Multiply or divide; unit displays concatenate without simplification."""
    if op not in ("*", "/"):
        raise ValueError(f"op must be '*' or '/', got {op!r}")
    if op == "/":
        if b.value == 0:
            raise QuantityError("division by a zero-valued quantity")
        value = a.value / b.value
        exp_sign = -1
    else:
        value = a.value * b.value
        exp_sign = 1
    dim = dim_mul(a.dimension, dim_pow(b.dimension, exp_sign))
    factor = a.unit.factor * b.unit.factor ** exp_sign
    display = a.unit.display + tuple(
        (name, exp_sign * e) for name, e in b.unit.display)
    return Quantity(value, UnitExpr(dim, factor, display),
                    combine_mul(a.sig, b.sig, op))


def q_pow(a: Quantity, n: int) -> Quantity:
    """Integer power; n = 0 yields a dimensionless untagged 1."""
    if a.value == 0 and n < 0:
        raise QuantityError("zero raised to a negative power")
    dim = dim_pow(a.dimension, n)
    if n == 0:
        return Quantity(1.0, UnitExpr(dim, 1.0, ()), KoqSignature.empty())
    display = tuple((name, e * n) for name, e in a.unit.display)
    try:
        value = a.value ** n
    except OverflowError:
        raise QuantityError(
            f"overflow raising {a.value!r} to the power {n}") from None
    return Quantity(value, UnitExpr(dim, a.unit.factor ** n, display),
                    sig_pow(a.sig, n))


def q_convert(a: Quantity, target: UnitExpr) -> Quantity:
    """Express ``a`` in ``target`` units; the kind signature never changes.

    Raises:
        DimensionMismatchError: incompatible target dimension.
    """
    return Quantity(a.value * conversion_factor(a.unit, target), target, a.sig)
