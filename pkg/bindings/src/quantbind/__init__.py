"""Run-time kind-of-quantity checking with ordinary Python arithmetic.

Declare the admissible compositions of each kind once, build quantities
with :func:`Q`, and annotate expressions with :meth:`KOQRegistry.KOQ`;
``+ - * / **`` are intercepted so that meaningless additions raise at the
offending line and meaningless compositions raise at the annotation::

    q = KOQRegistry()
    q.KOQRelation("TORQUE", "AV*MOI/TIME")
    moi = q.KOQ("MOI", Q(16000.0, "kg*m^2"))
    av = q.KOQ("AV", Q(1.05, "s^-1"))
    duration = q.KOQ("TIME", Q(180.0, "s"))
    torque = q.KOQ("TORQUE", av * moi / duration)

Incompatibilities are raised as ``TypeError`` carrying the kernel's
message, e.g. ``Type 1 Kind of Quantity error: ROTENERGY vs 'TORQUE'``.

There is one relation store per interpreter session: every
``KOQRegistry()`` sees the same declarations.  Tests can call
:func:`reset_session` or construct ``KOQRegistry(store=...)`` with an
isolated store.
"""

from __future__ import annotations

from pqcheck import (
    KoqDeclarationError, KoqRegistry as _KernelRegistry, PqError, Quantity,
    Type1KoqError, Type1UnitError, Type2KoqError, UnitRegistry,
)

__all__ = ["BoundQuantity", "KOQRegistry", "Q", "reset_session", "units"]

#: shared unit registry used by :func:`Q` (standard angle mode)
units = UnitRegistry.builtin()

_session_store = _KernelRegistry()


def reset_session() -> None:
    """Forget every relation declared through session registries."""
    _session_store.relations.clear()


class BoundQuantity:
    """A kernel quantity with arithmetic that raises ``TypeError`` on
    physical-type violations, the way the stdlib raises on ``1 + "a"``."""

    __slots__ = ("_q",)

    def __init__(self, quantity: Quantity):
        self._q = quantity

    @property
    def quantity(self) -> Quantity:
        return self._q

    @property
    def value(self) -> float:
        return self._q.value

    @property
    def unit(self):
        return self._q.unit

    @property
    def sig(self):
        return self._q.sig

    def __repr__(self) -> str:
        return f"<BoundQuantity {self._q.display()} [{self._q.sig}]>"

    def __str__(self) -> str:
        return self._q.display()

    @staticmethod
    def _lift(other, like: Quantity) -> Quantity | None:
        if isinstance(other, BoundQuantity):
            return other._q
        if isinstance(other, Quantity):
            return other
        if isinstance(other, (int, float)) and not isinstance(other, bool):
            return like.scalar_like(other)
        return None

    def _binary(self, other, op):
        rhs = self._lift(other, self._q)
        if rhs is None:
            return NotImplemented
        return BoundQuantity(_translate(lambda: op(self._q, rhs)))

    def _rbinary(self, other, op):
        lhs = self._lift(other, self._q)
        if lhs is None:
            return NotImplemented
        return BoundQuantity(_translate(lambda: op(lhs, self._q)))

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._rbinary(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._rbinary(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._rbinary(other, lambda a, b: a * b)

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._rbinary(other, lambda a, b: a / b)

    def __pow__(self, n):
        if not isinstance(n, int) or isinstance(n, bool):
            return NotImplemented
        return BoundQuantity(_translate(lambda: self._q ** n))


def _translate(fn):
    try:
        return fn()
    except (Type1KoqError, Type1UnitError, Type2KoqError) as exc:
        raise TypeError(str(exc)) from exc
    except PqError as exc:
        raise TypeError(str(exc)) from exc


def Q(value: float, unit_expr: str = "") -> BoundQuantity:
    """Quantity constructor: ``Q(42.0, "km/hr")``; no unit means scalar."""
    expr = units.parse(unit_expr) if unit_expr else units.dimensionless()
    return BoundQuantity(Quantity(float(value), expr))


class KOQRegistry:
    """The declaration and annotation surface for kind-of-quantity checking.

    All instances share the interpreter session's relation store unless an
    explicit ``store`` is given.
    """

    def __init__(self, store: _KernelRegistry | None = None):
        self._store = store if store is not None else _session_store

    def KOQRelation(self, name: str, rhs: str) -> None:
        """Declare an admissible composition, e.g.
        ``KOQRelation("TORQUE", "AV*MOI/TIME")``.  Redeclaring a name adds
        an alternative; earlier forms stay admissible."""
        try:
            self._store.declare_relation(name, rhs)
        except KoqDeclarationError as exc:
            raise TypeError(str(exc)) from exc

    def KOQ(self, name: str, expr) -> BoundQuantity:
        """Annotate ``expr`` with a kind name, checking its composition.

        ``expr`` may be a :class:`BoundQuantity`, a kernel
        :class:`~pqcheck.Quantity`, or a plain number.  Raises
        ``TypeError`` with the kernel's Type 2 message when the
        expression's signature matches no declared relation for ``name``.
        """
        if isinstance(expr, BoundQuantity):
            q = expr.quantity
        elif isinstance(expr, Quantity):
            q = expr
        elif isinstance(expr, (int, float)) and not isinstance(expr, bool):
            q = Quantity(float(expr), units.dimensionless())
        else:
            raise TypeError(f"cannot annotate {type(expr).__name__!r} "
                            f"with a KOQ name")
        try:
            sig = self._store.tag(name, q.sig)
        except Type2KoqError as exc:
            raise TypeError(str(exc)) from exc
        return BoundQuantity(Quantity(q.value, q.unit, sig))
