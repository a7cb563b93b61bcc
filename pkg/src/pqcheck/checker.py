"""Evaluation and physical-type checking of parsed quantity scripts.

Every ``let`` binding is evaluated with the quantity kernel: each
addition is unit-checked (E101) then kind-checked (E201), the binding's
declared ``[unit]`` is checked against the dimension of the right-hand
side (E102, the assignment error a dynamic interpreter cannot see), and
the declared KOQ name is checked against the expression's signature
(E202).  Checking continues past errors: the offending binding takes its
declared type so downstream statements are still checked.

Layering rule: a unit-level error on a node suppresses kind-level checks
for the same node, so every E2xx in a report sits on unit-compatible
operands.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .diagnostics import Diagnostic, DiagnosticReport, ERROR, WARNING
from .dimension import dim_eq
from .errors import (
    KoqDeclarationError, PqError, QuantityError, Type1KoqError,
    Type1UnitError, Type2KoqError, UnitParseError, UntaggedOperandWarning,
)
from .koq import KoqRegistry, KoqSignature
from .quantity import Quantity, q_add, q_convert, q_mul, q_pow
from .syntax import (
    BinOp, LetStmt, NameRef, NumberLit, PowOp, RelationStmt, Script, Span,
    parse_script,
)
from .units import UnitExpr, UnitRegistry


@dataclass(frozen=True, slots=True)
class Binding:
    """Final value of an identifier; ``known`` is False when the numeric
    value is a placeholder left behind by an earlier error."""

    quantity: Quantity
    known: bool

    @property
    def value(self) -> float:
        return self.quantity.value

    @property
    def unit(self) -> UnitExpr:
        return self.quantity.unit

    @property
    def sig(self) -> KoqSignature:
        return self.quantity.sig


class _Checker:
    def __init__(self, reg: UnitRegistry, strict_untagged: bool):
        self.reg = reg
        self.strict_untagged = strict_untagged
        self.koq_reg = KoqRegistry()
        self.env: dict[str, Binding | None] = {}
        self.diagnostics: list[Diagnostic] = []
        self.error_count = 0
        # pi is a predefined scalar constant
        self.env["pi"] = Binding(
            Quantity(math.pi, reg.dimensionless()), True)

    # -- diagnostics ---------------------------------------------------------

    def emit(self, code: str, severity: str, span: Span, message: str,
             payload: dict[str, object] | None = None) -> None:
        self.diagnostics.append(Diagnostic(
            code, severity, span.line, span.column, message, payload or {}))
        if severity == ERROR:
            self.error_count += 1

    # -- expression evaluation ------------------------------------------------

    def eval_expr(self, node) -> Binding | None:
        if isinstance(node, NumberLit):
            return self.eval_number(node)
        if isinstance(node, NameRef):
            return self.eval_name(node)
        if isinstance(node, BinOp):
            return self.eval_binop(node)
        if isinstance(node, PowOp):
            return self.eval_pow(node)
        raise TypeError(f"unexpected AST node {node!r}")

    def eval_number(self, node: NumberLit) -> Binding | None:
        if node.unit_text is None:
            unit = self.reg.dimensionless()
        else:
            try:
                unit = self.reg.parse(node.unit_text)
            except UnitParseError as exc:
                self.emit("E002", ERROR, node.unit_span, str(exc),
                          {"unit_text": node.unit_text})
                return None
        try:
            return Binding(Quantity(node.value, unit), True)
        except QuantityError as exc:  # e.g. a literal like 1e400
            self.emit("E001", ERROR, node.span, f"evaluation error: {exc}")
            return None

    def eval_name(self, node: NameRef) -> Binding | None:
        if node.name not in self.env:
            self.emit("E001", ERROR, node.span,
                      f"undefined name '{node.name}'")
            return None
        return self.env[node.name]

    def eval_binop(self, node: BinOp) -> Binding | None:
        left = self.eval_expr(node.left)
        right = self.eval_expr(node.right)
        if left is None or right is None:
            return None
        if node.op in ("+", "-"):
            return self.eval_add(node, left, right)
        try:
            result = q_mul(left.quantity, right.quantity, node.op)
        except PqError as exc:
            self.emit("E001", ERROR, node.span, f"evaluation error: {exc}")
            return None
        return Binding(result, left.known and right.known)

    def eval_add(self, node: BinOp, left: Binding,
                 right: Binding) -> Binding | None:
        sign = +1 if node.op == "+" else -1
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            try:
                result = q_add(left.quantity, right.quantity, sign)
            except Type1UnitError as exc:
                self.emit("E101", ERROR, node.span, str(exc), {
                    "left_unit": exc.left_unit,
                    "right_unit": exc.right_unit,
                    "left_dimension": exc.left_dim,
                    "right_dimension": exc.right_dim,
                })
                return None
            except Type1KoqError as exc:
                self.emit("E201", ERROR, node.span, str(exc), {
                    "left_koq": exc.left,
                    "right_koq": exc.right,
                })
                # units were compatible: recover the numeric value and
                # keep the left signature so downstream checks continue
                a, b = left.quantity, right.quantity
                try:
                    stripped = q_add(Quantity(a.value, a.unit),
                                     Quantity(b.value, b.unit), sign)
                except PqError:
                    return None
                result = Quantity(stripped.value, stripped.unit, a.sig)
            except PqError as exc:  # non-finite result
                self.emit("E001", ERROR, node.span,
                          f"evaluation error: {exc}")
                return None
        for w in caught:
            if isinstance(w.message, UntaggedOperandWarning):
                severity = ERROR if self.strict_untagged else WARNING
                self.emit("W301", severity, node.span, str(w.message), {
                    "left_koq": left.sig.render(),
                    "right_koq": right.sig.render(),
                })
        return Binding(result, left.known and right.known)

    def eval_pow(self, node: PowOp) -> Binding | None:
        base = self.eval_expr(node.base)
        if base is None:
            return None
        try:
            result = q_pow(base.quantity, node.exponent)
        except PqError as exc:
            self.emit("E001", ERROR, node.span, f"evaluation error: {exc}")
            return None
        return Binding(result, base.known)

    # -- statements ------------------------------------------------------------

    def run_relation(self, stmt: RelationStmt) -> None:
        try:
            self.koq_reg.declare_relation(stmt.target, stmt.rhs_text)
        except KoqDeclarationError as exc:
            self.emit("E001", ERROR, stmt.span, str(exc))

    def run_let(self, stmt: LetStmt) -> None:
        errors_before = self.error_count

        declared_unit: UnitExpr | None = None
        if stmt.unit_text is not None:
            try:
                declared_unit = self.reg.parse(stmt.unit_text)
            except UnitParseError as exc:
                self.emit("E002", ERROR, stmt.unit_span, str(exc),
                          {"unit_text": stmt.unit_text})

        rhs = self.eval_expr(stmt.expr)

        # Type 2 unit check: declared [unit] vs the dimension of the RHS
        if declared_unit is not None and rhs is not None:
            if dim_eq(rhs.quantity.dimension, declared_unit.dimension):
                rhs = Binding(q_convert(rhs.quantity, declared_unit),
                              rhs.known)
            else:
                self.emit("E102", ERROR, stmt.unit_span,
                          f"cannot assign '{rhs.quantity.unit}' "
                          f"({rhs.quantity.dimension.named()}) to "
                          f"'{stmt.name}' declared as '{declared_unit}' "
                          f"({declared_unit.dimension.named()})", {
                              "declared_unit": str(declared_unit),
                              "declared_dimension":
                                  declared_unit.dimension.named(),
                              "actual_unit": str(rhs.quantity.unit),
                              "actual_dimension":
                                  rhs.quantity.dimension.named(),
                          })
                rhs = None

        clean = self.error_count == errors_before

        if rhs is None:
            # the binding takes its declared type; the value is a
            # placeholder so downstream statements stay checkable
            if declared_unit is None:
                self.env[stmt.name] = None
                return
            sig = (KoqSignature.single(stmt.koq) if stmt.koq
                   else KoqSignature.empty())
            self.env[stmt.name] = Binding(
                Quantity(1.0, declared_unit, sig), False)
            return

        if stmt.koq is not None:
            if clean:
                try:
                    sig = self.koq_reg.tag(stmt.koq, rhs.quantity.sig)
                except Type2KoqError as exc:
                    self.emit("E202", ERROR, stmt.koq_span, str(exc), {
                        "koq": exc.name,
                        "actual": exc.actual,
                        "admissible": list(exc.admissible),
                    })
                    sig = KoqSignature.single(stmt.koq)
            else:
                sig = KoqSignature.single(stmt.koq)
            q = rhs.quantity
            rhs = Binding(Quantity(q.value, q.unit, sig), rhs.known)

        self.env[stmt.name] = rhs

    def run(self, script: Script) -> None:
        for stmt in script.statements:
            if isinstance(stmt, RelationStmt):
                self.run_relation(stmt)
            else:
                self.run_let(stmt)


def check_script(script: Script, reg: UnitRegistry | None = None, *,
                 strict_angle: bool = False, strict_untagged: bool = False,
                 parse_diagnostics: list[Diagnostic] | None = None,
                 ) -> DiagnosticReport:
    """Check a parsed script; pure function of its inputs.

    ``reg`` defaults to the built-in registry for the requested angle
    mode; when a registry is passed its own mode governs.
    """
    if reg is None:
        reg = UnitRegistry.builtin(strict_angle)
    checker = _Checker(reg, strict_untagged)
    checker.run(script)
    report = DiagnosticReport(
        diagnostics=list(parse_diagnostics or []) + checker.diagnostics,
        bindings={name: b for name, b in checker.env.items()
                  if b is not None and name != "pi"})
    report.sort()
    return report


def check_source(text: str, reg: UnitRegistry | None = None, *,
                 strict_angle: bool = False, strict_untagged: bool = False,
                 ) -> DiagnosticReport:
    """Parse and check a source string in one step."""
    script, parse_diags = parse_script(text)
    return check_script(script, reg, strict_angle=strict_angle,
                        strict_untagged=strict_untagged,
                        parse_diagnostics=parse_diags)
