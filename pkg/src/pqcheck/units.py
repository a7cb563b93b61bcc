"""Named units, prefixes, unit-expression parsing and conversion factors.

A registry maps unit names (and prefixed unit names) to a dimension vector
and a positive scale factor to coherent base units.  Registries are built
from a line-oriented definitions format::

    # comment
    base <dim-symbol> <name>
    prefix <symbol> <factor>
    unit <name> <factor> <unit-expr>
    alias <name> <existing-name>

A built-in default registry covering the SI base and the common derived
and non-SI units is compiled in; user files extend it but cannot shadow
built-in names.  Offset units (degC, degF) and logarithmic units (dB) are
not representable and are rejected at load.

Unit expressions follow ``unitatom (("*"|"/"|".") unitatom)*`` with
``unitatom := "1" | [prefix]name ["^" int]``; the literal ``1`` denotes
the dimensionless unit.  Name resolution prefers the longest unit name:
``min`` is always the minute, never milli-``in``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .dimension import (
    BASE_SYMBOLS, STANDARD_ARITY, STRICT_ARITY,
    DimVector, dim_eq, dim_mul, dim_pow,
)
from .errors import DimensionMismatchError, RegistryError, UnitParseError

# Units that need affine or logarithmic conversion; out of scope by design.
_REJECTED_UNIT_NAMES = frozenset({
    "degC", "degF", "celsius", "fahrenheit", "dB", "decibel",
})

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[+-]?\d+")


@dataclass(frozen=True, slots=True)
class Prefix:
    symbol: str
    factor: float


@dataclass(frozen=True, slots=True)
class UnitDef:
    """A named unit: positive multiplier to coherent base units + dimension."""

    name: str
    factor: float
    dimension: DimVector
    aliases: tuple[str, ...] = ()
    prefixable: bool = True


@dataclass(frozen=True, slots=True)
class UnitExpr:
    """A resolved unit expression.

    ``display`` keeps the written (possibly prefixed) unit names with their
    signed exponents, in source order; it is never simplified.
    """

    dimension: DimVector
    factor: float
    display: tuple[tuple[str, int], ...] = ()

    def display_str(self) -> str:
        """Render like ``kg*m^2/s^3``; dimensionless with no terms is ``""``."""
        parts = []
        for i, (name, exp) in enumerate(self.display):
            if i == 0:
                parts.append(name if exp == 1 else f"{name}^{exp}")
            else:
                parts.append("*" if exp > 0 else "/")
                e = abs(exp)
                parts.append(name if e == 1 else f"{name}^{e}")
        return "".join(parts)

    def is_dimensionless(self) -> bool:
        return self.dimension.is_dimensionless()

    def __str__(self) -> str:
        return self.display_str() or "1"


def conversion_factor(from_expr: UnitExpr, to_expr: UnitExpr) -> float:
    """Factor r such that a value v in ``from_expr`` equals v*r in ``to_expr``.

    Raises:
        DimensionMismatchError: when the dimensions differ, carrying both
            unit displays and both named dimension displays.
    """
    if not dim_eq(from_expr.dimension, to_expr.dimension):
        raise DimensionMismatchError(
            f"cannot convert from '{from_expr}' ({from_expr.dimension.named()}) "
            f"to '{to_expr}' ({to_expr.dimension.named()})",
            left_unit=str(from_expr), right_unit=str(to_expr),
            left_dim=from_expr.dimension.named(),
            right_dim=to_expr.dimension.named())
    return from_expr.factor / to_expr.factor


class UnitRegistry:
    """Immutable-after-load mapping of unit and prefix names.

    Use :meth:`builtin` to obtain the compiled-in default registry and
    :meth:`extended` to derive a new registry from a definitions file.
    """

    def __init__(self, strict_angle: bool = False):
        self.strict_angle = strict_angle
        self.arity = STRICT_ARITY if strict_angle else STANDARD_ARITY
        self._units: dict[str, UnitDef] = {}
        self._prefixes: dict[str, Prefix] = {}
        self._builtin_names: frozenset[str] = frozenset()

    # -- construction ------------------------------------------------------

    @classmethod
    def builtin(cls, strict_angle: bool = False) -> UnitRegistry:
        """The compiled-in default registry for the given angle mode."""
        reg = cls(strict_angle)
        reg._load_text(_builtin_definitions(strict_angle))
        reg._builtin_names = frozenset(reg._units) | frozenset(reg._prefixes)
        return reg

    def extended(self, text: str) -> UnitRegistry:
        """New registry with ``text`` loaded on top of this one.

        Definitions may add new names only; shadowing an existing name is
        a :class:`RegistryError`.
        """
        reg = UnitRegistry(self.strict_angle)
        reg._units = dict(self._units)
        reg._prefixes = dict(self._prefixes)
        reg._builtin_names = self._builtin_names
        reg._load_text(text)
        return reg

    def _define(self, unit: UnitDef, line: int) -> None:
        for name in (unit.name, *unit.aliases):
            if name in _REJECTED_UNIT_NAMES:
                raise RegistryError(
                    f"unit '{name}' needs an offset or logarithmic scale, "
                    f"which is not supported", line)
            if name in self._units:
                raise RegistryError(f"duplicate unit name '{name}'", line)
            self._units[name] = unit

    def _load_text(self, text: str) -> None:
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            kind = fields[0]
            if kind == "base":
                self._load_base(fields, lineno)
            elif kind == "prefix":
                self._load_prefix(fields, lineno)
            elif kind == "unit":
                self._load_unit(fields, lineno)
            elif kind == "alias":
                self._load_alias(fields, lineno)
            else:
                raise RegistryError(
                    f"malformed line: unknown directive '{kind}'", lineno)

    def _load_base(self, fields: list[str], lineno: int) -> None:
        if len(fields) != 3:
            raise RegistryError("malformed line: expected 'base <dim-symbol> "
                                "<name>'", lineno)
        _, symbol, name = fields
        symbols = BASE_SYMBOLS[:self.arity]
        if symbol not in symbols:
            raise RegistryError(
                f"unknown base-quantity symbol '{symbol}'", lineno)
        dim = DimVector.base(symbols.index(symbol), self.arity)
        self._define(UnitDef(name, 1.0, dim), lineno)

    def _load_prefix(self, fields: list[str], lineno: int) -> None:
        if len(fields) != 3:
            raise RegistryError("malformed line: expected 'prefix <symbol> "
                                "<factor>'", lineno)
        _, symbol, factor_text = fields
        factor = self._parse_factor(factor_text, lineno)
        if symbol in self._prefixes:
            raise RegistryError(f"duplicate prefix '{symbol}'", lineno)
        self._prefixes[symbol] = Prefix(symbol, factor)

    def _load_unit(self, fields: list[str], lineno: int) -> None:
        if len(fields) != 4:
            raise RegistryError("malformed line: expected 'unit <name> "
                                "<factor> <unit-expr>'", lineno)
        _, name, factor_text, expr_text = fields
        factor = self._parse_factor(factor_text, lineno)
        try:
            ref = self.parse(expr_text)
        except UnitParseError as exc:
            raise RegistryError(
                f"in definition of '{name}': {exc}", lineno) from exc
        self._define(
            UnitDef(name, factor * ref.factor, ref.dimension), lineno)

    def _load_alias(self, fields: list[str], lineno: int) -> None:
        if len(fields) != 3:
            raise RegistryError("malformed line: expected 'alias <name> "
                                "<existing-name>'", lineno)
        _, name, existing = fields
        unit = self._units.get(existing)
        if unit is None:
            raise RegistryError(
                f"alias target '{existing}' is not defined", lineno)
        self._define(
            UnitDef(name, unit.factor, unit.dimension,
                    prefixable=unit.prefixable), lineno)

    @staticmethod
    def _parse_factor(text: str, lineno: int) -> float:
        try:
            factor = float(text)
        except ValueError:
            raise RegistryError(f"malformed factor '{text}'", lineno) from None
        if not (factor > 0 and math.isfinite(factor)):
            raise RegistryError(
                f"factor must be positive and finite, got {text}", lineno)
        return factor

    # -- lookup and parsing ------------------------------------------------

    def is_builtin_name(self, name: str) -> bool:
        return name in self._builtin_names

    def known_units(self) -> dict[str, UnitDef]:
        return dict(self._units)

    def resolve_atom(self, name: str) -> tuple[float, DimVector]:
        """Resolve a (possibly prefixed) unit name to (factor, dimension).

        A full unit name always wins over a prefixed reading; among
        prefixed readings the longest unit name wins.
        """
        unit = self._units.get(name)
        if unit is not None:
            return unit.factor, unit.dimension
        candidates = []
        for symbol, prefix in self._prefixes.items():
            if name.startswith(symbol) and len(name) > len(symbol):
                rest = self._units.get(name[len(symbol):])
                if rest is not None and rest.prefixable:
                    candidates.append((prefix, rest))
        if not candidates:
            raise UnitParseError(f"unknown unit '{name}'")
        prefix, unit = max(candidates, key=lambda c: len(c[1].name))
        return prefix.factor * unit.factor, unit.dimension

    def parse(self, text: str) -> UnitExpr:
        """Parse a unit expression into a :class:`UnitExpr`.

        Grammar: ``unitatom (("*"|"/"|".") unitatom)*`` with
        ``unitatom := "1" | [prefix]name ["^" int]``.  Whitespace is
        permitted around operators.

        Raises:
            UnitParseError: unknown unit/prefix or malformed expression,
                with the character offset of the offending token.
        """
        pos = 0
        n = len(text)

        def skip_ws():
            nonlocal pos
            while pos < n and text[pos].isspace():
                pos += 1

        def parse_atom() -> tuple[str | None, int]:
            nonlocal pos
            skip_ws()
            start = pos
            if pos < n and text[pos] == "1":
                pos += 1
                return None, start
            m = _NAME_RE.match(text, pos)
            if not m:
                raise UnitParseError(
                    f"malformed unit expression {text!r}: expected a unit "
                    f"name at offset {pos}", pos)
            pos = m.end()
            return m.group(0), start

        def parse_exponent() -> int:
            nonlocal pos
            skip_ws()
            if pos < n and text[pos] == "^":
                pos += 1
                skip_ws()
                m = _INT_RE.match(text, pos)
                if not m:
                    raise UnitParseError(
                        f"malformed unit expression {text!r}: expected an "
                        f"integer exponent at offset {pos}", pos)
                pos = m.end()
                return int(m.group(0))
            return 1

        dim = DimVector.zero(self.arity)
        factor = 1.0
        display: list[tuple[str, int]] = []
        sign = 1
        while True:
            name, start = parse_atom()
            exp = parse_exponent()
            if name is not None:
                try:
                    atom_factor, atom_dim = self.resolve_atom(name)
                except UnitParseError as exc:
                    raise UnitParseError(str(exc), start) from None
                signed = sign * exp
                factor *= atom_factor ** signed
                dim = dim_mul(dim, dim_pow(atom_dim, signed))
                display.append((name, signed))
            skip_ws()
            if pos >= n:
                break
            op = text[pos]
            if op not in "*/.":
                raise UnitParseError(
                    f"malformed unit expression {text!r}: expected '*', '/' "
                    f"or '.' at offset {pos}", pos)
            pos += 1
            sign = -1 if op == "/" else 1
        return UnitExpr(dim, factor, tuple(display))

    def dimensionless(self) -> UnitExpr:
        """The empty unit expression (pure scalar) for this registry."""
        return UnitExpr(DimVector.zero(self.arity), 1.0, ())

    def conversion_factor(self, from_expr: UnitExpr, to_expr: UnitExpr) -> float:
        return conversion_factor(from_expr, to_expr)


def load_definitions(text: str, strict_angle: bool = False) -> UnitRegistry:
    """Built-in registry extended with ``text`` (may be empty)."""
    return UnitRegistry.builtin(strict_angle).extended(text)


def parse_unit_expr(reg: UnitRegistry, text: str) -> UnitExpr:
    """Free-function form of :meth:`UnitRegistry.parse`."""
    return reg.parse(text)


# 2*pi to full double precision.
_TAU = "6.283185307179586"


def _builtin_definitions(strict_angle: bool) -> str:
    angle = ("base A rad\n" if strict_angle else "unit rad 1 1\n")
    return (
        "# SI base units\n"
        "base L m\n"
        "base M kg\n"
        "base T s\n"
        "base I A\n"
        "base Θ K\n"
        "base N mol\n"
        "base J cd\n"
        "# prefixes\n"
        "prefix n 1e-9\n"
        "prefix u 1e-6\n"
        "prefix m 1e-3\n"
        "prefix c 1e-2\n"
        "prefix d 1e-1\n"
        "prefix k 1e3\n"
        "prefix M 1e6\n"
        "prefix G 1e9\n"
        "prefix T 1e12\n"
        "# angle\n"
        + angle +
        f"unit rev {_TAU} rad\n"
        "# derived SI\n"
        "unit g 1e-3 kg\n"
        "unit N 1 kg*m/s^2\n"
        "unit J 1 N*m\n"
        "unit W 1 J/s\n"
        "unit Pa 1 N/m^2\n"
        "unit Hz 1 s^-1\n"
        "# accepted non-SI\n"
        "unit ft 0.3048 m\n"
        "unit hr 3600 s\n"
        "unit min 60 s\n"
        "unit lbf 4.4482216152605 N\n"
        "# common aliases\n"
        "alias metre m\n"
        "alias meter m\n"
        "alias second s\n"
        "alias sec s\n"
        "alias kilogram kg\n"
        "alias gram g\n"
        "alias hour hr\n"
        "alias h hr\n"
        "alias minute min\n"
        "alias radian rad\n"
        "alias newton N\n"
        "alias joule J\n"
        "alias watt W\n"
        "alias pascal Pa\n"
        "alias hertz Hz\n"
    )
