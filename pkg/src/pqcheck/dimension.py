"""Integer-exponent dimension vectors over the SI base quantities.

A dimension is a fixed-length vector of signed integer exponents, one per
base quantity, in the order (L, M, T, I, Θ, N, J).  When strict-angle mode
is enabled the vector gains an eighth component A for plane angle, so
standard and strict configurations can never be mixed silently: comparing
vectors of different arity raises :class:`ArityMismatchError`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatchError, ExponentOverflowError

# Base-quantity symbols in fixed order; A exists only in strict-angle mode.
BASE_SYMBOLS = ("L", "M", "T", "I", "Θ", "N", "J", "A")
BASE_NAMES = ("length", "mass", "time", "current", "temperature",
              "substance", "luminous_intensity", "angle")

STANDARD_ARITY = 7
STRICT_ARITY = 8

# Exponents beyond this magnitude are reported, never wrapped.
MAX_EXPONENT = 32


def _check_exponents(exps: tuple[int, ...]) -> None:
    for sym, e in zip(BASE_SYMBOLS, exps):
        if not -MAX_EXPONENT <= e <= MAX_EXPONENT:
            raise ExponentOverflowError(
                f"exponent {e} of base quantity {sym} outside "
                f"[-{MAX_EXPONENT}, {MAX_EXPONENT}]")


@dataclass(frozen=True, slots=True)
class DimVector:
    """Immutable vector of base-quantity exponents."""

    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.exps) not in (STANDARD_ARITY, STRICT_ARITY):
            raise ArityMismatchError(
                f"dimension vector of arity {len(self.exps)}; "
                f"expected {STANDARD_ARITY} or {STRICT_ARITY}")
        _check_exponents(self.exps)

    @classmethod
    def zero(cls, arity: int = STANDARD_ARITY) -> DimVector:
        """The unique dimensionless vector of the given arity."""
        return cls((0,) * arity)

    @classmethod
    def base(cls, index: int, arity: int = STANDARD_ARITY) -> DimVector:
        """Unit vector for the base quantity at ``index``."""
        exps = [0] * arity
        exps[index] = 1
        return cls(tuple(exps))

    @property
    def arity(self) -> int:
        return len(self.exps)

    def is_dimensionless(self) -> bool:
        return all(e == 0 for e in self.exps)

    def display(self) -> str:
        """Symbolic form like ``L^1 T^-1``; dimensionless renders as ``1``."""
        parts = [f"{sym}^{e}"
                 for sym, e in zip(BASE_SYMBOLS, self.exps) if e != 0]
        return " ".join(parts) if parts else "1"

    def named(self) -> str:
        """Named form like ``[length] / [time]`` used in diagnostics."""
        num = []
        den = []
        for name, e in zip(BASE_NAMES, self.exps):
            if e > 0:
                num.append(f"[{name}]" if e == 1 else f"[{name}] ** {e}")
            elif e < 0:
                den.append(f"[{name}]" if e == -1 else f"[{name}] ** {-e}")
        if not num and not den:
            return "dimensionless"
        text = " * ".join(num) if num else "1"
        for part in den:
            text += f" / {part}"
        return text

    def __str__(self) -> str:
        return self.display()


def _require_same_arity(a: DimVector, b: DimVector) -> None:
    if a.arity != b.arity:
        raise ArityMismatchError(
            f"cannot combine dimension vectors of arity {a.arity} and "
            f"{b.arity}; standard and strict-angle configurations are mixed")


def dim_mul(a: DimVector, b: DimVector) -> DimVector:
    """Componentwise sum of exponents (dimension of a product)."""
    _require_same_arity(a, b)
    return DimVector(tuple(x + y for x, y in zip(a.exps, b.exps)))


def dim_pow(a: DimVector, n: int) -> DimVector:
    """Componentwise multiplication by ``n`` (dimension of a power)."""
    return DimVector(tuple(x * n for x in a.exps))


def dim_eq(a: DimVector, b: DimVector) -> bool:
    """True iff all components are equal; arity mismatch is a config error."""
    _require_same_arity(a, b)
    return a.exps == b.exps
