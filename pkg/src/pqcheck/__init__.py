"""Physical-type checking: units, dimensions and kinds of quantity.

Unit checking alone cannot tell energy from torque; this package pairs
dimension-checked quantity arithmetic with kind-of-quantity signatures so
that meaningless additions (Type 1) and meaningless assignments (Type 2)
are both caught, either at run time through the quantity API or statically
by checking scripts in the small ``.pq`` DSL.
"""

from .checker import Binding, check_script, check_source
from .diagnostics import CODES, Diagnostic, DiagnosticReport
from .dimension import DimVector, dim_eq, dim_mul, dim_pow
from .errors import (
    ArityMismatchError, DimensionMismatchError, ExponentOverflowError,
    KoqDeclarationError, PqError, QuantityError, RegistryError,
    Type1KoqError, Type1UnitError, Type2KoqError, UnitParseError,
    UntaggedOperandWarning,
)
from .koq import (
    KoqRegistry, KoqRelation, KoqSignature, check_add, combine_mul,
    declare_relation, sig_pow, tag,
)
from .quantity import Quantity, q_add, q_convert, q_mul, q_pow
from .syntax import Script, parse_script
from .units import (
    Prefix, UnitDef, UnitExpr, UnitRegistry, conversion_factor,
    load_definitions, parse_unit_expr,
)

__version__ = "0.1.0"

__all__ = [
    "ArityMismatchError", "Binding", "CODES", "Diagnostic",
    "DiagnosticReport", "DimVector", "DimensionMismatchError",
    "ExponentOverflowError", "KoqDeclarationError", "KoqRegistry",
    "KoqRelation", "KoqSignature", "PqError", "Prefix", "Quantity",
    "QuantityError", "RegistryError", "Script", "Type1KoqError",
    "Type1UnitError", "Type2KoqError", "UnitDef", "UnitExpr",
    "UnitParseError", "UnitRegistry", "UntaggedOperandWarning",
    "check_add", "check_script", "check_source", "combine_mul",
    "conversion_factor", "declare_relation", "dim_eq", "dim_mul",
    "dim_pow", "load_definitions", "parse_script", "parse_unit_expr",
    "q_add", "q_convert", "q_mul", "q_pow", "sig_pow", "tag",
]
