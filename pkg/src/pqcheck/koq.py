"""Kind-of-quantity signatures, relations and checking.

Dimension checking cannot tell energy from torque: both are M L^2 T^-2.
A kind-of-quantity (KOQ) signature tracks the multiplicative composition
of an expression over *named kinds* instead, as a canonical map from KOQ
name to signed integer exponent.  Declared relations state which
compositions are admissible for a name; tagging an expression with a name
checks its signature against those relations.

Matching is direct signature equality against declared relations.  There
is no recursive substitution of relations into relations: a relation's
right-hand side is canonicalized once at declaration time and compared
as-is.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field

from .errors import KoqDeclarationError, Type1KoqError, Type2KoqError, \
    UntaggedOperandWarning

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True, slots=True)
class KoqSignature:
    """Canonical map KOQ-name -> nonzero exponent, stored lexicographically.

    The empty signature is the untagged/scalar case.
    """

    terms: tuple[tuple[str, int], ...] = ()

    @classmethod
    def empty(cls) -> KoqSignature:
        return cls(())

    @classmethod
    def single(cls, name: str) -> KoqSignature:
        return cls(((name, 1),))

    @classmethod
    def from_dict(cls, exps: dict[str, int]) -> KoqSignature:
        return cls(tuple(sorted((n, e) for n, e in exps.items() if e != 0)))

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def is_empty(self) -> bool:
        return not self.terms

    def render(self) -> str:
        """Relation-grammar style rendering: powers as repetition.

        ``{AV: 2, MOI: 1}`` renders as ``AV*AV*MOI``; the empty signature
        renders as ``1``.
        """
        if not self.terms:
            return "1"
        num = []
        den = []
        for name, e in self.terms:
            (num if e > 0 else den).extend([name] * abs(e))
        text = "*".join(num) if num else "1"
        for name in den:
            text += f"/{name}"
        return text

    def __str__(self) -> str:
        return self.render()

    def __bool__(self) -> bool:
        return bool(self.terms)


def combine_mul(a: KoqSignature, b: KoqSignature, op: str = "*") -> KoqSignature:
    """Combine signatures under multiplication (``*``) or division (``/``)."""
    if op not in ("*", "/"):
        raise ValueError(f"op must be '*' or '/', got {op!r}")
    exps = a.as_dict()
    sign = 1 if op == "*" else -1
    for name, e in b.terms:
        exps[name] = exps.get(name, 0) + sign * e
    return KoqSignature.from_dict(exps)


def sig_pow(a: KoqSignature, n: int) -> KoqSignature:
    """Scale every exponent by ``n``; n = 0 yields the empty signature."""
    return KoqSignature.from_dict({name: e * n for name, e in a.terms})


def check_add(a: KoqSignature, b: KoqSignature) -> KoqSignature:
    """Check kind compatibility of addition/subtraction operands.

    Equal signatures pass and are returned unchanged.  If exactly one
    side is untagged the tagged signature propagates and an
    :class:`UntaggedOperandWarning` is emitted.  Different non-empty
    signatures raise :class:`Type1KoqError`.
    """
    if a == b:
        return a
    if a.is_empty() or b.is_empty():
        tagged = b if a.is_empty() else a
        warnings.warn(
            f"addition of an untagged operand with '{tagged.render()}'; "
            f"the tag propagates", UntaggedOperandWarning, stacklevel=2)
        return tagged
    raise Type1KoqError(a.render(), b.render())


def parse_relation_rhs(rhs_text: str) -> tuple[KoqSignature, str]:
    """Parse ``NAME (("*"|"/") NAME)*`` into (signature, canonical text)."""
    pos = 0
    text = rhs_text
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def take_name() -> str:
        nonlocal pos
        skip_ws()
        m = _NAME_RE.match(text, pos)
        if not m:
            raise KoqDeclarationError(
                f"malformed relation {rhs_text!r}: expected a KOQ name at "
                f"offset {pos}")
        pos = m.end()
        return m.group(0)

    exps: dict[str, int] = {}
    parts: list[str] = []
    name = take_name()
    exps[name] = 1
    parts.append(name)
    while True:
        skip_ws()
        if pos >= n:
            break
        op = text[pos]
        if op not in "*/":
            raise KoqDeclarationError(
                f"malformed relation {rhs_text!r}: expected '*' or '/' at "
                f"offset {pos}")
        pos += 1
        name = take_name()
        exps[name] = exps.get(name, 0) + (1 if op == "*" else -1)
        parts.append(op + name)
    return KoqSignature.from_dict(exps), "".join(parts)


@dataclass(frozen=True, slots=True)
class KoqRelation:
    """One admissible composition for a target KOQ name."""

    target: str
    rhs: KoqSignature
    source_text: str  # original declaration, kept for diagnostics


@dataclass
class KoqRegistry:
    """Append-only store of declared relations, keyed by target name.

    Insertion order is preserved for diagnostics; duplicate declarations
    (same target, same canonical rhs) are collapsed.
    """

    relations: dict[str, list[KoqRelation]] = field(default_factory=dict)

    def declare_relation(self, target: str, rhs_text: str) -> KoqRegistry:
        """Append an additional admissible form for ``target``.

        Redefinition accumulates: earlier relations stay admissible.

        Raises:
            KoqDeclarationError: malformed rhs, empty canonical rhs, or a
                self-relation (rhs equal to ``{target: 1}``).
        """
        if not _NAME_RE.fullmatch(target):
            raise KoqDeclarationError(f"invalid KOQ name {target!r}")
        rhs, canonical = parse_relation_rhs(rhs_text)
        if rhs.is_empty():
            raise KoqDeclarationError(
                f"relation for {target} cancels to the empty signature: "
                f"{rhs_text!r}")
        if rhs == KoqSignature.single(target):
            raise KoqDeclarationError(
                f"self-relation {target} = {rhs_text!r}")
        existing = self.relations.setdefault(target, [])
        if all(r.rhs != rhs for r in existing):
            existing.append(KoqRelation(target, rhs, canonical))
        return self

    def relations_for(self, name: str) -> tuple[KoqRelation, ...]:
        return tuple(self.relations.get(name, ()))

    def tag(self, name: str, node_sig: KoqSignature) -> KoqSignature:
        """Annotate an expression's signature with a KOQ name.

        Accepted when the node is untagged (annotating a raw quantity),
        already tagged ``{name: 1}``, or equal to the rhs of a declared
        relation for ``name``; the result is always ``{name: 1}``.

        Raises:
            Type2KoqError: with the admissible declared source texts.
        """
        if not _NAME_RE.fullmatch(name):
            raise KoqDeclarationError(f"invalid KOQ name {name!r}")
        target = KoqSignature.single(name)
        if node_sig.is_empty() or node_sig == target:
            return target
        declared = self.relations.get(name, ())
        if any(r.rhs == node_sig for r in declared):
            return target
        raise Type2KoqError(name, node_sig.render(),
                            [r.source_text for r in declared])


def declare_relation(reg: KoqRegistry, target: str, rhs_text: str) -> KoqRegistry:
    """Free-function form of :meth:`KoqRegistry.declare_relation`."""
    return reg.declare_relation(target, rhs_text)


def tag(reg: KoqRegistry, name: str, node_sig: KoqSignature) -> KoqSignature:
    """Free-function form of :meth:`KoqRegistry.tag`."""
    return reg.tag(name, node_sig)
