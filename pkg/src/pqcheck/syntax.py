"""Lexer, AST and recursive-descent parser for the quantity-script DSL.

One statement per line::

    relation NAME = NAME (("*"|"/") NAME)*
    let IDENT ":" (NAME | "untyped") ["[" unit-expr "]"] "=" expr
    # comment

Expressions::

    expr   = term (("+"|"-") term)*
    term   = factor (("*"|"/") factor)*
    factor = NUMBER [unit-expr] | IDENT | "(" expr ")" | factor "^" INT

A number literal takes an attached unit expression when a name follows it
(``10.5 cm``, ``42.0 km/hr``); the unit extends across ``*``, ``/``, ``.``
and ``^`` only while the tokens are glued together without whitespace, so
``2 m * x`` is the quantity ``2 m`` times the variable ``x``.  Parsing
recovers at line boundaries: a bad statement yields one E001 diagnostic
and parsing continues with the next line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .diagnostics import Diagnostic

KEYWORDS = frozenset({"let", "relation", "untyped"})

_TOKEN_RE = re.compile(r"""
    (?P<NUMBER>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<SYM>[+\-*/^()\[\]:=.])
""", re.VERBOSE)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str  # NUMBER | NAME | SYM | EOL
    text: str
    line: int
    column: int  # 1-based

    @property
    def end_column(self) -> int:
        return self.column + len(self.text)


class LexError(Exception):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(message)
        self.line = line
        self.column = column


def tokenize_line(text: str, line: int) -> list[Token]:
    """Tokens for one source line, comments stripped, EOL appended."""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "#":
            break
        if ch.isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise LexError(f"unexpected character {ch!r}", line, pos + 1)
        kind = m.lastgroup or "SYM"
        tokens.append(Token(kind, m.group(0), line, pos + 1))
        pos = m.end()
    tokens.append(Token("EOL", "", line, n + 1))
    return tokens


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class Span:
    line: int
    column: int
    length: int


@dataclass(frozen=True, slots=True)
class NumberLit:
    value: float
    unit_text: str | None
    unit_span: Span | None
    span: Span


@dataclass(frozen=True, slots=True)
class NameRef:
    name: str
    span: Span


@dataclass(frozen=True, slots=True)
class BinOp:
    op: str  # + - * /
    left: object
    right: object
    span: Span  # the operator token


@dataclass(frozen=True, slots=True)
class PowOp:
    base: object
    exponent: int
    span: Span


@dataclass(frozen=True, slots=True)
class RelationStmt:
    target: str
    rhs_text: str  # canonical, e.g. "AV*MOI/TIME"
    span: Span


@dataclass(frozen=True, slots=True)
class LetStmt:
    name: str
    koq: str | None  # None for "untyped"
    koq_span: Span | None
    unit_text: str | None
    unit_span: Span | None
    expr: object
    span: Span


@dataclass
class Script:
    statements: list[object] = field(default_factory=list)


class ParseError(Exception):
    def __init__(self, message: str, token: Token):
        super().__init__(message)
        self.token = token


def _span(tok: Token) -> Span:
    return Span(tok.line, tok.column, len(tok.text))


class _LineParser:
    """Recursive-descent parser over one line's token list."""

    def __init__(self, tokens: list[Token], raw: str = ""):
        self.tokens = tokens
        self.raw = raw
        self.pos = 0

    def peek(self, ahead: int = 0) -> Token:
        i = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOL":
            self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            raise ParseError(f"expected {text!r}", tok)
        return self.next()

    def expect_name(self, what: str = "a name") -> Token:
        tok = self.peek()
        if tok.kind != "NAME" or tok.text in KEYWORDS:
            raise ParseError(f"expected {what}", tok)
        return self.next()

    def at_end(self) -> bool:
        return self.peek().kind == "EOL"

    def expect_end(self) -> None:
        if not self.at_end():
            raise ParseError("unexpected trailing input", self.peek())

    # -- statements --------------------------------------------------------

    def parse_statement(self) -> object:
        tok = self.peek()
        if tok.text == "relation":
            return self.parse_relation()
        if tok.text == "let":
            return self.parse_let()
        raise ParseError("expected 'let' or 'relation'", tok)

    def parse_relation(self) -> RelationStmt:
        start = self.expect("relation")
        target = self.expect_name("a KOQ name")
        self.expect("=")
        parts = [self.expect_name("a KOQ name").text]
        while not self.at_end():
            op = self.peek()
            if op.text not in ("*", "/"):
                raise ParseError("expected '*' or '/'", op)
            self.next()
            parts.append(op.text + self.expect_name("a KOQ name").text)
        rhs_text = "".join(parts)
        last = self.tokens[max(self.pos - 1, 0)]
        length = last.end_column - start.column
        return RelationStmt(target.text, rhs_text,
                            Span(start.line, start.column, length))

    def parse_let(self) -> LetStmt:
        start = self.expect("let")
        name = self.expect_name("an identifier")
        self.expect(":")
        koq_tok = self.peek()
        if koq_tok.text == "untyped":
            self.next()
            koq, koq_span = None, None
        else:
            koq_tok = self.expect_name("a KOQ name or 'untyped'")
            koq, koq_span = koq_tok.text, _span(koq_tok)
        unit_text, unit_span = None, None
        if self.peek().text == "[":
            open_tok = self.next()
            while self.peek().text != "]":
                tok = self.next()
                if tok.kind == "EOL":
                    raise ParseError("unterminated '[' in unit annotation",
                                     open_tok)
            close_tok = self.expect("]")
            # exact source text between the brackets, spacing preserved
            unit_text = self.raw[open_tok.column:close_tok.column - 1].strip()
            unit_span = Span(open_tok.line, open_tok.column,
                             close_tok.end_column - open_tok.column)
            if not unit_text:
                raise ParseError("empty unit annotation", open_tok)
        self.expect("=")
        expr = self.parse_expr()
        self.expect_end()
        last = self.tokens[max(self.pos - 1, 0)]
        length = last.end_column - start.column
        return LetStmt(name.text, koq, koq_span, unit_text, unit_span, expr,
                       Span(start.line, start.column, length))

    # -- expressions -------------------------------------------------------

    def parse_expr(self) -> object:
        node = self.parse_term()
        while self.peek().text in ("+", "-"):
            op = self.next()
            right = self.parse_term()
            node = BinOp(op.text, node, right, _span(op))
        return node

    def parse_term(self) -> object:
        node = self.parse_factor()
        while self.peek().text in ("*", "/"):
            op = self.next()
            right = self.parse_factor()
            node = BinOp(op.text, node, right, _span(op))
        return node

    def parse_factor(self) -> object:
        tok = self.peek()
        if tok.kind == "NUMBER":
            node = self.parse_quantity_literal()
        elif tok.text == "(":
            self.next()
            node = self.parse_expr()
            self.expect(")")
        elif tok.kind == "NAME" and tok.text not in KEYWORDS:
            self.next()
            node = NameRef(tok.text, _span(tok))
        else:
            raise ParseError("expected a number, name or '('", tok)
        # postfix integer power (applies to the factor, not a glued unit)
        while self.peek().text == "^":
            caret = self.next()
            node = PowOp(node, self.parse_signed_int(), _span(caret))
        return node

    def parse_signed_int(self) -> int:
        sign = 1
        if self.peek().text == "-":
            self.next()
            sign = -1
        tok = self.peek()
        if tok.kind != "NUMBER" or not tok.text.isdigit():
            raise ParseError("expected an integer exponent", tok)
        self.next()
        return sign * int(tok.text)

    def parse_quantity_literal(self) -> NumberLit:
        num = self.next()
        try:
            value = float(num.text)
        except ValueError:
            raise ParseError("malformed number", num) from None
        unit_text, unit_span = self.collect_unit()
        length = ((unit_span.column + unit_span.length - num.column)
                  if unit_span else len(num.text))
        return NumberLit(value, unit_text, unit_span,
                         Span(num.line, num.column, length))

    def collect_unit(self) -> tuple[str | None, Span | None]:
        """Attached unit after a number: a NAME, extended across glued
        ``*``, ``/``, ``.``, ``^`` tokens only (no whitespace inside)."""
        tok = self.peek()
        if tok.kind != "NAME" or tok.text in KEYWORDS:
            return None, None
        first = self.next()
        parts = [first.text]
        last = first
        while True:
            op = self.peek()
            if op.text not in ("*", "/", ".", "^") or \
                    op.column != last.end_column:
                break
            operand = self.peek(1)
            if operand.column != op.end_column:
                break
            if op.text == "^":
                # glued exponent, possibly negative: s^-1
                if operand.text == "-":
                    digits = self.peek(2)
                    if digits.kind != "NUMBER" or \
                            digits.column != operand.end_column:
                        break
                    self.next()
                    self.next()
                    self.next()
                    parts.append("^-" + digits.text)
                    last = digits
                elif operand.kind == "NUMBER":
                    self.next()
                    self.next()
                    parts.append("^" + operand.text)
                    last = operand
                else:
                    break
            else:
                if operand.kind != "NAME" or operand.text in KEYWORDS:
                    break
                self.next()
                self.next()
                parts.append(op.text + operand.text)
                last = operand
        text = "".join(parts)
        return text, Span(first.line, first.column,
                          last.end_column - first.column)


def parse_script(text: str) -> tuple[Script, list[Diagnostic]]:
    """Parse a whole source; returns the AST plus any E001 diagnostics.

    Total over its input: a malformed line is reported and skipped, and
    parsing resumes on the next line.
    """
    script = Script()
    diagnostics: list[Diagnostic] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        try:
            tokens = tokenize_line(raw, lineno)
        except LexError as exc:
            diagnostics.append(Diagnostic(
                "E001", "error", exc.line, exc.column, str(exc)))
            continue
        if tokens[0].kind == "EOL":
            continue  # blank or comment-only line
        parser = _LineParser(tokens, raw)
        try:
            script.statements.append(parser.parse_statement())
        except ParseError as exc:
            tok = exc.token
            diagnostics.append(Diagnostic(
                "E001", "error", tok.line, tok.column,
                f"parse error: {exc}"))
    return script, diagnostics
