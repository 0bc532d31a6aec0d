"""Text format for ideals, curves and hypersurfaces.

    vars z1 z2 z3;          declared coordinates (required first)
    param t;                makes the document a curve: one component per line
    at 1, 0, 0;             optional base point (constants)
    h: 2*z3                 hypersurface sections h:, f:, g:
    f: z1; z2

Statements end at a newline or ';'.  Expressions use + - * / ^, rational
literals such as 3 or 1/2 (or 0.25), parentheses and the imaginary unit i.
Division is only allowed by constants and exponents must be integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.poly import PolyC
from .algebra.scalars import GaussianRational
from .algebra.series import DEFAULT_TRUNCATION
from .contact import CurveGerm, HypersurfaceGerm
from .errors import QTypesError
from .local import IdealPresentation

__all__ = ["ParseError", "SourceDocument", "parse", "parse_poly", "parse_vector"]

KEYWORDS = {"vars", "param", "at"}
SECTIONS = ("h", "f", "g")


class ParseError(QTypesError, ValueError):
    code = "parse_error"

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<comment>#[^\n]*)|(?P<nl>\n)|(?P<num>\d+(?:\.\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),;:])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, start = 1, 0
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - start + 1)
        kind = m.lastgroup
        if kind == "nl":
            tokens.append(Token("end", "\n", line, pos - start + 1))
            line, start = line + 1, m.end()
        elif kind == "op" and m.group() == ";":
            tokens.append(Token("end", ";", line, pos - start + 1))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, pos - start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - start + 1))
    return tokens


class _ExprParser:
    """Recursive descent over one statement's tokens; values are PolyC."""

    def __init__(self, tokens: list[Token], names: list[str]):
        self.tokens = tokens
        self.pos = 0
        self.names = {name: k for k, name in enumerate(names)}
        self.n = max(len(names), 1)

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def take(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.column)
        return tok

    def at_end(self) -> bool:
        return self.peek().kind in ("end", "eof")

    def expression(self) -> PolyC:
        value = self.term()
        while self.peek().text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> PolyC:
        value = self.unary()
        while self.peek().text in ("*", "/"):
            tok = self.take()
            rhs = self.unary()
            if tok.text == "*":
                value = value * rhs
            else:
                if rhs.degree > 0 or rhs.is_zero():
                    raise ParseError("division is only allowed by nonzero constants", tok.line, tok.column)
                value = value.scale(rhs.constant_term().inverse())
        return value

    def unary(self) -> PolyC:
        if self.peek().text in ("+", "-"):
            op = self.take().text
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self) -> PolyC:
        base = self.atom()
        if self.peek().text == "^":
            self.take()
            tok = self.take()
            if tok.kind != "num" or not tok.text.isdigit():
                raise ParseError("exponents must be nonnegative integer literals", tok.line, tok.column)
            base = base ** int(tok.text)
        return base

    def atom(self) -> PolyC:
        tok = self.take()
        if tok.kind == "num":
            return PolyC.constant(self.n, GaussianRational(Fraction(tok.text)))
        if tok.kind == "name":
            if tok.text in self.names:
                return PolyC.variable(self.n, self.names[tok.text])
            if tok.text == "i":
                return PolyC.constant(self.n, GaussianRational(0, 1))
            raise ParseError(f"undeclared identifier {tok.text}", tok.line, tok.column)
        if tok.text == "(":
            value = self.expression()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.line, tok.column)


@dataclass
class SourceDocument:
    kind: str  # "ideal" | "curve" | "hypersurface"
    variables: list[str]
    body: list[PolyC] = field(default_factory=list)
    sections: dict[str, list[PolyC]] = field(default_factory=dict)
    parameter: str | None = None
    base_point: tuple | None = None

    def ideal(self) -> IdealPresentation:
        if self.kind != "ideal":
            raise ParseError(f"expected an ideal document, got a {self.kind}")
        if not self.body:
            raise ParseError("an ideal needs at least one generator")
        return IdealPresentation(len(self.variables), tuple(self.body), self.base_point)

    def curve(self, truncation: int = DEFAULT_TRUNCATION) -> CurveGerm:
        if self.kind != "curve":
            raise ParseError(f"expected a curve document, got a {self.kind}")
        if len(self.body) != len(self.variables):
            raise ParseError(f"a curve in {len(self.variables)} variables needs {len(self.variables)} components")
        lists = []
        for p in self.body:
            deg = p.degree if not p.is_zero() else 0
            lists.append([p.coefficient((k,)) for k in range(deg + 1)])
        return CurveGerm.from_polynomials(lists, truncation, self.base_point)

    def hypersurface(self) -> HypersurfaceGerm:
        if self.kind != "hypersurface":
            raise ParseError(f"expected a hypersurface document, got a {self.kind}")
        n = len(self.variables)
        hs = self.sections.get("h", [])
        h = PolyC.zero(n)
        for p in hs:
            h = h + p
        return HypersurfaceGerm(h, tuple(self.sections.get("f", [])), tuple(self.sections.get("g", [])), self.base_point)


def _split_statements(tokens: list[Token]) -> list[list[Token]]:
    out, cur = [], []
    for tok in tokens:
        if tok.kind in ("end", "eof"):
            if cur:
                out.append(cur + [Token("eof", "", tok.line, tok.column)])
            cur = []
        else:
            cur.append(tok)
    return out


def _constant(poly: PolyC, tok: Token) -> GaussianRational:
    if poly.degree > 0:
        raise ParseError("base point coordinates must be constants", tok.line, tok.column)
    return poly.constant_term()


def parse(text: str) -> SourceDocument:
    statements = _split_statements(tokenize(text))
    if not statements or statements[0][0].text != "vars":
        tok = statements[0][0] if statements else Token("eof", "", 1, 1)
        raise ParseError("document must start with a 'vars' declaration", tok.line, tok.column)
    variables: list[str] = []
    for tok in statements[0][1:-1]:
        if tok.kind != "name" or tok.text in KEYWORDS or tok.text == "i":
            raise ParseError(f"invalid variable name {tok.text!r}", tok.line, tok.column)
        if tok.text in variables:
            raise ParseError(f"variable {tok.text} declared twice", tok.line, tok.column)
        variables.append(tok.text)
    if not variables:
        tok = statements[0][0]
        raise ParseError("no variables declared", tok.line, tok.column)

    doc = SourceDocument("ideal", variables)
    section = None
    point_stmt = None
    for stmt in statements[1:]:
        head = stmt[0]
        if head.text == "param":
            if len(stmt) != 3 or stmt[1].kind != "name" or stmt[1].text in variables or stmt[1].text == "i":
                raise ParseError("expected 'param <name>'", head.line, head.column)
            if doc.body or doc.sections:
                raise ParseError("'param' must precede the curve components", head.line, head.column)
            doc.parameter = stmt[1].text
            doc.kind = "curve"
            continue
        if head.text == "at":
            point_stmt = stmt
            continue
        if head.kind == "name" and head.text in SECTIONS and len(stmt) > 1 and stmt[1].text == ":":
            if doc.parameter is not None or doc.body:
                raise ParseError("sections only appear in hypersurface documents", head.line, head.column)
            doc.kind = "hypersurface"
            section = head.text
            doc.sections.setdefault(section, [])
            stmt = stmt[2:]
            if len(stmt) == 1:
                continue
        names = [doc.parameter] if doc.parameter else variables
        p = _ExprParser(stmt, names)
        value = p.expression()
        if not p.at_end():
            tok = p.peek()
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        if doc.kind == "hypersurface":
            if section is None:
                raise ParseError("expression outside a section", head.line, head.column)
            doc.sections[section].append(value)
        else:
            doc.body.append(value)

    if point_stmt is not None:
        p = _ExprParser(point_stmt[1:], [])
        coords = [_constant(p.expression(), point_stmt[0])]
        while p.peek().text == ",":
            p.take()
            coords.append(_constant(p.expression(), point_stmt[0]))
        if not p.at_end():
            tok = p.peek()
            raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
        if len(coords) != len(variables):
            head = point_stmt[0]
            raise ParseError(f"base point needs {len(variables)} coordinates", head.line, head.column)
        doc.base_point = tuple(coords)
    return doc


def parse_poly(text: str, variables: list[str]) -> PolyC:
    """A single expression in the given variables."""
    stmts = _split_statements(tokenize(text))
    if len(stmts) != 1:
        raise ParseError("expected exactly one expression")
    p = _ExprParser(stmts[0], variables)
    value = p.expression()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
    return value


def parse_vector(text: str) -> list[GaussianRational]:
    """A comma-separated list of constants such as '0, 1/2, i'."""
    stmts = _split_statements(tokenize(text))
    if len(stmts) != 1:
        raise ParseError("expected one comma-separated vector")
    p = _ExprParser(stmts[0], [])
    out = []
    while True:
        tok = p.peek()
        out.append(_constant(p.expression(), tok))
        if p.peek().text != ",":
            break
        p.take()
    if not p.at_end():
        tok = p.peek()
        raise ParseError(f"unexpected {tok.text!r}", tok.line, tok.column)
    return out
