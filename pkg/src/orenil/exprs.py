"""Expression parsing and printing for the command-line front end.

Grammar (standard precedence, ``^`` > ``*`` > ``+``/``-``, left
associative sums and products):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | power
    power   := atom ('^' INT)?
    atom    := scalar | NAME | 'X' | '(' expr ')'
             | matrix | '[' expr ',' expr ']'
             | 'ad' '(' expr ',' expr ',' INT ')' | 'd' '(' expr ')'
    matrix  := '[' row (',' row)* ']'        row := '[' scalar (',' scalar)* ']'
    scalar  := ['-'] (INT ('/' INT | 'mod' INT)?)

A leading ``[[`` is tried as a matrix literal first and reparsed as a
commutator when the strict matrix grammar fails, so nested commutators
like ``[[e,x],x]`` stay unambiguous.  Printing emits canonical forms that
parse back to equal values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import MismatchError, ParseError
from .linalg import Matrix
from .orepoly import OrePoly, UnitalElement, ore_mul, ore_pow
from .scalars import PrimeField, Scalar

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<sym>[+\-*^()\[\],/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # 'int' | 'name' | 'sym' | 'end'
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        lexeme = m.group()
        if kind != "ws":
            tokens.append(Token(kind, lexeme, line, col))
        newlines = lexeme.count("\n")
        if newlines:
            line += newlines
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    tokens.append(Token("end", "", line, col))
    return tokens


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class RatLit:
    num: int
    den: int


@dataclass(frozen=True)
class ModLit:
    value: int
    modulus: int


@dataclass(frozen=True)
class MatrixLit:
    rows: tuple  # tuple of tuples of scalar literal nodes


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class XVar:
    pass


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str  # '+', '-', '*'
    left: object
    right: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class CommutatorNode:
    left: object
    right: object


@dataclass(frozen=True)
class AdCall:
    e: object
    x: object
    depth: int


@dataclass(frozen=True)
class DCall:
    operand: object


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        tok = self.peek()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}",
                             tok.line, tok.column)
        return self.advance()

    def fail(self, message: str):
        tok = self.peek()
        raise ParseError(message, tok.line, tok.column)

    # expr := term (('+'|'-') term)*
    def parse_expr(self):
        node = self.parse_term()
        while self.peek().text in ("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.parse_term())
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.peek().text == "*":
            self.advance()
            node = BinOp("*", node, self.parse_factor())
        return node

    def parse_factor(self):
        if self.peek().text == "-":
            self.advance()
            return Neg(self.parse_factor())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek().text == "^":
            self.advance()
            tok = self.peek()
            if tok.kind != "int":
                self.fail("exponent must be an integer literal")
            self.advance()
            return Pow(base, int(tok.text))
        return base

    def parse_int(self) -> int:
        tok = self.peek()
        if tok.kind != "int":
            self.fail("expected an integer")
        self.advance()
        return int(tok.text)

    def parse_scalar_literal(self, allow_sign: bool = True):
        negative = False
        if allow_sign and self.peek().text == "-":
            self.advance()
            negative = True
        tok = self.peek()
        if tok.kind != "int":
            self.fail("expected a scalar literal")
        self.advance()
        n = int(tok.text)
        nxt = self.peek()
        if nxt.text == "/":
            self.advance()
            den = self.parse_int()
            node = RatLit(-n if negative else n, den)
        elif nxt.kind == "name" and nxt.text == "mod":
            self.advance()
            p = self.parse_int()
            node = ModLit(-n if negative else n, p)
        else:
            node = IntLit(-n if negative else n)
        return node

    def try_matrix_literal(self):
        """Strict matrix literal parse; None (with position restored) on failure."""
        start = self.pos
        try:
            self.expect("[")
            rows = []
            while True:
                self.expect("[")
                row = [self.parse_scalar_literal()]
                while self.peek().text == ",":
                    self.advance()
                    row.append(self.parse_scalar_literal())
                self.expect("]")
                rows.append(tuple(row))
                if self.peek().text == ",":
                    self.advance()
                    continue
                break
            self.expect("]")
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                self.fail("matrix rows have different lengths")
            return MatrixLit(tuple(rows))
        except ParseError:
            self.pos = start
            return None

    def parse_atom(self):
        tok = self.peek()
        if tok.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        if tok.text == "[":
            if self.tokens[self.pos + 1].text == "[":
                matrix = self.try_matrix_literal()
                if matrix is not None:
                    return matrix
            self.advance()
            left = self.parse_expr()
            self.expect(",")
            right = self.parse_expr()
            self.expect("]")
            return CommutatorNode(left, right)
        if tok.kind == "int":
            return self.parse_scalar_literal(allow_sign=False)
        if tok.kind == "name":
            self.advance()
            if tok.text == "X":
                return XVar()
            if tok.text == "ad" and self.peek().text == "(":
                self.advance()
                e = self.parse_expr()
                self.expect(",")
                x = self.parse_expr()
                self.expect(",")
                depth = self.parse_int()
                self.expect(")")
                return AdCall(e, x, depth)
            if tok.text == "d" and self.peek().text == "(":
                self.advance()
                operand = self.parse_expr()
                self.expect(")")
                return DCall(operand)
            return Name(tok.text)
        self.fail(f"unexpected token {tok.text or 'end of input'!r}")


def parse(text: str):
    """Parse a single expression; raises ParseError with position info."""
    parser = _Parser(tokenize(text))
    node = parser.parse_expr()
    tok = parser.peek()
    if tok.kind != "end":
        raise ParseError(f"trailing input starting at {tok.text!r}", tok.line, tok.column)
    return node


# -- evaluation ---------------------------------------------------------------


class EvalError(MismatchError):
    """Semantic error while evaluating a parsed expression."""


class Evaluator:
    """Evaluates parsed expressions to Scalar / Matrix / UnitalElement / OrePoly.

    ``bindings`` maps identifiers to values; ``ring``/``derivation`` supply
    the coefficient-ring context needed by ``X``, ``d(...)`` and any
    arithmetic that mixes scalars into matrices.
    """

    def __init__(self, field, bindings=None, ring=None, derivation=None):
        self.field = field
        self.bindings = dict(bindings or {})
        self.ring = ring
        self.derivation = derivation

    # value promotion helpers

    def _require_ring(self, why: str):
        if self.ring is None:
            raise EvalError(f"{why} requires a coefficient ring context")
        return self.ring

    def _require_derivation(self, why: str):
        if self.derivation is None:
            raise EvalError(f"{why} requires a derivation context")
        return self.derivation

    def _to_poly(self, value) -> OrePoly:
        ring = self._require_ring("polynomial arithmetic")
        if isinstance(value, OrePoly):
            return value
        if isinstance(value, UnitalElement):
            return OrePoly.constant(value)
        if isinstance(value, Matrix):
            return OrePoly.constant(ring.element(value))
        if isinstance(value, Scalar):
            return OrePoly.constant(ring.scalar_element(value))
        raise EvalError(f"cannot use {type(value).__name__} as a polynomial")

    def _to_element(self, value) -> UnitalElement:
        ring = self._require_ring("mixed scalar/matrix arithmetic")
        if isinstance(value, UnitalElement):
            return value
        if isinstance(value, Matrix):
            return ring.element(value)
        if isinstance(value, Scalar):
            return ring.scalar_element(value)
        raise EvalError(f"cannot lift {type(value).__name__} into the coefficient ring")

    def binop(self, op: str, a, b):
        if isinstance(a, OrePoly) or isinstance(b, OrePoly):
            fa, fb = self._to_poly(a), self._to_poly(b)
            if op == "+":
                return fa + fb
            if op == "-":
                return fa - fb
            return ore_mul(fa, fb, self._require_derivation("polynomial products"))
        if isinstance(a, UnitalElement) or isinstance(b, UnitalElement):
            ea, eb = self._to_element(a), self._to_element(b)
            return {"+": ea + eb, "-": ea - eb, "*": ea * eb}[op]
        if isinstance(a, Scalar) and isinstance(b, Scalar):
            return {"+": a + b, "-": a - b, "*": a * b}[op]
        if isinstance(a, Matrix) and isinstance(b, Matrix):
            return {"+": a + b, "-": a - b, "*": a * b}[op]
        # scalar with matrix
        if isinstance(a, Scalar) and isinstance(b, Matrix):
            if op == "*":
                return b.scale(a)
            return self.binop(op, self._to_element(a), self._to_element(b))
        if isinstance(a, Matrix) and isinstance(b, Scalar):
            if op == "*":
                return a.scale(b)
            return self.binop(op, self._to_element(a), self._to_element(b))
        raise EvalError(
            f"cannot combine {type(a).__name__} and {type(b).__name__} with {op!r}"
        )

    def negate(self, a):
        if isinstance(a, (Scalar, Matrix, UnitalElement, OrePoly)):
            return -a
        raise EvalError(f"cannot negate {type(a).__name__}")

    def power(self, a, n: int):
        if n < 0:
            raise EvalError("negative powers are not supported")
        if isinstance(a, Matrix):
            return a**n
        if isinstance(a, Scalar):
            result = a.field.scalar(1)
            for _ in range(n):
                result = result * a
            return result
        if isinstance(a, OrePoly):
            return ore_pow(a, n, self._require_derivation("polynomial powers"))
        if isinstance(a, UnitalElement):
            if n == 0:
                return a.ring.one_element
            result = a
            for _ in range(n - 1):
                result = result * a
            return result
        raise EvalError(f"cannot raise {type(a).__name__} to a power")

    def scalar_from_literal(self, node) -> Scalar:
        if isinstance(node, IntLit):
            return self.field.scalar(node.value)
        if isinstance(node, RatLit):
            return self.field.scalar(Fraction(node.num, node.den))
        if isinstance(node, ModLit):
            if not isinstance(self.field, PrimeField) or self.field.p != node.modulus:
                raise EvalError(
                    f"literal mod {node.modulus} conflicts with the active field "
                    f"{self.field.name}"
                )
            return self.field.scalar(node.value)
        raise EvalError("not a scalar literal")

    def evaluate(self, node):
        if isinstance(node, (IntLit, RatLit, ModLit)):
            return self.scalar_from_literal(node)
        if isinstance(node, MatrixLit):
            rows = [
                [self.scalar_from_literal(entry) for entry in row]
                for row in node.rows
            ]
            return Matrix.from_rows(rows, field=self.field)
        if isinstance(node, Name):
            try:
                return self.bindings[node.ident]
            except KeyError:
                raise EvalError(f"unknown identifier {node.ident!r}") from None
        if isinstance(node, XVar):
            ring = self._require_ring("the indeterminate X")
            return OrePoly.indeterminate(ring)
        if isinstance(node, Neg):
            return self.negate(self.evaluate(node.operand))
        if isinstance(node, BinOp):
            return self.binop(node.op, self.evaluate(node.left), self.evaluate(node.right))
        if isinstance(node, Pow):
            return self.power(self.evaluate(node.base), node.exponent)
        if isinstance(node, CommutatorNode):
            a = self.evaluate(node.left)
            b = self.evaluate(node.right)
            return self.binop("-", self.binop("*", a, b), self.binop("*", b, a))
        if isinstance(node, AdCall):
            e = self.evaluate(node.e)
            x = self.evaluate(node.x)
            current = e
            for _ in range(node.depth):
                current = self.binop(
                    "-", self.binop("*", current, x), self.binop("*", x, current)
                )
            return current
        if isinstance(node, DCall):
            deriv = self._require_derivation("d(...)")
            value = self.evaluate(node.operand)
            if isinstance(value, Matrix):
                return deriv.apply_matrix(value)
            if isinstance(value, UnitalElement):
                return deriv.apply(value)
            raise EvalError("d(...) applies to coefficient-ring elements")
        raise EvalError(f"cannot evaluate node {node!r}")


def evaluate(text: str, field, bindings=None, ring=None, derivation=None):
    """Parse and evaluate in one step."""
    return Evaluator(field, bindings, ring, derivation).evaluate(parse(text))


def format_value(value) -> str:
    """Canonical text for any computed value; reparses to an equal value."""
    if isinstance(value, (Scalar, Matrix, OrePoly)):
        return str(value)
    if isinstance(value, UnitalElement):
        if value.is_pure_scalar():
            return value.ring.field.format(value.lam)
        body = str(value.ring_part())
        if value.lam:
            return f"({value.ring.field.format(value.lam)} + {body})"
        return body
    raise TypeError(f"cannot format {type(value).__name__}")
