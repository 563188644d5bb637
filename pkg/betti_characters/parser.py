"""
Parser for the polynomial expression language used in problem files and rendered output.

    expression := expression ('+' | '-') expression
                | expression ('*' | '/') expression
                | ('-' | '+') expression
                | atom '^' INTEGER
                | INTEGER | IDENTIFIER | '(' expression ')'

'^' binds tighter than the unary signs, which bind tighter than '*' and '/', which bind tighter than '+' and '-'.
Multiplication is always written out. Division is only defined by nonzero constants.
"""
from __future__ import annotations

import re
from collections import namedtuple
from typing import Callable, Generic, Iterator, List, TypeVar

from betti_characters.exceptions import DivisionByZero, ParseError
from betti_characters.fields import FieldElement, FieldSpec
from betti_characters.polyring import Polynomial, RingContext

Token = namedtuple('Token', 'kind text position')

_TOKEN_PATTERN = re.compile(r'\s*(?:(?P<integer>\d+)|(?P<identifier>[A-Za-z_][A-Za-z0-9_]*)|(?P<symbol>[-+*/^()]))')

# binary operator -> (precedence, right associative)
_BINARY = {
    '+': (1, False),
    '-': (1, False),
    '*': (2, False),
    '/': (2, False),
    '^': (4, True),
}
_UNARY_PRECEDENCE = 3

V = TypeVar('V')


def tokenize(source: str) -> Iterator[Token]:
    position = 0
    while position < len(source):
        match = _TOKEN_PATTERN.match(source, position)
        if match is None or match.end() == position:
            if source[position:].strip() == '':
                break
            offset = position + len(source[position:]) - len(source[position:].lstrip())
            raise ParseError("Unexpected character '{char}'".format(char=source[offset]), offset)
        kind = match.lastgroup
        yield Token(kind, match.group(kind), match.start(kind))
        position = match.end()
    yield Token('end', '', len(source))


class _Parser(Generic[V]):
    """
    Precedence climbing over a token list. Values are built bottom-up through the callbacks, so the same parser
    produces polynomials or field elements.
    """

    def __init__(self, source: str, integer: Callable[[int], V], identifier: Callable[[Token], V],
                 is_constant: Callable[[V], bool], to_scalar: Callable[[V], object]):
        self.tokens: List[Token] = list(tokenize(source))
        self.index = 0
        self.integer = integer
        self.identifier = identifier
        self.is_constant = is_constant
        self.to_scalar = to_scalar

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def parse(self) -> V:
        if self.current.kind == 'end':
            raise ParseError('Empty expression', self.current.position)
        value = self.expression(0)
        if self.current.kind != 'end':
            raise ParseError("Unexpected '{text}', expected an operator".format(text=self.current.text),
                             self.current.position)
        return value

    def expression(self, min_precedence: int) -> V:
        left = self.prefix()
        while True:
            token = self.current
            if token.kind != 'symbol' or token.text not in _BINARY:
                if token.kind in ('integer', 'identifier') or token.text == '(':
                    raise ParseError("Missing operator before '{text}'".format(text=token.text), token.position)
                return left
            precedence, right_associative = _BINARY[token.text]
            if precedence < min_precedence:
                return left
            self.advance()
            if token.text == '^':
                left = self.power(left, token)
                continue
            right = self.expression(precedence if right_associative else precedence + 1)
            left = self.apply(token, left, right)

    def prefix(self) -> V:
        token = self.advance()
        if token.kind == 'integer':
            return self.integer(int(token.text))
        if token.kind == 'identifier':
            return self.identifier(token)
        if token.text == '(':
            value = self.expression(0)
            closing = self.advance()
            if closing.text != ')':
                raise ParseError('Unbalanced parentheses', closing.position)
            return value
        if token.text in ('-', '+'):
            operand = self.expression(_UNARY_PRECEDENCE)
            return -operand if token.text == '-' else operand  # type: ignore
        if token.kind == 'end':
            raise ParseError('Unexpected end of expression', token.position)
        raise ParseError("Unexpected '{text}'".format(text=token.text), token.position)

    def power(self, base: V, operator_token: Token) -> V:
        exponent = self.advance()
        if exponent.kind != 'integer':
            raise ParseError('Exponent must be a non-negative integer literal', exponent.position)
        return base ** int(exponent.text)  # type: ignore

    def apply(self, token: Token, left: V, right: V) -> V:
        if token.text == '+':
            return left + right  # type: ignore
        if token.text == '-':
            return left - right  # type: ignore
        if token.text == '*':
            return left * right  # type: ignore
        if not self.is_constant(right):
            raise ParseError('Division by a non-constant expression', token.position)
        try:
            return left / self.to_scalar(right)  # type: ignore
        except DivisionByZero:
            raise ParseError('Division by zero', token.position) from None


def parse_polynomial(source: str, ring: RingContext) -> Polynomial:
    """
    Parse an expression over the variables of `ring` and the generator of its coefficient field.
    """
    field = ring.field

    def identifier(token: Token) -> Polynomial:
        if token.text in ring.variables:
            return ring.variable(ring.variables.index(token.text))
        if token.text == field.generator:
            return ring.constant(field.gen())
        raise ParseError("Unknown identifier '{name}'".format(name=token.text), token.position)

    parser = _Parser(source, ring.constant, identifier, Polynomial.is_constant, Polynomial.constant_term)
    return parser.parse()


def parse_field_element(source: str, field: FieldSpec) -> FieldElement:
    """
    Parse a constant expression in the generator of `field`.
    """

    def identifier(token: Token) -> FieldElement:
        if token.text == field.generator:
            return field.gen()
        raise ParseError("Unknown identifier '{name}'".format(name=token.text), token.position)

    parser = _Parser(source, field.from_rational, identifier, lambda value: True, lambda value: value)
    return parser.parse()


poly_parse = parse_polynomial
