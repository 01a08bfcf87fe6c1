"""
File:           parser.py
Created on:     13/10/26, 10:40 am

Recursive descent parser for constraint expressions G(Ec, Eh).

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := primary ("^" unary)?             right associative
    primary := NUMBER | VARIABLE | PARAMETER | FUNC "(" expr ")" | "(" expr ")"

Binding strength: ^ over unary minus over * / over + -.
"""
from typing import Iterable, List, Optional, FrozenSet, Union
from dataclasses import dataclass
import math

from src.constraint_dsl.tokenizer import Token, TokenType, ConstraintSyntaxError


VARIABLES = ("Ec", "Eh")
RESERVED_PARAMS = frozenset({"alpha", "d", "s", "eta_c"})
FUNCTIONS = frozenset({"sqrt", "log", "exp", "inv"})


class UnknownIdentifierError(ConstraintSyntaxError):
    pass


@dataclass(frozen=True)
class Number:
    value: float

    def to_source(self) -> str:
        return repr(self.value)


@dataclass(frozen=True)
class Variable:
    name: str           # Ec or Eh

    def to_source(self) -> str:
        return self.name


@dataclass(frozen=True)
class Parameter:
    name: str

    def to_source(self) -> str:
        return self.name


@dataclass(frozen=True)
class UnaryOp:
    op: str
    operand: "Node"

    def to_source(self) -> str:
        return f"(-{self.operand.to_source()})"


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "Node"
    right: "Node"

    def to_source(self) -> str:
        return f"({self.left.to_source()} {self.op} {self.right.to_source()})"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Node"

    def to_source(self) -> str:
        return f"{self.func}({self.arg.to_source()})"


Node = Union[Number, Variable, Parameter, UnaryOp, BinaryOp, Call]


class Parser:
    """ Turns a token list into an expression tree """

    def __init__(
            self,
            tokens: List[Token],
            declared_params: Iterable[str] = (),
            text_length: int = 0
    ):
        self._tokens = tokens
        self._index = 0
        self._params: FrozenSet[str] = RESERVED_PARAMS | frozenset(declared_params)
        # Position reported for "unexpected end of input"
        end = tokens[-1].position + len(tokens[-1].text) if tokens else 1
        self._end_position = max(end, text_length + 1)

    def parse(self) -> Node:
        if not self._tokens:
            raise ConstraintSyntaxError("Empty expression", 1)
        node = self._expr()
        token = self._peek()
        if token is not None:
            raise ConstraintSyntaxError(f"Unexpected token {token.text!r}", token.position)
        return node

    def _peek(self) -> Optional[Token]:
        if self._index < len(self._tokens):
            return self._tokens[self._index]
        return None

    def _advance(self) -> Token:
        token = self._peek()
        if token is None:
            raise ConstraintSyntaxError("Unexpected end of expression", self._end_position)
        self._index += 1
        return token

    def _accept(self, *types: TokenType) -> Optional[Token]:
        token = self._peek()
        if token is not None and token.type in types:
            self._index += 1
            return token
        return None

    def _expect(self, token_type: TokenType) -> Token:
        token = self._advance()
        if token.type != token_type:
            raise ConstraintSyntaxError(
                f"Expected {token_type.value!r} but found {token.text!r}", token.position
            )
        return token

    def _expr(self) -> Node:
        node = self._term()
        while True:
            token = self._accept(TokenType.PLUS, TokenType.MINUS)
            if token is None:
                return node
            node = BinaryOp(token.text, node, self._term())

    def _term(self) -> Node:
        node = self._unary()
        while True:
            token = self._accept(TokenType.STAR, TokenType.SLASH)
            if token is None:
                return node
            node = BinaryOp(token.text, node, self._unary())

    def _unary(self) -> Node:
        if self._accept(TokenType.MINUS):
            return UnaryOp("-", self._unary())
        return self._power()

    def _power(self) -> Node:
        base = self._primary()
        if self._accept(TokenType.CARET):
            return BinaryOp("^", base, self._unary())
        return base

    def _primary(self) -> Node:
        token = self._advance()
        if token.type == TokenType.NUMBER:
            value = float(token.text)
            if not math.isfinite(value):
                raise ConstraintSyntaxError(f"Number {token.text!r} out of range", token.position)
            return Number(value)
        if token.type == TokenType.LPAREN:
            node = self._expr()
            self._expect(TokenType.RPAREN)
            return node
        if token.type == TokenType.IDENT:
            return self._identifier(token)
        raise ConstraintSyntaxError(f"Unexpected token {token.text!r}", token.position)

    def _identifier(self, token: Token) -> Node:
        name = token.text
        if name in FUNCTIONS:
            self._expect(TokenType.LPAREN)
            arg = self._expr()
            self._expect(TokenType.RPAREN)
            return Call(name, arg)
        if name in VARIABLES:
            return Variable(name)
        if name in self._params:
            return Parameter(name)
        raise UnknownIdentifierError(f"Unknown identifier {name!r}", token.position)


def parse(tokens: List[Token], declared_params: Iterable[str] = (), text_length: int = 0) -> Node:
    """ Parse a token list from tokenize into an expression tree """
    return Parser(tokens, declared_params, text_length).parse()


def to_source(node: Node) -> str:
    """ Fully parenthesised source; parse(tokenize(to_source(n))) == n """
    return node.to_source()


def walk(node: Node):
    """ Pre-order traversal """
    yield node
    if isinstance(node, UnaryOp):
        yield from walk(node.operand)
    elif isinstance(node, BinaryOp):
        yield from walk(node.left)
        yield from walk(node.right)
    elif isinstance(node, Call):
        yield from walk(node.arg)


def parameter_names(node: Node) -> FrozenSet[str]:
    return frozenset(item.name for item in walk(node) if isinstance(item, Parameter))
