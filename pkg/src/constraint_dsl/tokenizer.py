"""
File:           tokenizer.py
Created on:     13/10/26, 10:12 am
"""
from typing import List
from dataclasses import dataclass
from enum import Enum
import re

from src.utils.errors import OttoEngineError


class ConstraintError(OttoEngineError):
    pass


class ConstraintSyntaxError(ConstraintError):
    """ Raised with the 1-based column of the offending character or token """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class TokenType(Enum):
    NUMBER = "number"
    IDENT = "ident"
    PLUS = "+"
    MINUS = "-"
    STAR = "*"
    SLASH = "/"
    CARET = "^"
    LPAREN = "("
    RPAREN = ")"
    COMMA = ","


@dataclass(frozen=True)
class Token:
    type: TokenType
    text: str
    position: int           # 1-based column

    def __repr__(self):
        return f"({self.type.value}, {self.text!r}, {self.position})"


# Decimal with optional exponent: 1, 1.5, .5, 2e-3, 1.E4
NUMBER_RE = re.compile(r"(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?")
IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
SINGLE_CHAR_TOKENS = {token_type.value: token_type for token_type in TokenType
                      if token_type not in (TokenType.NUMBER, TokenType.IDENT)}


def tokenize(text: str) -> List[Token]:
    """ Split constraint source into tokens. Whitespace is skipped, no end marker is appended """
    tokens: List[Token] = []
    index = 0
    while index < len(text):
        char = text[index]
        if char.isspace():
            index += 1
            continue
        if char in SINGLE_CHAR_TOKENS:
            tokens.append(Token(SINGLE_CHAR_TOKENS[char], char, index + 1))
            index += 1
            continue
        match = NUMBER_RE.match(text, index)
        if match:
            tokens.append(Token(TokenType.NUMBER, match.group(0), index + 1))
            index = match.end()
            continue
        match = IDENT_RE.match(text, index)
        if match:
            tokens.append(Token(TokenType.IDENT, match.group(0), index + 1))
            index = match.end()
            continue
        raise ConstraintSyntaxError(f"Illegal character {char!r}", index + 1)
    return tokens
