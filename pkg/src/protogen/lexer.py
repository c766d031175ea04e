"""Lexer for the fluent-API specification language.

Tokens are names (``[a-zA-Z][a-zA-Z0-9_]*``), the keywords ``class``,
``static``, ``extends`` and ``return``, and punctuation. ``//`` starts a
line comment. Whitespace is insignificant.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum


class TokenType(Enum):
    NAME = "name"
    KW_CLASS = "class"
    KW_STATIC = "static"
    KW_EXTENDS = "extends"
    KW_RETURN = "return"
    LBRACE = "{"
    RBRACE = "}"
    LPAREN = "("
    RPAREN = ")"
    LANGLE = "<"
    RANGLE = ">"
    LBRACKET = "["
    RBRACKET = "]"
    COMMA = ","
    SEMI = ";"
    DOT = "."
    ELLIPSIS = "..."
    PIPE = "|"
    QUESTION = "?"
    STAR = "*"
    PLUS = "+"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    type: TokenType
    value: str
    line: int
    col: int


class LexError(Exception):
    """A character that starts no token."""

    def __init__(self, message: str, line: int, col: int) -> None:
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


KEYWORDS = {
    "class": TokenType.KW_CLASS,
    "static": TokenType.KW_STATIC,
    "extends": TokenType.KW_EXTENDS,
    "return": TokenType.KW_RETURN,
}

_PUNCT = {
    "{": TokenType.LBRACE,
    "}": TokenType.RBRACE,
    "(": TokenType.LPAREN,
    ")": TokenType.RPAREN,
    "<": TokenType.LANGLE,
    ">": TokenType.RANGLE,
    "[": TokenType.LBRACKET,
    "]": TokenType.RBRACKET,
    ",": TokenType.COMMA,
    ";": TokenType.SEMI,
    ".": TokenType.DOT,
    "|": TokenType.PIPE,
    "?": TokenType.QUESTION,
    "*": TokenType.STAR,
    "+": TokenType.PLUS,
}

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens. Empty input yields an empty list.

    Raises LexError on any character that cannot start a token.
    """
    tokens: list[Token] = []
    pos = 0
    line = 1
    line_start = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if ch in " \t\r\f\v":
            pos += 1
            continue
        col = pos - line_start + 1
        if text.startswith("//", pos):
            end = text.find("\n", pos)
            pos = n if end < 0 else end
            continue
        if text.startswith("...", pos):
            tokens.append(Token(TokenType.ELLIPSIS, "...", line, col))
            pos += 3
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, col))
            pos += 1
            continue
        m = _NAME_RE.match(text, pos)
        if m:
            value = m.group()
            tokens.append(Token(KEYWORDS.get(value, TokenType.NAME), value, line, col))
            pos = m.end()
            continue
        raise LexError(f"unexpected character {ch!r}", line, col)
    return tokens
