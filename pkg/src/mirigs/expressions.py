"""Rig expression syntax.

Grammar (whitespace-insensitive, multiplication binds tighter than addition):

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := NAT | LETTER | '(' expr ')'
    NAT    := [0-9]+        LETTER := [a-z]
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import ParseError


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Gen:
    index: int


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


Node = Union[Const, Gen, Add, Mul]


def parse_expression(text: str) -> Node:
    pos = 0

    def skip_ws():
        nonlocal pos
        while pos < len(text) and text[pos].isspace():
            pos += 1

    def peek():
        skip_ws()
        return text[pos] if pos < len(text) else ""

    def factor() -> Node:
        nonlocal pos
        ch = peek()
        if ch == "(":
            pos += 1
            e = expr()
            if peek() != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return e
        if ch.isdigit():
            start = pos
            while pos < len(text) and text[pos].isdigit():
                pos += 1
            return Const(int(text[start:pos]))
        if "a" <= ch <= "z":
            pos += 1
            return Gen(ord(ch) - ord("a"))
        raise ParseError("expected a number, generator, or '('", pos)

    def term() -> Node:
        nonlocal pos
        out = factor()
        while peek() == "*":
            pos += 1
            out = Mul(out, factor())
        return out

    def expr() -> Node:
        nonlocal pos
        out = term()
        while peek() == "+":
            pos += 1
            out = Add(out, term())
        return out

    out = expr()
    skip_ws()
    if pos != len(text):
        raise ParseError("trailing input after expression", pos)
    return out


def max_generator(e: Node) -> int:
    """Largest generator index used, or -1 for a constant expression."""
    if isinstance(e, Gen):
        return e.index
    if isinstance(e, Const):
        return -1
    return max(max_generator(e.left), max_generator(e.right))
