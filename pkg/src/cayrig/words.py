"""Tiny expression grammar for element words: names, `*`, `^int`, parens.

Examples: "r^2*f", "s1*s2^-1", "(i*j)^2".  Names resolve through the
group's named generators (plus backend hooks, e.g. integers for cyclic
groups).
"""

from __future__ import annotations

import re

from .errors import PreconditionError

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<int>-?\d+)"
                    r"|(?P<op>[*^()]))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PreconditionError(f"bad element word near {text[pos:]!r}")
        if m.lastgroup == "name":
            out.append(("name", m.group("name")))
        elif m.lastgroup == "int":
            out.append(("int", int(m.group("int"))))
        else:
            out.append(("op", m.group("op")))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, group, tokens):
        self.group = group
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse_expr(self):
        value = self.parse_atom()
        while True:
            tok = self.peek()
            if tok == ("op", "*"):
                self.take()
                value = self.group.mul(value, self.parse_atom())
            else:
                return value

    def parse_atom(self):
        value = self.parse_primary()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok is None or tok[0] != "int":
                raise PreconditionError("exponent must be an integer")
            value = self.group.power(value, tok[1])
        return value

    def parse_primary(self):
        tok = self.take()
        if tok is None:
            raise PreconditionError("unexpected end of element word")
        kind, val = tok
        if kind == "op" and val == "(":
            value = self.parse_expr()
            if self.take() != ("op", ")"):
                raise PreconditionError("unbalanced parentheses in word")
            return value
        if kind in ("name", "int"):
            try:
                return self.group.element_from_token(str(val))
            except KeyError:
                raise PreconditionError(
                    f"unknown element name {val!r} in {self.group.name}") from None
        raise PreconditionError(f"unexpected token {val!r} in element word")


def parse_element(group, text: str):
    """Evaluate an element word in the given group."""
    tokens = _tokenize(text)
    if not tokens:
        raise PreconditionError("empty element word")
    parser = _Parser(group, tokens)
    value = parser.parse_expr()
    if parser.peek() is not None:
        raise PreconditionError(f"trailing junk in element word {text!r}")
    return value
