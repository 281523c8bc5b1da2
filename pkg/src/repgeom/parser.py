"""Recursive-descent parser for the ASCII expression language.

Ring expressions::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := INT ['/' INT] | 'y'INT ['^' EXP] | '(' expr ')' ['^' EXP]

A caret is only allowed on a group element (a word with coefficient 1).
Module expressions::

    mexpr   := mterm (('+' | '-') mterm)*
    mterm   := '-' mterm | [INT '*'] mprimary ('o' factor)*
    mprimary:= 'x'INT | '(' mexpr ')'

``x1`` alone means ``x1 o 1``; ``0`` is the zero element.
"""

import re
from fractions import Fraction

from .errors import ParseError
from .ring import FreeModuleElement, GroupRingElement
from .words import Word

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<var>[xy]\d+)|(?P<o>o\b)|(?P<op>[-+*/^()]))")


def tokenize(text):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        value = m.group(kind)
        out.append((kind, value, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, field):
        self.text = text
        self.field = field
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers

    def peek(self):
        return self.tokens[self.i]

    def at(self, kind, value=None):
        k, v, _ = self.tokens[self.i]
        return k == kind and (value is None or v == value)

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind, value=None):
        if not self.at(kind, value):
            _, v, pos = self.peek()
            want = value or kind
            got = "end of input" if v is None else repr(v)
            raise ParseError(f"expected {want}, got {got}", pos)
        return self.take()

    def finish(self):
        if not self.at("end"):
            _, v, pos = self.peek()
            raise ParseError(f"unexpected {v!r}", pos)

    # -- ring grammar

    def expr(self):
        left = self.term()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.take()[1]
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.at("op", "*"):
            self.take()
            left = left * self.unary()
        return left

    def unary(self):
        if self.at("op", "-"):
            self.take()
            return -self.unary()
        return self.factor()

    def exponent(self):
        neg = False
        if self.at("op", "-"):
            self.take()
            neg = True
        _, v, pos = self.expect("int")
        e = -int(v) if neg else int(v)
        if e == 0:
            raise ParseError("exponent must be nonzero", pos)
        return e

    def factor(self):
        kind, v, pos = self.peek()
        if kind == "int":
            self.take()
            value = Fraction(int(v))
            if self.at("op", "/"):
                self.take()
                _, d, dpos = self.expect("int")
                if int(d) == 0:
                    raise ParseError("division by zero", dpos)
                value = Fraction(int(v), int(d))
            if self.at("op", "^"):
                raise ParseError("exponent on non-invertible expression", self.peek()[2])
            return GroupRingElement.scalar(self.field, value)
        if kind == "var" and v[0] == "y":
            self.take()
            i = int(v[1:])
            if i < 1:
                raise ParseError("generator indices start at 1", pos)
            e = 1
            if self.at("op", "^"):
                self.take()
                e = self.exponent()
            return GroupRingElement.from_word(self.field, Word.gen(i, e))
        if kind == "op" and v == "(":
            self.take()
            inner = self.expr()
            self.expect("op", ")")
            if self.at("op", "^"):
                caret = self.take()[2]
                w = inner.as_word()
                if w is None:
                    raise ParseError("exponent on non-invertible expression", caret)
                return GroupRingElement.from_word(self.field, w ** self.exponent())
            return inner
        if kind == "var":
            raise ParseError(f"module variable {v} inside a ring expression", pos)
        got = "end of input" if v is None else repr(v)
        raise ParseError(f"expected a term, got {got}", pos)

    # -- module grammar

    def mexpr(self):
        left = self.mterm()
        while self.at("op", "+") or self.at("op", "-"):
            op = self.take()[1]
            right = self.mterm()
            left = left + right if op == "+" else left - right
        return left

    def mterm(self):
        if self.at("op", "-"):
            self.take()
            return -self.mterm()
        scale = None
        if self.at("int"):
            _, v, pos = self.take()
            if not self.at("op", "*"):
                if int(v) == 0:
                    return FreeModuleElement.zero(self.field)
                raise ParseError("a bare scalar is not a module element", pos)
            self.take()
            scale = int(v)
        base = self.mprimary()
        while self.at("o"):
            self.take()
            base = base.act(self.factor())
        return base.scale(scale) if scale is not None else base

    def mprimary(self):
        kind, v, pos = self.peek()
        if kind == "var" and v[0] == "x":
            self.take()
            k = int(v[1:])
            if k < 1:
                raise ParseError("module generator indices start at 1", pos)
            return FreeModuleElement.basis(self.field, k)
        if kind == "op" and v == "(":
            self.take()
            inner = self.mexpr()
            self.expect("op", ")")
            return inner
        got = "end of input" if v is None else repr(v)
        raise ParseError(f"expected a module variable, got {got}", pos)


def parse_ring_expr(text, field):
    p = _Parser(text, field)
    try:
        out = p.expr()
    except ZeroDivisionError as exc:
        raise ParseError(str(exc)) from None
    p.finish()
    return out


def parse_module_expr(text, field):
    p = _Parser(text, field)
    out = p.mexpr()
    p.finish()
    return out


def parse_word(text):
    """A group word such as ``y1*y2^-1``; ``1`` is the identity."""
    from .field import QQ
    u = parse_ring_expr(text, QQ)
    w = u.as_word()
    if w is None:
        raise ParseError(f"{text!r} is not a group word")
    return w
