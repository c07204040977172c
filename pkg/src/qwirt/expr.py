"""Expression language for slice polynomials.

Grammar (whitespace insensitive):

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := var | '~' var | 'conj(' var ')' | qlit | '(' expr ')'
    var    := 'x' nat
    qlit   := rational ['i'|'j'|'k'] | 'i' | 'j' | 'k'

``*`` always denotes the slice product; multi-component quaternion literals
arise from sums, e.g. ``1+2i``.  Lowering is total on well-formed trees and
multiplies factors in source order.
"""

import re
from fractions import Fraction

from .quaternion import Quaternion
from .slicefn import variable, conj_variable, constant

I_UNIT = Quaternion(0, 1)
J_UNIT = Quaternion(0, 0, 1)
K_UNIT = Quaternion(0, 0, 0, 1)
_UNIT_VALUES = {"i": I_UNIT, "j": J_UNIT, "k": K_UNIT}


class ExpressionSyntaxError(ValueError):
    """Malformed expression text; carries the byte offset of the problem."""

    def __init__(self, message, offset):
        super().__init__("%s (offset %d)" % (message, offset))
        self.offset = offset


class ArityError(ValueError):
    """A variable index exceeded the ambient number of variables."""


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<var>x(?P<varidx>\d+))
  | (?P<conj>conj)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<unit>[ijk])
  | (?P<op>[+\-*^()~])
""", re.VERBOSE)


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if not match:
            raise ExpressionSyntaxError("unexpected character %r" % text[pos], pos)
        if not match.group("ws"):
            if match.group("var"):
                tokens.append(("var", int(match.group("varidx")), pos))
            elif match.group("conj"):
                tokens.append(("conj", "conj", pos))
            elif match.group("number"):
                tokens.append(("number", Fraction(match.group("number")), pos))
            elif match.group("unit"):
                tokens.append(("unit", match.group("unit"), pos))
            else:
                tokens.append(("op", match.group("op"), pos))
        pos = match.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, value, offset = self.peek()
        if kind != "op" or value != op:
            raise ExpressionSyntaxError("expected %r" % op, offset)
        return self.advance()

    def parse_expression(self):
        kind, value, _ = self.peek()
        negate = False
        if kind == "op" and value in "+-":
            negate = value == "-"
            self.advance()
        node = self.parse_term()
        if negate:
            node = ("neg", node)
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value in "+-":
                self.advance()
                right = self.parse_term()
                node = ("add" if value == "+" else "sub", node, right)
            else:
                return node

    def parse_term(self):
        node = self.parse_factor()
        while True:
            kind, value, _ = self.peek()
            if kind == "op" and value == "*":
                self.advance()
                node = ("mul", node, self.parse_factor())
            else:
                return node

    def parse_factor(self):
        node = self.parse_atom()
        kind, value, offset = self.peek()
        if kind == "op" and value == "^":
            self.advance()
            kind, value, offset = self.peek()
            if kind != "number" or value.denominator != 1:
                raise ExpressionSyntaxError("exponent must be a natural number",
                                            offset)
            self.advance()
            node = ("pow", node, int(value))
        return node

    def parse_atom(self):
        kind, value, offset = self.advance()
        if kind == "var":
            return ("var", value)
        if kind == "op" and value == "~":
            kind, value, offset = self.advance()
            if kind != "var":
                raise ExpressionSyntaxError("expected a variable after '~'", offset)
            return ("cvar", value)
        if kind == "conj":
            self.expect_op("(")
            kind, value, offset = self.advance()
            if kind != "var":
                raise ExpressionSyntaxError("expected a variable in conj()", offset)
            self.expect_op(")")
            return ("cvar", value)
        if kind == "number":
            nxt_kind, nxt_value, _ = self.peek()
            if nxt_kind == "unit":
                self.advance()
                return ("const", _UNIT_VALUES[nxt_value] * value)
            return ("const", Quaternion(value))
        if kind == "unit":
            return ("const", _UNIT_VALUES[value])
        if kind == "op" and value == "(":
            node = self.parse_expression()
            self.expect_op(")")
            return node
        raise ExpressionSyntaxError("expected a variable, literal or '('", offset)


def parse(text):
    """Parse to a tree of tuples; raises ExpressionSyntaxError with offset."""
    parser = _Parser(tokenize(text))
    node = parser.parse_expression()
    kind, _, offset = parser.peek()
    if kind != "end":
        raise ExpressionSyntaxError("trailing input", offset)
    return node


def max_variable_index(node):
    kind = node[0]
    if kind in ("var", "cvar"):
        return node[1]
    if kind == "const":
        return 0
    if kind == "neg":
        return max_variable_index(node[1])
    if kind == "pow":
        return max_variable_index(node[1])
    return max(max_variable_index(node[1]), max_variable_index(node[2]))


def lower(node, n):
    """Lower a parse tree to a SliceFunction in n variables."""
    kind = node[0]
    if kind == "var" or kind == "cvar":
        m = node[1]
        if not 1 <= m <= n:
            raise ArityError("variable x%d exceeds the ambient count n=%d" % (m, n))
        return variable(n, m) if kind == "var" else conj_variable(n, m)
    if kind == "const":
        return constant(n, node[1])
    if kind == "neg":
        return -lower(node[1], n)
    if kind == "pow":
        return lower(node[1], n) ** node[2]
    left = lower(node[1], n)
    right = lower(node[2], n)
    if kind == "add":
        return left + right
    if kind == "sub":
        return left - right
    if kind == "mul":
        return left * right
    raise ValueError("unknown node kind %r" % kind)


def parse_slice(text, n=None):
    """Parse and lower in one step; n defaults to the largest variable index."""
    node = parse(text)
    inferred = max_variable_index(node)
    ambient = n if n is not None else max(inferred, 1)
    return lower(node, ambient)
