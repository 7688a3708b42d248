"""Hand-rolled lexer and recursive-descent parsers for both grammars.

FO:  `E x.` / `A x.` quantifiers, bounded forms `(E y > x)`, `(A y < x)`,
     `(A y in (x,z))`, booleans `! & | ->`, atoms `P(x)`, `x < y`,
     `x = y` (and `x > y` as sugar for the flipped `<`).
TL:  atoms, `true`/`false`, `! & | ->`, right-associative `U`/`S`, and
     the derived prefixes `G`, `H`, `K+`, `K-` which expand immediately.

Precedence, loosest to tightest: `->`, `|`, `&`, `U`/`S`, `!`/prefix
modalities.  Quantifier bodies extend as far to the right as possible.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fo, tl


class ParseError(ValueError):
    """Syntax error with 1-based line/column position."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


_PUNCT = {
    "(": "lparen",
    ")": "rparen",
    ".": "dot",
    ",": "comma",
    "<": "lt",
    ">": "gt",
    "=": "eq",
    "!": "bang",
    "&": "amp",
    "|": "pipe",
    "+": "plus",
    "-": "minus",
}


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(_Token("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c == "-" and i + 1 < n and text[i + 1] == ">":
            tokens.append(_Token("arrow", "->", line, col))
            i += 2
            col += 2
            continue
        if c in _PUNCT:
            tokens.append(_Token(_PUNCT[c], c, line, col))
            i += 1
            col += 1
            continue
        raise ParseError(f"unknown character {c!r}", line, col)
    tokens.append(_Token("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        if token.kind != "eof":
            self.pos += 1
        return token

    def expect(self, kind: str, what: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            self.fail(f"expected {what}, found {token.text or 'end of input'!r}")
        return self.advance()

    def fail(self, message: str):
        token = self.peek()
        raise ParseError(message, token.line, token.column)

    def done(self):
        token = self.peek()
        if token.kind != "eof":
            self.fail(f"unexpected trailing input {token.text!r}")


_FO_KEYWORDS = {"E", "A", "in"}


class _FoParser(_Parser):
    def formula(self) -> fo.FoFormula:
        left = self.disjunction()
        if self.peek().kind == "arrow":
            self.advance()
            return fo.implies(left, self.formula())
        return left

    def disjunction(self) -> fo.FoFormula:
        left = self.conjunction()
        while self.peek().kind == "pipe":
            self.advance()
            left = fo.Or(left, self.conjunction())
        return left

    def conjunction(self) -> fo.FoFormula:
        left = self.unary()
        while self.peek().kind == "amp":
            self.advance()
            left = fo.And(left, self.unary())
        return left

    def unary(self) -> fo.FoFormula:
        token = self.peek()
        if token.kind == "bang":
            self.advance()
            return fo.Not(self.unary())
        if token.kind == "ident" and token.text in ("E", "A"):
            return self.quantifier()
        if token.kind == "lparen" and self._at_bounded_quantifier():
            return self.bounded_quantifier()
        return self.primary()

    def quantifier(self) -> fo.FoFormula:
        kind = self.advance().text
        var = self.variable()
        self.expect("dot", "'.' after quantified variable")
        body = self.formula()
        return fo.Exists(var, body) if kind == "E" else fo.Forall(var, body)

    def _at_bounded_quantifier(self) -> bool:
        if self.peek(1).kind != "ident" or self.peek(1).text not in ("E", "A"):
            return False
        if self.peek(2).kind != "ident":
            return False
        third = self.peek(3)
        return third.kind in ("lt", "gt") or (third.kind == "ident" and third.text == "in")

    def bounded_quantifier(self) -> fo.FoFormula:
        self.advance()  # '('
        kind = self.advance().text
        var = self.variable()
        token = self.advance()
        if token.kind in ("lt", "gt"):
            bound = self.variable()
            if token.kind == "gt":
                guard = fo.Less(bound, var)  # y > x  means  x < y
            else:
                guard = fo.Less(var, bound)
        else:  # 'in (lo, hi)'
            self.expect("lparen", "'(' after 'in'")
            low = self.variable()
            self.expect("comma", "',' in interval bound")
            high = self.variable()
            self.expect("rparen", "')' closing interval bound")
            guard = fo.And(fo.Less(low, var), fo.Less(var, high))
        self.expect("rparen", "')' closing bounded quantifier")
        body = self.unary()
        if kind == "E":
            return fo.Exists(var, fo.And(guard, body))
        return fo.Forall(var, fo.implies(guard, body))

    def variable(self) -> str:
        token = self.expect("ident", "a variable name")
        if token.text in _FO_KEYWORDS:
            raise ParseError(
                f"{token.text!r} is reserved and cannot name a variable",
                token.line,
                token.column,
            )
        return token.text

    def primary(self) -> fo.FoFormula:
        token = self.peek()
        if token.kind == "lparen":
            self.advance()
            inner = self.formula()
            self.expect("rparen", "')'")
            return inner
        if token.kind != "ident" or token.text in _FO_KEYWORDS:
            self.fail(f"expected a formula, found {token.text or 'end of input'!r}")
        name = self.advance().text
        after = self.peek()
        if after.kind == "lparen":
            self.advance()
            var = self.variable()
            self.expect("rparen", "')' closing predicate argument")
            return fo.AtomPred(name, var)
        if after.kind == "lt":
            self.advance()
            return fo.Less(name, self.variable())
        if after.kind == "gt":
            self.advance()
            return fo.Less(self.variable(), name)
        if after.kind == "eq":
            self.advance()
            return fo.Equal(name, self.variable())
        self.fail("expected '(', '<', '>' or '=' after a name")


_TL_KEYWORDS = {"true", "false", "U", "S", "G", "H", "K"}


class _TlParser(_Parser):
    def formula(self) -> tl.TlFormula:
        left = self.disjunction()
        if self.peek().kind == "arrow":
            self.advance()
            return tl.implies(left, self.formula())
        return left

    def disjunction(self) -> tl.TlFormula:
        left = self.conjunction()
        while self.peek().kind == "pipe":
            self.advance()
            left = tl.Or(left, self.conjunction())
        return left

    def conjunction(self) -> tl.TlFormula:
        left = self.temporal()
        while self.peek().kind == "amp":
            self.advance()
            left = tl.And(left, self.temporal())
        return left

    def temporal(self) -> tl.TlFormula:
        left = self.unary()
        token = self.peek()
        if token.kind == "ident" and token.text in ("U", "S"):
            self.advance()
            right = self.temporal()  # right associative
            return tl.Until(left, right) if token.text == "U" else tl.Since(left, right)
        return left

    def unary(self) -> tl.TlFormula:
        token = self.peek()
        if token.kind == "bang":
            self.advance()
            return tl.Not(self.unary())
        if token.kind == "ident" and token.text == "G":
            self.advance()
            return tl.globally(self.unary())
        if token.kind == "ident" and token.text == "H":
            self.advance()
            return tl.historically(self.unary())
        if token.kind == "ident" and token.text == "K":
            self.advance()
            sign = self.peek()
            if sign.kind not in ("plus", "minus"):
                self.fail("expected '+' or '-' after 'K'")
            self.advance()
            sub = self.unary()
            return tl.k_plus(sub) if sign.kind == "plus" else tl.k_minus(sub)
        return self.primary()

    def primary(self) -> tl.TlFormula:
        token = self.peek()
        if token.kind == "lparen":
            self.advance()
            inner = self.formula()
            self.expect("rparen", "')'")
            return inner
        if token.kind != "ident":
            self.fail(f"expected a formula, found {token.text or 'end of input'!r}")
        name = self.advance().text
        if name == "true":
            return tl.TRUE
        if name == "false":
            return tl.FALSE
        if name in _TL_KEYWORDS:
            self.fail(f"{name!r} is reserved and cannot name an atom")
        return tl.Atom(name)


def parse_fo(text: str) -> fo.FoFormula:
    parser = _FoParser(text)
    result = parser.formula()
    parser.done()
    return result


def parse_tl(text: str) -> tl.TlFormula:
    parser = _TlParser(text)
    result = parser.formula()
    parser.done()
    return result
