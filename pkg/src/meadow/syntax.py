"""Concrete syntax: parsing, precedence-aware printing, serialization.

Grammar (whitespace between tokens is ignored)::

    term  := sum
    sum   := prod (("+" | "-") prod)*
    prod  := unary (("*" | "/") unary)*
    unary := "-" unary | atom ("^" nat)?
    atom  := int | ident | "(" term ")" | "inv" "(" term ")"

Binary + and - bind loosest, then * and /, then unary -, then ^.  The two
binary additive operators and the two multiplicative ones associate to the
left.  Subtraction is sugar: p - q parses to p + (-q) and is printed back
that way; it is never a node of its own.  Likewise t ^ n is expanded at
parse time into the n-fold product and never stored.

Integer literals denote numeral terms.  0 and 1 parse to the constants;
any larger literal n parses to mk_numeral(n).  The printer re-sugars
exactly the shapes that parse back to themselves, so round-tripping is
structural: parse(print_term(t)) == t.

The choice of division syntax is a mode: "/" is only legal under the
"divisive" signature and "inv(...)" only under "inversive"; using the
wrong one raises SignatureError rather than ParseError.
"""
from __future__ import annotations

from .errors import ParseError, SignatureError
from .terms import (
    Add, Div, Inv, Mul, Neg, One, Term, Var, Zero, ZERO, ONE,
    mk_numeral, numeral_value, power,
)

__all__ = [
    "parse", "print_term", "term_to_data", "term_from_data",
]

# Expanding a literal n builds a tree with n nodes; past this bound the
# eager expansion would dominate memory, so refuse early.
_MAX_LITERAL = 100_000

_SYMBOLS = "+-*/^()"


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c.isspace():
            col += 1
            i += 1
            continue
        if c in _SYMBOLS:
            tokens.append((c, c, line, col))
            col += 1
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", line, col, found=c)
    tokens.append(("eof", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens, signature):
        self.tokens = tokens
        self.pos = 0
        self.signature = signature

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, expected):
        kind, text, line, col = self.peek()
        found = text if text else "end of input"
        raise ParseError(
            f"expected {expected}, found {found!r}",
            line, col, expected=expected, found=found,
        )

    def expect(self, kind):
        if self.peek()[0] != kind:
            self.fail(repr(kind))
        return self.advance()

    def parse(self) -> Term:
        t = self.sum()
        if self.peek()[0] != "eof":
            self.fail("end of input")
        return t

    def sum(self) -> Term:
        t = self.prod()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.prod()
            t = Add(t, rhs if op == "+" else Neg(rhs))
        return t

    def prod(self) -> Term:
        t = self.unary()
        while self.peek()[0] in ("*", "/"):
            _, _, line, col = self.peek()
            op = self.advance()[0]
            if op == "/" and self.signature != "divisive":
                raise SignatureError(
                    f"'/' is not part of the inversive signature"
                    f" (line {line}, column {col})"
                )
            rhs = self.unary()
            t = Mul(t, rhs) if op == "*" else Div(t, rhs)
        return t

    def unary(self) -> Term:
        if self.peek()[0] == "-":
            self.advance()
            return Neg(self.unary())
        t = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            t = power(t, self._literal_value(tok))
        return t

    def _literal_value(self, tok) -> int:
        value = int(tok[1])
        if value > _MAX_LITERAL:
            raise ParseError(
                f"integer literal {tok[1]} is too large to expand"
                f" (limit {_MAX_LITERAL})",
                tok[2], tok[3], found=tok[1],
            )
        return value

    def atom(self) -> Term:
        kind, text, line, col = self.peek()
        if kind == "int":
            self.advance()
            value = self._literal_value((kind, text, line, col))
            if value == 0:
                return ZERO
            if value == 1:
                return ONE
            return mk_numeral(value)
        if kind == "ident":
            self.advance()
            if text == "inv":
                if self.signature != "inversive":
                    raise SignatureError(
                        f"'inv' is not part of the divisive signature"
                        f" (line {line}, column {col})"
                    )
                self.expect("(")
                arg = self.sum()
                self.expect(")")
                return Inv(arg)
            return Var(text)
        if kind == "(":
            self.advance()
            t = self.sum()
            self.expect(")")
            return t
        self.fail("an integer, identifier or '('")


def parse(text: str, signature: str = "divisive") -> Term:
    """Parse text into a term under the given signature mode.

    signature is "divisive" (binary /) or "inversive" (unary inv).
    Raises ParseError for malformed input and SignatureError when the
    text uses the division syntax of the other mode.
    """
    if signature not in ("divisive", "inversive"):
        raise ValueError(f"unknown signature {signature!r}")
    return _Parser(_tokenize(text), signature).parse()


# Binding strength of each node shape; a child is parenthesized when its
# own level is below what its position requires.
_LEVEL_ADD = 1
_LEVEL_MUL = 2
_LEVEL_NEG = 3
_LEVEL_ATOM = 4


def _literal(t: Term) -> str | None:
    """Literal spelling for t when re-parsing that spelling rebuilds t."""
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    n = numeral_value(t)
    if n is not None and n >= 2:
        return str(n)
    return None


def _level(t: Term) -> int:
    if _literal(t) is not None:
        return _LEVEL_ATOM
    if isinstance(t, Add):
        return _LEVEL_ADD
    if isinstance(t, (Mul, Div)):
        return _LEVEL_MUL
    if isinstance(t, Neg):
        return _LEVEL_NEG
    return _LEVEL_ATOM


def _fmt(t: Term, min_level: int) -> str:
    inner = _render(t)
    if _level(t) < min_level:
        return f"({inner})"
    return inner


def _render(t: Term) -> str:
    lit = _literal(t)
    if lit is not None:
        return lit
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Add):
        if isinstance(t.right, Neg):
            return f"{_fmt(t.left, _LEVEL_ADD)} - {_fmt(t.right.arg, _LEVEL_MUL)}"
        return f"{_fmt(t.left, _LEVEL_ADD)} + {_fmt(t.right, _LEVEL_MUL)}"
    if isinstance(t, Mul):
        return f"{_fmt(t.left, _LEVEL_MUL)}*{_fmt(t.right, _LEVEL_NEG)}"
    if isinstance(t, Div):
        return f"{_fmt(t.num, _LEVEL_MUL)}/{_fmt(t.den, _LEVEL_NEG)}"
    if isinstance(t, Neg):
        return f"-{_fmt(t.arg, _LEVEL_NEG)}"
    if isinstance(t, Inv):
        return f"inv({_fmt(t.arg, 0)})"
    raise TypeError(f"not a term: {t!r}")


def print_term(t: Term) -> str:
    """Render t with minimal parentheses.

    Round-trips: parse(print_term(t)) is structurally equal to t, with
    numeral subtrees re-sugared to integer literals.  No parenthesis pair
    in the output can be dropped without changing the parse.
    """
    return _fmt(t, 0)


def term_to_data(t: Term):
    """Plain-data (JSON-ready) encoding of a term tree."""
    if isinstance(t, Zero):
        return {"node": "zero"}
    if isinstance(t, One):
        return {"node": "one"}
    if isinstance(t, Var):
        return {"node": "var", "name": t.name}
    if isinstance(t, Add):
        return {"node": "add", "left": term_to_data(t.left),
                "right": term_to_data(t.right)}
    if isinstance(t, Mul):
        return {"node": "mul", "left": term_to_data(t.left),
                "right": term_to_data(t.right)}
    if isinstance(t, Neg):
        return {"node": "neg", "arg": term_to_data(t.arg)}
    if isinstance(t, Div):
        return {"node": "div", "num": term_to_data(t.num),
                "den": term_to_data(t.den)}
    if isinstance(t, Inv):
        return {"node": "inv", "arg": term_to_data(t.arg)}
    raise TypeError(f"not a term: {t!r}")


def term_from_data(data) -> Term:
    """Inverse of term_to_data."""
    node = data["node"]
    if node == "zero":
        return ZERO
    if node == "one":
        return ONE
    if node == "var":
        return Var(data["name"])
    if node == "add":
        return Add(term_from_data(data["left"]), term_from_data(data["right"]))
    if node == "mul":
        return Mul(term_from_data(data["left"]), term_from_data(data["right"]))
    if node == "neg":
        return Neg(term_from_data(data["arg"]))
    if node == "div":
        return Div(term_from_data(data["num"]), term_from_data(data["den"]))
    if node == "inv":
        return Inv(term_from_data(data["arg"]))
    raise ValueError(f"unknown node kind {node!r}")
