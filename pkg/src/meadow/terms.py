"""Immutable terms over ring signatures extended with total division.

A term is a tree built from the constants 0 and 1, variables, addition,
multiplication, unary minus, and exactly one of two division primitives:
binary division (the divisive signature) or unary inverse (the inversive
signature).  Terms that mix the two primitives are rejected by the
operations that care.

Structural equality and hashing are derived, so terms can be compared and
used as dictionary keys directly.  Operators +, -, * and / are overloaded
for convenience; they build trees, they never compute.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .errors import MixedSignatureError

__all__ = [
    "Term", "Zero", "One", "Var", "Add", "Mul", "Neg", "Div", "Inv",
    "ZERO", "ONE",
    "mk_numeral", "numeral_value", "power",
    "iter_subterms", "contains_div", "contains_inv", "is_divisive",
    "is_inversive", "is_closed", "variables",
    "is_fraction", "is_simple_fraction", "wrap_as_fraction",
    "substitute", "to_inversive", "to_divisive",
]


class Term:
    """Base class of all term nodes."""

    __slots__ = ()

    def __add__(self, other: "Term") -> "Term":
        return Add(self, other)

    def __sub__(self, other: "Term") -> "Term":
        return Add(self, Neg(other))

    def __mul__(self, other: "Term") -> "Term":
        return Mul(self, other)

    def __neg__(self) -> "Term":
        return Neg(self)

    def __truediv__(self, other: "Term") -> "Term":
        return Div(self, other)


@dataclass(frozen=True, slots=True)
class Zero(Term):
    """The additive constant 0."""


@dataclass(frozen=True, slots=True)
class One(Term):
    """The multiplicative constant 1."""


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Div(Term):
    """Binary division; in every shipped model x/0 evaluates to 0."""

    num: Term
    den: Term


@dataclass(frozen=True, slots=True)
class Inv(Term):
    """Unary inverse; the inversive counterpart of Div."""

    arg: Term


ZERO = Zero()
ONE = One()


def mk_numeral(n: int) -> Term:
    """Numeral term for the integer n.

    0 maps to the constant 0 and each successor appends + 1, so 3 becomes
    ((0 + 1) + 1) + 1; negative numerals wrap the positive one in unary
    minus.  The tree is linear in |n|.
    """
    t: Term = ZERO
    for _ in range(abs(n)):
        t = Add(t, ONE)
    return Neg(t) if n < 0 else t


def numeral_value(t: Term) -> int | None:
    """The integer n if t is exactly mk_numeral(n), else None.

    Iterative on purpose: numeral chains are the one place terms get deep.
    """
    neg = isinstance(t, Neg)
    if neg:
        t = t.arg
    count = 0
    while isinstance(t, Add) and isinstance(t.right, One):
        count += 1
        t = t.left
    if not isinstance(t, Zero):
        return None
    if neg and count == 0:
        return None
    return -count if neg else count


def power(t: Term, n: int) -> Term:
    """n-fold product sugar: power(t, 0) = 1 and power(t, k+1) = power(t, k) * t."""
    if n < 0:
        raise ValueError("exponent must be a natural number")
    acc: Term = ONE
    for _ in range(n):
        acc = Mul(acc, t)
    return acc


def iter_subterms(t: Term) -> Iterator[Term]:
    """All subterms of t in pre-order, iteratively (safe for deep numerals)."""
    stack = [t]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, (Add, Mul)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Neg):
            stack.append(node.arg)
        elif isinstance(node, Div):
            stack.append(node.den)
            stack.append(node.num)
        elif isinstance(node, Inv):
            stack.append(node.arg)


def contains_div(t: Term) -> bool:
    return any(isinstance(s, Div) for s in iter_subterms(t))


def contains_inv(t: Term) -> bool:
    return any(isinstance(s, Inv) for s in iter_subterms(t))


def is_divisive(t: Term) -> bool:
    """True when t stays inside the binary-division signature."""
    return not contains_inv(t)


def is_inversive(t: Term) -> bool:
    """True when t stays inside the unary-inverse signature."""
    return not contains_div(t)


def is_closed(t: Term) -> bool:
    return not any(isinstance(s, Var) for s in iter_subterms(t))


def variables(t: Term) -> tuple[str, ...]:
    """Variable names occurring in t, sorted lexicographically."""
    return tuple(sorted({s.name for s in iter_subterms(t) if isinstance(s, Var)}))


def _require_divisive(t: Term) -> None:
    if contains_inv(t):
        raise MixedSignatureError("term contains the unary inverse operator")


def is_fraction(t: Term) -> bool:
    """True when the outermost node of t is a division."""
    _require_divisive(t)
    return isinstance(t, Div)


def is_simple_fraction(t: Term) -> bool:
    """True when t is a division whose two sides are division-free."""
    _require_divisive(t)
    return (
        isinstance(t, Div)
        and not contains_div(t.num)
        and not contains_div(t.den)
    )


def wrap_as_fraction(t: Term) -> Div:
    """t as the trivial fraction t / 1."""
    return Div(t, ONE)


def substitute(t: Term, binding: Mapping[str, Term]) -> Term:
    """Simultaneous replacement of variables; unfamiliar names are kept."""
    if isinstance(t, Var):
        return binding.get(t.name, t)
    if isinstance(t, Add):
        return Add(substitute(t.left, binding), substitute(t.right, binding))
    if isinstance(t, Mul):
        return Mul(substitute(t.left, binding), substitute(t.right, binding))
    if isinstance(t, Neg):
        return Neg(substitute(t.arg, binding))
    if isinstance(t, Div):
        return Div(substitute(t.num, binding), substitute(t.den, binding))
    if isinstance(t, Inv):
        return Inv(substitute(t.arg, binding))
    return t


def to_inversive(t: Term) -> Term:
    """Rewrite every p / q into p * inv(q).

    The input must be purely divisive; mixing signatures is an error.
    """
    _require_divisive(t)
    return _to_inversive(t)


def _to_inversive(t: Term) -> Term:
    if isinstance(t, Div):
        return Mul(_to_inversive(t.num), Inv(_to_inversive(t.den)))
    if isinstance(t, Add):
        return Add(_to_inversive(t.left), _to_inversive(t.right))
    if isinstance(t, Mul):
        return Mul(_to_inversive(t.left), _to_inversive(t.right))
    if isinstance(t, Neg):
        return Neg(_to_inversive(t.arg))
    return t


def to_divisive(t: Term) -> Term:
    """Rewrite every inv(p) into 1 / p.

    The input must be purely inversive; mixing signatures is an error.
    """
    if contains_div(t):
        raise MixedSignatureError("term contains binary division")
    return _to_divisive(t)


def _to_divisive(t: Term) -> Term:
    if isinstance(t, Inv):
        return Div(ONE, _to_divisive(t.arg))
    if isinstance(t, Add):
        return Add(_to_divisive(t.left), _to_divisive(t.right))
    if isinstance(t, Mul):
        return Mul(_to_divisive(t.left), _to_divisive(t.right))
    if isinstance(t, Neg):
        return Neg(_to_divisive(t.arg))
    return t
