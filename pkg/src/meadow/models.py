"""Concrete models with total division, and equation checking over them.

Three families are provided, all with exact arithmetic and decidable
equality:

* ``q0()``            -- the rational numbers with x/0 = 0.
* ``mk(k)``           -- Z/kZ for square-free k, division through the unique
                         weak inverse of each residue.
* ``gf(p, n)``        -- the order-p^n Galois field as residues modulo a
                         fixed irreducible polynomial, with x/0 = 0.

``check_eq`` decides equations over a finite model by exhausting all
assignments (vectorized over lookup tables), and tests them on an infinite
model by deterministic seeded sampling.  Reports are plain data and are
reproducible: same model, equation, strategy and seed give the identical
report.  Everything runs in one thread; determinism is part of the
contract, speed comes from the tables.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .errors import (
    InfiniteExhaustiveError,
    MeadowError,
    NonSquareFreeError,
    NotPrimeError,
    UnboundVariableError,
)
from .terms import (
    Add, Div, Inv, Mul, Neg, One, Term, Var, Zero, ZERO, ONE,
    contains_inv, numeral_value, to_divisive, variables,
)

__all__ = [
    "MeadowModel", "RationalMeadow", "ModularMeadow", "GaloisMeadow",
    "q0", "mk", "gf", "model_from_spec",
    "CrtDecomposition", "crt_decompose",
    "Exhaustive", "Sampled", "CheckReport",
    "VALID", "REFUTED", "SAMPLED_OK",
    "eval_term", "check_eq", "characteristic",
    "ring_axioms", "division_axioms", "inverse_axioms",
    "derived_division_identities",
]

VALID = "valid"
REFUTED = "refuted"
SAMPLED_OK = "sampled_ok"


@dataclass(frozen=True)
class Exhaustive:
    """Check every assignment; only meaningful on finite carriers."""


@dataclass(frozen=True)
class Sampled:
    """Check ``count`` seeded pseudo-random assignments."""

    count: int = 10_000
    seed: int = 0


@dataclass(frozen=True)
class CheckReport:
    verdict: str
    counterexample: dict[str, Any] | None
    evaluations: int
    seed: int | None = None


class MeadowModel:
    """Common interface of the shipped models.

    Elements are plain hashable Python values compared with ==; subclasses
    fix the representation.  ``carrier`` is None exactly when the model is
    infinite.
    """

    name: str
    carrier: list | None

    @property
    def is_finite(self) -> bool:
        return self.carrier is not None

    @property
    def size(self) -> int:
        if self.carrier is None:
            raise InfiniteExhaustiveError(f"{self.name} has an infinite carrier")
        return len(self.carrier)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def eval(self, t: Term, assignment: Mapping[str, Any] | None = None):
        return eval_term(self, t, assignment)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class RationalMeadow(MeadowModel):
    """Exact rationals with division totalized by x/0 = 0."""

    def __init__(self):
        self.name = "q0"
        self.carrier = None
        self.zero = Fraction(0)
        self.one = Fraction(1)
        self.known_characteristic = 0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def div(self, a, b):
        if b == 0:
            return Fraction(0)
        return a / b

    def of_int(self, n: int):
        return Fraction(n)

    def random_element(self, rng: random.Random):
        # Numerators may be 0, deliberately: sampled assignments must be
        # able to hit the totalized x/0 = 0 branches.
        return Fraction(rng.randint(-99, 99), rng.randint(1, 99))

    def parse_element(self, text: str):
        return Fraction(text)

    def format_element(self, e) -> str:
        return str(e)


def _factorize(k: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= k:
        while k % d == 0:
            factors[d] = factors.get(d, 0) + 1
            k //= d
        d += 1
    if k > 1:
        factors[k] = factors.get(k, 0) + 1
    return factors


class ModularMeadow(MeadowModel):
    """Z/kZ with division a/b = a * w(b), where w(b) is the weak inverse.

    The weak inverse of b is the unique w with b*w*b = b and w*b*w = w; it
    exists for every residue exactly when k is square-free.  Construction
    searches for it exhaustively and, independently, cross-checks the whole
    division table against componentwise prime-field division under the
    Chinese-remainder decomposition, so the two constructions audit each
    other.  Cost is O(k^2); these models are meant to stay small.
    """

    def __init__(self, k: int):
        if k < 2:
            raise ValueError("modulus must be at least 2")
        self.name = f"mk:{k}"
        self.k = k
        self.carrier = list(range(k))
        self.zero = 0
        self.one = 1 % k
        weak = []
        for b in range(k):
            ws = [w for w in range(k)
                  if (b * w * b) % k == b and (w * b * w) % k == w]
            if not ws:
                raise NonSquareFreeError(k)
            if len(ws) != 1:
                raise AssertionError(f"weak inverse of {b} mod {k} not unique")
            weak.append(ws[0])
        self.weak_inverse = tuple(weak)

        factors = _factorize(k)
        if any(e > 1 for e in factors.values()):
            # The search above must already have failed in this case.
            raise AssertionError(f"weak inverses found on non-square-free {k}")
        self.primes = tuple(sorted(factors))
        self._crt_cross_check()

    def _crt_cross_check(self):
        k = self.k
        pairs = (
            itertools.product(range(k), repeat=2)
            if k <= 100
            else ((rng.randrange(k), rng.randrange(k))
                  for rng in [random.Random(0)]
                  for _ in range(10_000))
        )
        for a, b in pairs:
            expect = _crt_combine(
                [_field_div(a % p, b % p, p) for p in self.primes],
                self.primes,
            )
            if self.div(a, b) != expect:
                raise AssertionError(
                    f"weak-inverse division disagrees with CRT at ({a}, {b}) mod {k}"
                )

    def add(self, a, b):
        return (a + b) % self.k

    def mul(self, a, b):
        return (a * b) % self.k

    def neg(self, a):
        return (-a) % self.k

    def div(self, a, b):
        return (a * self.weak_inverse[b]) % self.k

    def of_int(self, n: int):
        return n % self.k

    def index_of(self, e) -> int:
        return e

    def element_at(self, i: int):
        return i

    def random_element(self, rng: random.Random):
        return rng.randrange(self.k)

    def parse_element(self, text: str):
        v = int(text)
        if not 0 <= v < self.k:
            raise ValueError(f"{v} is outside the carrier 0..{self.k - 1}")
        return v

    def format_element(self, e) -> str:
        return str(e)


def _field_div(a: int, b: int, p: int) -> int:
    if b == 0:
        return 0
    return (a * pow(b, p - 2, p)) % p


def _crt_combine(components: Sequence[int], primes: Sequence[int]) -> int:
    k = math.prod(primes)
    x = 0
    for c, p in zip(components, primes):
        m = k // p
        x += c * m * pow(m, p - 2, p)
    return x % k


@dataclass(frozen=True)
class CrtDecomposition:
    """Explicit bijection Z/kZ <-> product of prime fields, square-free k."""

    modulus: int
    primes: tuple[int, ...]
    factors: tuple[ModularMeadow, ...]

    def to_components(self, x: int) -> tuple[int, ...]:
        return tuple(x % p for p in self.primes)

    def from_components(self, components: Sequence[int]) -> int:
        return _crt_combine(components, self.primes)


def crt_decompose(k: int) -> CrtDecomposition:
    """Prime decomposition of Z/kZ; raises NonSquareFreeError otherwise."""
    if k < 2:
        raise ValueError("modulus must be at least 2")
    factors = _factorize(k)
    if any(e > 1 for e in factors.values()):
        raise NonSquareFreeError(k)
    primes = tuple(sorted(factors))
    return CrtDecomposition(k, primes, tuple(ModularMeadow(p) for p in primes))


# -- polynomial arithmetic over F_p, coefficients low-to-high ---------------

def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_divmod(a: Sequence[int], b: Sequence[int], p: int):
    a = list(a)
    _poly_trim(a)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        factor = (a[-1] * inv_lead) % p
        quo[shift] = factor
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
        _poly_trim(a)
    return _poly_trim(quo), a


def _poly_inv_mod(a: Sequence[int], modulus: Sequence[int], p: int) -> list[int]:
    """Inverse of a modulo ``modulus`` in F_p[x] via the extended Euclid loop."""
    r0, r1 = list(modulus), _poly_trim(list(a))
    t0, t1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        t0, t1 = t1, _poly_trim(
            [(x - y) % p for x, y in itertools.zip_longest(
                t0, _poly_mul(q, t1, p), fillvalue=0)]
        )
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    scale = pow(r0[0], p - 2, p)
    return _poly_trim([(x * scale) % p for x in t0])


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    degree = len(poly) - 1
    for d in range(1, degree // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            _, rem = _poly_divmod(list(poly), divisor, p)
            if not rem:
                return False
    return True


def _first_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible of degree n over F_p.

    Candidates are ordered by their low-to-high coefficient tuple
    (a_0, ..., a_{n-1}); the leading coefficient is fixed to 1.
    """
    for tail in itertools.product(range(p), repeat=n):
        candidate = list(tail) + [1]
        if _is_irreducible(candidate, p):
            return tuple(candidate)
    raise AssertionError(f"no irreducible polynomial of degree {n} over F_{p}")


class GaloisMeadow(MeadowModel):
    """The field of order p^n with x/0 = 0.

    Elements are length-n coefficient tuples (low-to-high) over F_p,
    i.e. residues modulo a fixed irreducible polynomial; the modulus is
    the lexicographically first monic irreducible of degree n, so the
    construction is reproducible.  Nonzero inverses come from the
    extended gcd in F_p[x].  The carrier is enumerated by the integer
    encoding sum(c_i * p^i), putting 0, 1 first and the generator next
    (for n >= 2).
    """

    def __init__(self, p: int, n: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise NotPrimeError(p)
        if n < 1:
            raise ValueError("extension degree must be at least 1")
        self.name = f"gf:{p}^{n}"
        self.p = p
        self.n = n
        self.modulus = _first_irreducible(p, n)
        self.carrier = [self.element_at(i) for i in range(p ** n)]
        self.zero = (0,) * n
        self.one = self._pad([1 % p])
        self.generator = self._pad([0, 1]) if n >= 2 else self._pad(
            [(-self.modulus[0]) % p]
        )
        assert self.eval_poly_at_generator(self.modulus) == self.zero

    def _pad(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return tuple(list(coeffs)[: self.n] + [0] * (self.n - len(coeffs)))

    def eval_poly_at_generator(self, coeffs: Sequence[int]):
        acc = self.zero
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, self.generator), self.of_int(c))
        return acc

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        prod = _poly_mul(a, b, self.p)
        _, rem = _poly_divmod(prod, list(self.modulus), self.p)
        return self._pad(rem)

    def div(self, a, b):
        if b == self.zero:
            return self.zero
        inv = _poly_inv_mod(b, self.modulus, self.p)
        return self.mul(a, self._pad(inv))

    def of_int(self, n: int):
        return self._pad([n % self.p])

    def index_of(self, e) -> int:
        return sum(c * self.p ** i for i, c in enumerate(e))

    def element_at(self, i: int):
        digits = []
        for _ in range(self.n):
            digits.append(i % self.p)
            i //= self.p
        return tuple(digits)

    def random_element(self, rng: random.Random):
        return self.carrier[rng.randrange(len(self.carrier))]

    def parse_element(self, text: str):
        from .syntax import parse

        term = parse(text, "divisive")
        return eval_term(self, term, {"a": self.generator})

    def format_element(self, e) -> str:
        parts = []
        for i in range(self.n - 1, -1, -1):
            c = e[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                var = "a" if i == 1 else f"a^{i}"
                parts.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(parts) if parts else "0"


def q0() -> RationalMeadow:
    return RationalMeadow()


def mk(k: int) -> ModularMeadow:
    return ModularMeadow(k)


def gf(p: int, n: int) -> GaloisMeadow:
    return GaloisMeadow(p, n)


def model_from_spec(spec: str) -> MeadowModel:
    """Model named by a specifier: "q0", "mk:<k>" or "gf:<p>^<n>"."""
    if spec == "q0":
        return q0()
    if spec.startswith("mk:"):
        return mk(int(spec[3:]))
    if spec.startswith("gf:"):
        base, sep, exp = spec[3:].partition("^")
        if not sep:
            raise ValueError(f"bad model specifier {spec!r}: expected gf:<p>^<n>")
        return gf(int(base), int(exp))
    raise ValueError(f"bad model specifier {spec!r}")


# -- evaluation -------------------------------------------------------------

def eval_term(model: MeadowModel, t: Term,
              assignment: Mapping[str, Any] | None = None):
    """Value of t in the model under the assignment.

    Terms in the inversive signature are translated first, so inv(p)
    means 1/p.  Unassigned variables raise UnboundVariableError.
    """
    if contains_inv(t):
        t = to_divisive(t)
    env = assignment or {}

    def ev(node: Term):
        n = numeral_value(node)
        if n is not None:
            return model.of_int(n)
        if isinstance(node, One):
            return model.one
        if isinstance(node, Var):
            try:
                return env[node.name]
            except KeyError:
                raise UnboundVariableError(node.name) from None
        if isinstance(node, Add):
            return model.add(ev(node.left), ev(node.right))
        if isinstance(node, Mul):
            return model.mul(ev(node.left), ev(node.right))
        if isinstance(node, Neg):
            return model.neg(ev(node.arg))
        if isinstance(node, Div):
            return model.div(ev(node.num), ev(node.den))
        raise TypeError(f"not a divisive term: {node!r}")

    return ev(t)


def _compile_closure(model: MeadowModel, t: Term,
                     names: Sequence[str]) -> Callable[[tuple], Any]:
    """t as a closure over a tuple of values ordered like ``names``."""
    n = numeral_value(t)
    if n is not None:
        c = model.of_int(n)
        return lambda env: c
    if isinstance(t, One):
        c = model.one
        return lambda env: c
    if isinstance(t, Var):
        i = names.index(t.name)
        return lambda env: env[i]
    if isinstance(t, Add):
        f, g, op = (_compile_closure(model, t.left, names),
                    _compile_closure(model, t.right, names), model.add)
        return lambda env: op(f(env), g(env))
    if isinstance(t, Mul):
        f, g, op = (_compile_closure(model, t.left, names),
                    _compile_closure(model, t.right, names), model.mul)
        return lambda env: op(f(env), g(env))
    if isinstance(t, Neg):
        f, op = _compile_closure(model, t.arg, names), model.neg
        return lambda env: op(f(env))
    if isinstance(t, Div):
        f, g, op = (_compile_closure(model, t.num, names),
                    _compile_closure(model, t.den, names), model.div)
        return lambda env: op(f(env), g(env))
    raise TypeError(f"not a divisive term: {t!r}")


def _op_tables(model: MeadowModel):
    """q x q lookup tables for the model's operations, built once."""
    cached = getattr(model, "_op_tables", None)
    if cached is not None:
        return cached
    q = model.size
    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    div = np.empty((q, q), dtype=np.int64)
    neg = np.empty(q, dtype=np.int64)
    elems = [model.element_at(i) for i in range(q)]
    index = {e: i for i, e in enumerate(elems)}
    for i, a in enumerate(elems):
        neg[i] = index[model.neg(a)]
        for j, b in enumerate(elems):
            add[i, j] = index[model.add(a, b)]
            mul[i, j] = index[model.mul(a, b)]
            div[i, j] = index[model.div(a, b)]
    tables = (add, mul, neg, div)
    model._op_tables = tables
    return tables


def _eval_indices(model, t: Term, var_arrays: Mapping[str, Any], tables):
    add, mul, neg, div = tables

    def ev(node: Term):
        n = numeral_value(node)
        if n is not None:
            return model.index_of(model.of_int(n))
        if isinstance(node, One):
            return model.index_of(model.one)
        if isinstance(node, Var):
            return var_arrays[node.name]
        if isinstance(node, Add):
            return add[ev(node.left), ev(node.right)]
        if isinstance(node, Mul):
            return mul[ev(node.left), ev(node.right)]
        if isinstance(node, Neg):
            return neg[ev(node.arg)]
        if isinstance(node, Div):
            return div[ev(node.num), ev(node.den)]
        raise TypeError(f"not a divisive term: {node!r}")

    return ev(t)


def _check_exhaustive(model, lhs, rhs, names):
    q = model.size
    count = q ** len(names)
    idx = np.arange(count)
    var_arrays = {
        name: (idx // q ** (len(names) - 1 - j)) % q
        for j, name in enumerate(names)
    }
    tables = _op_tables(model)
    left = _eval_indices(model, lhs, var_arrays, tables)
    right = _eval_indices(model, rhs, var_arrays, tables)
    mismatch = np.broadcast_to(left != right, (count,))
    if not mismatch.any():
        return CheckReport(VALID, None, count)
    # Assignments are enumerated in lexicographic order over the carrier
    # with the first variable most significant, so the first mismatch is
    # the lexicographically least counterexample.
    first = int(np.argmax(mismatch))
    witness = {
        name: model.element_at(int(var_arrays[name][first]))
        for name in names
    }
    return CheckReport(REFUTED, witness, count)


def _check_sampled(model, lhs, rhs, names, strategy: Sampled):
    rng = random.Random(strategy.seed)
    left = _compile_closure(model, lhs, names)
    right = _compile_closure(model, rhs, names)
    for i in range(strategy.count):
        env = tuple(model.random_element(rng) for _ in names)
        if left(env) != right(env):
            witness = dict(zip(names, env))
            return CheckReport(REFUTED, witness, i + 1, strategy.seed)
    return CheckReport(SAMPLED_OK, None, strategy.count, strategy.seed)


def check_eq(model: MeadowModel, lhs: Term, rhs: Term,
             strategy: Exhaustive | Sampled | None = None) -> CheckReport:
    """Check lhs = rhs in the model.

    Default strategy: Exhaustive on finite models, Sampled() on infinite
    ones.  Exhaustive verdicts are "valid" or "refuted" with the
    lexicographically least counterexample (variables in sorted name
    order); sampling yields "sampled_ok" or "refuted" with the first
    failing draw.  Reports are deterministic for fixed inputs.
    """
    if contains_inv(lhs):
        lhs = to_divisive(lhs)
    if contains_inv(rhs):
        rhs = to_divisive(rhs)
    names = sorted(set(variables(lhs)) | set(variables(rhs)))
    if strategy is None:
        strategy = Exhaustive() if model.is_finite else Sampled()
    if isinstance(strategy, Exhaustive):
        if not model.is_finite:
            raise InfiniteExhaustiveError(
                f"cannot exhaust the carrier of {model.name}"
            )
        return _check_exhaustive(model, lhs, rhs, names)
    if isinstance(strategy, Sampled):
        return _check_sampled(model, lhs, rhs, names, strategy)
    raise TypeError(f"unknown strategy {strategy!r}")


def characteristic(model: MeadowModel, search_bound: int = 1000) -> int | None:
    """Least k >= 1 with numeral k = 0 in the model.

    Finite carriers are searched exactly.  Models that know their
    characteristic (q0 knows 0) answer directly; otherwise the search is
    capped at search_bound and None means "not found below the bound".
    """
    known = getattr(model, "known_characteristic", None)
    if known is not None:
        return known
    bound = model.size if model.is_finite else search_bound
    acc = model.zero
    for i in range(1, bound + 1):
        acc = model.add(acc, model.one)
        if acc == model.zero:
            return i
    if model.is_finite:
        raise AssertionError(f"no additive order within {bound} in {model.name}")
    return None


# -- named equation suites --------------------------------------------------

def ring_axioms() -> list[tuple[str, Term, Term]]:
    """Commutative-ring laws every shipped model satisfies."""
    x, y, z = Var("x"), Var("y"), Var("z")
    return [
        ("add_assoc", (x + y) + z, x + (y + z)),
        ("add_comm", x + y, y + x),
        ("add_zero", x + ZERO, x),
        ("add_opposite", x + (-x), ZERO),
        ("mul_assoc", (x * y) * z, x * (y * z)),
        ("mul_comm", x * y, y * x),
        ("mul_one", x * ONE, x),
        ("distributivity", x * (y + z), x * y + x * z),
    ]


def division_axioms() -> list[tuple[str, Term, Term]]:
    """Laws of totalized binary division."""
    x, y = Var("x"), Var("y")
    return [
        ("reciprocal_involution", ONE / (ONE / x), x),
        ("square_over_self", (x * x) / x, x),
        ("div_is_mul_reciprocal", x / y, x * (ONE / y)),
    ]


def inverse_axioms() -> list[tuple[str, Term, Term]]:
    """The unary-inverse counterparts of the division laws."""
    x = Var("x")
    return [
        ("inv_involution", Inv(Inv(x)), x),
        ("inv_cancellation", x * (x * Inv(x)), x),
    ]


def derived_division_identities() -> list[tuple[str, Term, Term]]:
    """Consequences of the axioms that the transforms lean on."""
    x, y, z, w = Var("x"), Var("y"), Var("z"), Var("w")
    return [
        ("one_over_zero", ONE / ZERO, ZERO),
        ("one_over_one", ONE / ONE, ONE),
        ("reciprocal_of_opposite", ONE / (-x), -(ONE / x)),
        ("reciprocal_of_product", ONE / (x * y), (ONE / x) * (ONE / y)),
        ("fraction_product", (x / y) * (z / w), (x * z) / (y * w)),
        ("fraction_quotient", (x / y) / (z / w), (x * w) / (y * z)),
    ]
