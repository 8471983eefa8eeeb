"""Seeded random term generators shared across the test modules.

Divisor subtrees get a shallower depth and their own budget so the
subset expansion in the fraction transforms stays at desk scale.
"""
from __future__ import annotations

import random

from meadow import Add, Div, Mul, Neg, Term, Var, mk_numeral


def random_term(rng: random.Random, depth: int, *,
                names: tuple[str, ...] = ("x", "y", "z"),
                closed: bool = False,
                div_budget: int = 2,
                max_leaf: int = 4) -> Term:
    if depth <= 0 or rng.random() < 0.15:
        if closed or rng.random() < 0.5:
            return mk_numeral(rng.randint(0, max_leaf))
        return Var(rng.choice(names))

    def sub(d: int, budget: int) -> Term:
        return random_term(rng, d, names=names, closed=closed,
                           div_budget=budget, max_leaf=max_leaf)

    roll = rng.random()
    if roll < 0.30:
        return Add(sub(depth - 1, div_budget), sub(depth - 1, div_budget))
    if roll < 0.60:
        return Mul(sub(depth - 1, div_budget), sub(depth - 1, div_budget))
    if roll < 0.78 or div_budget <= 0:
        return Neg(sub(depth - 1, div_budget))
    return Div(sub(depth - 1, div_budget),
               sub(min(depth - 1, 2), div_budget - 1))


def random_closed_terms(seed: int, count: int, depth: int) -> list[Term]:
    rng = random.Random(seed)
    return [random_term(rng, depth, closed=True) for _ in range(count)]


def random_open_terms(seed: int, count: int, depth: int,
                      names: tuple[str, ...] = ("x", "y", "z")) -> list[Term]:
    rng = random.Random(seed)
    return [random_term(rng, depth, names=names) for _ in range(count)]


def random_ring_term(rng: random.Random, depth: int, *,
                     names: tuple[str, ...] = ("x", "y"),
                     closed: bool = False) -> Term:
    """Division-free term: stays inside the ring fragment."""
    return random_term(rng, depth, names=names, closed=closed, div_budget=0)


def random_context(rng: random.Random, depth: int, hole: str = "__hole__"):
    """Term with one distinguished variable to substitute into."""
    shell = random_term(rng, depth, names=("x", "y", hole))
    from meadow import variables
    if hole not in variables(shell):
        shell = Add(shell, Var(hole))
    return shell
