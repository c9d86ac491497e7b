"""Deterministic formula pools and seeded random generators for sweeps and tests."""

from __future__ import annotations

import itertools
import random
from typing import Iterator, Sequence

from .syntax import Const, Formula, Q, Sequent, Var, exchange, parse_formula

VARS = ("X", "Y")


def all_perms(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(1, n + 1)))


def atoms(n: int, names: Sequence[str] = VARS, decorations: Sequence[tuple[int, ...]] | None = None) -> list[Formula]:
    """Constants, then every variable under every given decoration (default: all of S_n)."""
    decs = all_perms(n) if decorations is None else decorations
    return [Const(k) for k in range(1, n + 1)] + [Var(x, d) for x in names for d in decs]


_POOL_EXTRA = (
    "q(X^[2,1], e1, Y)",
    "q(e1, X, Y)",
    "q(e2, X, Y^[2,1])",
    "q(q(X, Y, e2), e1, X^[2,1])",
    "q(X, q(Y, e1, e2), q(Y, e2, e1))",
    "q(q(X, e2, e1), Y, Y^[2,1])",
    "q(Y^[2,1], q(X, Y, e1), e2)",
)


def formula_pool() -> list[Formula]:
    """The fixed n=2 pool over {X, Y} of depth <= 2 used by the completeness sweep.

    All six atoms; every q(T, A, B) with test T in {X, Y} and branches from
    {e1, e2, X, Y^[2,1]}; plus a few decorated/constant tests and depth-2
    compounds.
    """
    base = atoms(2)
    branch = [Const(1), Const(2), Var("X", (1, 2)), Var("Y", (2, 1))]
    depth1 = [Q(Var(t, (1, 2)), (a, b)) for t in VARS for a in branch for b in branch]
    extra = [parse_formula(text, 2) for text in _POOL_EXTRA]
    return base + depth1 + extra


def multisets(pool: Sequence[Formula], size: int) -> Iterator[tuple[Formula, ...]]:
    return itertools.combinations_with_replacement(pool, size)


def sequent_family(pool: Sequence[Formula], n: int, max_total: int = 3) -> Iterator[Sequent]:
    """Every sequent with |left| + |right| <= max_total over ``pool``, every turnstile."""
    for total in range(max_total + 1):
        for nl in range(total + 1):
            for left in multisets(pool, nl):
                for right in multisets(pool, total - nl):
                    for i in range(1, n + 1):
                        yield Sequent(left, i, right)


def family_size(pool_size: int, n: int, max_total: int = 3) -> int:
    from math import comb

    def m(k):
        return comb(pool_size + k - 1, k)
    return n * sum(m(nl) * m(total - nl) for total in range(max_total + 1) for nl in range(total + 1))


def random_perm(rng: random.Random, n: int) -> tuple[int, ...]:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return tuple(p)


def random_formula(rng: random.Random, n: int, names: Sequence[str] = VARS, max_depth: int = 3,
                   p_leaf: float = 0.35) -> Formula:
    if max_depth == 0 or rng.random() < p_leaf:
        if rng.random() < 0.25:
            return Const(rng.randint(1, n))
        return Var(rng.choice(names), random_perm(rng, n))
    test = random_formula(rng, n, names, max_depth - 1, p_leaf)
    return Q(test, tuple(random_formula(rng, n, names, max_depth - 1, p_leaf) for _ in range(n)))


def random_sequent(rng: random.Random, n: int, names: Sequence[str] = VARS, max_total: int = 3,
                   max_depth: int = 2, p_leaf: float = 0.35) -> Sequent:
    total = rng.randint(0, max_total)
    nl = rng.randint(0, total)
    left = [random_formula(rng, n, names, max_depth, p_leaf) for _ in range(nl)]
    right = [random_formula(rng, n, names, max_depth, p_leaf) for _ in range(total - nl)]
    return Sequent(tuple(left), rng.randint(1, n), tuple(right))


def random_env(rng: random.Random, n: int, names: Sequence[str] = VARS) -> dict[str, int]:
    return {x: rng.randint(1, n) for x in names}


def random_exchange(rng: random.Random, n: int) -> tuple[int, ...]:
    return exchange(rng.randint(1, n), rng.randint(1, n), n)


def single_compound_sequent(rng: random.Random, n: int, names: Sequence[str] = VARS) -> Sequent:
    """A sequent with exactly one compound (depth 1 or 2) among atomic side formulas."""
    pool = atoms(n, names)
    side = [rng.choice(pool) for _ in range(rng.randint(0, 2))]
    compound = random_formula(rng, n, names, max_depth=2, p_leaf=0.0)
    split = rng.randint(0, len(side))
    left, right = side[:split], side[split:]
    if rng.random() < 0.5:
        left.append(compound)
    else:
        right.append(compound)
    return Sequent(tuple(left), rng.randint(1, n), tuple(right))

