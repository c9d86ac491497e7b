"""n-valued evaluation and the brute-force consequence oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .syntax import Formula, Q, Sequent, Var, variables

Env = dict[str, int]

ENV_LIMIT = 10**7


class UnboundVariable(KeyError):
    pass


class EnumerationLimit(ValueError):
    pass


@dataclass(frozen=True)
class Valid:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class Invalid:
    witness: Mapping[str, int]

    def __bool__(self):
        return False


Verdict = Valid | Invalid


def evaluate(f: Formula, v: Mapping[str, int]) -> int:
    while isinstance(f, Q):
        f = f.branches[evaluate(f.test, v) - 1]
    if isinstance(f, Var):
        try:
            return f.dec[v[f.name] - 1]
        except KeyError:
            raise UnboundVariable(f.name) from None
    return f.k


def envs(names: Iterable[str], n: int) -> Iterator[Env]:
    """All environments over ``names``, lexicographic by sorted name then value."""
    names = sorted(set(names))
    if n ** len(names) > ENV_LIMIT:
        raise EnumerationLimit(f"{n}^{len(names)} environments exceed the limit of {ENV_LIMIT}")
    for values in itertools.product(range(1, n + 1), repeat=len(names)):
        yield dict(zip(names, values))


def falsifies(s: Sequent, v: Mapping[str, int]) -> bool:
    """True iff every left formula takes value i and no right formula does."""
    i = s.i
    return all(evaluate(g, v) == i for g in s.left) and not any(evaluate(d, v) == i for d in s.right)


def holds(s: Sequent, n: int) -> Verdict:
    """Decide Gamma |=_i Delta by enumerating environments over its variables."""
    for v in envs(s.variables(), n):
        if falsifies(s, v):
            return Invalid(v)
    return Valid()


def equivalent(f: Formula, g: Formula, n: int) -> bool:
    names = variables(f) | variables(g)
    return all(evaluate(f, v) == evaluate(g, v) for v in envs(names, n))


def truth_table(f: Formula, names: Iterable[str], n: int) -> tuple[int, ...]:
    return tuple(evaluate(f, v) for v in envs(names, n))


def format_env(v: Mapping[str, int]) -> str:
    return ",".join(f"{k}={v[k]}" for k in sorted(v))


def parse_env(text: str, n: int | None = None) -> Env:
    """Parse ``X=2,Y=1``; an empty string is the empty environment."""
    env: Env = {}
    text = text.strip()
    if not text:
        return env
    for item in text.split(","):
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name or not value.strip().isdigit():
            raise ValueError(f"bad environment entry {item!r}; expected NAME=VALUE")
        val = int(value)
        if val < 1 or (n is not None and val > n):
            raise ValueError(f"value {val} for {name} out of range 1..{n}")
        env[name] = val
    return env


def complete_env(v: Mapping[str, int], names: Iterable[str], default: int = 1) -> Env:
    out = {name: default for name in names}
    out.update(v)
    return out

