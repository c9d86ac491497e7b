"""Formulas, permutations and sequents of the n-dimensional propositional calculus.

Permutations are plain tuples in one-line notation: ``(2, 3, 1)`` maps
1 to 2, 2 to 3 and 3 to 1.  Formulas are immutable and carry a precomputed
sort key, which gives both cheap equality/hashing and the fixed total order
used to canonicalize contexts (constants < variables < compounds).
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

Perm = tuple[int, ...]


class DimensionError(ValueError):
    """Raised when objects of different dimension n are combined."""


class NPCSyntaxError(ValueError):
    """Parse error carrying the character offset where it was detected."""

    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} (at offset {pos})")


# --- permutations -----------------------------------------------------------

def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


@functools.lru_cache(maxsize=4096)
def _valid_perm(p: Perm) -> bool:
    return len(p) >= 2 and is_perm(p)


def check_perm(p: Sequence[int], n: int | None = None) -> Perm:
    p = tuple(p)
    if not _valid_perm(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {list(p)}")
    if n is not None and len(p) != n:
        raise DimensionError(f"permutation {list(p)} has length {len(p)}, expected {n}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(pi: Perm, rho: Perm) -> Perm:
    """Return pi∘rho, i.e. x ↦ pi(rho(x))."""
    if len(pi) != len(rho):
        raise DimensionError(f"cannot compose permutations of length {len(pi)} and {len(rho)}")
    return tuple(pi[r - 1] for r in rho)


def invert(pi: Perm) -> Perm:
    inv = [0] * len(pi)
    for x, y in enumerate(pi, start=1):
        inv[y - 1] = x
    return tuple(inv)


def exchange(i: int, j: int, n: int) -> Perm:
    """The transposition (ij); exchange(i, i, n) is the identity."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"exchange ({i} {j}) out of range for n={n}")
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = j, i
    return tuple(p)


# --- formulas ---------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Const:
    k: int
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ValueError(f"constant index must be a positive integer, got {self.k!r}")
        object.__setattr__(self, "_key", (0, self.k))

    def __eq__(self, other):
        return isinstance(other, Const) and self.k == other.k

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        return render(self)


@dataclass(frozen=True, eq=False)
class Var:
    name: str
    dec: Perm
    _key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "dec", check_perm(self.dec))
        object.__setattr__(self, "_key", (1, self.name, self.dec))

    def __eq__(self, other):
        return isinstance(other, Var) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        return render(self)


@dataclass(frozen=True, eq=False)
class Q:
    test: "Formula"
    branches: tuple["Formula", ...]
    _key: tuple = field(init=False, repr=False)
    _hash: int = field(init=False, repr=False)

    def __post_init__(self):
        branches = tuple(self.branches)
        if len(branches) < 2:
            raise ValueError("q needs at least two branches")
        object.__setattr__(self, "branches", branches)
        key = (2, self.test._key, tuple(b._key for b in branches))
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))

    def __eq__(self, other):
        return isinstance(other, Q) and self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __str__(self):
        return render(self)


Formula = Union[Const, Var, Q]


def var(name: str, dec: Sequence[int] | None = None, n: int = 2) -> Var:
    return Var(name, tuple(dec) if dec is not None else identity(n))


def sort_key(f: Formula) -> tuple:
    return f._key


def depth(f: Formula) -> int:
    """Maximal q-nesting; atoms have depth 0."""
    if isinstance(f, Q):
        return 1 + max(depth(g) for g in (f.test, *f.branches))
    return 0


def size(f: Formula) -> int:
    if isinstance(f, Q):
        return 1 + sum(size(g) for g in (f.test, *f.branches))
    return 1


def q_count(f: Formula) -> int:
    if isinstance(f, Q):
        return 1 + sum(q_count(g) for g in (f.test, *f.branches))
    return 0


def variables(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Q):
        out = variables(f.test)
        for b in f.branches:
            out |= variables(b)
        return out
    return set()


def check_formula(f: Formula, n: int) -> Formula:
    """Raise DimensionError unless every part of ``f`` lives in dimension n."""
    if isinstance(f, Const):
        if f.k > n:
            raise DimensionError(f"constant e{f.k} out of range for n={n}")
    elif isinstance(f, Var):
        if len(f.dec) != n:
            raise DimensionError(f"decoration of {f.name} has length {len(f.dec)}, expected {n}")
    elif isinstance(f, Q):
        if len(f.branches) != n:
            raise DimensionError(f"q has {len(f.branches)} branches, expected {n}")
        check_formula(f.test, n)
        for b in f.branches:
            check_formula(b, n)
    else:
        raise TypeError(f"not a formula: {f!r}")
    return f


@functools.lru_cache(maxsize=1 << 16)
def act(f: Formula, rho: Perm) -> Formula:
    """The action F^rho.  The test of a compound is left untouched."""
    if isinstance(f, Var):
        return Var(f.name, compose(rho, f.dec))
    if isinstance(f, Const):
        if f.k > len(rho):
            raise DimensionError(f"constant e{f.k} out of range for n={len(rho)}")
        return Const(rho[f.k - 1])
    if len(f.branches) != len(rho):
        raise DimensionError(f"q has {len(f.branches)} branches, permutation has length {len(rho)}")
    return Q(f.test, tuple(act(g, rho) for g in f.branches))


# --- contexts and sequents --------------------------------------------------

Context = tuple  # canonical: sorted by sort_key


def ctx(formulas: Iterable[Formula] = ()) -> Context:
    return tuple(sorted(formulas, key=sort_key))


def act_ctx(gamma: Iterable[Formula], rho: Perm) -> Context:
    return ctx(act(f, rho) for f in gamma)


def ctx_remove(gamma: Context, f: Formula) -> Context:
    """Remove one occurrence of ``f``; KeyError if absent."""
    for idx, g in enumerate(gamma):
        if g == f:
            return gamma[:idx] + gamma[idx + 1:]
    raise KeyError(f)


def ctx_variables(gamma: Iterable[Formula]) -> set[str]:
    out: set[str] = set()
    for f in gamma:
        out |= variables(f)
    return out


@dataclass(frozen=True)
class Sequent:
    """Gamma |-_i Delta with both sides kept as canonical multisets."""

    left: Context
    i: int
    right: Context

    def __post_init__(self):
        object.__setattr__(self, "left", ctx(self.left))
        object.__setattr__(self, "right", ctx(self.right))

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return self.left + self.right

    def variables(self) -> set[str]:
        return ctx_variables(self.formulas)

    def act(self, rho: Perm) -> "Sequent":
        return Sequent(act_ctx(self.left, rho), rho[self.i - 1], act_ctx(self.right, rho))

    def __str__(self):
        return render(self)


def check_sequent(s: Sequent, n: int) -> Sequent:
    if not 1 <= s.i <= n:
        raise DimensionError(f"turnstile index {s.i} out of range for n={n}")
    for f in s.formulas:
        check_formula(f, n)
    return s


# --- concrete syntax --------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<turn>\|-)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<nat>\d+)|(?P<punct>[\^\[\](),]))")
_CONST = re.compile(r"e(\d+)$")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise NPCSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, n: int):
        if n < 2:
            raise ValueError("dimension n must be at least 2")
        self.text = text
        self.n = n
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind: str, value: str | None = None):
        tok = self.toks[self.pos]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise NPCSyntaxError(f"expected {want!r}, found {got!r}", tok[2], self.text)
        self.pos += 1
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.toks[self.pos]
        return tok[0] == kind and (value is None or tok[1] == value)

    def nat(self) -> int:
        return int(self.take("nat")[1])

    def formula(self) -> Formula:
        kind, value, start = self.peek()
        if kind != "ident":
            raise NPCSyntaxError(f"expected a formula, found {value or 'end of input'!r}", start, self.text)
        self.pos += 1
        m = _CONST.match(value)
        if m:
            k = int(m.group(1))
            if not 1 <= k <= self.n:
                raise NPCSyntaxError(f"constant index {k} out of range for n={self.n}", start, self.text)
            return Const(k)
        if value == "q":
            self.take("punct", "(")
            args = [self.formula()]
            while self.at("punct", ","):
                self.pos += 1
                args.append(self.formula())
            close = self.take("punct", ")")
            if len(args) != self.n + 1:
                raise NPCSyntaxError(
                    f"q takes {self.n + 1} arguments for n={self.n}, got {len(args)}", close[2], self.text)
            return Q(args[0], tuple(args[1:]))
        dec = identity(self.n)
        if self.at("punct", "^"):
            self.pos += 1
            open_ = self.take("punct", "[")
            image = [self.nat()]
            while self.at("punct", ","):
                self.pos += 1
                image.append(self.nat())
            self.take("punct", "]")
            if len(image) != self.n or not is_perm(image):
                raise NPCSyntaxError(f"decoration {image} is not a permutation of 1..{self.n}", open_[2], self.text)
            dec = tuple(image)
        return Var(value, dec)

    def context(self) -> list[Formula]:
        out = []
        if self.at("eof") or self.at("turn"):
            return out
        out.append(self.formula())
        while self.at("punct", ","):
            self.pos += 1
            out.append(self.formula())
        return out

    def sequent(self) -> Sequent:
        left = self.context()
        self.take("turn")
        tok = self.take("nat")
        i = int(tok[1])
        if not 1 <= i <= self.n:
            raise NPCSyntaxError(f"turnstile index {i} out of range for n={self.n}", tok[2], self.text)
        right = self.context()
        self.take("eof")
        return Sequent(tuple(left), i, tuple(right))

    def parse(self) -> Formula | Sequent:
        if any(t[0] == "turn" for t in self.toks):
            return self.sequent()
        f = self.formula()
        self.take("eof")
        return f


def parse(text: str, n: int = 2) -> Formula | Sequent:
    """Parse a formula, or a sequent if the text contains a turnstile."""
    return _Parser(text, n).parse()


def parse_formula(text: str, n: int = 2) -> Formula:
    p = _Parser(text, n)
    f = p.formula()
    p.take("eof")
    return f


def parse_sequent(text: str, n: int = 2) -> Sequent:
    return _Parser(text, n).sequent()


def render(obj: Formula | Sequent) -> str:
    if isinstance(obj, Sequent):
        parts = []
        if obj.left:
            parts.append(", ".join(render(f) for f in obj.left))
        parts.append(f"|-{obj.i}")
        if obj.right:
            parts.append(", ".join(render(f) for f in obj.right))
        return " ".join(parts)
    if isinstance(obj, Const):
        return f"e{obj.k}"
    if isinstance(obj, Var):
        if obj.dec == identity(len(obj.dec)):
            return obj.name
        return f"{obj.name}^[{','.join(map(str, obj.dec))}]"
    return "q(" + ", ".join(render(g) for g in (obj.test, *obj.branches)) + ")"
