"""Finite models of the q-operator: n-subsets, n-partitions and pure nBAs.

Elements of a finite algebra are integer codes 0..N-1 and the (n+1)-ary
operation is a numpy table indexed by codes.  For the partition algebra
Par(X) an element is the word of block indices of the sorted points of X
(first point most significant), so codes enumerate n^|X| in lexicographic
order.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator, Sequence

import numpy as np

from .semantics import holds
from .syntax import Const, Formula, Sequent, Var

CARRIER_LIMIT = 10**6
TABLE_LIMIT = 2 * 10**7
SAMPLE_THRESHOLD = 10**5
MULTIDEAL_LIMIT = 10**6


class AlgebraError(ValueError):
    """Mismatched carriers, malformed tables or an explosion guard."""


@dataclass(frozen=True)
class NSubset:
    """A sequence of n subsets of a finite carrier; overlap and gaps allowed."""

    carrier: tuple
    blocks: tuple

    def __post_init__(self):
        points = set(self.carrier)
        if len(points) != len(self.carrier):
            raise AlgebraError("carrier has repeated points")
        blocks = tuple(frozenset(b) for b in self.blocks)
        for b in blocks:
            if not b <= points:
                raise AlgebraError(f"block {set(b)} is not inside the carrier")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return len(self.blocks)

    def is_partition(self) -> bool:
        seen: set = set()
        for b in self.blocks:
            if seen & b:
                return False
            seen |= b
        return seen == set(self.carrier)


@dataclass(frozen=True)
class NPartition(NSubset):
    """An n-subset whose blocks are pairwise disjoint and cover the carrier."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_partition():
            raise AlgebraError(f"blocks {[set(b) for b in self.blocks]} do not partition {self.carrier}")

    def block_of(self, x) -> int:
        for k, b in enumerate(self.blocks, start=1):
            if x in b:
                return k
        raise KeyError(x)


def nsubset(carrier: Iterable, *blocks: Iterable) -> NSubset:
    return NSubset(tuple(carrier), tuple(frozenset(b) for b in blocks))


def npartition(carrier: Iterable, *blocks: Iterable) -> NPartition:
    return NPartition(tuple(carrier), tuple(frozenset(b) for b in blocks))


def q_nsubsets(y0: NSubset, ys: Sequence[NSubset]) -> NSubset:
    """Block j of the result is the union over i of (y0 block i) ∩ (ys[i] block j)."""
    n = y0.n
    if len(ys) != n:
        raise AlgebraError(f"q on {n}-subsets needs {n} branches, got {len(ys)}")
    for y in ys:
        if y.n != n or set(y.carrier) != set(y0.carrier):
            raise AlgebraError("carrier or dimension mismatch")
    blocks = []
    for j in range(n):
        blocks.append(frozenset().union(*(y0.blocks[i] & ys[i].blocks[j] for i in range(n))))
    out = NSubset(y0.carrier, tuple(blocks))
    if isinstance(y0, NPartition) and all(isinstance(y, NPartition) for y in ys):
        return NPartition(out.carrier, out.blocks)
    return out


@dataclass(frozen=True)
class FiniteAlgebra:
    """Carrier 0..size-1, q as an (n+1)-dimensional table, constants e_1..e_n."""

    n: int
    table: np.ndarray = field(repr=False)
    constants: tuple
    name: str = ""
    points: tuple | None = None

    def __post_init__(self):
        size = self.table.shape[0] if self.table.ndim else 0
        if self.table.ndim != self.n + 1 or any(d != size for d in self.table.shape):
            raise AlgebraError(f"table shape {self.table.shape} is not ({size},)*{self.n + 1}")
        if len(self.constants) != self.n or not all(0 <= c < size for c in self.constants):
            raise AlgebraError("constants out of range")
        if self.table.size and (self.table.min() < 0 or self.table.max() >= size):
            raise AlgebraError("table values out of range")
        bad = nch_violation(self)
        if bad is not None:
            raise AlgebraError(f"q(e_i, b) = b_i fails at {bad}")

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def q(self, c: int, *args: int) -> int:
        return int(self.table[(c, *args)])

    def element(self, code: int) -> NPartition:
        if self.points is None:
            raise AlgebraError("not a partition algebra")
        return decode(code, self.points, self.n)

    def with_table(self, table: np.ndarray, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(self.n, table, self.constants, name, self.points)


def nch_violation(A: FiniteAlgebra) -> tuple | None:
    idx = np.indices((A.size,) * A.n)
    for i, e in enumerate(A.constants):
        bad = np.argwhere(A.table[e] != idx[i])
        if len(bad):
            return (e, *map(int, bad[0]))
    return None


# --- partition algebras -----------------------------------------------------

def _weights(m: int, n: int) -> np.ndarray:
    return n ** np.arange(m - 1, -1, -1, dtype=np.int64)


def digits(size_points: int, n: int) -> np.ndarray:
    """Row c holds the 0-based block index of every point in element c."""
    if size_points == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.array(list(itertools.product(range(n), repeat=size_points)), dtype=np.int64)


def encode(p: NPartition, n: int) -> int:
    points = tuple(sorted(p.carrier))
    code = 0
    for x in points:
        code = code * n + p.block_of(x) - 1
    return code


def decode(code: int, points: Sequence, n: int) -> NPartition:
    blocks: list[set] = [set() for _ in range(n)]
    for x in reversed(points):
        code, d = divmod(code, n)
        blocks[d].add(x)
    return NPartition(tuple(points), tuple(blocks))


def default_points(size: int) -> tuple[str, ...]:
    return tuple(f"x{k}" for k in range(1, size + 1))


def _points(X: int | Iterable[Hashable]) -> tuple:
    pts = default_points(X) if isinstance(X, int) else tuple(X)
    return tuple(sorted(pts))


def partition_algebra(X: int | Iterable[Hashable], n: int, verify: bool = True) -> FiniteAlgebra:
    """Par(X): all n-partitions of X under the restricted q_nsubsets.

    ``X`` is a point set or a point count.  With ``verify`` the table is
    compared with q_nsubsets exhaustively when it has at most SAMPLE_THRESHOLD
    entries, otherwise on a seeded sample of that many entries.
    """
    if n < 2:
        raise AlgebraError("dimension must be at least 2")
    points = _points(X)
    m = len(points)
    size = n ** m
    if size > CARRIER_LIMIT or size ** (n + 1) > TABLE_LIMIT:
        raise AlgebraError(f"Par(X) with n={n}, |X|={m} is too large ({size} elements)")
    D = digits(m, n)
    w = _weights(m, n)
    table = np.zeros((size,) * (n + 1), dtype=np.int64)
    for p in range(m):
        test = D[:, p].reshape((size,) + (1,) * n)
        branches = [D[:, p].reshape((1,) * (k + 1) + (size,) + (1,) * (n - k - 1)) for k in range(n)]
        table += np.choose(test, branches) * w[p]
    constants = tuple(int((k - 1) * w.sum()) for k in range(1, n + 1))
    A = FiniteAlgebra(n, table, constants, f"Par({m} points, n={n})", points)
    if verify:
        _verify_against_nsubsets(A)
    return A


def _verify_against_nsubsets(A: FiniteAlgebra, seed: int = 0) -> None:
    total = A.table.size
    if total <= SAMPLE_THRESHOLD:
        keys: Iterable = itertools.product(range(A.size), repeat=A.n + 1)
    else:
        rng = np.random.default_rng(seed)
        keys = map(tuple, rng.integers(0, A.size, size=(SAMPLE_THRESHOLD, A.n + 1)))
    cache = [A.element(c) for c in range(A.size)]
    for key in keys:
        out = q_nsubsets(cache[key[0]], [cache[k] for k in key[1:]])
        if not isinstance(out, NPartition) or encode(out, A.n) != A.table[tuple(key)]:
            raise AlgebraError(f"table disagrees with q_nsubsets at {tuple(map(int, key))}")


def pure_algebra(n: int) -> FiniteAlgebra:
    """The algebra n: carrier {e_1, ..., e_n} with q(e_i, x) = x_i."""
    idx = np.indices((n,) * n)
    table = np.stack([idx[i] for i in range(n)])
    return FiniteAlgebra(n, table, tuple(range(n)), f"pure n={n}")


def corrupted(A: FiniteAlgebra, seed: int = 0) -> tuple[FiniteAlgebra, tuple]:
    """Copy of A with one table entry replaced; the test coordinate is never a constant.

    Returns the algebra and the mutated index.
    """
    free = [c for c in range(A.size) if c not in A.constants]
    if not free or A.size < 2:
        raise AlgebraError("no entry can be corrupted without breaking q(e_i, b) = b_i")
    rng = np.random.default_rng(seed)
    key = (int(rng.choice(free)), *map(int, rng.integers(0, A.size, size=A.n)))
    table = A.table.copy()
    old = int(table[key])
    table[key] = (old + 1 + int(rng.integers(0, A.size - 1))) % A.size
    return A.with_table(table, f"{A.name} corrupted at {key}"), key


# --- identities -------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    instance: str
    passed: bool
    witness: Any = None
    cases: int = 0
    exhaustive: bool = True

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"name": self.name, "instance": self.instance, "pass": self.passed,
                "witness": self.witness, "cases": self.cases, "exhaustive": self.exhaustive}

    def line(self) -> str:
        mode = "exhaustive" if self.exhaustive else "sampled"
        status = "PASS" if self.passed else "FAIL"
        tail = "" if self.passed else f"  witness={self.witness}"
        return f"{status} {self.name:<8} {self.instance} ({self.cases} cases, {mode}){tail}"


def _first(bad: np.ndarray) -> tuple | None:
    hits = np.argwhere(bad)
    return tuple(int(v) for v in hits[0]) if len(hits) else None


def _check_nch(A: FiniteAlgebra) -> CheckResult:
    bad = nch_violation(A)
    witness = None if bad is None else {"c": bad[0], "b": list(bad[1:])}
    return CheckResult("nCH", A.name, bad is None, witness, A.n * A.size ** A.n)


def _check_b1(A: FiniteAlgebra) -> CheckResult:
    vals = A.table[(slice(None), *A.constants)]
    hit = _first(vals != np.arange(A.size))
    witness = None if hit is None else {"c": hit[0], "got": int(vals[hit[0]])}
    return CheckResult("B1", A.name, hit is None, witness, A.size)


def _check_b2(A: FiniteAlgebra) -> CheckResult:
    x = np.arange(A.size)
    vals = A.table[(x[:, None],) + (x[None, :],) * A.n]
    hit = _first(vals != x[None, :])
    witness = None if hit is None else {"c": hit[0], "x": hit[1], "got": int(vals[hit])}
    return CheckResult("B2", A.name, hit is None, witness, A.size ** 2)


def _b3_batch(A: FiniteAlgebra, c: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Boolean mask of failures of B3 with sigma = q; x has shape (batch, n, n+1)."""
    n, T = A.n, A.table
    rows = [T[tuple(x[:, r, k] for k in range(n + 1))] for r in range(n)]
    lhs = T[(c, *rows)]
    cols = [T[(c, *(x[:, r, k] for r in range(n)))] for k in range(n + 1)]
    rhs = T[tuple(cols)]
    return lhs != rhs


def _check_b3(A: FiniteAlgebra, seed: int, threshold: int) -> list[CheckResult]:
    n, N = A.n, A.size
    out = []
    # constants: arity 0, both sides reduce to q(c, e_k, ..., e_k) = e_k
    vals = np.stack([A.table[(slice(None),) + (e,) * n] for e in A.constants], axis=1)
    hit = _first(vals != np.array(A.constants)[None, :])
    out.append(CheckResult("B3[e]", A.name, hit is None,
                           None if hit is None else {"c": hit[0], "k": hit[1] + 1}, N * n))
    width = n * (n + 1) + 1
    total = N ** width
    if total <= threshold:
        exhaustive = True
        grid = np.array(list(itertools.product(range(N), repeat=width)), dtype=np.int64).reshape(-1, width)
    else:
        exhaustive = False
        grid = np.random.default_rng(seed).integers(0, N, size=(threshold, width))
        total = threshold
    c, x = grid[:, 0], grid[:, 1:].reshape(-1, n, n + 1)
    bad = _b3_batch(A, c, x)
    witness = None
    if bad.any():
        k = int(np.argmax(bad))
        witness = {"c": int(c[k]), "x": x[k].tolist()}
    out.append(CheckResult("B3[q]", A.name, witness is None, witness, total, exhaustive))
    return out


def _check_b4(A: FiniteAlgebra) -> CheckResult:
    """B4 over every n×n matrix, decided exactly through row projections.

    Row r influences the left side only through y_r = q(c, x_r) and the right
    side only through the diagonal entry x_rr, and rows vary independently.
    So B4 holds at c iff q(c, y) = q(c, d) for every choice of pairs
    (y_r, d_r) from the achievable sets S_r = {(q(c, x_r), x_rr)}.
    """
    n, N, T = A.n, A.size, A.table
    rows = np.array(list(itertools.product(range(N), repeat=n)), dtype=np.int64)
    for c in range(N):
        y = T[(np.full(len(rows), c), *rows.T)]
        keys, reps = [], []
        for r in range(n):
            _, first = np.unique(y * N + rows[:, r], return_index=True)
            keys.append(np.stack([y[first], rows[first, r]], axis=1))
            reps.append(rows[first])
        grids = np.meshgrid(*[np.arange(len(k)) for k in keys], indexing="ij")
        choice = [g.ravel() for g in grids]
        ys = [keys[r][choice[r], 0] for r in range(n)]
        ds = [keys[r][choice[r], 1] for r in range(n)]
        lhs = T[(np.full(len(choice[0]), c), *ys)]
        rhs = T[(np.full(len(choice[0]), c), *ds)]
        bad = np.flatnonzero(lhs != rhs)
        if len(bad):
            k = bad[0]
            matrix = [reps[r][choice[r][k]].tolist() for r in range(n)]
            return CheckResult("B4", A.name, False, {"c": c, "x": matrix}, N ** (n * n + 1))
    return CheckResult("B4", A.name, True, None, N ** (n * n + 1))


def check_identities(A: FiniteAlgebra, seed: int = 0, threshold: int = SAMPLE_THRESHOLD) -> list[CheckResult]:
    """nCH, B1, B2, B3 (sigma in {q, e_k}) and B4, each with a witness on failure."""
    return [_check_nch(A), _check_b1(A), _check_b2(A), *_check_b3(A, seed, threshold), _check_b4(A)]


def b4_brute(A: FiniteAlgebra) -> bool:
    """Direct enumeration of B4; only for tiny algebras (cross-checks the projection)."""
    n, N = A.n, A.size
    for c in range(N):
        for flat in itertools.product(range(N), repeat=n * n):
            x = [flat[r * n:(r + 1) * n] for r in range(n)]
            lhs = A.q(c, *(A.q(c, *x[r]) for r in range(n)))
            if lhs != A.q(c, *(x[r][r] for r in range(n))):
                return False
    return True


# --- multideals ---------------------------------------------------------------

@dataclass(frozen=True)
class Multideal:
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(frozenset(p) for p in self.parts))

    @property
    def carrier(self) -> frozenset:
        return frozenset().union(*self.parts)

    def contained_in(self, other: "Multideal") -> bool:
        return all(a <= b for a, b in zip(self.parts, other.parts))

    def labels(self, size: int) -> np.ndarray:
        lab = np.zeros(size, dtype=np.int64)
        for k, part in enumerate(self.parts, start=1):
            for a in part:
                lab[a] = k
        return lab

    def to_json(self) -> list:
        return [sorted(p) for p in self.parts]


def _disjoint(parts: Sequence[frozenset]) -> bool:
    return sum(len(p) for p in parts) == len(frozenset().union(*parts))


def _closed(A: FiniteAlgebra, lab: np.ndarray) -> bool:
    n, T = A.n, A.table
    labels_of = lab[T]
    for r in range(1, n + 1):
        members = np.flatnonzero(lab == r)
        if not len(members):
            continue
        sub = labels_of[members]
        expected = lab.reshape((1,) * r + (-1,) + (1,) * (n - r))
        mask = np.broadcast_to(expected != 0, sub.shape)
        if np.any((sub != expected) & mask):
            return False
    for k in range(1, n + 1):
        members = np.flatnonzero(lab == k)
        if not len(members):
            continue
        sub = labels_of[np.ix_(np.arange(A.size), *([members] * n))]
        if np.any(sub != k):
            return False
    return True


def is_multideal(A: FiniteAlgebra, I: Multideal | Sequence[Iterable[int]]) -> bool:
    """Disjoint parts, e_k in I_k, and the two closure clauses by exhaustive quantification."""
    parts = I.parts if isinstance(I, Multideal) else tuple(frozenset(p) for p in I)
    if len(parts) != A.n or not _disjoint(parts):
        return False
    if any(not 0 <= a < A.size for p in parts for a in p):
        return False
    if any(e not in parts[k] for k, e in enumerate(A.constants)):
        return False
    return _closed(A, Multideal(parts).labels(A.size))


def _labelings(A: FiniteAlgebra, values: range) -> Iterator[np.ndarray]:
    forced = {}
    for k, e in enumerate(A.constants, start=1):
        if forced.get(e, k) != k:
            return
        forced[e] = k
    free = [a for a in range(A.size) if a not in forced]
    if len(values) ** len(free) > MULTIDEAL_LIMIT:
        raise AlgebraError(f"{len(values) ** len(free)} candidate labelings exceed the limit")
    lab = np.zeros(A.size, dtype=np.int64)
    for e, k in forced.items():
        lab[e] = k
    for combo in itertools.product(values, repeat=len(free)):
        lab[free] = combo
        yield lab.copy()


def _from_labels(lab: np.ndarray, n: int) -> Multideal:
    return Multideal(tuple(frozenset(int(a) for a in np.flatnonzero(lab == k)) for k in range(1, n + 1)))


def multideals(A: FiniteAlgebra) -> list[Multideal]:
    """Every multideal, in lexicographic order of the label vector (0 = outside)."""
    return [_from_labels(lab, A.n) for lab in _labelings(A, range(A.n + 1)) if _closed(A, lab)]


def ultramultideals(A: FiniteAlgebra) -> list[Multideal]:
    return [_from_labels(lab, A.n) for lab in _labelings(A, range(1, A.n + 1)) if _closed(A, lab)]


def intersection_property(A: FiniteAlgebra, I: Multideal, ultras: Sequence[Multideal] | None = None) -> bool:
    ultras = ultramultideals(A) if ultras is None else ultras
    above = [U for U in ultras if I.contained_in(U)]
    if not above:
        return False
    meet = tuple(frozenset.intersection(*(U.parts[k] for U in above)) for k in range(A.n))
    return meet == I.parts


def point_ultramultideal(A: FiniteAlgebra, x) -> Multideal:
    """I_k = partitions putting x in block k."""
    return Multideal(tuple(frozenset(c for c in range(A.size) if A.element(c).block_of(x) == k)
                           for k in range(1, A.n + 1)))


# --- representation -----------------------------------------------------------

@dataclass(frozen=True)
class IsoReport:
    instance: str
    size: int
    bijective: bool
    preserves_q: bool
    preserves_constants: bool
    cases: int
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.bijective and self.preserves_q and self.preserves_constants

    def __bool__(self):
        return self.passed


def _q_power(n: int, c: tuple, args: Sequence[tuple]) -> tuple:
    return tuple(args[c[p] - 1][p] for p in range(len(c)))


def iso_par_to_power(X: int | Iterable[Hashable], n: int) -> IsoReport:
    """p ↦ (x ↦ block of x in p), checked against pointwise q of n^X on every tuple."""
    A = partition_algebra(X, n, verify=False)
    points = A.points
    phi = []
    for code in range(A.size):
        p = A.element(code)
        phi.append(tuple(p.block_of(x) for x in points))
    powers = set(itertools.product(range(1, n + 1), repeat=len(points)))
    bijective = len(set(phi)) == A.size and set(phi) == powers
    consts = all(phi[e] == (k,) * len(points) for k, e in enumerate(A.constants, start=1))
    witness = None
    cases = 0
    for key in itertools.product(range(A.size), repeat=n + 1):
        cases += 1
        if phi[A.table[key]] != _q_power(n, phi[key[0]], [phi[a] for a in key[1:]]):
            witness = {"tuple": list(key)}
            break
    return IsoReport(A.name, A.size, bijective, witness is None, consts, cases, witness)


def denotation(f: Formula, assignment: dict[str, int], A: FiniteAlgebra) -> int:
    """Value of f in a partition algebra; X^pi permutes blocks so block k is Y_{pi^-1(k)}."""
    if isinstance(f, Const):
        return A.constants[f.k - 1]
    if isinstance(f, Var):
        return _act_code(assignment[f.name], f.dec, A)
    return A.q(denotation(f.test, assignment, A), *(denotation(b, assignment, A) for b in f.branches))


def _act_code(code: int, pi: tuple, A: FiniteAlgebra) -> int:
    m = len(A.points or ())
    out = 0
    for p in range(m):
        d = (code // A.n ** (m - 1 - p)) % A.n
        out = out * A.n + pi[d] - 1
    return out


@dataclass(frozen=True)
class ReadingReport:
    sequent: str
    points: int
    partition_valid: bool
    holds_valid: bool
    assignments: int
    witness: Any = None

    @property
    def agree(self) -> bool:
        return self.partition_valid == self.holds_valid

    def __bool__(self):
        return self.agree


def sequent_partition_reading(s: Sequent, X: int | Iterable[Hashable], n: int) -> ReadingReport:
    """Does ⋂ left blocks_i ⊆ ⋃ right blocks_i for every partition assignment, and does
    that verdict match ``holds``?"""
    from .syntax import render

    A = partition_algebra(X, n, verify=False)
    if not A.points:
        raise AlgebraError("the partition reading needs at least one point")
    names = sorted(s.variables())
    if A.size ** len(names) > CARRIER_LIMIT:
        raise AlgebraError("too many partition assignments")
    i = s.i
    valid = True
    witness = None
    count = 0
    for combo in itertools.product(range(A.size), repeat=len(names)):
        count += 1
        assignment = dict(zip(names, combo))
        lefts = [A.element(denotation(f, assignment, A)).blocks[i - 1] for f in s.left]
        rights = [A.element(denotation(f, assignment, A)).blocks[i - 1] for f in s.right]
        meet = frozenset(A.points).intersection(*lefts)
        join = frozenset().union(*rights)
        if not meet <= join:
            valid = False
            witness = {x: A.element(c).blocks for x, c in assignment.items()}
            witness = {x: [sorted(b) for b in blocks] for x, blocks in witness.items()}
            break
    return ReadingReport(render(s), len(A.points), valid, bool(holds(s, n)), count, witness)


def report_json(results: Iterable[CheckResult]) -> str:
    return "\n".join(json.dumps(r.to_json(), sort_keys=True) for r in results)


def report_text(results: Iterable[CheckResult]) -> str:
    return "\n".join(r.line() for r in results)
