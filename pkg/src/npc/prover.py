"""Root-first, cut-free decision procedure for nPC sequents.

qL and qR are semantically invertible, so the search saturates them in a
fixed order (leftmost compound, left context first) until every leaf is
atomic.  Atomic sequents are decided by a constraint analysis: a left
occurrence X^pi at dimension i forces v(X) = pi^-1(i), a right occurrence
X^rho is satisfied exactly when v(X) = rho^-1(i).  Valid atomic sequents
fall into one of five cases, each closed by a small fixed proof pattern:

    C1  e_k on the left, k != i        Neg1 over Const
    C2  e_i on the right               Const
    C3  X^pi, X^sigma on the left that force different values   Neg1 over Id
    C4  X^pi left, X^rho right forcing the same value           Id
    C5  X absent on the left, right occurrences cover all n values   Neg3

and weakenings for the rest of the sequent.  A falsifying environment of
any branch falsifies the root, since every premise of qL/qR is just the
root constraint restricted to one value of the test.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import derive
from .kernel import ProofTree, Rule, check, infer, instantiate, premises
from .semantics import Invalid, complete_env, falsifies
from .syntax import Const, Q, Sequent, Var, compose, exchange, invert, render

DEFAULT_BUDGET = 100_000


class SynthesisError(RuntimeError):
    """The prover produced something the kernel or the semantics rejects."""


@dataclass(frozen=True)
class Proved:
    tree: ProofTree

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Refuted:
    witness: Mapping[str, int]

    def __bool__(self):
        return False


@dataclass(frozen=True)
class OutOfBudget:
    steps: int

    def __bool__(self):
        return False


ProveResult = Proved | Refuted | OutOfBudget


@dataclass(frozen=True)
class AtomicCase:
    """A valid atomic sequent together with the atoms that make it valid."""

    case: str
    atoms: tuple = ()

    def __bool__(self):
        return True


def is_atomic(s: Sequent) -> bool:
    return not any(isinstance(f, Q) for f in s.formulas)


def decompose(s: Sequent, n: int) -> tuple[Rule, dict, list[Sequent]]:
    """Apply qL/qR to the leftmost compound, left context before right."""
    for f in s.left:
        if isinstance(f, Q):
            params = {"i": s.i, "formula": f}
            return Rule.QL, params, premises(Rule.QL, params, s, n)
    for f in s.right:
        if isinstance(f, Q):
            params = {"i": s.i, "formula": f}
            return Rule.QR, params, premises(Rule.QR, params, s, n)
    raise ValueError(f"no compound formula in {render(s)}")


def atomic_verdict(s: Sequent, n: int) -> AtomicCase | Invalid:
    if not is_atomic(s):
        raise ValueError(f"not an atomic sequent: {render(s)}")
    i = s.i
    for f in s.left:
        if isinstance(f, Const) and f.k != i:
            return AtomicCase("C1", (f,))
    if Const(i) in s.right:
        return AtomicCase("C2", (Const(i),))

    forced: dict[str, tuple[int, Var]] = {}
    for f in s.left:
        if isinstance(f, Var):
            value = invert(f.dec)[i - 1]
            if f.name in forced and forced[f.name][0] != value:
                return AtomicCase("C3", (forced[f.name][1], f))
            forced.setdefault(f.name, (value, f))

    covers: dict[str, dict[int, Var]] = {}
    for f in s.right:
        if isinstance(f, Var):
            value = invert(f.dec)[i - 1]
            if f.name in forced and forced[f.name][0] == value:
                return AtomicCase("C4", (forced[f.name][1], f))
            covers.setdefault(f.name, {}).setdefault(value, f)

    for name in sorted(covers):
        if name not in forced and len(covers[name]) == n:
            occurrences = tuple(f for f in s.right if isinstance(f, Var) and f.name == name)
            return AtomicCase("C5", occurrences)

    witness = {}
    for name in sorted(s.variables()):
        if name in forced:
            witness[name] = forced[name][0]
        else:
            taken = covers.get(name, {})
            witness[name] = min(v for v in range(1, n + 1) if v not in taken)
    return Invalid(witness)


def close_atomic(s: Sequent, verdict: AtomicCase, n: int, _verify: bool = True) -> ProofTree:
    """Cut-free proof of a valid atomic sequent, following its case."""
    tree = _close(s, verdict, n)
    if _verify:
        result = check(tree, n)
        if not result:
            raise SynthesisError(f"closure of {render(s)} ({verdict.case}) rejected: {result}")
    return tree


def _close(s: Sequent, verdict: AtomicCase, n: int) -> ProofTree:
    i = s.i
    case = verdict.case
    if case == "C1":
        core = derive.const_left(verdict.atoms[0].k, i, n)
    elif case == "C2":
        core = derive.const(i)
    elif case == "C3":
        a, b = verdict.atoms
        m = b.dec[invert(a.dec)[i - 1] - 1]
        moved = Var(a.name, compose(exchange(m, i, n), a.dec))
        premise = infer(Rule.ID, {"i": m, "pi": moved.dec, "rho": b.dec}, Sequent((moved,), m, (b,)))
        core = infer(Rule.NEG1, {"i": m, "j": i, "k": i, "formula": b}, Sequent((a, b), i, ()), premise)
    elif case == "C4":
        a, b = verdict.atoms
        core = infer(Rule.ID, {"i": i, "pi": a.dec, "rho": b.dec}, Sequent((a,), i, (b,)))
    elif case == "C5":
        principal = verdict.atoms[-1]
        params = {"j": i, "formula": principal}
        subs = []
        for premise in instantiate(Rule.NEG3, params, s, n):
            sub = atomic_verdict(premise, n)
            if isinstance(sub, Invalid):
                raise SynthesisError(f"Neg3 premise {render(premise)} of a C5 sequent is invalid")
            subs.append(_close(premise, sub, n))
        return infer(Rule.NEG3, params, s, *subs)
    else:
        raise ValueError(f"unknown atomic case {case!r}")
    return derive.weaken_to(core, s)


class _Budget(Exception):
    pass


class _Search:
    def __init__(self, n: int, budget: int):
        self.n = n
        self.budget = budget
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise _Budget

    def run(self, s: Sequent) -> ProofTree | dict:
        self.tick()
        if is_atomic(s):
            verdict = atomic_verdict(s, self.n)
            if isinstance(verdict, Invalid):
                return dict(verdict.witness)
            return _close(s, verdict, self.n)
        rule, params, premises = decompose(s, self.n)
        subs = []
        for premise in premises:
            sub = self.run(premise)
            if isinstance(sub, dict):
                return sub
            subs.append(sub)
        return infer(rule, params, s, *subs)


def prove(s: Sequent, n: int, budget: int = DEFAULT_BUDGET, verify: bool = True) -> ProveResult:
    """Proved (kernel-checked, cut-free), Refuted (re-validated witness) or OutOfBudget.

    ``verify=False`` skips the final kernel pass for callers that run it themselves.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    search = _Search(n, budget)
    try:
        out = search.run(s)
    except _Budget:
        return OutOfBudget(search.steps)
    if isinstance(out, dict):
        witness = complete_env(out, s.variables())
        if not falsifies(s, witness):
            raise SynthesisError(f"witness {witness} does not falsify {render(s)}")
        return Refuted(witness)
    if not verify:
        return Proved(out)
    result = check(out, n)
    if not result or out.conclusion != s:
        raise SynthesisError(f"proof of {render(s)} rejected by the kernel: {result}")
    return Proved(out)
