"""Prover versus truth-table oracle on a family of sequents.

Every instance is judged three ways: the prover's verdict, the oracle's
verdict, and an independent re-check of the prover's evidence (kernel for
proofs, ``falsifies`` for witnesses).
"""

from __future__ import annotations

import copy
import itertools
import json
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import atoms, formula_pool, random_exchange, random_formula, random_perm, random_sequent, sequent_family
from .kernel import ProofFormatError, ProofTree, Rule, check, loads, to_json
from .prover import DEFAULT_BUDGET, Proved, Refuted, prove
from .semantics import falsifies, holds
from .syntax import Const, Formula, Q, Sequent, Var, act_ctx, depth, identity, parse_sequent, render, variables

NAMES = ("X", "Y", "Z", "W")
PROVER_ROWS = ("Proved", "Refuted", "OutOfBudget")
ORACLE_COLS = ("Valid", "Invalid")


@dataclass
class Agreement:
    n: int
    counts: Counter = field(default_factory=Counter)
    kernel_failures: int = 0
    witness_failures: int = 0
    cut_uses: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def disagreements(self) -> int:
        return (self.counts[("Proved", "Invalid")] + self.counts[("Refuted", "Valid")]
                + self.counts[("OutOfBudget", "Valid")] + self.counts[("OutOfBudget", "Invalid")])

    @property
    def ok(self) -> bool:
        return (self.disagreements == 0 and self.kernel_failures == 0
                and self.witness_failures == 0 and self.cut_uses == 0)

    def matrix(self) -> str:
        width = max(len(r) for r in PROVER_ROWS) + 2
        lines = [" " * width + "".join(f"{c:>10}" for c in ORACLE_COLS)]
        for r in PROVER_ROWS:
            lines.append(f"{r:<{width}}" + "".join(f"{self.counts[(r, c)]:>10}" for c in ORACLE_COLS))
        lines.append(f"sequents {self.total}, kernel rejections {self.kernel_failures}, "
                     f"bad witnesses {self.witness_failures}, proofs using Cut {self.cut_uses}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "matrix": {r: {c: self.counts[(r, c)] for c in ORACLE_COLS} for r in PROVER_ROWS},
            "kernel_failures": self.kernel_failures,
            "witness_failures": self.witness_failures,
            "cut_uses": self.cut_uses,
            "discrepancies": self.discrepancies,
            "pass": self.ok,
        }


def compare(sequents: Iterable[Sequent], n: int, budget: int = DEFAULT_BUDGET,
            keep: int = 10) -> Agreement:
    out = Agreement(n)
    for s in sequents:
        result = prove(s, n, budget, verify=False)
        oracle = "Valid" if holds(s, n) else "Invalid"
        row = type(result).__name__
        out.counts[(row, oracle)] += 1
        note = None
        if isinstance(result, Proved):
            verdict = check(result.tree, n)
            if not verdict or result.tree.conclusion != s:
                out.kernel_failures += 1
                note = f"kernel: {verdict}"
            if result.tree.uses(Rule.CUT):
                out.cut_uses += 1
                note = "uses Cut"
        elif isinstance(result, Refuted) and not falsifies(s, result.witness):
            out.witness_failures += 1
            note = f"witness {dict(result.witness)} does not falsify"
        mismatch = (row, oracle) not in {("Proved", "Valid"), ("Refuted", "Invalid")}
        if (mismatch or note) and len(out.discrepancies) < keep:
            out.discrepancies.append({"sequent": render(s), "prover": row, "oracle": oracle, "note": note})
    return out


def generic_pool(n: int, names: Iterable[str], max_depth: int) -> list[Formula]:
    """Atoms under every decoration, plus (depth 1) every q(X, b_1..b_n) with an
    undecorated test and branches drawn from the constants and undecorated variables."""
    names = tuple(names)
    pool = atoms(n, names)
    if max_depth >= 1:
        branch = [Const(k) for k in range(1, n + 1)] + [Var(x, identity(n)) for x in names]
        tests = [Var(x, identity(n)) for x in names]
        pool += [Q(t, bs) for t in tests for bs in itertools.product(branch, repeat=n)]
    return pool


def enumeration_pool(n: int, var_count: int, max_depth: int) -> list[Formula]:
    """The fixed completeness pool when it fits (n = 2, at most two variables), else the generic one."""
    if var_count < 1 or var_count > len(NAMES):
        raise ValueError(f"variable count must be in 1..{len(NAMES)}")
    names = NAMES[:var_count]
    if n == 2 and var_count <= 2:
        return [f for f in formula_pool() if depth(f) <= max_depth and variables(f) <= set(names)]
    if max_depth > 1:
        raise ValueError("depth above 1 is only available for n = 2 with at most two variables")
    return generic_pool(n, names, max_depth)


def family(n: int, var_count: int = 2, max_depth: int = 2, max_total: int = 3) -> Iterable[Sequent]:
    return sequent_family(enumeration_pool(n, var_count, max_depth), n, max_total)


# --- proof-file mutations ----------------------------------------------------

MUTATION_KINDS = ("rule", "param", "conclusion", "premises", "dimension")


def _nodes_with_paths(node: dict, path: tuple = ()) -> list[tuple[tuple, dict]]:
    out = [(path, node)]
    for idx, child in enumerate(node.get("premises", [])):
        out += _nodes_with_paths(child, path + (idx,))
    return out


def _mutate_conclusion(text: str, n: int, rng: random.Random) -> str:
    s = parse_sequent(text, n)
    choice = rng.randrange(4)
    if choice == 0:
        return render(Sequent(s.left, rng.choice([i for i in range(1, n + 1) if i != s.i]), s.right))
    if choice == 1 and s.formulas:
        side = "left" if s.left and (not s.right or rng.random() < 0.5) else "right"
        items = list(getattr(s, side))
        items.pop(rng.randrange(len(items)))
        parts = {"left": s.left, "right": s.right, side: tuple(items)}
        return render(Sequent(parts["left"], s.i, parts["right"]))
    if choice == 2:
        extra = random_formula(rng, n, max_depth=1)
        if rng.random() < 0.5:
            return render(Sequent(s.left + (extra,), s.i, s.right))
        return render(Sequent(s.left, s.i, s.right + (extra,)))
    e = random_exchange(rng, n)
    return render(Sequent(act_ctx(s.left, e), s.i, act_ctx(s.right, e)))


def _mutate_param(node: dict, n: int, rng: random.Random) -> bool:
    params = node["params"]
    if not params:
        return False
    key = rng.choice(sorted(params))
    value = params[key]
    if isinstance(value, int):
        params[key] = rng.choice([k for k in range(1, n + 2) if k != value])
    elif isinstance(value, list):
        params[key] = list(random_perm(rng, n))
    else:
        params[key] = render(random_formula(rng, n, max_depth=1))
    return True


def _mutate_premises(node: dict, rng: random.Random) -> None:
    prem = node["premises"]
    if not prem:
        prem.append(copy.deepcopy(node))
    elif len(prem) >= 2 and rng.random() < 0.3:
        i, j = rng.sample(range(len(prem)), 2)
        prem[i], prem[j] = prem[j], prem[i]
    elif rng.random() < 0.5:
        prem.pop(rng.randrange(len(prem)))
    else:
        prem.append(copy.deepcopy(rng.choice(prem)))


def mutate_document(doc: dict, rng: random.Random, tries: int = 20) -> tuple[str, tuple, dict]:
    """One changed field of a proof document: returns (kind, node path, new document)."""
    original = json.dumps(doc, sort_keys=True)
    n = doc["n"]
    for _ in range(tries):
        new = copy.deepcopy(doc)
        kind = rng.choice(MUTATION_KINDS)
        path, node = rng.choice(_nodes_with_paths(new["proof"]))
        if kind == "rule":
            node["rule"] = rng.choice([r.value for r in Rule if r.value != node["rule"]])
        elif kind == "param":
            if not _mutate_param(node, n, rng):
                continue
        elif kind == "conclusion":
            node["conclusion"] = _mutate_conclusion(node["conclusion"], n, rng)
        elif kind == "premises":
            _mutate_premises(node, rng)
        else:
            path = ()
            new["n"] = rng.choice([k for k in range(2, 5) if k != n])
        if json.dumps(new, sort_keys=True) != original:
            return kind, path, new
    raise ValueError("no effective mutation found")


@dataclass
class MutationReport:
    total: int = 0
    unreadable: int = 0
    rejected: int = 0
    accepted: int = 0
    kinds: Counter = field(default_factory=Counter)
    unsound: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.unsound

    def line(self) -> str:
        return (f"{self.total} mutations: {self.unreadable} unreadable, {self.rejected} rejected by check, "
                f"{self.accepted} still valid proofs of valid sequents, {len(self.unsound)} unsound")


def valid_proofs(count: int, n: int, seed: int = 0, p_leaf: float = 0.6) -> list[ProofTree]:
    """Prover outputs for ``count`` seeded random sequents that hold."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        s = random_sequent(rng, n, p_leaf=p_leaf)
        result = prove(s, n)
        if isinstance(result, Proved):
            out.append(result.tree)
    return out


def mutation_trial(proofs: Iterable[tuple[ProofTree, int]], per_proof: int, seed: int = 0) -> MutationReport:
    """Mutate each serialized proof ``per_proof`` times; an accepted mutant must prove a valid sequent."""
    rng = random.Random(seed)
    report = MutationReport()
    for tree, n in proofs:
        doc = to_json(tree, n)
        for _ in range(per_proof):
            kind, path, mutant = mutate_document(doc, rng)
            report.total += 1
            report.kinds[kind] += 1
            try:
                t, m = loads(json.dumps(mutant))
            except ProofFormatError:
                report.unreadable += 1
                continue
            if not check(t, m):
                report.rejected += 1
            elif holds(t.conclusion, m):
                report.accepted += 1
            else:
                report.unsound.append({"kind": kind, "path": list(path), "conclusion": render(t.conclusion)})
    return report
