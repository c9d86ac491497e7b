"""Acceptance criteria, one test each; every test also records a PASS/FAIL line.

Run under pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""

import itertools
import random
import sys
import time

from npc import algebra, classical
from npc.corpus import (
    family_size, formula_pool, multisets, random_env, random_exchange, random_formula, random_perm,
    random_sequent, sequent_family, single_compound_sequent,
)
from npc.harness import compare, mutation_trial, valid_proofs
from npc.kernel import Rule
from npc.prover import decompose
from npc.semantics import evaluate, holds
from npc.syntax import act, compose, depth, exchange, identity

from conftest import ACCEPTANCE_LINES

SEED = 20240531

# criterion sizes
FAMILY_SIZE = 259_532       # every sequent over the 45-formula pool, |left|+|right| <= 3, both turnstiles
N3_SAMPLES = 10_000
LAW_SAMPLES = 10_000
SYM_SAMPLES = 10_000
INVERT_SAMPLES = 1_000
ALGEBRAS = ((2, 1), (2, 2), (3, 1), (3, 2))   # (n, |X|)
READING_SAMPLES = 1_000
MUTATIONS = 500
MUTATED_PROOFS = 50


def record(label: str, passed: bool, detail: str, started: float) -> None:
    line = f"[{'PASS' if passed else 'FAIL'}] {label}: {detail} ({time.time() - started:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_c01_completeness_agreement_n2():
    t = time.time()
    pool = formula_pool()
    assert family_size(len(pool), 2, 3) == FAMILY_SIZE
    agreement = compare(sequent_family(pool, 2, 3), 2)
    passed = agreement.ok and agreement.total == FAMILY_SIZE
    record("C1 prover/kernel/oracle agreement, n=2 exhaustive", passed,
           f"{agreement.total} sequents, {agreement.disagreements} disagreements, "
           f"{agreement.kernel_failures} kernel rejections, {agreement.witness_failures} bad witnesses, "
           f"{agreement.cut_uses} cuts", t)
    assert passed, agreement.discrepancies


def test_c02_spot_replication_n3():
    t = time.time()
    rng = random.Random(SEED)
    agreement = compare((random_sequent(rng, 3, p_leaf=0.6) for _ in range(N3_SAMPLES)), 3)
    proved = sum(agreement.counts[("Proved", c)] for c in ("Valid", "Invalid"))
    passed = agreement.ok and agreement.total == N3_SAMPLES
    record("C2 prover/kernel/oracle agreement, n=3 sampled", passed,
           f"{agreement.total} sequents ({proved} proved), {agreement.disagreements} disagreements, "
           f"{agreement.kernel_failures} kernel rejections, {agreement.witness_failures} bad witnesses", t)
    assert passed, agreement.discrepancies


def test_c03_syntax_laws():
    t = time.time()
    rng = random.Random(SEED + 3)
    failures = []
    for k in range(LAW_SAMPLES):
        n = 2 + k % 3
        f = random_formula(rng, n, names=("X", "Y", "Z"))
        pi, rho = random_perm(rng, n), random_perm(rng, n)
        e = random_exchange(rng, n)
        ok = (act(act(f, pi), rho) == act(f, compose(rho, pi))
              and act(f, identity(n)) == f
              and act(act(f, e), e) == f
              and depth(act(f, pi)) == depth(f))
        if not ok:
            failures.append((n, f, pi, rho, e))
    record("C3 syntax laws", not failures, f"{LAW_SAMPLES} cases, {len(failures)} failures", t)
    assert not failures, failures[:3]


def test_c04_exchange_swaps_values():
    t = time.time()
    rng = random.Random(SEED + 4)
    failures = []
    for k in range(SYM_SAMPLES):
        n = 2 + k % 3
        f = random_formula(rng, n, names=("X", "Y", "Z"))
        v = random_env(rng, n, ("X", "Y", "Z"))
        i, j = rng.randint(1, n), rng.randint(1, n)
        if (evaluate(f, v) == i) != (evaluate(act(f, exchange(i, j, n)), v) == j):
            failures.append((n, f, v, i, j))
    record("C4 exchange lemma", not failures, f"{SYM_SAMPLES} cases, {len(failures)} failures", t)
    assert not failures, failures[:3]


def test_c05_q_rule_invertibility():
    t = time.time()
    rng = random.Random(SEED + 5)
    failures = []
    valid = 0
    for k in range(INVERT_SAMPLES):
        n = 2 + k % 2
        s = single_compound_sequent(rng, n)
        rule, _, premises = decompose(s, n)
        conclusion = bool(holds(s, n))
        valid += conclusion
        if rule not in (Rule.QL, Rule.QR) or len(premises) != n \
                or conclusion != all(holds(p, n) for p in premises):
            failures.append(s)
    record("C5 qL/qR invertibility", not failures,
           f"{INVERT_SAMPLES} sequents ({valid} valid), {len(failures)} failures", t)
    assert not failures, failures[:3]


def test_c06_identities():
    t = time.time()
    details, passed = [], True
    for n, size in ALGEBRAS:
        results = algebra.check_identities(algebra.partition_algebra(size, n), seed=SEED)
        ok = all(results)
        passed &= ok
        sampled = [r.name for r in results if not r.exhaustive]
        details.append(f"(n={n},|X|={size}) {'ok' if ok else 'FAIL'}"
                       + (f" sampled {','.join(sampled)}" if sampled else ""))
    broken, key = algebra.corrupted(algebra.partition_algebra(2, 2), seed=SEED)
    failed = [r for r in algebra.check_identities(broken, seed=SEED) if not r]
    caught = bool(failed) and all(r.witness is not None for r in failed)
    passed &= caught
    details.append(f"corrupted entry {key} caught by {','.join(r.name for r in failed) or 'nothing'}")
    record("C6 nBA identities", passed, "; ".join(details), t)
    assert passed


def test_c07_multideals():
    t = time.time()
    details, passed = [], True
    for n, size in ALGEBRAS:
        A = algebra.partition_algebra(size, n)
        ultras = algebra.ultramultideals(A)
        ideals = algebra.multideals(A)
        bad = [I for I in ideals if not algebra.intersection_property(A, I, ultras)]
        ok = len(ultras) == size and not bad
        passed &= ok
        details.append(f"(n={n},|X|={size}) {len(ultras)} ultra / {len(ideals)} multideals, {len(bad)} failures")
    record("C7 multideals", passed, "; ".join(details), t)
    assert passed


def test_c08_partition_reading():
    t = time.time()
    isos = [(n, size, algebra.iso_par_to_power(size, n)) for n in (2, 3) for size in range(4)]
    bad_iso = [(n, size) for n, size, rep in isos if not rep]
    rng = random.Random(SEED + 8)
    disagreements, valid = [], 0
    for k in range(READING_SAMPLES):
        n = 2 + k % 2
        points = 1 + (k // 2) % 2
        s = random_sequent(rng, n, max_depth=2, p_leaf=0.5)
        report = algebra.sequent_partition_reading(s, points, n)
        valid += report.holds_valid
        if not report.agree:
            disagreements.append(report)
    passed = not bad_iso and not disagreements
    record("C8 partition representation", passed,
           f"iso {len(isos) - len(bad_iso)}/{len(isos)} instances; reading {READING_SAMPLES} sequents "
           f"({valid} valid), {len(disagreements)} disagreements", t)
    assert passed, (bad_iso, disagreements[:3])


def _pc_sequents(pool, max_total):
    for total in range(max_total + 1):
        for nl in range(total + 1):
            for left in multisets(pool, nl):
                for right in multisets(pool, total - nl):
                    yield classical.PCSequent(left, right)


def test_c09_translations():
    t = time.time()
    names = ("X", "Y")
    pc_corpus = classical.pc_formulas(names, 3, constants=False) + classical.pc_formulas(names, 2)
    atoms = classical.twopc_atoms(names)
    twopc_corpus = (classical.twopc_formulas(atoms, 1)
                    + classical.twopc_formulas(classical.twopc_atoms(names, constants=False), 2))
    reports = classical.roundtrip_reports(pc_corpus, twopc_corpus, names)

    twopc_pool = classical.twopc_formulas(atoms, 1)
    twopc_seqs = itertools.chain(sequent_family(twopc_pool, 2, 1), sequent_family(atoms, 2, 3))
    pc_seqs = _pc_sequents(classical.pc_formulas(names, 1), 2)
    reports += classical.provability_agreement(twopc_seqs, pc_seqs)

    sims = classical.simulations()
    sim_bad = [s.name for s in sims if not s.check()]
    passed = all(reports) and not sim_bad
    summary = ", ".join(f"{r.name} {r.cases}{'' if r else ' FAIL'}" for r in reports)
    record("C9 translations", passed,
           f"{summary}; simulations {len(sims) - len(sim_bad)}/{len(sims)} check", t)
    assert passed, ([r for r in reports if not r], sim_bad)


def test_c10_kernel_robustness():
    t = time.time()
    half = MUTATED_PROOFS // 2
    proofs = [(p, 2) for p in valid_proofs(half, 2, seed=SEED)] + [(p, 3) for p in valid_proofs(half, 3, seed=SEED)]
    cut_free = all(not p.uses(Rule.CUT) for p, _ in proofs)
    report = mutation_trial(proofs, MUTATIONS // len(proofs), seed=SEED)
    passed = report.ok and report.total == MUTATIONS and cut_free
    record("C10 kernel robustness", passed,
           f"{report.line()}; {len(proofs)} prover outputs cut-free: {cut_free}", t)
    assert passed, report.unsound[:3]


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_c") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
