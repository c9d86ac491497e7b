import json
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from npc.algebra import (
    AlgebraError, FiniteAlgebra, Multideal, b4_brute, check_identities, corrupted, decode, encode,
    intersection_property, is_multideal, iso_par_to_power, multideals, npartition, nsubset,
    partition_algebra, point_ultramultideal, pure_algebra, q_nsubsets, report_json,
    sequent_partition_reading, ultramultideals,
)
from npc.corpus import random_sequent
from npc.syntax import parse_sequent


# --- n-subsets ----------------------------------------------------------------

def test_q_nsubsets_examples():
    y0 = nsubset("a", "a", "")
    ys = [nsubset("a", "a", ""), nsubset("a", "", "a")]
    assert q_nsubsets(y0, ys) == nsubset("a", "a", "")
    X = ("a", "b")
    y0 = npartition(X, {"a"}, {"b"})
    out = q_nsubsets(y0, [npartition(X, X, ()), npartition(X, (), X)])
    assert out == npartition(X, {"a"}, {"b"})


def test_q_nsubsets_constant_test_selects_branch():
    X = ("a", "b", "c")
    ys = [npartition(X, {"a"}, {"b"}, {"c"}), npartition(X, {"c"}, {"a", "b"}, ()), npartition(X, (), (), X)]
    for i in range(3):
        e = npartition(X, *[X if k == i else () for k in range(3)])
        assert q_nsubsets(e, ys) == ys[i]


def test_q_nsubsets_errors():
    with pytest.raises(AlgebraError):
        q_nsubsets(nsubset("a", "a", ""), [nsubset("b", "b", ""), nsubset("b", "", "b")])
    with pytest.raises(AlgebraError):
        q_nsubsets(nsubset("a", "a", ""), [nsubset("a", "a", "")])
    with pytest.raises(AlgebraError):
        npartition("ab", "a", "a")


def test_partition_blocks():
    p = npartition("abc", "ac", "b")
    assert p.block_of("c") == 1 and p.block_of("b") == 2 and p.n == 2
    assert not nsubset("ab", "a", "a").is_partition()


# --- partition algebras ----------------------------------------------------------

@pytest.mark.parametrize("X, n, size", [(0, 2, 1), (2, 2, 4), (2, 3, 9), (3, 2, 8)])
def test_carrier_sizes(X, n, size):
    assert partition_algebra(X, n).size == size


def test_constants_are_full_blocks():
    A = partition_algebra(["a", "b"], 3)
    for k, e in enumerate(A.constants):
        assert A.element(e).blocks[k] == frozenset("ab")


def test_encode_decode_roundtrip():
    A = partition_algebra(3, 3)
    for code in range(A.size):
        assert encode(decode(code, A.points, 3), 3) == code


def test_table_matches_nsubset_q():
    A = partition_algebra(2, 2, verify=False)
    for key in np.ndindex(A.table.shape):
        y0, *ys = (A.element(c) for c in key)
        assert A.element(A.q(*key)) == q_nsubsets(y0, ys)


def test_finite_algebra_rejects_bad_tables():
    A = pure_algebra(2)
    with pytest.raises(AlgebraError):
        FiniteAlgebra(2, np.zeros((2, 2), dtype=int), A.constants)
    bad = A.table.copy()
    bad[0, 0, 1] = 1
    with pytest.raises(AlgebraError):
        A.with_table(bad, "broken")
    with pytest.raises(AlgebraError):
        partition_algebra(13, 3)


# --- identities ------------------------------------------------------------------

@pytest.mark.parametrize("A", [partition_algebra(["a", "b"], 2), partition_algebra(0, 2), pure_algebra(3)],
                         ids=["par-ab-2", "trivial", "pure-3"])
def test_identities_pass(A):
    results = check_identities(A)
    assert [r.name for r in results] == ["nCH", "B1", "B2", "B3[e]", "B3[q]", "B4"]
    assert all(results), [r.line() for r in results if not r]


@pytest.mark.parametrize("seed", range(8))
def test_corrupted_table_fails_with_a_witness(seed):
    A, key = corrupted(partition_algebra(2, 2), seed)
    results = check_identities(A)
    failed = [r for r in results if not r]
    assert failed and all(r.witness is not None for r in failed)
    assert results[0].passed  # nCH survives by construction
    assert b4_brute(A) == next(r for r in results if r.name == "B4").passed


def test_b4_projection_agrees_with_brute_force():
    for A in (partition_algebra(1, 2), partition_algebra(1, 3), pure_algebra(2)):
        assert b4_brute(A) and next(r for r in check_identities(A) if r.name == "B4")
    for seed in range(20):
        A, _ = corrupted(partition_algebra(2, 2), seed)
        assert b4_brute(A) == next(r for r in check_identities(A) if r.name == "B4").passed


def test_b1_witness_is_real():
    A, _ = corrupted(partition_algebra(2, 2), 0)
    for r in check_identities(A):
        if r.name == "B1" and not r:
            c = r.witness["c"]
            assert A.q(c, *A.constants) != c


def test_report_json_is_line_per_check():
    lines = report_json(check_identities(pure_algebra(2))).splitlines()
    docs = [json.loads(line) for line in lines]
    assert len(docs) == 6
    assert set(docs[0]) == {"name", "instance", "pass", "witness", "cases", "exhaustive"}


# --- multideals -------------------------------------------------------------------

def test_is_multideal_examples():
    A = pure_algebra(2)
    assert is_multideal(A, [{0}, {1}])
    assert not is_multideal(A, [{1}, {0}])
    assert not is_multideal(A, [set(), set()])
    assert not is_multideal(A, [{0, 1}, {1}])


def test_pure_algebra_has_one_ultramultideal():
    for n in (2, 3):
        A = pure_algebra(n)
        assert ultramultideals(A) == [Multideal(tuple({k} for k in range(n)))]


def test_empty_carrier_has_no_multideal():
    A = partition_algebra(0, 2)
    assert multideals(A) == [] and ultramultideals(A) == []


@pytest.mark.parametrize("X, n", [(1, 2), (2, 2), (1, 3), (2, 3)])
def test_ultramultideals_are_the_points(X, n):
    A = partition_algebra(X, n)
    ultras = ultramultideals(A)
    assert len(ultras) == X
    assert set(ultras) == {point_ultramultideal(A, x) for x in A.points}
    for I in multideals(A):
        assert is_multideal(A, I)
        assert intersection_property(A, I, ultras)
    for U in ultras:
        assert intersection_property(A, U, [U])


def test_multideals_are_deterministic():
    A = partition_algebra(2, 2)
    assert multideals(A) == multideals(A)
    assert [I.to_json() for I in multideals(A)][0] == [[0], [3]]


# --- representation -------------------------------------------------------------------

@pytest.mark.parametrize("X, n, size", [(1, 2, 2), (0, 2, 1), (2, 3, 9), (3, 2, 8)])
def test_iso_examples(X, n, size):
    report = iso_par_to_power(X, n)
    assert report and report.size == size
    assert report.cases == size ** (n + 1)


@pytest.mark.parametrize("text, valid", [("X |-1 X", True), ("|-1 X, X^[2,1]", True), ("|-1 X", False)])
def test_reading_examples(text, valid):
    report = sequent_partition_reading(parse_sequent(text, 2), 1, 2)
    assert report.agree and report.partition_valid == valid


def test_reading_needs_points():
    with pytest.raises(AlgebraError):
        sequent_partition_reading(parse_sequent("X |-1 X", 2), 0, 2)


def test_reading_witness_is_a_counterexample():
    report = sequent_partition_reading(parse_sequent("|-1 X, Y", 2), 2, 2)
    assert not report.partition_valid and report.agree
    assert set(report.witness) == {"X", "Y"}


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]), st.sampled_from([1, 2]))
def test_reading_agrees_with_holds(seed, n, points):
    s = random_sequent(random.Random(seed), n, max_depth=1)
    assert sequent_partition_reading(s, points, n).agree
