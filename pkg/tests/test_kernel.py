import json

import pytest
from hypothesis import given, strategies as st

from npc import derive
from npc.kernel import (
    Hypothesis, Ok, ProofFormatError, ProofTree, Rule, RuleError, RuleViolation, check, dumps, infer,
    instantiate, loads, to_json,
)
from npc.semantics import holds
from npc.syntax import Const, Sequent, Var, act, exchange, identity, invert, parse_formula, parse_sequent, render

from conftest import formulas, perms


def S(text, n=2):
    return parse_sequent(text, n)


def F(text, n=2):
    return parse_formula(text, n)


# --- instantiate ----------------------------------------------------------------

def test_instantiate_examples():
    assert instantiate(Rule.CONST, {"i": 1}, S("|-1 e1"), 2) == []
    assert instantiate(Rule.ID, {"i": 2, "pi": (2, 1), "rho": (2, 1)}, S("X^[2,1] |-2 X^[2,1]"), 2) == []
    assert instantiate(Rule.SYM, {"i": 1, "j": 2}, S("X |-2 X"), 2) == [S("X^[2,1] |-1 X^[2,1]")]


def test_const_and_id_take_no_side_context():
    with pytest.raises(RuleError):
        instantiate(Rule.CONST, {"i": 1}, S("Y |-1 e1"), 2)
    with pytest.raises(RuleError):
        instantiate(Rule.ID, {"i": 1, "pi": (1, 2), "rho": (1, 2)}, S("X, Y |-1 X"), 2)


def test_id_side_condition():
    with pytest.raises(RuleError):
        instantiate(Rule.ID, {"i": 1, "pi": (1, 2), "rho": (2, 1)}, S("X |-1 X^[2,1]"), 2)
    # n = 3: pi^-1(1) = rho^-1(1) = 1 though pi != rho
    assert instantiate(Rule.ID, {"i": 1, "pi": (1, 2, 3), "rho": (1, 3, 2)}, S("X |-1 X^[1,3,2]", 3), 3) == []


def test_neg_rules():
    # Neg1: Gamma^(ij) |-_i F, Delta^(ij)  /  Gamma, F^(jk) |-_j Delta, i != k
    prem = instantiate(Rule.NEG1, {"i": 1, "j": 2, "k": 2, "formula": Const(1)}, S("e1 |-2"), 2)
    assert prem == [S("|-1 e1")]
    with pytest.raises(RuleError):
        instantiate(Rule.NEG1, {"i": 1, "j": 2, "k": 1, "formula": Const(1)}, S("e2 |-2"), 2)
    # Neg2: conclusion carries F^(ik), j != k
    prem = instantiate(Rule.NEG2, {"i": 1, "j": 2, "k": 1, "formula": F("X")}, S("Y, X |-2"), 2)
    assert prem == [S("Y^[2,1] |-1 X")]
    with pytest.raises(RuleError):
        instantiate(Rule.NEG2, {"i": 1, "j": 2, "k": 2, "formula": F("X")}, S("X^[2,1] |-2"), 2)
    # Neg3 with n = 3: one premise per i != j, ordered by i
    prem = instantiate(Rule.NEG3, {"j": 1, "formula": F("X", 3)}, S("Y |-1 X", 3), 3)
    assert prem == [S("Y^[2,1,3], X |-2", 3), S("Y^[3,2,1], X |-3", 3)]


def test_q_rules_follow_the_schemes():
    f = F("q(X, e1, e2)")
    assert instantiate(Rule.QL, {"i": 1, "formula": f}, S("q(X, e1, e2) |-1"), 2) == [S("X, e1 |-1"), S("X, e1 |-2")]
    assert instantiate(Rule.QR, {"i": 1, "formula": f}, S("|-1 q(X, e1, e2)"), 2) == [S("X |-1 e1"), S("X |-2 e1")]
    with pytest.raises(RuleError):
        instantiate(Rule.QL, {"i": 1, "formula": f}, S("|-1 q(X, e1, e2)"), 2)


def test_structural_rules():
    assert instantiate(Rule.CUT, {"formula": F("Y")}, S("X |-1"), 2) == [S("X, Y |-1"), S("X |-1 Y")]
    assert instantiate(Rule.WEAKL, {"formula": F("Y")}, S("X, Y |-1"), 2) == [S("X |-1")]
    assert instantiate(Rule.CONR, {"formula": F("Y")}, S("|-1 Y"), 2) == [S("|-1 Y, Y")]
    with pytest.raises(RuleError):
        instantiate(Rule.WEAKR, {"formula": F("Y")}, S("X |-1"), 2)


# --- check ------------------------------------------------------------------------

def test_check_examples():
    assert check(infer(Rule.CONST, {"i": 1}, S("|-1 e1")), 2) == Ok()
    bad = check(infer(Rule.ID, {"i": 1, "pi": (1, 2), "rho": (2, 1)}, S("X |-1 X^[2,1]")), 2)
    assert isinstance(bad, RuleViolation) and bad.path == ()
    tree = infer(Rule.NEG1, {"i": 1, "j": 2, "k": 2, "formula": Const(1)}, S("e1 |-2"),
                 infer(Rule.CONST, {"i": 1}, S("|-1 e1")))
    assert check(tree, 2) == Ok()


def test_violation_path_points_at_first_bad_node():
    good = infer(Rule.CONST, {"i": 1}, S("|-1 e1"))
    bad_leaf = infer(Rule.CONST, {"i": 2}, S("|-1 e1"))
    tree = infer(Rule.WEAKL, {"formula": F("X")}, S("X |-1 e1"), bad_leaf)
    assert check(tree, 2).path == (0,)
    tree = infer(Rule.WEAKL, {"formula": F("Y")}, S("X |-1 e1"), good)
    assert check(tree, 2).path == ()


def test_wrong_premise_count():
    tree = infer(Rule.WEAKL, {"formula": F("X")}, S("X |-1 e1"))
    assert not check(tree, 2)


def test_hypotheses_only_when_listed():
    tree = infer(Rule.WEAKL, {"formula": F("X")}, S("X |-1 Y"), Hypothesis(S("|-1 Y")))
    assert not check(tree, 2)
    assert check(tree, 2, hypotheses=[S("|-1 Y")])


def test_check_is_pure():
    tree = derive.identity_proof(F("q(X, Y, e1)"), 1, 2)
    assert check(tree, 2) == check(tree, 2) == Ok()


# --- derived schemes ----------------------------------------------------------------

def test_derive_examples():
    t = derive.derive("identity", Const(1), 1, 2)
    assert t.conclusion == S("e1 |-1 e1") and check(t, 2)
    t = derive.derive("const_left", 2, 1, 2)
    assert t.conclusion == S("e2 |-1") and check(t, 2)
    t = derive.derive("perm_axiom", Var("X", (1, 2)), (1, 2), (1, 2), 1, 2)
    assert t.rule is Rule.ID and t.premises == ()


def test_derive_preconditions():
    with pytest.raises(derive.SchemeError):
        derive.const_left(1, 1, 2)
    with pytest.raises(derive.SchemeError):
        derive.perm_axiom(F("X"), (1, 2), (2, 1), 1, 2)
    with pytest.raises(derive.SchemeError):
        derive.pair_clash(F("X"), 1, 2, 1, 2)
    with pytest.raises(derive.SchemeError):
        derive.derive("nonsense")


small = st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), formulas(n, 5)))


@given(small, st.data())
def test_identity_scheme(case, data):
    n, f = case
    i = data.draw(st.integers(1, n))
    t = derive.identity_proof(f, i, n)
    assert t.conclusion.left == (f,) and t.conclusion.right == (f,) and t.conclusion.i == i
    assert check(t, n)


@given(small, st.data())
def test_pair_clash_scheme(case, data):
    n, f = case
    i, j, k = (data.draw(st.integers(1, n)) for _ in range(3))
    if i == k:
        return
    t = derive.pair_clash(f, i, j, k, n)
    assert t.conclusion == Sequent((act(f, exchange(i, j, n)), act(f, exchange(j, k, n))), j, ())
    assert check(t, n) and holds(t.conclusion, n)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), formulas(n, 4), perms(n), perms(n))), st.data())
def test_perm_axiom_scheme(case, data):
    n, f, pi, rho = case
    i = data.draw(st.integers(1, n))
    if invert(pi)[i - 1] != invert(rho)[i - 1]:
        with pytest.raises(derive.SchemeError):
            derive.perm_axiom(f, pi, rho, i, n)
        return
    t = derive.perm_axiom(f, pi, rho, i, n)
    assert t.conclusion.left == (act(f, pi),) and t.conclusion.right == (act(f, rho),)
    assert check(t, n)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), formulas(n, 4), perms(n))), st.data())
def test_perm_eq_scheme(case, data):
    n, h, pi = case
    i = data.draw(st.integers(1, n))
    for direction in ("left", "right"):
        t = derive.perm_eq(h, pi, i, direction, n)
        assert check(t, n) and holds(t.conclusion, n)


def test_weak_plus():
    t = derive.weak_plus(derive.const(1), left=[F("X")], right=[F("Y")])
    assert t.conclusion == S("X |-1 e1, Y") and check(t, 2)
    with pytest.raises(derive.SchemeError):
        derive.weaken_to(derive.const(1), S("|-2 e1"))


# --- proof files ----------------------------------------------------------------------

def test_json_roundtrip():
    t = derive.identity_proof(F("q(X, Y^[2,1], e1)"), 2, 2)
    tree, n = loads(dumps(t, 2))
    assert n == 2 and tree == t and check(tree, n)


def test_json_layout():
    t = derive.const_left(2, 1, 2)
    doc = to_json(t, 2)
    assert set(doc) == {"version", "n", "proof"}
    assert doc["proof"]["rule"] == "Neg1"
    assert doc["proof"]["conclusion"] == "e2 |-1"
    assert doc["proof"]["premises"][0] == {"rule": "Const", "params": {"i": 2}, "conclusion": "|-2 e2",
                                           "premises": []}


@pytest.mark.parametrize("mutate", [
    lambda d: d["proof"].update(rule="Magic"),
    lambda d: d["proof"].update(extra=1),
    lambda d: d.update(extra=1),
    lambda d: d["proof"].pop("params"),
    lambda d: d["proof"]["params"].update(k="2"),
    lambda d: d["proof"].update(conclusion="e2 |-"),
    lambda d: d.update(version=99),
    lambda d: d.update(n=1),
])
def test_reader_is_strict(mutate):
    doc = to_json(derive.const_left(2, 1, 2), 2)
    mutate(doc)
    with pytest.raises(ProofFormatError):
        loads(json.dumps(doc))


def test_hypotheses_are_not_serializable():
    tree = infer(Rule.WEAKL, {"formula": F("X")}, S("X |-1 Y"), Hypothesis(S("|-1 Y")))
    with pytest.raises(ProofFormatError):
        dumps(tree, 2)


def test_tree_metrics():
    t = derive.const_left(2, 1, 2)
    assert t.size() == 2 and t.height() == 2
    assert t.uses(Rule.NEG1) and not t.uses(Rule.CUT)
    assert [node.rule for node in t.nodes()] == [Rule.NEG1, Rule.CONST]
    assert render(t.conclusion) == "e2 |-1"
    assert isinstance(t, ProofTree) and identity(2) == (1, 2)
