"""Proof trees and the trusted rule checker.

The checker never trusts the premises stored in a tree.  For every node it
recomputes the premise sequents from the node's conclusion and parameters
(``instantiate``) and compares them, as multiset sequents, with the
conclusions of the children.  Axioms carry no side contexts; weakening is
always explicit.

Rule parameters, by rule (``F`` is always the formula as written in the
rule scheme, i.e. for Neg1/Neg2 the formula of the premise):

    Const        i
    Id           i, pi, rho
    Sym          i, j            premise dimension i, conclusion dimension j
    Neg1, Neg2   i, j, k, formula
    Neg3         j, formula
    qL, qR       i, formula      the principal compound
    Cut          formula
    WeakL/R      formula
    ConL/R       formula
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping

from .syntax import (
    Const, DimensionError, Formula, NPCSyntaxError, Q, Sequent, Var, act, act_ctx,
    check_formula, check_perm, check_sequent, ctx_remove, exchange, invert, parse_formula,
    parse_sequent, render,
)

FORMAT_VERSION = 1


class Rule(str, enum.Enum):
    CONST = "Const"
    ID = "Id"
    SYM = "Sym"
    NEG1 = "Neg1"
    NEG2 = "Neg2"
    NEG3 = "Neg3"
    QL = "qL"
    QR = "qR"
    CUT = "Cut"
    WEAKL = "WeakL"
    WEAKR = "WeakR"
    CONL = "ConL"
    CONR = "ConR"

    def __str__(self):
        return self.value


PARAM_KEYS: dict[Rule, frozenset[str]] = {
    Rule.CONST: frozenset({"i"}),
    Rule.ID: frozenset({"i", "pi", "rho"}),
    Rule.SYM: frozenset({"i", "j"}),
    Rule.NEG1: frozenset({"i", "j", "k", "formula"}),
    Rule.NEG2: frozenset({"i", "j", "k", "formula"}),
    Rule.NEG3: frozenset({"j", "formula"}),
    Rule.QL: frozenset({"i", "formula"}),
    Rule.QR: frozenset({"i", "formula"}),
    Rule.CUT: frozenset({"formula"}),
    Rule.WEAKL: frozenset({"formula"}),
    Rule.WEAKR: frozenset({"formula"}),
    Rule.CONL: frozenset({"formula"}),
    Rule.CONR: frozenset({"formula"}),
}

_DIM_KEYS = ("i", "j", "k")
_PERM_KEYS = ("pi", "rho")


class RuleError(ValueError):
    """A rule instance that violates its scheme or side conditions."""


@dataclass(frozen=True)
class ProofTree:
    rule: Rule
    params: Mapping[str, Any]
    conclusion: Sequent
    premises: tuple["ProofTree", ...] = ()

    def __post_init__(self):
        if not isinstance(self.rule, Rule):
            object.__setattr__(self, "rule", Rule(self.rule))
        object.__setattr__(self, "premises", tuple(self.premises))

    def nodes(self) -> Iterator["ProofTree"]:
        """Pre-order traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.premises))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def uses(self, rule: Rule) -> bool:
        return any(node.rule is rule for node in self.nodes())


@dataclass(frozen=True)
class Hypothesis:
    """An open leaf, accepted by ``check`` only if listed in its hypotheses."""

    conclusion: Sequent
    premises: tuple = field(default=(), init=False)


@dataclass(frozen=True)
class Ok:
    def __bool__(self):
        return True


@dataclass(frozen=True)
class RuleViolation:
    path: tuple[int, ...]
    reason: str

    def __bool__(self):
        return False

    def __str__(self):
        where = "/".join(map(str, self.path)) or "root"
        return f"rule violation at {where}: {self.reason}"


CheckResult = Ok | RuleViolation


# --- instantiation ----------------------------------------------------------

def _dim(params: Mapping[str, Any], key: str, n: int) -> int:
    value = params[key]
    if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= n:
        raise RuleError(f"parameter {key}={value!r} is not a dimension in 1..{n}")
    return value


def _formula(params: Mapping[str, Any], n: int) -> Formula:
    f = params["formula"]
    if not isinstance(f, (Const, Var, Q)):
        raise RuleError(f"parameter formula={f!r} is not a formula")
    try:
        check_formula(f, n)
    except DimensionError as exc:
        raise RuleError(str(exc)) from None
    return f


def _remove(side: tuple, f: Formula, where: str) -> tuple:
    try:
        return ctx_remove(side, f)
    except KeyError:
        raise RuleError(f"principal formula {render(f)} not found on the {where}") from None


def _check_params(rule: Rule, params: Mapping[str, Any]) -> None:
    keys = set(params)
    want = PARAM_KEYS[rule]
    if keys != want:
        raise RuleError(f"{rule} expects parameters {sorted(want)}, got {sorted(keys)}")


def instantiate(rule: Rule, params: Mapping[str, Any], conclusion: Sequent, n: int) -> list[Sequent]:
    """Premises demanded by ``rule`` with ``params`` for ``conclusion``.

    Raises RuleError when the conclusion does not have the shape of the
    scheme or a side condition fails.
    """
    rule = Rule(rule)
    try:
        check_sequent(conclusion, n)
    except DimensionError as exc:
        raise RuleError(f"malformed conclusion: {exc}") from None
    return premises(rule, params, conclusion, n)


def premises(rule: Rule, params: Mapping[str, Any], conclusion: Sequent, n: int) -> list[Sequent]:
    """``instantiate`` for a conclusion already known to be well-formed for n."""
    _check_params(rule, params)
    gamma, t, delta = conclusion.left, conclusion.i, conclusion.right

    if rule is Rule.CONST:
        i = _dim(params, "i", n)
        if t != i or gamma or delta != (Const(i),):
            raise RuleError(f"Const concludes exactly |-{i} e{i}")
        return []

    if rule is Rule.ID:
        i = _dim(params, "i", n)
        try:
            pi = check_perm(params["pi"], n)
            rho = check_perm(params["rho"], n)
        except ValueError as exc:
            raise RuleError(str(exc)) from None
        if t != i or len(gamma) != 1 or len(delta) != 1:
            raise RuleError("Id concludes exactly X^pi |-i X^rho")
        a, b = gamma[0], delta[0]
        if not (isinstance(a, Var) and isinstance(b, Var) and a.name == b.name):
            raise RuleError("Id needs the same variable on both sides")
        if a.dec != pi or b.dec != rho:
            raise RuleError("Id decorations do not match the conclusion")
        if invert(pi)[i - 1] != invert(rho)[i - 1]:
            raise RuleError(f"Id side condition fails: pi^-1({i}) != rho^-1({i})")
        return []

    if rule is Rule.SYM:
        i, j = _dim(params, "i", n), _dim(params, "j", n)
        if t != j:
            raise RuleError(f"Sym concludes a |-{j} sequent, conclusion has |-{t}")
        e = exchange(i, j, n)
        return [Sequent(act_ctx(gamma, e), i, act_ctx(delta, e))]

    if rule in (Rule.NEG1, Rule.NEG2):
        i, j, k = (_dim(params, key, n) for key in _DIM_KEYS)
        f = _formula(params, n)
        if t != j:
            raise RuleError(f"{rule} concludes a |-{j} sequent, conclusion has |-{t}")
        if rule is Rule.NEG1:
            if i == k:
                raise RuleError("Neg1 side condition fails: i = k")
            principal = act(f, exchange(j, k, n))
        else:
            if j == k:
                raise RuleError("Neg2 side condition fails: j = k")
            principal = act(f, exchange(i, k, n))
        rest = _remove(gamma, principal, "left")
        e = exchange(i, j, n)
        return [Sequent(act_ctx(rest, e), i, (f,) + act_ctx(delta, e))]

    if rule is Rule.NEG3:
        j = _dim(params, "j", n)
        f = _formula(params, n)
        if t != j:
            raise RuleError(f"Neg3 concludes a |-{j} sequent, conclusion has |-{t}")
        rest = _remove(delta, f, "right")
        out = []
        for i in range(1, n + 1):
            if i != j:
                e = exchange(i, j, n)
                out.append(Sequent(act_ctx(gamma, e) + (f,), i, act_ctx(rest, e)))
        return out

    if rule in (Rule.QL, Rule.QR):
        i = _dim(params, "i", n)
        f = _formula(params, n)
        if not isinstance(f, Q):
            raise RuleError(f"{rule} needs a compound principal formula")
        if t != i:
            raise RuleError(f"{rule} concludes a |-{i} sequent, conclusion has |-{t}")
        out = []
        if rule is Rule.QL:
            rest = _remove(gamma, f, "left")
            for j in range(1, n + 1):
                e = exchange(j, i, n)
                out.append(Sequent(act_ctx(rest, e) + (f.test, act(f.branches[j - 1], e)), j, act_ctx(delta, e)))
        else:
            rest = _remove(delta, f, "right")
            for j in range(1, n + 1):
                e = exchange(j, i, n)
                out.append(Sequent(act_ctx(gamma, e) + (f.test,), j, (act(f.branches[j - 1], e),) + act_ctx(rest, e)))
        return out

    f = _formula(params, n)
    if rule is Rule.CUT:
        return [Sequent(gamma + (f,), t, delta), Sequent(gamma, t, (f,) + delta)]
    if rule is Rule.WEAKL:
        return [Sequent(_remove(gamma, f, "left"), t, delta)]
    if rule is Rule.WEAKR:
        return [Sequent(gamma, t, _remove(delta, f, "right"))]
    if rule is Rule.CONL:
        _remove(gamma, f, "left")
        return [Sequent(gamma + (f,), t, delta)]
    if rule is Rule.CONR:
        _remove(delta, f, "right")
        return [Sequent(gamma, t, delta + (f,))]
    raise RuleError(f"unknown rule {rule!r}")  # pragma: no cover


def check(tree: ProofTree | Hypothesis, n: int, hypotheses=()) -> CheckResult:
    """Ok iff every node is a correct rule instance; otherwise the pre-order first violation."""
    hyps = set(hypotheses)
    try:
        check_sequent(tree.conclusion, n)
    except DimensionError as exc:
        return RuleViolation((), f"malformed conclusion: {exc}")
    # every other conclusion must equal a premise computed from a well-formed parent
    stack: list[tuple[Any, tuple[int, ...]]] = [(tree, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, Hypothesis):
            if node.conclusion not in hyps:
                return RuleViolation(path, f"open leaf {render(node.conclusion)} is not a hypothesis")
            continue
        if not isinstance(node, ProofTree):
            return RuleViolation(path, f"not a proof node: {type(node).__name__}")
        try:
            expected = premises(node.rule, node.params, node.conclusion, n)
        except RuleError as exc:
            return RuleViolation(path, f"{node.rule}: {exc}")
        if len(expected) != len(node.premises):
            return RuleViolation(path, f"{node.rule} needs {len(expected)} premises, found {len(node.premises)}")
        for idx, (want, child) in enumerate(zip(expected, node.premises)):
            if child.conclusion != want:
                return RuleViolation(
                    path, f"{node.rule}: premise {idx} should be {render(want)}, found {render(child.conclusion)}")
        for idx in reversed(range(len(node.premises))):
            stack.append((node.premises[idx], path + (idx,)))
    return Ok()


def infer(rule: Rule, params: Mapping[str, Any], conclusion: Sequent, *premises: ProofTree) -> ProofTree:
    return ProofTree(Rule(rule), dict(params), conclusion, tuple(premises))


# --- JSON proof files -------------------------------------------------------

class ProofFormatError(ValueError):
    pass


def _params_to_json(params: Mapping[str, Any]) -> dict:
    out = {}
    for key, value in params.items():
        if key == "formula":
            out[key] = render(value)
        elif key in _PERM_KEYS:
            out[key] = list(value)
        else:
            out[key] = value
    return out


def node_to_json(tree: ProofTree) -> dict:
    if isinstance(tree, Hypothesis):
        raise ProofFormatError("open hypotheses cannot be serialized")
    return {
        "rule": tree.rule.value,
        "params": _params_to_json(tree.params),
        "conclusion": render(tree.conclusion),
        "premises": [node_to_json(p) for p in tree.premises],
    }


def to_json(tree: ProofTree, n: int) -> dict:
    return {"version": FORMAT_VERSION, "n": n, "proof": node_to_json(tree)}


def dumps(tree: ProofTree, n: int) -> str:
    return json.dumps(to_json(tree, n), indent=2)


_NODE_KEYS = {"rule", "params", "conclusion", "premises"}
_ROOT_KEYS = {"version", "n", "proof"}


def _node_from_json(obj: Any, n: int, path: tuple[int, ...]) -> ProofTree:
    where = "/".join(map(str, path)) or "root"
    if not isinstance(obj, dict):
        raise ProofFormatError(f"node {where}: expected an object")
    if set(obj) != _NODE_KEYS:
        extra = sorted(set(obj) - _NODE_KEYS)
        missing = sorted(_NODE_KEYS - set(obj))
        raise ProofFormatError(f"node {where}: unexpected fields {extra}, missing {missing}")
    try:
        rule = Rule(obj["rule"])
    except ValueError:
        raise ProofFormatError(f"node {where}: unknown rule {obj['rule']!r}") from None
    raw = obj["params"]
    if not isinstance(raw, dict) or set(raw) != PARAM_KEYS[rule]:
        raise ProofFormatError(f"node {where}: {rule} expects parameters {sorted(PARAM_KEYS[rule])}")
    params: dict[str, Any] = {}
    try:
        for key, value in raw.items():
            if key == "formula":
                if not isinstance(value, str):
                    raise ProofFormatError(f"node {where}: formula must be a string")
                params[key] = parse_formula(value, n)
            elif key in _PERM_KEYS:
                if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
                    raise ProofFormatError(f"node {where}: {key} must be a list of integers")
                params[key] = tuple(value)
            else:
                if not isinstance(value, int) or isinstance(value, bool):
                    raise ProofFormatError(f"node {where}: {key} must be an integer")
                params[key] = value
        if not isinstance(obj["conclusion"], str):
            raise ProofFormatError(f"node {where}: conclusion must be a string")
        conclusion = parse_sequent(obj["conclusion"], n)
    except NPCSyntaxError as exc:
        raise ProofFormatError(f"node {where}: {exc}") from None
    if not isinstance(obj["premises"], list):
        raise ProofFormatError(f"node {where}: premises must be a list")
    premises = tuple(_node_from_json(p, n, path + (idx,)) for idx, p in enumerate(obj["premises"]))
    return ProofTree(rule, params, conclusion, premises)


def from_json(doc: Any) -> tuple[ProofTree, int]:
    if not isinstance(doc, dict) or set(doc) != _ROOT_KEYS:
        raise ProofFormatError(f"proof document must have exactly the fields {sorted(_ROOT_KEYS)}")
    if doc["version"] != FORMAT_VERSION:
        raise ProofFormatError(f"unsupported format version {doc['version']!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ProofFormatError(f"bad dimension n={n!r}")
    return _node_from_json(doc["proof"], n, ()), n


def loads(text: str) -> tuple[ProofTree, int]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProofFormatError(f"invalid JSON: {exc}") from None
    return from_json(doc)
