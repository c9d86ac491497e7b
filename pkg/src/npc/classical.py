"""Classical propositional calculus and its translations to and from 2PC.

PC environments map variables to 0/1; 2PC environments map them to 1/2.
They are identified by value 1 <-> true and value 2 <-> false, and the two
helpers ``pc_env`` / ``npc_env`` are the only places that do it.
"""

from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .kernel import Hypothesis, Ok, Rule, check, infer
from .prover import Proved, prove
from .semantics import UnboundVariable, envs, evaluate
from .syntax import Const, Formula, Q, Sequent, Var, act, act_ctx, parse_formula, parse_sequent, render

SWAP = (2, 1)


# --- formulas ---------------------------------------------------------------

@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "PCFormula"


@dataclass(frozen=True)
class And:
    left: "PCFormula"
    right: "PCFormula"


@dataclass(frozen=True)
class Or:
    left: "PCFormula"
    right: "PCFormula"


PCFormula = Zero | One | PVar | Not | And | Or


class PCSyntaxError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\|-)|([A-Za-z_][A-Za-z0-9_]*)|([01])|([~&|(),]))")


def _tokens(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PCSyntaxError(f"unexpected character {text[pos]!r} at {pos}")
        out.append((m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    return out


class _PCParser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.k = 0

    def peek(self) -> str | None:
        return self.toks[self.k][0] if self.k < len(self.toks) else None

    def take(self, want: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            where = self.toks[self.k][1] if tok is not None else "end"
            raise PCSyntaxError(f"expected {want or 'a token'} at {where}, found {tok!r}")
        self.k += 1
        return tok

    def formula(self) -> PCFormula:
        out = self.conj()
        while self.peek() == "|":
            self.take()
            out = Or(out, self.conj())
        return out

    def conj(self) -> PCFormula:
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = And(out, self.unary())
        return out

    def unary(self) -> PCFormula:
        tok = self.take()
        if tok == "~":
            return Not(self.unary())
        if tok == "(":
            inner = self.formula()
            self.take(")")
            return inner
        if tok == "0":
            return Zero()
        if tok == "1":
            return One()
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            return PVar(tok)
        raise PCSyntaxError(f"unexpected {tok!r}")

    def side(self, stop: str | None) -> list[PCFormula]:
        items: list[PCFormula] = []
        if self.peek() in (None, stop):
            return items
        items.append(self.formula())
        while self.peek() == ",":
            self.take()
            items.append(self.formula())
        return items

    def done(self):
        if self.peek() is not None:
            raise PCSyntaxError(f"trailing input at {self.toks[self.k][1]}")


def parse_pc(text: str) -> PCFormula:
    p = _PCParser(text)
    out = p.formula()
    p.done()
    return out


def parse_pc_sequent(text: str) -> "PCSequent":
    p = _PCParser(text)
    left = p.side("|-")
    p.take("|-")
    right = p.side(None)
    p.done()
    return PCSequent(tuple(left), tuple(right))


_PREC = {Or: 1, And: 2, Not: 3}


def render_pc(P: PCFormula) -> str:
    if isinstance(P, Zero):
        return "0"
    if isinstance(P, One):
        return "1"
    if isinstance(P, PVar):
        return P.name
    if isinstance(P, Not):
        return "~" + _wrap(P.arg, 3)
    op = " & " if isinstance(P, And) else " | "
    prec = _PREC[type(P)]
    return _wrap(P.left, prec) + op + _wrap(P.right, prec + 1)


def _wrap(P: PCFormula, prec: int) -> str:
    text = render_pc(P)
    return f"({text})" if _PREC.get(type(P), 4) < prec else text


def pc_variables(P: PCFormula) -> set[str]:
    if isinstance(P, PVar):
        return {P.name}
    if isinstance(P, Not):
        return pc_variables(P.arg)
    if isinstance(P, (And, Or)):
        return pc_variables(P.left) | pc_variables(P.right)
    return set()


def pc_depth(P: PCFormula) -> int:
    if isinstance(P, Not):
        return 1 + pc_depth(P.arg)
    if isinstance(P, (And, Or)):
        return 1 + max(pc_depth(P.left), pc_depth(P.right))
    return 0


# --- semantics --------------------------------------------------------------

def pc_eval(P: PCFormula, w: Mapping[str, int]) -> int:
    if isinstance(P, Zero):
        return 0
    if isinstance(P, One):
        return 1
    if isinstance(P, PVar):
        try:
            return 1 if w[P.name] else 0
        except KeyError:
            raise UnboundVariable(P.name) from None
    if isinstance(P, Not):
        return 1 - pc_eval(P.arg, w)
    if isinstance(P, And):
        return pc_eval(P.left, w) and pc_eval(P.right, w)
    return pc_eval(P.left, w) or pc_eval(P.right, w)


def pc_env(v: Mapping[str, int]) -> dict[str, int]:
    """2PC environment -> PC environment (value 2 becomes 0)."""
    return {x: 1 if value == 1 else 0 for x, value in v.items()}


def npc_env(w: Mapping[str, int]) -> dict[str, int]:
    """PC environment -> 2PC environment (0 becomes value 2)."""
    return {x: 1 if value else 2 for x, value in w.items()}


def pc_envs(names: Iterable[str]) -> Iterator[dict[str, int]]:
    names = sorted(set(names))
    for values in itertools.product((0, 1), repeat=len(names)):
        yield dict(zip(names, values))


@dataclass(frozen=True)
class PCSequent:
    left: tuple
    right: tuple

    def __post_init__(self):
        object.__setattr__(self, "left", tuple(sorted(self.left, key=render_pc)))
        object.__setattr__(self, "right", tuple(sorted(self.right, key=render_pc)))

    def variables(self) -> set[str]:
        return set().union(*(pc_variables(P) for P in self.left + self.right))


def render_pc_sequent(s: PCSequent) -> str:
    left = ", ".join(render_pc(P) for P in s.left)
    right = ", ".join(render_pc(P) for P in s.right)
    return " ".join(part for part in (left, "|-", right) if part)


def pc_valid(s: PCSequent) -> bool:
    for w in pc_envs(s.variables()):
        if all(pc_eval(P, w) for P in s.left) and not any(pc_eval(P, w) for P in s.right):
            return False
    return True


# --- translations -------------------------------------------------------------

@lru_cache(maxsize=1 << 16)
def to_2pc(P: PCFormula) -> Formula:
    if isinstance(P, Zero):
        return Const(2)
    if isinstance(P, One):
        return Const(1)
    if isinstance(P, PVar):
        return Var(P.name, (1, 2))
    if isinstance(P, Not):
        return act(to_2pc(P.arg), SWAP)
    if isinstance(P, And):
        return Q(to_2pc(P.left), (to_2pc(P.right), Const(2)))
    return Q(to_2pc(P.left), (Const(1), to_2pc(P.right)))


@lru_cache(maxsize=1 << 16)
def to_pc(F: Formula, n: int = 2) -> PCFormula:
    if n != 2:
        raise ValueError(f"the translation to PC is defined for n = 2 only, got n = {n}")
    if isinstance(F, Const):
        return One() if F.k == 1 else Zero()
    if isinstance(F, Var):
        return PVar(F.name) if F.dec == (1, 2) else Not(PVar(F.name))
    test = to_pc(F.test)
    return Or(And(test, to_pc(F.branches[0])), And(Not(test), to_pc(F.branches[1])))


def sequent_to_pc(s: Sequent) -> PCSequent:
    return PCSequent(tuple(to_pc(f) for f in s.left), tuple(to_pc(f) for f in s.right))


def sequent_to_2pc(s: PCSequent, i: int = 1) -> Sequent:
    return Sequent(tuple(to_2pc(P) for P in s.left), i, tuple(to_2pc(P) for P in s.right))


# --- corpora ------------------------------------------------------------------

def pc_formulas(names: Sequence[str], depth: int, constants: bool = True) -> list[PCFormula]:
    """Every PC formula of depth <= ``depth``, ordered by depth of construction."""
    atoms: list[PCFormula] = ([Zero(), One()] if constants else []) + [PVar(x) for x in names]
    level = list(atoms)
    for _ in range(depth):
        nxt = list(atoms)
        nxt += [Not(P) for P in level]
        nxt += [And(P, R) for P in level for R in level]
        nxt += [Or(P, R) for P in level for R in level]
        level = nxt
    return level


def twopc_formulas(atoms: Sequence[Formula], depth: int) -> list[Formula]:
    level = list(atoms)
    for _ in range(depth):
        level = list(atoms) + [Q(a, (b, c)) for a in level for b in level for c in level]
    return level


def twopc_atoms(names: Sequence[str], constants: bool = True) -> list[Formula]:
    out: list[Formula] = [Const(1), Const(2)] if constants else []
    return out + [Var(x, d) for x in names for d in ((1, 2), (2, 1))]


# --- round trips ----------------------------------------------------------------

@dataclass(frozen=True)
class TranslationResult:
    name: str
    cases: int
    passed: bool
    witness: Any = None

    def __bool__(self):
        return self.passed

    def to_json(self) -> dict:
        return {"name": self.name, "cases": self.cases, "pass": self.passed, "witness": self.witness}


def roundtrip_reports(pc_corpus: Iterable[PCFormula], twopc_corpus: Iterable[Formula],
                      names: Sequence[str] = ("X", "Y")) -> list[TranslationResult]:
    """(a) PC -> 2PC preserves truth, (b) 2PC -> PC preserves value 1, (c) both round trips
    are semantic identities.  Environments range over ``names``."""
    pc_list = list(pc_corpus)
    np_list = list(twopc_corpus)
    ws = list(pc_envs(names))
    vs = list(envs(names, 2))
    out = []

    bad, cases = None, 0
    for P in pc_list:
        G = to_2pc(P)
        for w in ws:
            cases += 1
            if (pc_eval(P, w) == 1) != (evaluate(G, npc_env(w)) == 1):
                bad = {"formula": render_pc(P), "env": w}
                break
        if bad:
            break
    out.append(TranslationResult("pc-to-2pc", cases, bad is None, bad))

    bad, cases = None, 0
    for F in np_list:
        P = to_pc(F)
        for v in vs:
            cases += 1
            if (evaluate(F, v) == 1) != (pc_eval(P, pc_env(v)) == 1):
                bad = {"formula": render(F), "env": v}
                break
        if bad:
            break
    out.append(TranslationResult("2pc-to-pc", cases, bad is None, bad))

    bad, cases = None, 0
    for P in pc_list:
        cases += 1
        R = to_pc(to_2pc(P))
        if any(pc_eval(P, w) != pc_eval(R, w) for w in ws):
            bad = {"formula": render_pc(P), "roundtrip": render_pc(R)}
            break
    out.append(TranslationResult("pc-roundtrip", cases, bad is None, bad))

    bad, cases = None, 0
    for F in np_list:
        cases += 1
        G = to_2pc(to_pc(F))
        if any(evaluate(F, v) != evaluate(G, v) for v in vs):
            bad = {"formula": render(F), "roundtrip": render(G)}
            break
    out.append(TranslationResult("2pc-roundtrip", cases, bad is None, bad))
    return out


def provability_agreement(twopc_sequents: Iterable[Sequent], pc_sequents: Iterable[PCSequent],
                          budget: int = 100_000) -> list[TranslationResult]:
    """Provable in nPC (prover + kernel) versus classically valid (truth tables).

    A 2PC sequent at turnstile 1 is compared with its translation; at
    turnstile 2 it is first moved to turnstile 1 by the exchange (12).
    """
    bad, cases = None, 0
    for s in twopc_sequents:
        cases += 1
        proved = isinstance(prove(s, 2, budget), Proved)
        moved = s if s.i == 1 else Sequent(act_ctx(s.left, SWAP), 1, act_ctx(s.right, SWAP))
        if proved != pc_valid(sequent_to_pc(moved)):
            bad = {"sequent": render(s), "proved": proved}
            break
    out = [TranslationResult("2pc-provable-iff-pc-valid", cases, bad is None, bad)]
    bad, cases = None, 0
    for t in pc_sequents:
        cases += 1
        proved = isinstance(prove(sequent_to_2pc(t), 2, budget), Proved)
        if proved != pc_valid(t):
            bad = {"sequent": render_pc_sequent(t), "proved": proved}
            break
    out.append(TranslationResult("pc-valid-iff-2pc-provable", cases, bad is None, bad))
    return out


# --- PC sequent calculus ----------------------------------------------------------

class PCRule(str, enum.Enum):
    CONST1 = "Const1"
    CONST0 = "Const0"
    ID = "Id"
    ANDL = "AndL"
    ANDR = "AndR"
    ORL = "OrL"
    ORR = "OrR"
    NOTL = "NotL"
    NOTR = "NotR"
    CUT = "Cut"
    WEAKL = "WeakL"
    WEAKR = "WeakR"
    CONL = "ConL"
    CONR = "ConR"


@dataclass(frozen=True)
class PCProofTree:
    rule: PCRule
    conclusion: PCSequent
    formula: PCFormula | None = None
    premises: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "rule", PCRule(self.rule))
        object.__setattr__(self, "premises", tuple(self.premises))

    def nodes(self) -> Iterator[Any]:
        stack: list[Any] = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.premises))


@dataclass(frozen=True)
class PCHypothesis:
    conclusion: PCSequent
    premises: tuple = field(default=(), init=False)


@dataclass(frozen=True)
class PCViolation:
    path: tuple
    reason: str

    def __bool__(self):
        return False

    def __str__(self):
        return f"rule violation at {'/'.join(map(str, self.path)) or 'root'}: {self.reason}"


class _Bad(Exception):
    pass


def _drop(side: tuple, P: PCFormula, where: str) -> tuple:
    items = list(side)
    try:
        items.remove(P)
    except ValueError:
        raise _Bad(f"{render_pc(P)} is not on the {where}") from None
    return tuple(items)


def pc_premises(rule: PCRule, P: PCFormula | None, c: PCSequent) -> list[PCSequent]:
    """Premises forced by the rule, principal formula and conclusion (raises _Bad)."""
    L, R = c.left, c.right
    if rule is PCRule.CONST1:
        if c != PCSequent((), (One(),)):
            raise _Bad("Const1 concludes exactly |- 1")
        return []
    if rule is PCRule.CONST0:
        if c != PCSequent((Zero(),), ()):
            raise _Bad("Const0 concludes exactly 0 |-")
        return []
    if P is None:
        raise _Bad(f"{rule.value} needs a principal formula")
    if rule is PCRule.ID:
        if c != PCSequent((P,), (P,)):
            raise _Bad("Id concludes exactly P |- P")
        return []
    if rule is PCRule.ANDL:
        if not isinstance(P, And):
            raise _Bad("AndL needs a conjunction")
        return [PCSequent(_drop(L, P, "left") + (P.left, P.right), R)]
    if rule is PCRule.ANDR:
        if not isinstance(P, And):
            raise _Bad("AndR needs a conjunction")
        rest = _drop(R, P, "right")
        return [PCSequent(L, rest + (P.left,)), PCSequent(L, rest + (P.right,))]
    if rule is PCRule.ORL:
        if not isinstance(P, Or):
            raise _Bad("OrL needs a disjunction")
        rest = _drop(L, P, "left")
        return [PCSequent(rest + (P.left,), R), PCSequent(rest + (P.right,), R)]
    if rule is PCRule.ORR:
        if not isinstance(P, Or):
            raise _Bad("OrR needs a disjunction")
        return [PCSequent(L, _drop(R, P, "right") + (P.left, P.right))]
    if rule is PCRule.NOTL:
        if not isinstance(P, Not):
            raise _Bad("NotL needs a negation")
        return [PCSequent(_drop(L, P, "left"), R + (P.arg,))]
    if rule is PCRule.NOTR:
        if not isinstance(P, Not):
            raise _Bad("NotR needs a negation")
        return [PCSequent(L + (P.arg,), _drop(R, P, "right"))]
    if rule is PCRule.CUT:
        return [PCSequent(L + (P,), R), PCSequent(L, R + (P,))]
    if rule is PCRule.WEAKL:
        return [PCSequent(_drop(L, P, "left"), R)]
    if rule is PCRule.WEAKR:
        return [PCSequent(L, _drop(R, P, "right"))]
    if rule is PCRule.CONL:
        _drop(L, P, "left")
        return [PCSequent(L + (P,), R)]
    _drop(R, P, "right")
    return [PCSequent(L, R + (P,))]


def pc_check(tree: PCProofTree | PCHypothesis, hypotheses: Iterable[PCSequent] = ()):
    """Ok iff every node is a correct instance; open leaves must be listed hypotheses."""
    hyps = set(hypotheses)
    stack: list[tuple[Any, tuple]] = [(tree, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, PCHypothesis):
            if node.conclusion not in hyps:
                return PCViolation(path, f"open leaf {render_pc_sequent(node.conclusion)} is not a hypothesis")
            continue
        try:
            want = pc_premises(node.rule, node.formula, node.conclusion)
        except _Bad as exc:
            return PCViolation(path, f"{node.rule.value}: {exc}")
        if len(want) != len(node.premises):
            return PCViolation(path, f"{node.rule.value} needs {len(want)} premises, found {len(node.premises)}")
        for idx, (w, child) in enumerate(zip(want, node.premises)):
            if child.conclusion != w:
                return PCViolation(path, f"{node.rule.value}: premise {idx} should be "
                                         f"{render_pc_sequent(w)}, found {render_pc_sequent(child.conclusion)}")
        for idx in reversed(range(len(node.premises))):
            stack.append((node.premises[idx], path + (idx,)))
    return Ok()


def pc_infer(rule: PCRule | str, conclusion: PCSequent | str, formula: PCFormula | str | None = None,
             *premises) -> PCProofTree:
    if isinstance(conclusion, str):
        conclusion = parse_pc_sequent(conclusion)
    if isinstance(formula, str):
        formula = parse_pc(formula)
    return PCProofTree(PCRule(rule), conclusion, formula, premises)


# --- the worked simulations ---------------------------------------------------------

@dataclass(frozen=True)
class Simulation:
    """A derivation with open hypotheses together with the calculus that checks it."""

    name: str
    tree: Any
    hypotheses: tuple
    calculus: str  # "pc" or "2pc"

    def check(self):
        if self.calculus == "pc":
            return pc_check(self.tree, self.hypotheses)
        return check(self.tree, 2, self.hypotheses)


def _s(text: str) -> Sequent:
    return parse_sequent(text, 2)


def _hyp(text: str) -> Hypothesis:
    return Hypothesis(_s(text))


def and_right_in_2pc() -> Simulation:
    """|-1 q(X, Y, e2) from the hypotheses |-1 X and |-1 Y."""
    left = infer(Rule.WEAKL, {"formula": Var("X", (1, 2))}, _s("X |-1 Y"), _hyp("|-1 Y"))
    neg = infer(Rule.NEG1, {"i": 1, "j": 2, "k": 2, "formula": Var("X", (1, 2))}, _s("X |-2"), _hyp("|-1 X"))
    right = infer(Rule.WEAKR, {"formula": Const(1)}, _s("X |-2 e1"), neg)
    root = infer(Rule.QR, {"i": 1, "formula": _f("q(X, Y, e2)")}, _s("|-1 q(X, Y, e2)"), left, right)
    return Simulation("and-right in 2PC", root, (_s("|-1 X"), _s("|-1 Y")), "2pc")


def and_left_in_2pc() -> Simulation:
    """q(X, Y, e2) |-1 from the hypothesis X, Y |-1."""
    const = infer(Rule.CONST, {"i": 1}, _s("|-1 e1"))
    neg = infer(Rule.NEG1, {"i": 1, "j": 2, "k": 2, "formula": Const(1)}, _s("e1 |-2"), const)
    right = infer(Rule.WEAKL, {"formula": Var("X", (1, 2))}, _s("X, e1 |-2"), neg)
    root = infer(Rule.QL, {"i": 1, "formula": _f("q(X, Y, e2)")}, _s("q(X, Y, e2) |-1"), _hyp("X, Y |-1"), right)
    return Simulation("and-left in 2PC", root, (_s("X, Y |-1"),), "2pc")


def and_right_pc() -> Simulation:
    root = pc_infer("AndR", "|- X & Y", "X & Y", PCHypothesis(parse_pc_sequent("|- X")),
                    PCHypothesis(parse_pc_sequent("|- Y")))
    return Simulation("and-right in PC", root, (parse_pc_sequent("|- X"), parse_pc_sequent("|- Y")), "pc")


def and_left_pc() -> Simulation:
    root = pc_infer("AndL", "X & Y |-", "X & Y", PCHypothesis(parse_pc_sequent("X, Y |-")))
    return Simulation("and-left in PC", root, (parse_pc_sequent("X, Y |-"),), "pc")


def q_right_in_2pc() -> Simulation:
    """|-1 q(X, Y, Z) by qR from X |-1 Y and X |-2 Z^[2,1]."""
    hyps = (_s("X |-1 Y"), _s("X |-2 Z^[2,1]"))
    root = infer(Rule.QR, {"i": 1, "formula": _f("q(X, Y, Z)")}, _s("|-1 q(X, Y, Z)"),
                 *(Hypothesis(h) for h in hyps))
    return Simulation("qR in 2PC", root, hyps, "2pc")


def q_left_in_2pc() -> Simulation:
    hyps = (_s("X, Y |-1"), _s("X, Z^[2,1] |-2"))
    root = infer(Rule.QL, {"i": 1, "formula": _f("q(X, Y, Z)")}, _s("q(X, Y, Z) |-1"),
                 *(Hypothesis(h) for h in hyps))
    return Simulation("qL in 2PC", root, hyps, "2pc")


def q_right_pc() -> Simulation:
    """|- (X & Y) | (~X & Z) from X |- Y and ~X |- Z, cutting on X | ~X."""
    goal = "(X & Y) | (~X & Z)"
    h1, h2 = parse_pc_sequent("X |- Y"), parse_pc_sequent("~X |- Z")

    def branch(lit: str, conj: str, hyp: PCSequent, other: str) -> PCProofTree:
        ident = pc_infer("Id", f"{lit} |- {lit}", lit)
        conj_node = pc_infer("AndR", f"{lit} |- {conj}", conj, ident, PCHypothesis(hyp))
        weak = pc_infer("WeakR", f"{lit} |- {conj}, {other}", other, conj_node)
        return pc_infer("OrR", f"{lit} |- {goal}", goal, weak)

    left = pc_infer("OrL", f"X | ~X |- {goal}", "X | ~X",
                    branch("X", "X & Y", h1, "~X & Z"), branch("~X", "~X & Z", h2, "X & Y"))
    ident = pc_infer("Id", "X |- X", "X")
    excluded = pc_infer("OrR", "|- X | ~X", "X | ~X", pc_infer("NotR", "|- X, ~X", "~X", ident))
    right = pc_infer("WeakR", f"|- X | ~X, {goal}", goal, excluded)
    root = pc_infer("Cut", f"|- {goal}", "X | ~X", left, right)
    return Simulation("qR in PC", root, (h1, h2), "pc")


def q_left_pc() -> Simulation:
    h1, h2 = parse_pc_sequent("X, Y |-"), parse_pc_sequent("~X, Z |-")
    a = pc_infer("AndL", "X & Y |-", "X & Y", PCHypothesis(h1))
    b = pc_infer("AndL", "~X & Z |-", "~X & Z", PCHypothesis(h2))
    root = pc_infer("OrL", "(X & Y) | (~X & Z) |-", "(X & Y) | (~X & Z)", a, b)
    return Simulation("qL in PC", root, (h1, h2), "pc")


def excluded_middle_pc() -> PCProofTree:
    ident = pc_infer("Id", "X |- X", "X")
    return pc_infer("OrR", "|- X | ~X", "X | ~X", pc_infer("NotR", "|- X, ~X", "~X", ident))


def _f(text: str) -> Formula:
    return parse_formula(text, 2)


def simulations() -> list[Simulation]:
    return [and_right_pc(), and_right_in_2pc(), and_left_pc(), and_left_in_2pc(),
            q_right_in_2pc(), q_right_pc(), q_left_in_2pc(), q_left_pc()]
