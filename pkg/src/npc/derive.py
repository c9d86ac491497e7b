"""Builders for derived proofs: reflexivity, constant clashes, permutation axioms.

Each builder returns a ProofTree whose conclusion is the advertised sequent.
Trees are assembled bottom-up from the rule schemes; callers that need a
guarantee should still run ``kernel.check`` (the tests do, exhaustively).
"""

from __future__ import annotations

from typing import Iterable

from .kernel import ProofTree, Rule, infer
from .syntax import (
    Const, Formula, Perm, Q, Sequent, Var, act, compose, exchange, identity, invert,
)


class SchemeError(ValueError):
    """Precondition of a derived scheme is violated."""


def weak_plus(base: ProofTree, left: Iterable[Formula] = (), right: Iterable[Formula] = ()) -> ProofTree:
    """Iterated WeakL/WeakR adding ``left`` and ``right`` to the conclusion of ``base``."""
    tree = base
    for f in left:
        c = tree.conclusion
        tree = infer(Rule.WEAKL, {"formula": f}, Sequent(c.left + (f,), c.i, c.right), tree)
    for f in right:
        c = tree.conclusion
        tree = infer(Rule.WEAKR, {"formula": f}, Sequent(c.left, c.i, c.right + (f,)), tree)
    return tree


def weaken_to(base: ProofTree, target: Sequent) -> ProofTree:
    """Weaken ``base`` until it concludes ``target`` (multiset inclusion required)."""
    if base.conclusion.i != target.i:
        raise SchemeError("cannot weaken across turnstiles")
    return weak_plus(base, _difference(target.left, base.conclusion.left),
                     _difference(target.right, base.conclusion.right))


def _difference(big: tuple, small: tuple) -> list[Formula]:
    rest = list(big)
    for f in small:
        try:
            rest.remove(f)
        except ValueError:
            raise SchemeError(f"{f} is not in the target context") from None
    return rest


def const(i: int) -> ProofTree:
    return infer(Rule.CONST, {"i": i}, Sequent((), i, (Const(i),)))


def const_left(k: int, i: int, n: int) -> ProofTree:
    """e_k |-_i for k != i: Neg1 over Const, choosing the exchange (ii)."""
    if k == i:
        raise SchemeError("const_left needs k != i")
    return infer(Rule.NEG1, {"i": k, "j": i, "k": i, "formula": Const(k)},
                 Sequent((Const(k),), i, ()), const(k))


def identity_proof(f: Formula, i: int, n: int) -> ProofTree:
    """F |-_i F by induction on F."""
    if isinstance(f, Var):
        return infer(Rule.ID, {"i": i, "pi": f.dec, "rho": f.dec}, Sequent((f,), i, (f,)))
    if isinstance(f, Const):
        if f.k == i:
            return weak_plus(const(i), left=[f])
        return weak_plus(const_left(f.k, i, n), right=[f])
    g = f.test
    branches = []
    for j in range(1, n + 1):
        e = exchange(i, j, n)
        hj = act(f.branches[j - 1], e)
        fe = act(f, e)  # q(G, H_1^(ij), ..., H_n^(ij))
        # G, H_j^(ij) |-_j F^(ij) by qR on F^(ij)
        subs = []
        for m in range(1, n + 1):
            em = exchange(m, j, n)
            target = Sequent((act(g, em), act(hj, em), g), m, (act(fe.branches[m - 1], em),))
            if m == j:
                subs.append(weaken_to(identity_proof(hj, j, n), target))
            else:
                subs.append(weaken_to(pair_clash_core(g, j, m, n), target))
        qr = infer(Rule.QR, {"i": j, "formula": fe}, Sequent((g, hj), j, (fe,)), *subs)
        branches.append(qr)
    return infer(Rule.QL, {"i": i, "formula": f}, Sequent((f,), i, (f,)), *branches)


def pair_clash_core(g: Formula, j: int, m: int, n: int) -> ProofTree:
    """G^(jm), G |-_m from G |-_j G by one Neg1 step (j != m)."""
    if j == m:
        raise SchemeError("pair_clash_core needs j != m")
    premise = identity_proof(g, j, n)
    return infer(Rule.NEG1, {"i": j, "j": m, "k": m, "formula": g},
                 Sequent((act(g, exchange(j, m, n)), g), m, ()), premise)


def pair_clash(f: Formula, i: int, j: int, k: int, n: int) -> ProofTree:
    """F^(ij), F^(kj) |-_j for i != k."""
    if i == k:
        raise SchemeError("pair_clash needs i != k")
    concl = Sequent((act(f, exchange(i, j, n)), act(f, exchange(j, k, n))), j, ())
    return infer(Rule.NEG1, {"i": i, "j": j, "k": k, "formula": f}, concl, identity_proof(f, i, n))


def perm_axiom(f: Formula, pi: Perm, rho: Perm, i: int, n: int) -> ProofTree:
    """F^pi |-_i F^rho whenever pi^-1(i) = rho^-1(i)."""
    if invert(pi)[i - 1] != invert(rho)[i - 1]:
        raise SchemeError(f"perm_axiom needs pi^-1({i}) = rho^-1({i})")
    fp, fr = act(f, pi), act(f, rho)
    concl = Sequent((fp,), i, (fr,))
    if isinstance(f, Var):
        return infer(Rule.ID, {"i": i, "pi": fp.dec, "rho": fr.dec}, concl)
    if isinstance(f, Const):
        return identity_proof(fp, i, n) if pi[f.k - 1] == i else weak_plus(const_left(pi[f.k - 1], i, n), right=[fr])
    g = f.test
    branches = []
    for j in range(1, n + 1):
        eij = exchange(i, j, n)
        lp = act(f, compose(eij, pi))  # F^((ij)∘pi), a compound with test G
        hr = act(f.branches[j - 1], compose(eij, rho))
        subs = []
        for k in range(1, n + 1):
            ejk = exchange(j, k, n)
            target = Sequent((g, act(f.branches[k - 1], compose(ejk, compose(eij, pi))), act(g, ejk)), k,
                             (act(f.branches[j - 1], compose(ejk, compose(eij, rho))),))
            if j == k:
                sub = perm_axiom(f.branches[k - 1], compose(eij, pi), compose(eij, rho), k, n)
            else:
                sub = _clash_same_dim(g, j, k, n)
            subs.append(weaken_to(sub, target))
        ql = infer(Rule.QL, {"i": j, "formula": lp}, Sequent((lp, g), j, (hr,)), *subs)
        branches.append(ql)
    return infer(Rule.QR, {"i": i, "formula": fr}, concl, *branches)


def _clash_same_dim(g: Formula, j: int, k: int, n: int) -> ProofTree:
    """G, G^(jk) |-_k from G |-_k G by Neg1 (j != k)."""
    return infer(Rule.NEG1, {"i": k, "j": k, "k": j, "formula": g},
                 Sequent((g, act(g, exchange(k, j, n))), k, ()), identity_proof(g, k, n))


def perm_eq(h: Formula, pi: Perm, i: int, direction: str, n: int) -> ProofTree:
    """The two halves of H^pi ~ q(H, e_pi(1), ..., e_pi(n)) at dimension i.

    ``direction="left"`` proves q(H, e_pi(1), ...) |-_i H^pi and
    ``direction="right"`` proves H^pi |-_i q(H, e_pi(1), ...).
    """
    qf = Q(h, tuple(Const(pi[m]) for m in range(n)))
    hp = act(h, pi)
    subs = []
    if direction == "left":
        for j in range(1, n + 1):
            eij = exchange(i, j, n)
            c = eij[pi[j - 1] - 1]
            target = Sequent((h, Const(c)), j, (act(h, compose(eij, pi)),))
            if pi[j - 1] != i:
                sub = const_left(c, j, n)
            else:
                sub = perm_axiom(h, identity(n), compose(eij, pi), j, n)
            subs.append(weaken_to(sub, target))
        return infer(Rule.QL, {"i": i, "formula": qf}, Sequent((qf,), i, (hp,)), *subs)
    if direction == "right":
        for j in range(1, n + 1):
            eij = exchange(i, j, n)
            sigma = compose(eij, pi)
            r = sigma[j - 1]
            target = Sequent((act(h, sigma), h), j, (Const(r),))
            if pi[j - 1] == i:
                sub = const(j)
            else:
                premise = perm_axiom(h, exchange(j, r, n), sigma, r, n)
                sub = infer(Rule.NEG1, {"i": r, "j": j, "k": j, "formula": act(h, sigma)},
                            Sequent((h, act(h, sigma)), j, ()), premise)
            subs.append(weaken_to(sub, target))
        return infer(Rule.QR, {"i": i, "formula": qf}, Sequent((hp,), i, (qf,)), *subs)
    raise SchemeError(f"direction must be 'left' or 'right', got {direction!r}")


SCHEMES = {
    "identity": identity_proof,
    "const_left": const_left,
    "pair_clash": pair_clash,
    "perm_axiom": perm_axiom,
    "perm_eq": perm_eq,
    "weak_plus": weak_plus,
}


def derive(scheme: str, *args, **kwargs) -> ProofTree:
    try:
        builder = SCHEMES[scheme]
    except KeyError:
        raise SchemeError(f"unknown scheme {scheme!r}; known: {sorted(SCHEMES)}") from None
    return builder(*args, **kwargs)
