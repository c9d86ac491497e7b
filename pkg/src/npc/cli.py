"""npc: parse, evaluate, prove, check, translate and run algebra reports.

Exit status: 0 success (valid, proved, check passed), 1 a negative result
(invalid, refuted, rejected, out of budget), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path

from . import algebra, classical, harness
from .corpus import sequent_family
from .kernel import ProofFormatError, check, dumps, loads
from .prover import DEFAULT_BUDGET, Proved, Refuted, SynthesisError, prove
from .semantics import Invalid, UnboundVariable, evaluate, format_env, holds, parse_env
from .syntax import DimensionError, NPCSyntaxError, parse_formula, parse_sequent, render


MAX_N = 6


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str, code: int, err: str | None = None) -> int:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    elif text:
        print(text)
    if err:
        print(err, file=sys.stderr)
    return code


def cmd_check(args) -> int:
    try:
        tree, n = loads(Path(args.proof).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.proof}: {exc}") from None
    except ProofFormatError as exc:
        raise UsageError(f"{args.proof}: {exc}") from None
    if args.n is not None and args.n != n:
        raise UsageError(f"proof file has n={n}, --n says {args.n}")
    result = check(tree, n)
    payload = {"command": "check", "file": args.proof, "n": n, "conclusion": render(tree.conclusion),
               "ok": bool(result)}
    if result:
        return _emit(args, payload, f"ok: {render(tree.conclusion)} ({tree.size()} nodes)", 0)
    payload.update(path=list(result.path), reason=result.reason)
    return _emit(args, payload, "", 1, str(result))


def cmd_prove(args) -> int:
    n = args.n or 2
    s = parse_sequent(args.sequent, n)
    try:
        result = prove(s, n, args.budget)
    except SynthesisError as exc:
        return _emit(args, {"command": "prove", "status": "error", "reason": str(exc)}, "", 1, str(exc))
    payload = {"command": "prove", "n": n, "sequent": render(s)}
    if isinstance(result, Proved):
        doc = dumps(result.tree, n)
        payload.update(status="proved", nodes=result.tree.size(), height=result.tree.height())
        if args.out:
            Path(args.out).write_text(doc + "\n")
            payload["out"] = args.out
            return _emit(args, payload, f"proved: {render(s)} ({result.tree.size()} nodes) -> {args.out}", 0)
        payload["proof"] = json.loads(doc)
        return _emit(args, payload, doc, 0)
    if isinstance(result, Refuted):
        env = format_env(result.witness)
        payload.update(status="refuted", counterexample=dict(result.witness))
        return _emit(args, payload, f"refuted: {env}", 1, f"counterexample: {env}")
    payload.update(status="out-of-budget", steps=result.steps)
    return _emit(args, payload, "", 1, f"out of budget after {result.steps} steps")


def cmd_eval(args) -> int:
    n = args.n or 2
    f = parse_formula(args.formula, n)
    env = parse_env(args.env or "", n)
    try:
        value = evaluate(f, env)
    except UnboundVariable as exc:
        raise UsageError(f"variable {exc.args[0]} has no value; pass it with --env") from None
    payload = {"command": "eval", "n": n, "formula": render(f), "env": env, "value": value}
    return _emit(args, payload, str(value), 0)


def cmd_valid(args) -> int:
    n = args.n or 2
    s = parse_sequent(args.sequent, n)
    verdict = holds(s, n)
    payload = {"command": "valid", "n": n, "sequent": render(s), "valid": bool(verdict)}
    if isinstance(verdict, Invalid):
        env = format_env(verdict.witness)
        payload["counterexample"] = dict(verdict.witness)
        return _emit(args, payload, f"invalid: {env}", 1, f"counterexample: {env}")
    return _emit(args, payload, "valid", 0)


def cmd_translate(args) -> int:
    if args.dir == "pc-to-2pc":
        P = classical.parse_pc(args.formula)
        out = render(classical.to_2pc(P))
        source = classical.render_pc(P)
    else:
        n = args.n or 2
        if n != 2:
            raise UsageError("2pc-to-pc needs n = 2")
        F = parse_formula(args.formula, 2)
        out = classical.render_pc(classical.to_pc(F))
        source = render(F)
    payload = {"command": "translate", "dir": args.dir, "input": source, "output": out}
    return _emit(args, payload, out, 0)


def _algebra_results(name: str, A: algebra.FiniteAlgebra, args) -> list[dict]:
    if name == "identities":
        return [r.to_json() for r in algebra.check_identities(A, seed=args.seed)]
    if name == "corrupted":
        B, key = algebra.corrupted(A, seed=args.seed)
        return [r.to_json() for r in algebra.check_identities(B, seed=args.seed)]
    if name == "multideals":
        ultras = algebra.ultramultideals(A)
        ideals = algebra.multideals(A)
        bad = [m.to_json() for m in ideals if not algebra.intersection_property(A, m, ultras)]
        return [
            {"name": "ultramultideal-count", "instance": A.name, "pass": len(ultras) == len(A.points),
             "witness": None if len(ultras) == len(A.points) else {"count": len(ultras)}},
            {"name": "intersection-property", "instance": A.name, "pass": not bad,
             "witness": bad[0] if bad else None, "cases": len(ideals)},
        ]
    if name == "iso":
        rep = algebra.iso_par_to_power(A.points, A.n)
        return [{"name": "iso", "instance": rep.instance, "pass": rep.passed, "witness": rep.witness,
                 "cases": rep.cases}]
    raise UsageError(f"unknown algebra check {name!r}")


def cmd_algebra(args) -> int:
    n = args.n or 2
    try:
        A = algebra.partition_algebra(args.size, n)
    except algebra.AlgebraError as exc:
        raise UsageError(str(exc)) from None
    results = _algebra_results(args.check, A, args)
    passed = all(r["pass"] for r in results)
    payload = {"command": "algebra", "check": args.check, "n": n, "size": args.size, "pass": passed,
               "checks": results}
    text = "\n".join(f"{'PASS' if r['pass'] else 'FAIL'} {r['name']} {r['instance']}"
                     + ("" if r["pass"] else f"  witness={r['witness']}") for r in results)
    return _emit(args, payload, text, 0 if passed else 1)


def cmd_enumerate(args) -> int:
    n = args.n or 2
    try:
        pool = harness.enumeration_pool(n, args.vars, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    family = sequent_family(pool, n, args.max_total)
    if args.limit is not None:
        family = itertools.islice(family, args.limit)
    agreement = harness.compare(family, n, args.budget)
    payload = {"command": "enumerate", "pool": len(pool), **agreement.to_json()}
    return _emit(args, payload, agreement.matrix(), 0 if agreement.ok else 1)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=None, help="dimension (default 2)")
    common.add_argument("--json", action="store_true", help="print one JSON result object")

    p = argparse.ArgumentParser(prog="npc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check a proof file")
    c.add_argument("proof")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("prove", parents=[common], help="search for a cut-free proof")
    c.add_argument("sequent")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.add_argument("--out", help="write the proof file here instead of standard output")
    c.set_defaults(func=cmd_prove)

    c = sub.add_parser("eval", parents=[common], help="evaluate a formula")
    c.add_argument("formula")
    c.add_argument("--env", help="environment such as X=2,Y=1")
    c.set_defaults(func=cmd_eval)

    c = sub.add_parser("valid", parents=[common], help="decide a sequent by truth tables")
    c.add_argument("sequent")
    c.set_defaults(func=cmd_valid)

    c = sub.add_parser("translate", parents=[common], help="translate between PC and 2PC")
    c.add_argument("formula")
    c.add_argument("--dir", choices=("pc-to-2pc", "2pc-to-pc"), default="pc-to-2pc")
    c.set_defaults(func=cmd_translate)

    c = sub.add_parser("algebra", parents=[common], help="checks on the partition algebra")
    c.add_argument("check", choices=("identities", "corrupted", "multideals", "iso"))
    c.add_argument("--size", type=int, default=2, help="number of points of the carrier set")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_algebra)

    c = sub.add_parser("enumerate", parents=[common], help="prover against the oracle on a sequent family")
    c.add_argument("--vars", type=int, default=2)
    c.add_argument("--depth", type=int, default=2)
    c.add_argument("--max-total", type=int, default=3, help="bound on |left| + |right|")
    c.add_argument("--limit", type=int, default=None, help="stop after this many sequents")
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.n is not None and not 2 <= args.n <= MAX_N:
        parser.error(f"--n must be between 2 and {MAX_N}")
    if getattr(args, "budget", 1) <= 0:
        parser.error("--budget must be positive")
    try:
        return args.func(args)
    except (UsageError, NPCSyntaxError, classical.PCSyntaxError, DimensionError, ValueError) as exc:
        print(f"npc: {exc}", file=sys.stderr)
        return 2


run = main

if __name__ == "__main__":
    sys.exit(main())
