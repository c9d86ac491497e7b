"""Prover versus truth-table oracle on the exhaustive n=2 family or a seeded random sample.

    python3 scripts/completeness_sweep.py                 # 259,532 sequents, a few minutes
    python3 scripts/completeness_sweep.py --n 3 --random 2000
"""

import argparse
import json
import random
import time
from dataclasses import asdict, dataclass

from npc.corpus import formula_pool, random_sequent, sequent_family
from npc.harness import compare


@dataclass
class SweepConfig:
    n: int = 2
    max_total: int = 3
    random: int = 0         # 0: exhaustive family over the fixed pool (n = 2 only)
    seed: int = 0
    p_leaf: float = 0.6
    budget: int = 100_000


def sequents(cfg: SweepConfig):
    if cfg.random:
        rng = random.Random(cfg.seed)
        return (random_sequent(rng, cfg.n, max_total=cfg.max_total, p_leaf=cfg.p_leaf) for _ in range(cfg.random))
    if cfg.n != 2:
        raise SystemExit("the exhaustive family is defined for n = 2; use --random for other n")
    return sequent_family(formula_pool(), 2, cfg.max_total)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, value in asdict(SweepConfig()).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(value), default=value)
    ap.add_argument("--json", action="store_true")
    args = vars(ap.parse_args())
    as_json = args.pop("json")
    cfg = SweepConfig(**args)
    start = time.time()
    agreement = compare(sequents(cfg), cfg.n, cfg.budget)
    if as_json:
        print(json.dumps({"config": asdict(cfg), "seconds": round(time.time() - start, 1), **agreement.to_json()}))
    else:
        print(agreement.matrix())
        print(f"{time.time() - start:.1f}s, {'agreement' if agreement.ok else 'DISCREPANCIES'}")
        for d in agreement.discrepancies:
            print(" ", d)
    raise SystemExit(0 if agreement.ok else 1)


if __name__ == "__main__":
    main()
