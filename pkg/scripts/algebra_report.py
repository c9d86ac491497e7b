"""Identities, multideals and the partition representation over a grid of small algebras.

    python3 scripts/algebra_report.py --max-n 3 --max-points 2
"""

import argparse
import time
from dataclasses import dataclass

from npc import algebra


@dataclass
class AlgebraConfig:
    max_n: int = 3
    max_points: int = 2
    seed: int = 0
    corrupted_seeds: int = 10


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=AlgebraConfig.max_n)
    ap.add_argument("--max-points", type=int, default=AlgebraConfig.max_points)
    ap.add_argument("--seed", type=int, default=AlgebraConfig.seed)
    ap.add_argument("--corrupted-seeds", type=int, default=AlgebraConfig.corrupted_seeds)
    cfg = AlgebraConfig(**vars(ap.parse_args()))

    ok = True
    for n in range(2, cfg.max_n + 1):
        for size in range(cfg.max_points + 1):
            start = time.time()
            A = algebra.partition_algebra(size, n)
            results = algebra.check_identities(A, seed=cfg.seed)
            print(algebra.report_text(results))
            if size:
                ultras = algebra.ultramultideals(A)
                ideals = algebra.multideals(A)
                meets = sum(algebra.intersection_property(A, I, ultras) for I in ideals)
                print(f"     {len(ultras)} ultramultideals (|X| = {size}), "
                      f"intersection property {meets}/{len(ideals)}")
                ok &= len(ultras) == size and meets == len(ideals)
            iso = algebra.iso_par_to_power(size, n)
            print(f"     iso to {n}^X: {'ok' if iso else 'FAIL'} over {iso.cases} tuples ({time.time() - start:.1f}s)")
            ok &= all(results) and bool(iso)

    caught = 0
    for seed in range(cfg.corrupted_seeds):
        broken, key = algebra.corrupted(algebra.partition_algebra(2, 2), seed)
        failed = [r.name for r in algebra.check_identities(broken, seed=cfg.seed) if not r]
        caught += bool(failed)
        print(f"corrupted at {key}: caught by {', '.join(failed) or 'nothing'}")
    ok &= caught == cfg.corrupted_seeds
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
