"""Round trips between PC and 2PC, provability agreement, and the worked simulations.

    python3 scripts/translation_report.py --depth 2
"""

import argparse
import itertools
import time
from dataclasses import dataclass

from npc import classical
from npc.corpus import multisets, sequent_family


@dataclass
class TranslationConfig:
    names: str = "X,Y"
    depth: int = 2          # PC corpus depth (with constants); 2PC corpus depth is depth - 1
    max_total: int = 2


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--names", default=TranslationConfig.names)
    ap.add_argument("--depth", type=int, default=TranslationConfig.depth)
    ap.add_argument("--max-total", type=int, default=TranslationConfig.max_total)
    cfg = TranslationConfig(**vars(ap.parse_args()))
    names = tuple(cfg.names.split(","))

    start = time.time()
    pc = classical.pc_formulas(names, cfg.depth)
    twopc = classical.twopc_formulas(classical.twopc_atoms(names), max(cfg.depth - 1, 0))
    reports = classical.roundtrip_reports(pc, twopc, names)

    pc_pool = classical.pc_formulas(names, 1)
    pc_seqs = (classical.PCSequent(left, right)
               for total in range(cfg.max_total + 1) for nl in range(total + 1)
               for left in multisets(pc_pool, nl) for right in multisets(pc_pool, total - nl))
    atoms = classical.twopc_atoms(names)
    twopc_seqs = itertools.chain(sequent_family(classical.twopc_formulas(atoms, 1), 2, 1),
                                 sequent_family(atoms, 2, cfg.max_total))
    reports += classical.provability_agreement(twopc_seqs, pc_seqs)
    for r in reports:
        print(f"{'PASS' if r else 'FAIL'} {r.name:<28} {r.cases:>9} cases" + ("" if r else f"  {r.witness}"))
    sims = classical.simulations()
    for s in sims:
        print(f"{'PASS' if s.check() else 'FAIL'} simulation {s.name}")
    print(f"{time.time() - start:.1f}s")
    raise SystemExit(0 if all(reports) and all(s.check() for s in sims) else 1)


if __name__ == "__main__":
    main()
