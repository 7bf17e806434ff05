"""Scramble certified pencils by a weight action, then reduce them back.

Prints one line per pencil with the discriminant valuations along the
reduction trace and the final verdict.

    python3 scripts/scramble_reduce.py --count 20 --field "GF(7)" --n 4
"""

import argparse
import random

from pencilstab.disc import disc_valuation
from pencilstab.pencil import WeightSystem
from pencilstab.ring import FieldSpec
from pencilstab.samples import certified_pencil, random_transvection, random_weight, scramble
from pencilstab.stability import SearchBudget, semistable_reduce


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--field", default="QQ")
    ap.add_argument("--n", type=int, default=4)
    ap.add_argument("--max-sum", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--coord-random", type=int, default=SearchBudget().max_random_coord_changes)
    args = ap.parse_args()

    F = FieldSpec.parse(args.field)
    rng = random.Random(args.seed)
    budget = SearchBudget(max_random_coord_changes=args.coord_random, rng_seed=args.seed)
    for k in range(args.count):
        P0 = certified_pencil(F, args.n, rng)
        w = random_weight(args.n, rng, args.max_sum)
        if w.total == 0:
            w = WeightSystem((1,) + (0,) * (args.n - 1))
        P = scramble(P0, w, random_transvection(F, args.n, rng))
        tr = semistable_reduce(P, budget)
        vals = [disc_valuation(P)] + [s.disc_after for s in tr.steps]
        rhos = " ".join(str(list(s.rho)) for s in tr.steps)
        print(f"{k:3d} w={list(w)} vals={vals} steps={rhos or '-'} -> {tr.final_verdict.status.value}")


if __name__ == "__main__":
    main()
