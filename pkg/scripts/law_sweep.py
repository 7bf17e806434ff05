"""Sweep the discriminant transformation law over random pencils and weights.

    python3 scripts/law_sweep.py --count 300 --seed 1
"""

import argparse
import collections
import random
import time

from pencilstab.ring import QQ, FieldSpec, INF
from pencilstab.samples import random_constant_change, random_pencil, random_weight
from pencilstab.stability import expected_change, transform


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=300)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-sum", type=int, default=6)
    ap.add_argument("--fields", default="QQ,GF(7),GF(101)")
    ap.add_argument("--sizes", default="3,4,5")
    args = ap.parse_args()

    fields = [FieldSpec.parse(s) for s in args.fields.split(",")]
    sizes = [int(s) for s in args.sizes.split(",")]
    rng = random.Random(args.seed)
    tally = collections.Counter()
    bad = 0
    t0 = time.perf_counter()
    for k in range(args.count):
        F = fields[k % len(fields)]
        n = sizes[(k // len(fields)) % len(sizes)]
        P = random_pencil(F, n, rng)
        rho = random_weight(n, rng, args.max_sum)
        C = random_constant_change(F, n, rng)
        Q, m, before, after = transform(P, rho, C)
        ok = after != INF and after - before == expected_change(n, m, rho)
        bad += not ok
        tally[(str(F), n, "destab" if n * m > 4 * rho.total else "other")] += 1
        if not ok:
            print(f"mismatch at sample {k}: {F} n={n} rho={list(rho)} mult={m} {before} -> {after}")
    print(f"{args.count - bad}/{args.count} samples obey the law ({time.perf_counter() - t0:.1f}s)")
    for key in sorted(tally):
        print("  ", *key, tally[key])


if __name__ == "__main__":
    main()
