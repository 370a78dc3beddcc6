#!/usr/bin/env python3
"""Solve a batch of seeded random instances and print summary statistics.

Runs both pipelines on every instance: the divisible solver (threshold
loop iterations, terminal thresholds) and the indivisible FEFx solver
(swap counts, welfare, charity size).  Every output is re-verified.

Example:
    python3 scripts/run_random_suite.py --count 50 --agents 3 --goods 5
"""

import argparse
import random
import time

from gapfair import compute_fefx, divisible_fef, verify_fef, verify_fefx
from gapfair.cli import gen_random


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=50)
    parser.add_argument("--agents", type=int, default=3, help="max agents")
    parser.add_argument("--goods", type=int, default=5, help="max goods")
    parser.add_argument("--seed", type=int, default=0, help="base seed")
    parser.add_argument("--verbose", action="store_true")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    div_iters: list[int] = []
    swap_counts: list[int] = []
    start = time.perf_counter()
    for i in range(args.count):
        n = rng.randint(1, args.agents)
        m = rng.randint(1, args.goods)
        inst = gen_random(args.seed + 31 * i + 1, n, m)

        div = divisible_fef(inst)
        assert verify_fef(inst, div.allocation)
        div_iters.append(div.iterations)

        fefx = compute_fefx(inst)
        assert verify_fefx(inst, fefx.allocation)
        swap_counts.append(len(fefx.swaps))

        if args.verbose:
            print(
                f"[{i:3d}] n={n} m={m} "
                f"tau*={div.tau} iters={div.iterations} "
                f"swaps={len(fefx.swaps)} "
                f"welfare={fefx.allocation.welfare(inst)} "
                f"charity={sorted(fefx.allocation.charity)}"
            )
    elapsed = time.perf_counter() - start

    print(f"\n{args.count} instances, all verified, {elapsed:.2f}s")
    print(
        f"divisible: iterations mean {sum(div_iters) / len(div_iters):.2f}, "
        f"max {max(div_iters)}"
    )
    print(
        f"fefx: swaps mean {sum(swap_counts) / len(swap_counts):.2f}, "
        f"max {max(swap_counts)}"
    )


if __name__ == "__main__":
    main()
