"""Command-line entry point.

Subcommands: solve-divisible, solve-fefx, solve-approx-fefx, verify,
reduce-knapsack, fixtures, gen-random.  Solver outputs are always
re-verified before being written; a verification failure exits nonzero
(it signals an internal bug, never a silently emitted allocation).

Exit codes: 0 success, 1 verification reported FAIL, 2 malformed input,
3 precondition violation, 4 internal verification failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import divisible, indivisible, reductions, serialize
from .instance import (
    FractionalAllocation,
    InfeasibleAllocationError,
    Instance,
    IntegralAllocation,
    ZeroSizeError,
    augment,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4


def gen_random(
    seed: int,
    n: int,
    m: int,
    max_value: int = 10,
    max_size: int = 5,
    max_budget: int = 20,
) -> Instance:
    """Deterministic seeded instance; sizes start at 1 so the divisible
    pipeline's precondition always holds."""
    if min(n, m, max_value, max_size, max_budget) < 1:
        raise ValueError("all generator bounds must be >= 1")
    rng = random.Random(seed)
    return Instance(
        n=n,
        m=m,
        values=tuple(
            tuple(rng.randint(0, max_value) for _ in range(m)) for _ in range(n)
        ),
        sizes=tuple(
            tuple(rng.randint(1, max_size) for _ in range(m)) for _ in range(n)
        ),
        budgets=tuple(rng.randint(1, max_budget) for _ in range(n)),
    )


def _eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad rational {text!r}") from exc
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError("eps must lie in (0,1)")
    return eps


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gapfair",
        description="Envy-free allocation under generalized assignment constraints",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-divisible", help="FEF fractional allocation")
    p.add_argument("instance", type=Path)
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--trace", action="store_true", help="dump tau per iteration")
    p.add_argument("--dump-lp", action="store_true", help="print the initial LP")

    p = sub.add_parser("solve-fefx", help="FEFx integral allocation")
    p.add_argument("instance", type=Path)
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--trace", action="store_true", help="print each swap")

    p = sub.add_parser("solve-approx-fefx", help="(1-eps)-FEFx allocation")
    p.add_argument("instance", type=Path)
    p.add_argument("--eps", type=_eps, required=True, metavar="P/Q")
    p.add_argument("-o", "--output", type=Path)
    p.add_argument("--trace", action="store_true")

    p = sub.add_parser("verify", help="check an allocation file")
    p.add_argument("allocation", type=Path)
    p.add_argument("--mode", choices=("fef", "fefx", "apx-fefx"), required=True)
    p.add_argument("--eps", type=_eps, metavar="P/Q")

    p = sub.add_parser("reduce-knapsack", help="knapsack optimum via the FEFx oracle")
    p.add_argument("knapsack", type=Path)
    p.add_argument("--trace", action="store_true", help="print the probe trace")

    p = sub.add_parser("fixtures", help="emit the Nash-welfare counterexample files")
    p.add_argument("--out-dir", type=Path, default=Path("."))

    p = sub.add_parser("gen-random", help="generate a seeded random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-m", type=int, required=True)
    p.add_argument("--max-value", type=int, default=10)
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--max-budget", type=int, default=20)
    p.add_argument("-o", "--output", type=Path)

    return parser


def _cmd_solve_divisible(args) -> int:
    instance = serialize.load_instance(args.instance)
    if args.dump_lp:
        aug = augment(instance)
        print(divisible.build_lp1(aug, [1] * instance.n).pretty(), file=sys.stderr)
    trace = (
        (lambda it, tau: print(f"iteration {it}: tau={tau}", file=sys.stderr))
        if args.trace
        else None
    )
    result = divisible.divisible_fef(instance, trace=trace)
    if not divisible.verify_fef(instance, result.allocation):
        print("internal error: solver output failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        serialize.dump_fractional(result.allocation, args.instance, args.output)
    print(f"tau* = {result.tau}, iterations = {result.iterations}")
    for a in range(instance.n):
        row = " ".join(serialize.frac_to_str(v) for v in result.allocation.x[a])
        print(f"agent {a + 1}: {row}")
    print("charity:", " ".join(serialize.frac_to_str(v) for v in result.allocation.charity))
    print("verification: PASS (feasibly envy-free)")
    return EXIT_OK


def _print_integral(instance: Instance, allocation: IntegralAllocation) -> None:
    for a in range(instance.n):
        goods = sorted(g + 1 for g in allocation.bundles[a])
        value = instance.bundle_value(a, allocation.bundles[a])
        print(f"agent {a + 1}: goods {goods} (value {value})")
    print("charity:", sorted(g + 1 for g in allocation.charity))


def _cmd_solve_fefx(args) -> int:
    instance = serialize.load_instance(args.instance)
    trace = (
        (
            lambda rec: print(
                f"iteration {rec.iteration}: agent {rec.agent + 1} takes "
                f"{sorted(g + 1 for g in rec.goods)}, welfare {rec.welfare}",
                file=sys.stderr,
            )
        )
        if args.trace
        else None
    )
    result = indivisible.compute_fefx(instance, trace=trace)
    if not indivisible.verify_fefx(instance, result.allocation):
        print("internal error: solver output failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        serialize.dump_integral(result.allocation, args.instance, args.output)
    _print_integral(instance, result.allocation)
    print("verification: PASS (FEFx)")
    return EXIT_OK


def _cmd_solve_approx_fefx(args) -> int:
    instance = serialize.load_instance(args.instance)
    trace = (
        (
            lambda rec: print(
                f"iteration {rec.iteration}: agent {rec.agent + 1} takes "
                f"{sorted(g + 1 for g in rec.goods)}, welfare {rec.welfare}",
                file=sys.stderr,
            )
        )
        if args.trace
        else None
    )
    result = indivisible.compute_approx_fefx(instance, args.eps, trace=trace)
    if not indivisible.verify_approx_fefx(instance, result.allocation, args.eps):
        print("internal error: solver output failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    if args.output:
        serialize.dump_integral(result.allocation, args.instance, args.output)
    _print_integral(instance, result.allocation)
    print(f"verification: PASS ((1-{args.eps})-FEFx)")
    return EXIT_OK


def _cmd_verify(args) -> int:
    allocation, instance, _ = serialize.load_allocation(args.allocation)
    if args.mode == "fef":
        if not isinstance(allocation, FractionalAllocation):
            print("mode fef needs a fractional allocation", file=sys.stderr)
            return EXIT_BAD_INPUT
        witness = divisible.fef_witness(instance, allocation)
        if witness is None:
            print("PASS: feasibly envy-free")
            return EXIT_OK
        target = (
            "charity" if witness.target == "charity" else f"agent {witness.target + 1}"
        )
        print(
            f"FAIL: agent {witness.agent + 1} envies {target} "
            f"(own value {witness.own_value}, attainable {witness.best_value})"
        )
        return EXIT_FAIL
    if not isinstance(allocation, IntegralAllocation):
        print(f"mode {args.mode} needs an integral allocation", file=sys.stderr)
        return EXIT_BAD_INPUT
    eps = args.eps if args.mode == "apx-fefx" else Fraction(0)
    if args.mode == "apx-fefx" and args.eps is None:
        print("mode apx-fefx requires --eps", file=sys.stderr)
        return EXIT_BAD_INPUT
    witness = indivisible.fefx_witness(instance, allocation, eps)
    if witness is None:
        print("PASS")
        return EXIT_OK
    target = (
        "charity" if witness.target == "charity" else f"agent {witness.target + 1}"
    )
    print(
        f"FAIL: agent {witness.agent + 1} envies subset "
        f"{sorted(g + 1 for g in witness.subset)} of {target} "
        f"(own value {witness.own_value}, subset value {witness.subset_value})"
    )
    return EXIT_FAIL


def _cmd_reduce_knapsack(args) -> int:
    kp = serialize.load_knapsack(args.knapsack)
    probe_trace = (
        (lambda mu, parity: print(f"mu={mu}: {parity}", file=sys.stderr))
        if args.trace
        else None
    )
    optimum = reductions.solve_knapsack_via_fefx(kp, probe_trace=probe_trace)
    print(f"optimum value: {optimum}")
    return EXIT_OK


def _cmd_fixtures(args) -> int:
    fixture = reductions.mnw_fixture()
    out = args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    instance_path = out / "mnw_instance.json"
    serialize.dump_instance(fixture.instance, instance_path)
    serialize.dump_fractional(
        fixture.nsw_allocation, instance_path, out / "mnw_allocation.json"
    )
    print(f"wrote {instance_path} and {out / 'mnw_allocation.json'}")
    print(f"(values stored x{fixture.value_scale}; sizes and budgets unscaled)")
    return EXIT_OK


def _cmd_gen_random(args) -> int:
    instance = gen_random(
        args.seed, args.n, args.m, args.max_value, args.max_size, args.max_budget
    )
    if args.output:
        serialize.dump_instance(instance, args.output)
        print(f"wrote {args.output}")
    else:
        serialize.dump_instance(instance, Path("/dev/stdout"))
    return EXIT_OK


_COMMANDS = {
    "solve-divisible": _cmd_solve_divisible,
    "solve-fefx": _cmd_solve_fefx,
    "solve-approx-fefx": _cmd_solve_approx_fefx,
    "verify": _cmd_verify,
    "reduce-knapsack": _cmd_reduce_knapsack,
    "fixtures": _cmd_fixtures,
    "gen-random": _cmd_gen_random,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except serialize.InstanceFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (ZeroSizeError, InfeasibleAllocationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
