"""Hardness harness and negative fixtures.

The harness turns any FEFx solver into a knapsack optimizer: a
single-agent gadget instance carries the knapsack items plus a probe good
of odd value 2*mu + 1 and an always-infeasible filler good.  The parity
of the agent's bundle value flips exactly at mu = v*/2, so binary search
over mu recovers the knapsack optimum.

mnw_fixture() builds the two-agent instance on which the Nash-welfare
maximizing fractional allocation is not feasibly envy-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .indivisible import FefxResult, compute_fefx
from .instance import FractionalAllocation, Instance

FefxSolver = Callable[[Instance], FefxResult]


@dataclass(frozen=True)
class KnapsackProblem:
    weights: tuple[int, ...]
    values: tuple[int, ...]
    capacity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.weights) != len(self.values):
            raise ValueError("weights/values length mismatch")
        if any(w < 0 for w in self.weights) or any(v < 0 for v in self.values):
            raise ValueError("weights and values must be nonnegative")
        if self.capacity < 0:
            raise ValueError("capacity must be nonnegative")

    @property
    def item_count(self) -> int:
        return len(self.weights)


def build_gadget(kp: KnapsackProblem, mu: int) -> Instance:
    """Single-agent instance with m+2 goods encoding the knapsack.

    Goods 1..m carry the item values/weights; good m+1 has odd value
    2*mu + 1 and size equal to the capacity; good m+2 has zero value and
    size capacity + 1, so it can never be assigned.  Item values must be
    even so that bundle parity identifies whether good m+1 was taken.
    """
    if mu < 0:
        raise ValueError("mu must be nonnegative")
    if kp.capacity < 1:
        raise ValueError("gadget requires capacity >= 1")
    if any(v % 2 for v in kp.values):
        raise ValueError("gadget requires even item values")
    values = kp.values + (2 * mu + 1, 0)
    sizes = kp.weights + (kp.capacity, kp.capacity + 1)
    return Instance(
        n=1,
        m=kp.item_count + 2,
        values=(values,),
        sizes=(sizes,),
        budgets=(kp.capacity,),
    )


def parity_probe(
    kp: KnapsackProblem, mu: int, fefx_solver: FefxSolver = compute_fefx
) -> str:
    """Parity ("even" or "odd") of the agent's value in an FEFx allocation
    of the gadget at mu."""
    instance = build_gadget(kp, mu)
    result = fefx_solver(instance)
    value = instance.bundle_value(0, result.allocation.bundles[0])
    return "odd" if value % 2 else "even"


def solve_knapsack_via_fefx(
    kp: KnapsackProblem,
    fefx_solver: FefxSolver = compute_fefx,
    probe_trace: Optional[Callable[[int, str], None]] = None,
) -> int:
    """Knapsack optimum computed through an FEFx oracle.

    Binary search for the smallest mu with an odd probe; the optimum is
    2 * mu.  Odd input values are doubled automatically and the result
    halved on output.
    """
    halve = False
    if any(v % 2 for v in kp.values):
        kp = KnapsackProblem(
            kp.weights, tuple(2 * v for v in kp.values), kp.capacity
        )
        halve = True

    def probe(mu: int) -> str:
        parity = parity_probe(kp, mu, fefx_solver)
        if probe_trace is not None:
            probe_trace(mu, parity)
        return parity

    lo, hi = 0, sum(kp.values)  # probes are even below v*/2, odd at or above
    if probe(lo) == "odd":
        return 0
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if probe(mid) == "odd":
            hi = mid
        else:
            lo = mid
    optimum = 2 * hi
    return optimum // 2 if halve else optimum


# -- Nash-welfare counterexample ----------------------------------------------

#: Both agents' values are doubled to make them integral; budgets and sizes
#: are already integers in the source construction.
MNW_VALUE_SCALE = 2


@dataclass(frozen=True)
class MnwFixture:
    instance: Instance
    nsw_allocation: FractionalAllocation  # Nash-welfare optimum, not FEF
    value_scale: int


def mnw_fixture() -> MnwFixture:
    """Two-agent, two-good instance whose Nash-welfare optimum has envy.

    Original (unscaled) data: both agents value good 1 at 1 and good 2 at
    1/2; sizes are (1,1) for agent 1 and (1,8) for agent 2; both budgets
    are 1.  Values are stored doubled (value_scale = 2); envy comparisons
    are scale-invariant per agent.

    The returned allocation x* assigns (1/30, 29/30) to agent 1 and
    (29/30, 1/240) to agent 2; it maximizes Nash social welfare yet agent
    1 envies agent 2's bundle.
    """
    instance = Instance(
        n=2,
        m=2,
        values=((2, 1), (2, 1)),
        sizes=((1, 1), (1, 8)),
        budgets=(1, 1),
    )
    x_star = FractionalAllocation(
        (
            (Fraction(1, 30), Fraction(29, 30)),
            (Fraction(29, 30), Fraction(1, 240)),
        )
    )
    return MnwFixture(instance, x_star, MNW_VALUE_SCALE)


def mnw_closed_form_share(delta: Fraction = Fraction(1, 8)) -> Fraction:
    """Stationary point delta / (2 (2 - delta)) of the Nash product bound;
    at delta = 1/8 it equals agent 1's share 1/30 of good 1."""
    return delta / (2 * (2 - delta))
