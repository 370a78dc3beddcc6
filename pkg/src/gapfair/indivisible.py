"""FEFx and (1-eps)-FEFx allocation of indivisible goods.

Both solvers start from empty bundles and repeatedly swap a minimal
envied subset of the charity into the bundle of an agent who envies it.
Envy tests are knapsack queries; the approximate pipeline replaces them
with FPTAS queries at accuracy eps/2 and relaxes the comparisons by
exact rational (1 - eps/2) factors.

Scan order everywhere is ascending good index, then ascending agent
index, first hit taken, so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .instance import InfeasibleAllocationError, Instance, IntegralAllocation
from .knapsack import apx_kns, kns_exact, query_for_agent

CHARITY = "charity"

Target = Union[int, str]


class NotEnviedError(ValueError):
    """Minimal-envied-subset search invoked on an unenvied charity."""


@dataclass(frozen=True)
class EnvyWitness:
    agent: int
    target: Target
    subset: frozenset[int]
    value: int


@dataclass(frozen=True)
class MinimalEnviedSet:
    goods: frozenset[int]
    envier: int


@dataclass(frozen=True)
class SwapRecord:
    iteration: int
    agent: int
    goods: frozenset[int]
    welfare: int


@dataclass(frozen=True)
class FefxResult:
    allocation: IntegralAllocation
    swaps: tuple[SwapRecord, ...]


def envies(
    instance: Instance,
    allocation: IntegralAllocation,
    agent: int,
    target_goods: frozenset[int],
    target: Target = CHARITY,
) -> Optional[EnvyWitness]:
    """Witness that the agent envies the target set, or None.

    The agent envies a set iff its best feasible subset strictly beats her
    own bundle.
    """
    best = kns_exact(query_for_agent(instance, agent, target_goods))
    own = instance.bundle_value(agent, allocation.bundles[agent])
    if best.value > own:
        return EnvyWitness(agent, target, best.subset, best.value)
    return None


def _first_envier(instance, allocation, goods) -> Optional[int]:
    for a in range(instance.n):
        if envies(instance, allocation, a, goods) is not None:
            return a
    return None


def find_minimal_envied_subset(
    instance: Instance, allocation: IntegralAllocation
) -> MinimalEnviedSet:
    """Shrink the charity to a minimal envied set and its envying agent.

    While some agent still envies the set minus one good, drop that good
    and remember the agent.  Raises NotEnviedError when no agent envies
    the charity in the first place.
    """
    charity = allocation.charity
    k = _first_envier(instance, allocation, charity)
    if k is None:
        raise NotEnviedError("charity is not envied by any agent")
    own = [instance.bundle_value(a, allocation.bundles[a]) for a in range(instance.n)]
    t = set(charity)
    while True:
        hit = None
        for g in sorted(t):
            smaller = frozenset(t - {g})
            for a in range(instance.n):
                if kns_exact(query_for_agent(instance, a, smaller)).value > own[a]:
                    hit = (g, a)
                    break
            if hit:
                break
        if hit is None:
            return MinimalEnviedSet(frozenset(t), k)
        g, k = hit
        t.remove(g)


def compute_fefx(
    instance: Instance,
    check_invariants: bool = False,
    trace: Optional[Callable[[SwapRecord], None]] = None,
) -> FefxResult:
    """Compute an FEFx allocation by minimal-envied-subset swaps.

    Social welfare strictly increases each iteration, so the loop runs at
    most n * max_a v_a([m]) times.
    """
    n = instance.n
    bundles: list[frozenset[int]] = [frozenset()] * n
    swaps: list[SwapRecord] = []
    limit = n * max(sum(row) for row in instance.values) + 1
    welfare = 0
    iteration = 0
    while True:
        allocation = IntegralAllocation(instance.m, tuple(bundles))
        if _first_envier(instance, allocation, allocation.charity) is None:
            return FefxResult(allocation, tuple(swaps))
        iteration += 1
        if iteration > limit:
            raise AssertionError("swap loop exceeded its welfare bound")
        mes = find_minimal_envied_subset(instance, allocation)
        bundles[mes.envier] = mes.goods
        new_welfare = sum(
            instance.bundle_value(a, bundles[a]) for a in range(n)
        )
        assert new_welfare > welfare, "welfare failed to increase"
        welfare = new_welfare
        record = SwapRecord(iteration, mes.envier, mes.goods, welfare)
        swaps.append(record)
        if trace is not None:
            trace(record)
        if check_invariants:
            partial = IntegralAllocation(instance.m, tuple(bundles))
            assert _fefx_among_agents(instance, partial, Fraction(0)), (
                "intermediate allocation lost FEFx among agents"
            )


# -- verifiers ---------------------------------------------------------------


@dataclass(frozen=True)
class FefxViolation:
    agent: int
    target: Target
    own_value: int
    subset: frozenset[int]
    subset_value: int


def _check_allocation(instance: Instance, allocation: IntegralAllocation) -> None:
    if allocation.n != instance.n or allocation.m != instance.m:
        raise ValueError("allocation dimensions do not match the instance")
    if not allocation.is_feasible(instance):
        raise InfeasibleAllocationError("some bundle exceeds its agent's budget")


def _strict_subset_violation(
    instance, allocation, agent, target, goods, eps: Fraction
) -> Optional[FefxViolation]:
    """Best feasible strict subset of `goods`, compared at factor (1-eps).

    Every strict subset of X is contained in X - g for some g, so taking
    the knapsack optimum over each X - g is exact.
    """
    if not goods:
        return None
    own = instance.bundle_value(agent, allocation.bundles[agent])
    for g in sorted(goods):
        best = kns_exact(query_for_agent(instance, agent, goods - {g}))
        if (1 - eps) * best.value > own:
            return FefxViolation(agent, target, own, best.subset, best.value)
    return None


def _fefx_among_agents(instance, allocation, eps: Fraction) -> bool:
    for a in range(instance.n):
        for b in range(instance.n):
            if b == a:
                continue
            if _strict_subset_violation(
                instance, allocation, a, b, allocation.bundles[b], eps
            ):
                return False
    return True


def fefx_witness(
    instance: Instance,
    allocation: IntegralAllocation,
    eps: Fraction = Fraction(0),
) -> Optional[FefxViolation]:
    """First FEFx violation at relaxation factor (1-eps), or None."""
    eps = Fraction(eps)
    if not 0 <= eps < 1:
        raise ValueError("eps must lie in [0, 1)")
    _check_allocation(instance, allocation)
    charity = allocation.charity
    for a in range(instance.n):
        targets: list[tuple[Target, frozenset[int]]] = [
            (b, allocation.bundles[b]) for b in range(instance.n) if b != a
        ]
        targets.append((CHARITY, charity))
        for label, goods in targets:
            violation = _strict_subset_violation(
                instance, allocation, a, label, goods, eps
            )
            if violation:
                return violation
    return None


def verify_fefx(instance: Instance, allocation: IntegralAllocation) -> bool:
    """True iff no agent envies a feasible strict subset of any other
    bundle or of the charity."""
    return fefx_witness(instance, allocation) is None


def verify_approx_fefx(
    instance: Instance, allocation: IntegralAllocation, eps: Fraction
) -> bool:
    """verify_fefx with comparisons relaxed to v_a(A_a) >= (1-eps) v_a(S)."""
    return fefx_witness(instance, allocation, eps) is None


# -- approximate pipeline ----------------------------------------------------


def _apx_envies(instance, allocation, agent, goods, eps: Fraction) -> bool:
    own = instance.bundle_value(agent, allocation.bundles[agent])
    best = apx_kns(query_for_agent(instance, agent, goods), eps / 2).value
    return own < (1 - eps / 2) * best


def apx_min_envied(
    instance: Instance,
    allocation: IntegralAllocation,
    eps: Fraction,
) -> MinimalEnviedSet:
    """Find a (1-eps)-minimal envied subset of the charity.

    Mirrors the exact search but tests envy with FPTAS knapsacks at
    accuracy eps/2 and relaxed comparisons; the surviving set is finally
    trimmed to a budget-feasible subset for the envying agent.
    """
    eps = Fraction(eps)
    charity = allocation.charity
    k = None
    for a in range(instance.n):
        if _apx_envies(instance, allocation, a, charity, eps):
            k = a
            break
    if k is None:
        raise NotEnviedError("charity is not approximately envied by any agent")
    t = set(charity)
    while True:
        hit = None
        for g in sorted(t):
            smaller = frozenset(t - {g})
            for a in range(instance.n):
                if _apx_envies(instance, allocation, a, smaller, eps):
                    hit = (g, a)
                    break
            if hit:
                break
        if hit is None:
            break
        g, k = hit
        t.remove(g)
    trimmed = apx_kns(query_for_agent(instance, k, frozenset(t)), eps / 2).subset
    return MinimalEnviedSet(trimmed, k)


def compute_approx_fefx(
    instance: Instance,
    eps: Fraction,
    trace: Optional[Callable[[SwapRecord], None]] = None,
) -> FefxResult:
    """Compute a (1-eps)-FEFx allocation in time polynomial in 1/eps.

    Each swap raises the receiving agent's value by a strict factor of
    1/(1 - eps/2), which bounds the per-agent update count
    logarithmically.
    """
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    n = instance.n
    bundles: list[frozenset[int]] = [frozenset()] * n
    swaps: list[SwapRecord] = []
    limit = n * max(sum(row) for row in instance.values) + 1
    iteration = 0
    while True:
        allocation = IntegralAllocation(instance.m, tuple(bundles))
        charity = allocation.charity
        if not any(
            _apx_envies(instance, allocation, a, charity, eps) for a in range(n)
        ):
            return FefxResult(allocation, tuple(swaps))
        iteration += 1
        if iteration > limit:
            raise AssertionError("approximate swap loop exceeded its bound")
        mes = apx_min_envied(instance, allocation, eps)
        old_value = instance.bundle_value(mes.envier, bundles[mes.envier])
        bundles[mes.envier] = mes.goods
        new_value = instance.bundle_value(mes.envier, mes.goods)
        assert new_value * (1 - eps / 2) > old_value, (
            "bundle update missed the multiplicative growth guarantee"
        )
        welfare = sum(instance.bundle_value(a, bundles[a]) for a in range(n))
        record = SwapRecord(iteration, mes.envier, mes.goods, welfare)
        swaps.append(record)
        if trace is not None:
            trace(record)
