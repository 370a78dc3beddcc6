"""Knapsack oracles: exact weight-indexed DP, brute force, and an FPTAS.

These back the envy tests of the indivisible pipeline: an agent envies a
set of goods iff the best feasible subset of it beats her own bundle.
Weights, values and capacities are integers; the FPTAS accuracy parameter
is an exact rational.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .instance import Instance

_BRUTE_LIMIT = 20


@dataclass(frozen=True)
class KnapsackQuery:
    items: tuple[int, ...]  # distinct good indices, ascending
    weights: tuple[int, ...]
    values: tuple[int, ...]
    capacity: int

    def __post_init__(self) -> None:
        if len(set(self.items)) != len(self.items):
            raise ValueError("duplicate items in query")
        if len(self.weights) != len(self.items) or len(self.values) != len(self.items):
            raise ValueError("weights/values must align with items")
        if any(w < 0 for w in self.weights) or any(v < 0 for v in self.values):
            raise ValueError("weights and values must be nonnegative")
        if self.capacity < 0:
            raise ValueError("capacity must be nonnegative")


@dataclass(frozen=True)
class KnapsackSolution:
    subset: frozenset[int]
    value: int
    weight: int


def query_for_agent(instance: Instance, agent: int, goods: Iterable[int]) -> KnapsackQuery:
    items = tuple(sorted(goods))
    return KnapsackQuery(
        items=items,
        weights=tuple(instance.size(agent, g) for g in items),
        values=tuple(instance.value(agent, g) for g in items),
        capacity=instance.budgets[agent],
    )


def _split_forced(q: KnapsackQuery):
    """Separate items the DP need not consider.

    Zero-weight positive-value items are always taken; zero-value and
    over-capacity items are never taken.
    """
    forced: list[int] = []
    rest: list[tuple[int, int, int]] = []  # (item, weight, value)
    for item, w, v in zip(q.items, q.weights, q.values):
        if w == 0:
            if v > 0:
                forced.append(item)
            continue
        if v == 0 or w > q.capacity:
            continue
        rest.append((item, w, v))
    return forced, rest


def _solution(q: KnapsackQuery, subset: frozenset[int]) -> KnapsackSolution:
    idx = {item: i for i, item in enumerate(q.items)}
    return KnapsackSolution(
        subset=subset,
        value=sum(q.values[idx[g]] for g in subset),
        weight=sum(q.weights[idx[g]] for g in subset),
    )


def kns_exact(q: KnapsackQuery) -> KnapsackSolution:
    """Maximum-value feasible subset via weight-indexed dynamic programming.

    Runs in O(|items| * capacity).  The returned subset is deterministic:
    backtracking prefers excluding an item when both choices are optimal.
    """
    forced, rest = _split_forced(q)
    cap = q.capacity
    k = len(rest)
    # dp[i][w]: best value using the first i of rest within weight w.
    dp = [[0] * (cap + 1)]
    for _, w, v in rest:
        prev = dp[-1]
        row = prev[:]
        for c in range(w, cap + 1):
            cand = prev[c - w] + v
            if cand > row[c]:
                row[c] = cand
        dp.append(row)
    chosen: list[int] = []
    c = cap
    for i in range(k, 0, -1):
        if dp[i][c] != dp[i - 1][c]:
            item, w, _ = rest[i - 1]
            chosen.append(item)
            c -= w
    return _solution(q, frozenset(forced) | frozenset(chosen))


def kns_brute(q: KnapsackQuery) -> KnapsackSolution:
    """Exhaustive reference oracle over all subsets; |items| <= 20."""
    k = len(q.items)
    if k > _BRUTE_LIMIT:
        raise ValueError(f"brute force limited to {_BRUTE_LIMIT} items")
    best_mask, best_value = 0, 0
    for mask in range(1 << k):
        weight = value = 0
        for i in range(k):
            if mask >> i & 1:
                weight += q.weights[i]
                value += q.values[i]
        if weight <= q.capacity and value > best_value:
            best_mask, best_value = mask, value
    subset = frozenset(q.items[i] for i in range(k) if best_mask >> i & 1)
    return _solution(q, subset)


def apx_kns(q: KnapsackQuery, eps: Fraction) -> KnapsackSolution:
    """Value-scaling FPTAS: feasible subset with value >= (1-eps) * optimum.

    Values are scaled by K = eps * v_max / |items| (K = 1 when the formula
    yields less than 1, making the run exact) and a value-indexed DP picks
    the cheapest way to each scaled total.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    forced, rest = _split_forced(q)
    if not rest:
        return _solution(q, frozenset(forced))
    vmax = max(v for _, _, v in rest)
    scale = eps * vmax / len(rest)
    if scale < 1:
        scale = Fraction(1)
    scaled = [math.floor(Fraction(v) / scale) for _, _, v in rest]
    top = sum(scaled)
    inf = q.capacity + 1
    # dp[i][t]: min weight of a subset of the first i items with scaled
    # value exactly t (inf when unreachable).
    dp = [[0] + [inf] * top]
    for (_, w, _), sv in zip(rest, scaled):
        prev = dp[-1]
        row = prev[:]
        for t in range(sv, top + 1):
            cand = prev[t - sv] + w
            if cand < row[t]:
                row[t] = cand
        dp.append(row)
    best_t = max(t for t in range(top + 1) if dp[-1][t] <= q.capacity)
    chosen: list[int] = []
    t = best_t
    for i in range(len(rest), 0, -1):
        if dp[i][t] != dp[i - 1][t]:
            item, w, _ = rest[i - 1]
            chosen.append(item)
            t -= scaled[i - 1]
    return _solution(q, frozenset(forced) | frozenset(chosen))
