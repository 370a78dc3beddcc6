"""Shared hypothesis strategies and helpers for the test suite."""

from hypothesis import strategies as st

from gapfair import Instance


@st.composite
def instances(
    draw,
    max_agents=3,
    max_goods=4,
    max_value=8,
    min_size=1,
    max_size=5,
    max_budget=10,
):
    n = draw(st.integers(1, max_agents))
    m = draw(st.integers(1, max_goods))
    row = lambda lo, hi: st.tuples(*[st.integers(lo, hi)] * m)
    return Instance(
        n=n,
        m=m,
        values=tuple(draw(row(0, max_value)) for _ in range(n)),
        sizes=tuple(draw(row(min_size, max_size)) for _ in range(n)),
        budgets=tuple(draw(st.integers(1, max_budget)) for _ in range(n)),
    )
