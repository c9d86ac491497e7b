from __future__ import annotations

from hypothesis import HealthCheck, settings, strategies as st

from npc.syntax import Const, Q, Sequent, Var

settings.register_profile("default", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

NAMES = ("X", "Y", "Z")

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def perms(n: int):
    return st.permutations(list(range(1, n + 1))).map(tuple)


def formulas(n: int, max_leaves: int = 12, names=NAMES):
    leaf = st.one_of(
        st.integers(1, n).map(Const),
        st.builds(Var, st.sampled_from(names), perms(n)),
    )

    def extend(children):
        return st.builds(lambda t, bs: Q(t, tuple(bs)), children, st.lists(children, min_size=n, max_size=n))

    return st.recursive(leaf, extend, max_leaves=max_leaves)


def sequents(n: int, max_side: int = 2, max_leaves: int = 6):
    side = st.lists(formulas(n, max_leaves), max_size=max_side).map(tuple)
    return st.builds(Sequent, side, st.integers(1, n), side)


dims = st.integers(2, 4)


@st.composite
def formula_with_n(draw, max_leaves: int = 12):
    n = draw(dims)
    return n, draw(formulas(n, max_leaves))


def envs_for(n: int, names=NAMES):
    return st.fixed_dictionaries({x: st.integers(1, n) for x in names})
