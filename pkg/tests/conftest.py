import os
import sys

from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from adhesia.terms import UNIT, Atom, Pair, Seq, SetOf  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ATOMS = ("a", "b", "c", "d")


def atom_names(pool=ATOMS):
    return st.sampled_from(pool)


def nested_sets(pool=ATOMS, max_leaves: int = 8):
    """Pure nested sets over ``pool`` (atoms and finite sets)."""
    leaf = atom_names(pool).map(Atom) | st.just(SetOf())
    return st.recursive(leaf, lambda inner: st.lists(inner, max_size=3).map(SetOf),
                        max_leaves=max_leaves)


def terms(pool=ATOMS):
    leaf = atom_names(pool).map(Atom) | st.just(UNIT) | st.just(SetOf())
    return st.recursive(
        leaf,
        lambda inner: st.lists(inner, max_size=3).map(SetOf)
        | st.tuples(inner, inner).map(lambda p: Pair(*p))
        | st.lists(inner, max_size=3).map(Seq),
        max_leaves=10)


# one line per acceptance criterion, collected by test_acceptance.py
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
