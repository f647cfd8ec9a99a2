import pytest
from hypothesis import given, strategies as st

from adhesia import terms as T
from adhesia.errors import NonInjectiveLeg, NotAnElement, NotInPullback
from adhesia.finset import FinFunction
from adhesia.functors import CarrierEnv, enumerate_functor, map_element, parse_functor
from adhesia.limits import (
    Cospan, check_pb_preservation, comparison_h, functor_pullback, inverse_hbar,
)
from adhesia.terms import UNIT, Atom, Pair, SetOf, parse_term

from oracles import native, pot_pullback_pairs

POT = parse_functor("Pot(X)")


def cospan(f, g, cod):
    return Cospan(FinFunction(set(f), cod, f), FinFunction(set(g), cod, g))


COUNTER = cospan({"1": "d", "2": "d"}, {"c": "d", "c'": "d"}, {"d"})
SMALL = cospan({"1": "d", "2": "e"}, {"c": "d"}, {"d", "e"})


@st.composite
def mono_cospans(draw, max_size=3):
    D = [f"d{i}" for i in range(draw(st.integers(1, max_size)))]
    B = [f"b{i}" for i in range(draw(st.integers(0, max_size)))]
    C = [f"c{i}" for i in range(draw(st.integers(0, len(D))))]
    f = {b: draw(st.sampled_from(D)) for b in B}
    g = dict(zip(C, draw(st.permutations(D))[:len(C)]))
    return cospan(f, g, D)


def test_pot_counterexample():
    v = check_pb_preservation(POT, COUNTER, mode="ordinary")
    assert v.holds is False
    assert v.sizes == (16, 10)
    assert v.witness["kind"] == "merged"


def test_pot_counterexample_pullback_matches_oracle():
    P = functor_pullback(POT, COUNTER)
    got = {(frozenset(native(p.left)), frozenset(native(p.right))) for p in P}
    assert got == pot_pullback_pairs(COUNTER.f.mapping, COUNTER.g.mapping)


def test_pot_counterexample_is_weak():
    assert check_pb_preservation(POT, COUNTER, mode="weak").holds


def test_final_preserves():
    v = check_pb_preservation(parse_functor("1"), COUNTER)
    assert v.holds and v.sizes == (1, 1)
    assert functor_pullback(parse_functor("1"), COUNTER) == [Pair(UNIT, UNIT)]


def test_pot_small_pullback():
    P = functor_pullback(POT, SMALL)
    assert P == sorted([Pair(SetOf(), SetOf()), Pair(parse_term("{1}"), parse_term("{c}"))])


@pytest.mark.parametrize("t,expected", [
    ("{}", ("{}", "{}")),
    ("{\"(1,c)\"}", ("{1}", "{c}")),
])
def test_comparison_h(t, expected):
    got = comparison_h(POT, SMALL, parse_term(t))
    assert got == Pair(parse_term(expected[0]), parse_term(expected[1]))


def test_comparison_h_final():
    assert comparison_h(parse_functor("1"), SMALL, UNIT) == Pair(UNIT, UNIT)


def test_comparison_h_rejects_non_elements():
    with pytest.raises(NotAnElement):
        comparison_h(POT, SMALL, parse_term("{zz}"))


def test_hbar_pot():
    got = inverse_hbar(POT, SMALL, Pair(parse_term("{1}"), parse_term("{c}")))
    assert got == SetOf([Atom("(1,c)")])


def test_hbar_ppa_atoms():
    got = inverse_hbar(parse_functor("PPa(X)"), SMALL, Pair(Atom("1"), Atom("c")))
    assert got == Atom("(1,c)")


def test_hbar_errors():
    with pytest.raises(NonInjectiveLeg):
        inverse_hbar(POT, COUNTER, Pair(SetOf(), SetOf()))
    with pytest.raises(NotInPullback):
        inverse_hbar(POT, SMALL, Pair(parse_term("{2}"), parse_term("{c}")))
    with pytest.raises(NotInPullback):
        inverse_hbar(POT, SMALL, SetOf())


def test_along_monos_needs_injective_leg():
    with pytest.raises(NonInjectiveLeg):
        check_pb_preservation(POT, COUNTER, mode="along_monos")


def test_unknown_mode():
    with pytest.raises(ValueError):
        check_pb_preservation(POT, SMALL, mode="sideways")


FLAVORS = ["Pot(X)", "PotDir(X)", "PPa(X)", "PPb(X)", "PotOm(X)", "N * N", "Star(N)", "1"]


@pytest.mark.parametrize("text", FLAVORS)
@given(cs=mono_cospans())
def test_preserved_along_monos(text, cs):
    F = parse_functor(text)
    assert check_pb_preservation(F, cs, 2, 2, 2, mode="along_monos").holds


@pytest.mark.parametrize("text", FLAVORS)
@given(cs=mono_cospans())
def test_hbar_round_trips(text, cs):
    F = parse_functor(text)
    pb = cs.f.dom, cs.g.dom
    envA = CarrierEnv({f"({b},{c})" for b in pb[0] for c in pb[1] if cs.f(b) == cs.g(c)})
    for t in enumerate_functor(F, envA, 2, 2, 2):
        assert inverse_hbar(F, cs, comparison_h(F, cs, t)) == t
    for xy in functor_pullback(F, cs, 2, 2, 2):
        t = inverse_hbar(F, cs, xy)
        assert comparison_h(F, cs, t) == xy


def test_two_sorted_cospan():
    f = FinFunction({"1", "2"}, {"d", "e"}, {"1": "d", "2": "e"})
    g = FinFunction({"c"}, {"d", "e"}, {"c": "d"})
    fE = FinFunction({"p"}, {"r"}, {"p": "r"})
    gE = FinFunction({"q"}, {"r"}, {"q": "r"})
    cs = Cospan(f, g, fE, gE)
    F = parse_functor("Pot(N + E)")
    v = check_pb_preservation(F, cs, mode="along_monos")
    assert v.holds and v.sizes == (4, 4)


def test_literal_reading_loses_nesting():
    """The flattened-union variant is not an inverse of h on nested terms."""
    F = parse_functor("PPa(X)")
    t = parse_term('{"(1,c)",{}}')
    xy = comparison_h(F, SMALL, t)
    assert inverse_hbar(F, SMALL, xy) == t
    assert inverse_hbar(F, SMALL, xy, literal=True) != t


def test_cospan_json_round_trip():
    assert Cospan.from_json(COUNTER.to_json()) == COUNTER


def test_pot_fails_without_monos_ppa_too():
    # merging in the apex also breaks PPa and PotOm on the same cospan
    for text in ("PPa(X)", "PotOm(X)"):
        assert not check_pb_preservation(parse_functor(text), COUNTER, 2, 2).holds
