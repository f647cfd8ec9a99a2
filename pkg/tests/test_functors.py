import itertools

import pytest
from hypothesis import given, strategies as st

from adhesia import terms as T
from adhesia.errors import ParseError, ShapeMismatch, UnknownAtom
from adhesia.finset import FinFunction
from adhesia.functors import (
    E, N, ONE, X, CarrierEnv, CopyF, CoprodF, Final, IdSort, PotF, PotOmF, PPaF, PPbF,
    ProdF, SortE, SortN, SortedFunction, StarF, element_of, enumerate_functor, is_finite,
    map_element, parse_functor, pretty,
)
from adhesia.terms import UNIT, Atom, Pair, SetOf, parse_term, show

from oracles import native, sharp

F_SHARP = {"u": "n3", "v": "n3", "w": "n1", "u'": "n5", "v'": "n5"}
N6 = [f"n{i}" for i in range(1, 7)]


def sorted_fn(mapping, cod, mapE=None, codE=()):
    mapE = mapE or {}
    return SortedFunction(FinFunction(set(mapping), cod, mapping),
                          FinFunction(set(mapE), codE, mapE))


def functor_exprs():
    leaf = st.sampled_from([N, E, ONE])
    return st.recursive(
        leaf,
        lambda inner: st.one_of(
            inner.map(lambda a: PotF(T.POT, a)),
            inner.map(lambda a: PotF(T.pot_range(1, 2), a)),
            inner.map(PPaF), inner.map(PPbF), inner.map(PotOmF), inner.map(StarF),
            inner.map(lambda a: CopyF(2, a)),
            st.tuples(inner, inner).map(lambda p: ProdF(*p)),
            st.tuples(inner, inner).map(lambda p: CoprodF(*p)),
        ),
        max_leaves=4)


@pytest.mark.parametrize("text,expected", [
    ("Pot(N)", PotF(T.POT, SortN())),
    ("Star(N) * PotOm(N)", ProdF(StarF(SortN()), PotOmF(SortN()))),
    ("PPa(N + E)", PPaF(CoprodF(SortN(), SortE()))),
    ("N * N * PPa(E)", ProdF(ProdF(N, N), PPaF(E))),
    ("N + E * 1", CoprodF(N, ProdF(E, Final()))),
    ("(N + E) * 1", ProdF(CoprodF(N, E), Final())),
    ("PotDir(N)", PotF(T.pot_range(1, 2), N)),
    ("Pot[0,3](X)", PotF(T.pot_range(0, 3), IdSort())),
    ("Copy2(N)", CopyF(2, N)),
    ("PotFin(N)", PotF(T.POTFIN, N)),
])
def test_parse(text, expected):
    assert parse_functor(text) == expected


@pytest.mark.parametrize("text", ["Pot(N", "Foo(N)", "N *", "", "Copy0(N)", "Pot[2](N)"])
def test_parse_errors(text):
    with pytest.raises((ParseError, ValueError)):
        parse_functor(text)


@given(functor_exprs())
def test_pretty_round_trip(F):
    assert parse_functor(pretty(F)) == F


@pytest.mark.parametrize("F,env,text,expected", [
    (ONE, CarrierEnv({"a"}), "()", True),
    (ProdF(X, X), CarrierEnv({"a", "b"}), "(a,b)", True),
    (PotF(T.pot_range(1, 2), N), CarrierEnv({"a"}), "{}", False),
    (PotF(T.POT, CoprodF(N, E)), CarrierEnv({"a"}, {"e"}), "{a,e}", True),
    (PotF(T.POT, N), CarrierEnv({"a"}, {"e"}), "{a,e}", False),
    (CopyF(2, N), CarrierEnv({"a"}), "<a,a>", True),
    (CopyF(2, N), CarrierEnv({"a"}), "<a>", False),
    (PPbF(N), CarrierEnv({"a"}), "a", False),
])
def test_element_of(F, env, text, expected):
    assert element_of(F, env, parse_term(text)) is expected


def test_action_ppa_example():
    f = sorted_fn(F_SHARP, N6)
    got = map_element(PPaF(X), f, parse_term("{u,v,w,{u,v},{v,{w,{}}}}"))
    assert show(got) == show(parse_term("{n3,n1,{n3},{n3,{n1,{}}}}"))


def test_action_ppb_example():
    f = sorted_fn(F_SHARP, N6)
    got = map_element(PPbF(X), f, parse_term("{{u,v},{v,{w,{}}}}"))
    assert show(got) == show(parse_term("{{n3},{n3,{n1,{}}}}"))


def test_action_potom_example():
    f = sorted_fn(F_SHARP, N6)
    got = map_element(PotOmF(X), f, parse_term("{{u,v},{{},{w,{}}}}"))
    assert show(got) == show(parse_term("{{n3},{{},{n1,{}}}}"))


def test_action_errors():
    f = sorted_fn({"a": "b"}, {"b"})
    with pytest.raises(UnknownAtom):
        map_element(N, f, Atom("z"))
    with pytest.raises(ShapeMismatch):
        map_element(ProdF(N, N), f, Atom("a"))
    with pytest.raises(ShapeMismatch):
        map_element(ONE, f, Atom("a"))


def _elements(F, env):
    return list(enumerate_functor(F, env, 2, 2, 2))


ENV = CarrierEnv({"a", "b"}, {"e"})
FUNCTORS = [parse_functor(s) for s in (
    "Pot(N)", "PotDir(N + E)", "PPa(N)", "PPb(N)", "PotOm(N)", "N * N", "N + E",
    "Star(N)", "Copy2(N)", "PPa(N) * Pot(N + E)", "1")]


@pytest.mark.parametrize("F", FUNCTORS, ids=str)
def test_identity_law(F):
    idf = SortedFunction.identity(ENV)
    for t in _elements(F, ENV):
        assert map_element(F, idf, t) == t


@pytest.mark.parametrize("F", FUNCTORS, ids=str)
def test_composition_law_and_closure(F):
    f = sorted_fn({"a": "x", "b": "x"}, {"x", "y"}, {"e": "k"}, {"k"})
    g = sorted_fn({"x": "p", "y": "q"}, {"p", "q"}, {"k": "r"}, {"r"})
    gf = f.then(g)
    for t in _elements(F, ENV):
        ft = map_element(F, f, t)
        assert element_of(F, f.cod, ft)
        assert map_element(F, g, ft) == map_element(F, gf, t)


@pytest.mark.parametrize("F", FUNCTORS, ids=str)
def test_action_matches_atomwise_oracle(F):
    f = sorted_fn({"a": "x", "b": "x"}, {"x"}, {"e": "k"}, {"k"})
    both = {**f.fN.mapping, **f.fE.mapping}
    for t in _elements(F, ENV):
        assert native(map_element(F, f, t)) == sharp(both, native(t))


@given(st.permutations(["p", "q", "r", "s"]), st.integers(0, 4))
def test_injections_preserved(img, k):
    M = ["a", "b", "c", "d"][:k]
    f = sorted_fn(dict(zip(M, img)), ["p", "q", "r", "s"])
    env = CarrierEnv(M)
    for F in (PPaF(N), PPbF(N), PotOmF(N)):
        ts = _elements(F, env)
        assert len({map_element(F, f, t) for t in ts}) == len(ts)


@pytest.mark.parametrize("F,env,count", [
    (ONE, CarrierEnv({"a"}), 1),
    (PotF(T.POT, N), CarrierEnv({"a", "b"}), 4),
    (PotF(T.POT, CoprodF(N, E)), CarrierEnv({"a", "b"}, {"e"}), 8),
    (ProdF(N, N), CarrierEnv({"a", "b"}), 4),
    (CopyF(3, N), CarrierEnv({"a", "b"}), 8),
])
def test_enumeration_counts(F, env, count):
    assert len(list(enumerate_functor(F, env))) == count


def test_enumerate_star():
    got = list(enumerate_functor(StarF(N), CarrierEnv({"a"}), len_bound=2))
    assert sorted(map(show, got)) == sorted(["<>", "<a>", "<a,a>"])


def test_enumerated_elements_are_members():
    for F in FUNCTORS:
        for t in _elements(F, ENV):
            assert element_of(F, ENV, t), (F, t)


def test_is_finite():
    assert is_finite(parse_functor("Pot(N + E) * Copy2(N)"))
    assert not is_finite(parse_functor("PPa(N)"))
    assert not is_finite(parse_functor("Star(N)"))


def test_pot_dir_over_two_atoms():
    got = list(enumerate_functor(PotF(T.pot_range(1, 2), N), CarrierEnv({"a", "b"})))
    assert sorted(map(show, got)) == ["{a,b}", "{a}", "{b}"]


def test_carrier_env_disjoint():
    with pytest.raises(ValueError):
        CarrierEnv({"a"}, {"a"})


def test_product_pairs_left_nested():
    t = Pair(Pair(Atom("a"), Atom("b")), SetOf())
    assert element_of(parse_functor("N * N * PPa(E)"), CarrierEnv({"a", "b"}), t)
    assert UNIT in set(enumerate_functor(ONE, CarrierEnv(set())))
