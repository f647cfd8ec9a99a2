import pytest
from hypothesis import given, strategies as st

from adhesia.encodings import fixture
from adhesia.errors import InvalidGraph, InvalidMorphism, SignatureMismatch
from adhesia.graph import (
    CoalgGraph, GraphMorphism, Signature, check_morphism, compose_morphisms, edge_properties,
    empty_graph, find_homomorphisms, find_isomorphism, flatten, identity, isomorphic,
    morphism_violations, node_properties, validate_graph,
)
from adhesia.samples import HYPER, random_graph
from adhesia.terms import parse_term

from oracles import brute_homs

SIG = Signature.parse("PPa(N)", "Pot(N + E)")


def graph(nodes, edges, sig=SIG):
    node = {n: parse_term(v) for n, v in nodes.items()}
    st_ = {e: parse_term(v) for e, v in edges.items()}
    return CoalgGraph(set(node), set(st_), node, st_, sig)


def small_graphs():
    return st.integers(0, 10_000).map(lambda s: random_graph(__import__("random").Random(s)))


def test_g1_valid():
    assert validate_graph(fixture("motiv.G1")) == []


def test_empty_graph_valid():
    assert validate_graph(empty_graph(SIG)) == []


def test_foreign_atom_reported():
    G = graph({"a": "a"}, {"e": "{a,zz}"})
    problems = validate_graph(G)
    assert [p["element"] for p in problems] == ["e"]


def test_wrong_shape_reported():
    G = graph({"a": "a"}, {"e": "(a,a)"})
    assert validate_graph(G)[0]["element"] == "e"


def test_carrier_errors():
    with pytest.raises(InvalidGraph):
        CoalgGraph({"a"}, {"a"}, {"a": parse_term("a")}, {"a": parse_term("{}")}, SIG)
    with pytest.raises(InvalidGraph):
        CoalgGraph({"a"}, set(), {}, {}, SIG)


def test_identity_is_morphism():
    for name in ("motiv.G1", "motiv.G2", "fig5.palacz", "fig7.bigraph"):
        assert check_morphism(identity(fixture(name)))


def test_merging_without_containers_fails():
    G = fixture("ppa.G1")
    m = GraphMorphism.from_tables(G, G, {"u": "u", "v": "u", "w": "w"},
                                  {"x": "x", "y": "y", "z": "z"})
    bad = morphism_violations(m)
    assert [v["element"] for v in bad] == ["x"]


def test_transcribed_example_graphs_have_no_morphism():
    """No homomorphism exists between these two edge tables."""
    G1, G2 = fixture("ppa.G1"), fixture("ppa.G2")
    assert find_homomorphisms(G1, G2, injective=False) == []
    assert brute_homs(G1, G2) == []


def test_morphism_tables_checked():
    G = fixture("motiv.G2")
    with pytest.raises(InvalidMorphism):
        GraphMorphism.from_tables(G, G, {"a": "a"}, {})


def test_signature_mismatch():
    G, H = fixture("ppa.G1"), fixture("ppb.G3")
    m = GraphMorphism.from_tables(G, H, {n: n for n in G.N}, {e: e for e in G.E})
    with pytest.raises(SignatureMismatch):
        morphism_violations(m)


@given(small_graphs(), small_graphs())
def test_homomorphism_search_matches_brute_force(G, H):
    for injective in (False, True):
        got = {(tuple(sorted(h.fN.mapping.items())), tuple(sorted(h.fE.mapping.items())))
               for h in find_homomorphisms(G, H, injective=injective)}
        want = {(tuple(sorted(fN.items())), tuple(sorted(fE.items())))
                for fN, fE in brute_homs(G, H, injective=injective)}
        assert got == want


@given(small_graphs())
def test_found_homomorphisms_commute(G):
    for h in find_homomorphisms(G, G, injective=False):
        assert check_morphism(h)


def test_homomorphism_composition():
    G = fixture("motiv.G2")
    homs = find_homomorphisms(G, G, injective=False)
    for h1 in homs[:4]:
        for h2 in homs[:4]:
            assert check_morphism(compose_morphisms(h2, h1))


def test_isomorphism_under_renaming():
    G = fixture("motiv.G2")
    H = G.renamed({n: n.upper() for n in G.N}, {e: e + "_" for e in G.E})
    iso = find_isomorphism(G, H)
    assert iso is not None and iso.injective
    assert isomorphic(G, H) and not isomorphic(G, fixture("motiv.G1"))


def test_flatten_g2():
    assert flatten(fixture("motiv.G2")) == {
        "x1": {"a", "b", "c"}, "x2": {"a", "b"}, "x3": {"a", "b", "d"}, "x4": {"a"}}


def test_flatten_empty_edge():
    G = graph({"a": "a"}, {"e": "{}"})
    assert flatten(G) == {"e": set()}


def test_g1_node_properties():
    p = node_properties(fixture("motiv.G1"))
    assert p.atoms == {"n1", "n2", "n3"}
    assert p.containers == {"n4", "n5", "n6"}
    assert p.well_founded
    assert not p.hierarchical


def test_identity_nodes_properties():
    G = graph({"a": "a", "b": "b"}, {})
    p = node_properties(G)
    assert p.unique and p.containers == set() and p.hierarchical and p.well_founded


def test_shared_member_not_hierarchical():
    G = graph({"n1": "n1", "p": "{n1}", "q": "{n1}"}, {})
    assert not node_properties(G).hierarchical


def test_containment_cycle_not_well_founded():
    G = graph({"p": "{q}", "q": "{p}"}, {})
    assert not node_properties(G).well_founded


def test_edge_properties():
    p = edge_properties(graph({"a": "a", "b": "b"}, {"e": "{a,b}", "f": "{a}"}))
    assert p.atomic and p.node_based
    g2 = edge_properties(fixture("motiv.G2"))
    assert g2.node_based and g2.atomic_edges == {"x1", "x2"}


def test_restrict_and_equality():
    G = fixture("motiv.G2")
    assert G.restrict(G.N, G.E) == G
    assert hash(G.restrict(G.N, G.E)) == hash(G)
    assert G.restrict({"a", "b", "c"}, {"x1"}).E == {"x1"}


def test_signature_json_round_trip():
    assert Signature.from_json(SIG.to_json()) == SIG
    assert str(HYPER) == "(1, Pot(N))"
