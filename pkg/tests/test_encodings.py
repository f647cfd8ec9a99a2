import json
from importlib import resources

import pytest

from adhesia import io
from adhesia import terms as T
from adhesia.encodings import (
    KINDS, EncodingKind, fixture, fixture_kind, fixture_names, membership_matrix, preset,
    validate_encoding,
)
from adhesia.errors import SignatureMismatch, UnknownFixture
from adhesia.graph import CoalgGraph, Signature, validate_graph
from adhesia.terms import parse_term

EXAMPLES = ["motiv.G1", "motiv.G2", "motiv.G3", "fig3.bkk", "fig4.dhp", "fig5.palacz",
           "fig7.bigraph", "ppa.G1", "ppa.G2", "ppb.G3", "ppb.G4", "potom.G5", "potom.G6"]


@pytest.mark.parametrize("kind,node,st", [
    ("Bigraph", "PPa(N)", "Pot(N + E) * Pot(N + E)"),
    ("Palacz", "PPa(N + E)", "Pot(N) * PPa(N + E)"),
    ("Grouping", "PPa(N)", "N * N * PPa(E)"),
    ("DHP", "1", "Star(N) * PotOm(N)"),
    ("PPaComma", "1", "PPa(N)"),
    ("BKK", "PPa(N)", "N * N"),
    ("MultiHierarchy:2", "Copy2(PPa(N + E))", "Pot(N)"),
])
def test_presets(kind, node, st):
    assert preset(EncodingKind.parse(kind)) == Signature.parse(node, st)


def test_kind_parsing():
    assert str(EncodingKind.parse("BKK:Pot(N)")) == "BKK:Pot(N)"
    assert EncodingKind.parse("MultiHierarchy:3").n == 3
    with pytest.raises(ValueError):
        EncodingKind.parse("Nope")
    assert set(KINDS) >= {"BKK", "DHP", "Palacz", "Bigraph", "Grouping"}


@pytest.mark.parametrize("name", fixture_names())
def test_every_fixture_graph_valid(name):
    x = fixture(name)
    graphs = [x] if isinstance(x, CoalgGraph) else [x.L, x.K, x.R]
    for G in graphs:
        assert validate_graph(G) == []


@pytest.mark.parametrize("name", [n for n in fixture_names() if fixture_kind(n)])
def test_fixture_encodings_hold(name):
    G = fixture(name)
    assert G.sig == preset(fixture_kind(name))
    assert validate_encoding(G, fixture_kind(name)) == {"ok": True, "violations": []}


def test_bkk_completeness_violation():
    G = fixture("fig3.bkk")
    node = dict(G.node)
    node["p2"] = parse_term("{n}")
    H = CoalgGraph(G.N, G.E, node, G.st, G.sig)
    rep = validate_encoding(H, EncodingKind("BKK"))
    assert not rep["ok"]
    completeness = [v for v in rep["violations"] if v["condition"] == "completeness"]
    assert completeness == [{"condition": "completeness", "witnesses": ["m"]}]


def test_palacz_not_hierarchical_when_shared():
    G = fixture("fig5.palacz")
    node = dict(G.node)
    node["11"] = parse_term("{8,9,1}")
    rep = validate_encoding(CoalgGraph(G.N, G.E, node, G.st, G.sig), EncodingKind("Palacz"))
    assert not rep["ok"]


def test_encoding_signature_checked():
    with pytest.raises(SignatureMismatch):
        validate_encoding(fixture("motiv.G1"), EncodingKind("Palacz"))


def test_g2_tables():
    G = fixture("motiv.G2")
    assert {e: T.show(t) for e, t in G.st.items()} == {
        "x1": "{a,b,c}", "x2": "{a,b}", "x3": "{d,x2}", "x4": "{a,x4}"}


def test_palacz_tables():
    G = fixture("fig5.palacz")
    assert G.node["3"] == parse_term("{1,2,4}")
    assert G.st["7"] == parse_term("({3,6,11},{})")


def test_bigraph_tables():
    G = fixture("fig7.bigraph")
    assert G.node["𝟎"] == parse_term("{v0,v2}")
    assert G.node["v1"] == parse_term("{0}")


def test_unknown_fixture():
    with pytest.raises(UnknownFixture):
        fixture("nope")


def test_membership_reasons_all_false():
    reasons = membership_matrix()["reasons"]
    assert sorted(reasons) == ["i", "ii", "iii", "iv", "v"]
    assert all(r["member"] is False for r in reasons.values())


def test_membership_discrepancies_reported():
    mm = membership_matrix()
    got = {(d["graph"], d["flavor"]) for d in mm["discrepancies"]}
    assert got == {("ppa.G2", "PPb"), ("ppb.G3", "PPb"), ("ppb.G4", "PPb"),
                   ("potom.G5", "PPb"), ("potom.G6", "PotOm")}
    for d in mm["discrepancies"]:
        assert mm["cells"][d["graph"]][d["flavor"]]["member"] == d["strict"]


def test_ppa_column_all_members():
    cells = membership_matrix()["cells"]
    assert all(row["PPa"]["member"] for row in cells.values())


@pytest.mark.parametrize("name", fixture_names())
def test_shipped_json_matches_embedded(name):
    text = resources.files("adhesia").joinpath("data").joinpath(f"{name}.json").read_text("utf-8")
    x = fixture(name)
    want = io.graph_to_json(x) if isinstance(x, CoalgGraph) else io.rule_to_json(x)
    assert json.loads(text) == want
    assert text == io.dumps(want)


def test_example_fixtures_listed():
    assert set(EXAMPLES) <= set(fixture_names())
