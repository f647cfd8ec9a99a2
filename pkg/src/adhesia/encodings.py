"""Signature presets for the known graph flavors, their validators, and fixtures.

Fixture graphs are defined here and also shipped as JSON under ``data/``;
a test keeps the two in sync.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import terms as T
from .errors import SignatureMismatch, UnknownFixture
from .functors import FunctorExpr, parse_functor, pretty
from .graph import (
    CoalgGraph, GraphMorphism, Signature, edge_properties, node_properties,
    validate_graph,
)
from .terms import UNIT, parse_term

__all__ = [
    "EncodingKind", "KINDS", "preset", "validate_encoding", "fixture", "fixture_names",
    "fixture_kind", "membership_matrix", "REASONS",
]


@dataclass(frozen=True)
class EncodingKind:
    name: str
    funH: Optional[FunctorExpr] = None
    n: int = 1

    def __post_init__(self):
        if self.name not in KINDS:
            raise ValueError(f"unknown encoding kind {self.name!r}; choose from {KINDS}")
        if self.name == "MultiHierarchy" and self.n < 1:
            raise ValueError("MultiHierarchy needs n >= 1")

    @classmethod
    def parse(cls, text: str) -> "EncodingKind":
        """``BKK``, ``BKK:Pot(N)``, ``MultiHierarchy:2`` and so on."""
        name, _, arg = text.partition(":")
        if name == "BKK" and arg:
            return cls(name, funH=parse_functor(arg))
        if name == "MultiHierarchy" and arg:
            return cls(name, n=int(arg))
        return cls(name)

    def __str__(self):
        if self.name == "BKK" and self.funH is not None:
            return f"BKK:{pretty(self.funH)}"
        if self.name == "MultiHierarchy":
            return f"MultiHierarchy:{self.n}"
        return self.name


KINDS = ("PPaComma", "BKK", "DHP", "Palacz", "MultiHierarchy", "Bigraph", "Grouping")


def preset(kind: EncodingKind) -> Signature:
    k = kind.name
    if k == "PPaComma":
        return Signature.parse("1", "PPa(N)")
    if k == "BKK":
        return Signature(parse_functor("PPa(N)"), kind.funH or parse_functor("N * N"))
    if k == "DHP":
        return Signature.parse("1", "Star(N) * PotOm(N)")
    if k == "Palacz":
        return Signature.parse("PPa(N + E)", "Pot(N) * PPa(N + E)")
    if k == "MultiHierarchy":
        return Signature.parse(f"Copy{kind.n}(PPa(N + E))", "Pot(N)")
    if k == "Bigraph":
        return Signature.parse("PPa(N)", "Pot(N + E) * Pot(N + E)")
    return Signature.parse("PPa(N)", "N * N * PPa(E)")


def _nested_report(G, component=None, need_hierarchy=True, where=""):
    props = node_properties(G, component)
    out = []
    if not props.well_founded:
        out.append({"condition": f"well_founded{where}",
                    "witnesses": [w for w in props.witnesses if w["property"] == "well_founded"]})
    if need_hierarchy and not props.hierarchical:
        out.append({"condition": f"hierarchical{where}",
                    "witnesses": [w for w in props.witnesses if w["property"] == "hierarchical"]})
    return out


def validate_encoding(G: CoalgGraph, kind: EncodingKind) -> dict:
    """Side conditions of the flavor; ``{"ok": bool, "violations": [...]}``."""
    if G.sig != preset(kind):
        raise SignatureMismatch(f"{G.sig} is not the {kind} signature {preset(kind)}")
    problems = validate_graph(G)
    violations = [{"condition": "membership", "witnesses": problems}] if problems else []
    k = kind.name
    if k == "BKK":
        violations += _nested_report(G, need_hierarchy=False)
        atoms = node_properties(G).atoms
        homeless = sorted(n for n in atoms
                          if not any(isinstance(G.node[p], T.SetOf) and T.Atom(n) in G.node[p].members
                                     for p in G.N))
        if homeless:
            violations.append({"condition": "completeness", "witnesses": homeless})
    elif k == "DHP":
        if not edge_properties(G).node_based:
            violations.append({"condition": "node_based", "witnesses": []})
    elif k in ("Palacz", "Bigraph"):
        violations += _nested_report(G)
    elif k == "MultiHierarchy":
        for i in range(kind.n):
            violations += _nested_report(G, component=i, where=f"[{i}]")
    elif k == "Grouping":
        violations += _nested_report(G, need_hierarchy=False)
    return {"ok": not violations, "violations": violations}


# --------------------------------------------------------------------------
# fixtures

def _g(sig: Signature, nodes: dict, edges: dict) -> CoalgGraph:
    node = {n: (UNIT if v is None else parse_term(v)) for n, v in nodes.items()}
    st = {e: parse_term(v) for e, v in edges.items()}
    return CoalgGraph(set(node), set(st), node, st, sig)


def _ident(names) -> dict:
    return {n: n for n in names.split()}


def _units(names) -> dict:
    return {n: None for n in names.split()}


_HYPER = Signature.parse("PPa(N)", "Pot(N + E)")


def _motiv_G1():
    return _g(_HYPER, {"n1": "n1", "n2": "n2", "n3": "n3", "n4": "{n1,n2}", "n5": "{n3}",
                       "n6": "{n2,{n1,n2},n5}"},
              {"a": "{n1,n3}", "b": "{n2,n5,n6}", "c": "{n5}"})


def _motiv_G2():
    return _g(_HYPER, _ident("a b c d"),
              {"x1": "{a,b,c}", "x2": "{a,b}", "x3": "{x2,d}", "x4": "{a,x4}"})


def _motiv_G3():
    sig = Signature.parse("PPa(N)", "Star(N) * PotOm(N + E)")
    return _g(sig, _ident("a b c d e"),
              {"x1": "(<a,b,c>,{d,e,x2,x3})", "x2": "(<e,d>,{})", "x3": "(<d,e>,{})"})


def _comma(flavor: str, nodes: str, edges: dict):
    return _g(Signature.parse("1", f"{flavor}(N)"), _units(nodes), edges)


def _bkk():
    return _g(preset(EncodingKind("BKK")),
              {**_ident("n m x y z"), "p1": "{x,y,z}", "p2": "{n,m}", "p3": "{p1,p2}"},
              {"a": "(y,x)", "b": "(y,z)", "c": "(m,n)", "e": "(z,n)"})


def _dhp():
    return _g(preset(EncodingKind("DHP")), _units("x y z n m v1 v2 v3 v4"),
              {"a": "(<x,y,z>,{})", "b": "(<n,m>,{})", "c": "(<v2,v4>,{})",
               "e1": "(<v1,v2,v3>,{x,y,z})", "e2": "(<v4>,{n,m})"})


def _palacz():
    return _g(preset(EncodingKind("Palacz")),
              {**_ident("1 2 6 8 9"), "3": "{1,2,4}", "11": "{8,9}"},
              {"4": "({1,2},{})", "5": "({2,6},{})", "7": "({3,6,11},{})", "10": "({8,9},{})"})


def _bigraph():
    return _g(preset(EncodingKind("Bigraph")),
              {"𝟎": "{v0,v2}", "𝟏": "{v3,1}", "v0": "{v1}", "v1": "{0}", "v2": "v2",
               "v3": "{2}", **_ident("0 1 2")},
              {"e1": "({v1,v2,v3},{v1,v2,v3})", "y0": "({v2},{v2})",
               "y1": "({v2,v3},{v2,v3})", "x0": "({x0},{y1})", "x1": "({x1},{v3})"})


def _grouping():
    # small summary graph: two super vertices sharing a member, one super edge
    return _g(preset(EncodingKind("Grouping")),
              {**_ident("a b c"), "s1": "{a,b}", "s2": "{b,c}"},
              {"e1": "((a,b),{})", "e2": "((b,c),{})", "se": "((s1,s2),{e1,e2})"})


def _multi():
    return _g(preset(EncodingKind("MultiHierarchy", n=2)),
              {"a": "<a,a>", "b": "<b,b>", "c": "<c,c>",
               "p": "<{a,b},{a}>", "q": "<{c},{b,c}>"},
              {"e": "{a,c}"})


# the transition-system step: a truncated binary tree, rewire the root's parent
_TREE_DEPTH = 3


def tree_states(depth: int = _TREE_DEPTH) -> dict:
    """States ``0 .. 2^(d+1)-2`` with ``n -> {2n+1, 2n+2}``; leaves have no successors."""
    total = 2 ** (depth + 1) - 1
    inner = 2 ** depth - 1
    return {str(i): ("{%d,%d}" % (2 * i + 1, 2 * i + 2) if i < inner else "{}")
            for i in range(total)}


_TS = Signature.parse("PotFin(N)", "1")


def _ts(states: dict) -> CoalgGraph:
    return _g(_TS, states, {})


def _fig6_parts(depth: int = _TREE_DEPTH):
    K = tree_states(depth)
    L = {**K, "s": "{0}"}
    R = {**K, "s": "{1,2}"}
    host = {**L, "u": "{3,%d}" % (2 ** (depth + 1) - 2)}
    expected = {**K, "s": "{1,2}", "u": host["u"]}
    return _ts(K), _ts(L), _ts(R), _ts(host), _ts(expected)


def _fig6_rule(depth: int = _TREE_DEPTH):
    from .dpo import Rule
    K, L, R, _, _ = _fig6_parts(depth)
    inc = lambda A, B: GraphMorphism.from_tables(A, B, {n: n for n in A.N}, {})
    return Rule(L, K, R, inc(K, L), inc(K, R), name="rewire")


def _disjoint_rule():
    """Delete a loose edge between two kept nodes; used for parallel steps."""
    from .dpo import Rule
    sig = _HYPER
    K = _g(sig, _ident("p q"), {})
    L = _g(sig, _ident("p q"), {"x": "{p,q}"})
    R = _g(sig, _ident("p q"), {"y": "{p}"})
    inc = lambda A, B: GraphMorphism.from_tables(A, B, _ident("p q"), {})
    return Rule(L, K, R, inc(K, L), inc(K, R), name="shrink")


def _disjoint_host():
    return _g(_HYPER, _ident("a b c d"), {"e1": "{a,b}", "e2": "{c,d}"})


_GRAPHS = {
    "motiv.G1": _motiv_G1,
    "motiv.G2": _motiv_G2,
    "motiv.G3": _motiv_G3,
    "ppa.G1": lambda: _comma("PPa", "u v w", {"x": "{{u},{v}}", "y": "{u,w}", "z": "{u,w}"}),
    "ppa.G2": lambda: _comma("PPa", "n1 n2 n3",
                             {"a": "{n1,n2}", "b": "{{n1,n2},{n3},n3}", "c": "{{n3}}"}),
    "ppb.G3": lambda: _comma("PPb", "u v w",
                             {"x": "{{{u}},{{v}}}", "y": "{{u},{w}}", "z": "{{u},{w}}"}),
    "ppb.G4": lambda: _comma("PPb", "n1 n3 n4",
                             {"a": "{{n1},{n4}}", "b": "{{n1,n4},{n3},{{n3}}}", "c": "{{{n3}}}"}),
    "potom.G5": lambda: _comma("PotOm", "u v w",
                               {"x": "{{{u}},{{v}}}", "y": "{{u},{w}}", "z": "{{u},{w}}"}),
    # the mixed term {{n1,n2},{n3},n3} is outside PotOm, so G6 lives under PPa
    "potom.G6": lambda: _comma("PPa", "n1 n2 n3",
                               {"a": "{{n1},{n2}}", "b": "{{n1,n2},{n3},n3}", "c": "{{n3}}"}),
    "fig3.bkk": _bkk,
    "fig4.dhp": _dhp,
    "fig5.palacz": _palacz,
    "fig7.bigraph": _bigraph,
    "example.grouping": _grouping,
    "example.multihierarchy": _multi,
    "fig6.K": lambda: _fig6_parts()[0],
    "fig6.L": lambda: _fig6_parts()[1],
    "fig6.R": lambda: _fig6_parts()[2],
    "fig6.host": lambda: _fig6_parts()[3],
    "fig6.expected": lambda: _fig6_parts()[4],
    "parallel.host": _disjoint_host,
    "empty": lambda: _g(_HYPER, {}, {}),
}

_RULES = {"fig6.rule": _fig6_rule, "parallel.rule": _disjoint_rule}

# the flavor each fixture is validated against, where one applies
_KIND_OF = {
    "fig3.bkk": EncodingKind("BKK"),
    "fig4.dhp": EncodingKind("DHP"),
    "fig5.palacz": EncodingKind("Palacz"),
    "fig7.bigraph": EncodingKind("Bigraph"),
    "example.grouping": EncodingKind("Grouping"),
    "example.multihierarchy": EncodingKind("MultiHierarchy", n=2),
    "ppa.G1": EncodingKind("PPaComma"),
    "ppa.G2": EncodingKind("PPaComma"),
    "potom.G6": EncodingKind("PPaComma"),
}


def fixture_names() -> list:
    return sorted(_GRAPHS) + sorted(_RULES)


def fixture_kind(name: str) -> Optional[EncodingKind]:
    return _KIND_OF.get(name)


def fixture(name: str):
    """A frozen example graph, or a rule for names ending in ``.rule``."""
    if name in _GRAPHS:
        return _GRAPHS[name]()
    if name in _RULES:
        return _RULES[name]()
    raise UnknownFixture(f"no fixture named {name!r}; known: {', '.join(fixture_names())}")


# --------------------------------------------------------------------------
# which example graph lives in which superpower set

# the six comma-category examples
MATRIX_GRAPHS = ("ppa.G1", "ppa.G2", "ppb.G3", "ppb.G4", "potom.G5", "potom.G6")
MATRIX_FLAVORS = (("PPb", T.PPB), ("PPa", T.PPA), ("PotOm", T.POTOM))
# reference verdicts per graph for (PPb, PPa, PotOm)
REFERENCE = {
    "ppa.G1": (True, True, True), "ppa.G2": (True, True, False),
    "ppb.G3": (False, True, True), "ppb.G4": (False, True, False),
    "potom.G5": (False, True, True), "potom.G6": (False, True, True),
}

U3 = ("n1", "n2", "n3")
REASONS = {
    "i": ("{{n1},{{n2}}}", U3, T.POTOM),
    "ii": ("u", ("u", "v", "w"), T.PPB),
    "iii": ("{n1,{n2}}", U3, T.PPB),
    "iv": ("{n1,{n2}}", U3, T.POTOM),
    "v": ("n1", U3, T.PPB),
}


def membership_matrix() -> dict:
    """Strict membership of every neighbour image, against the reference verdicts."""
    cells, discrepancies = {}, []
    for name in MATRIX_GRAPHS:
        G = fixture(name)
        row = {}
        for label, flavor in MATRIX_FLAVORS:
            failing = sorted(e for e in G.E if not T.member_of(G.st[e], G.N, flavor))
            row[label] = {"member": not failing, "failing_edges": failing}
        cells[name] = row
        for (label, _), expected in zip(MATRIX_FLAVORS, REFERENCE[name]):
            if row[label]["member"] != expected:
                discrepancies.append({"graph": name, "flavor": label,
                                      "expected": expected, "strict": row[label]["member"]})
    reasons = {}
    for key, (text, universe, flavor) in REASONS.items():
        reasons[key] = {"term": text, "universe": list(universe), "flavor": flavor.kind,
                        "member": T.member_of(parse_term(text), universe, flavor)}
    return {"cells": cells, "reasons": reasons, "discrepancies": discrepancies}
