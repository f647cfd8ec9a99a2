"""JSON encodings of graphs, morphisms, rules, cospans and cubes."""
from __future__ import annotations

import json
from pathlib import Path

from .errors import FormatError
from .graph import CoalgGraph, GraphMorphism, Signature
from .terms import term_from_json, term_to_json

__all__ = [
    "dumps", "load", "graph_to_json", "graph_from_json", "morphism_to_json",
    "morphism_from_json", "rule_to_json", "rule_from_json", "cube_to_json", "cube_from_json",
]


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


def load(path) -> object:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: {exc}") from exc


def _need(obj, *keys):
    if not isinstance(obj, dict):
        raise FormatError(f"expected an object, got {type(obj).__name__}")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise FormatError(f"missing keys {missing}")


def graph_to_json(G: CoalgGraph) -> dict:
    return {"signature": G.sig.to_json(), "nodes": sorted(G.N), "edges": sorted(G.E),
            "contains": {n: term_to_json(t) for n, t in G.node.items()},
            "neighbours": {e: term_to_json(t) for e, t in G.st.items()}}


def graph_from_json(obj) -> CoalgGraph:
    _need(obj, "signature", "nodes", "edges", "contains", "neighbours")
    sig = Signature.from_json(obj["signature"])
    node = {n: term_from_json(t) for n, t in obj["contains"].items()}
    st = {e: term_from_json(t) for e, t in obj["neighbours"].items()}
    return CoalgGraph(obj["nodes"], obj["edges"], node, st, sig)


def morphism_to_json(m: GraphMorphism) -> dict:
    return m.tables()


def morphism_from_json(obj, src: CoalgGraph, dst: CoalgGraph) -> GraphMorphism:
    _need(obj, "nodes", "edges")
    return GraphMorphism.from_tables(src, dst, obj["nodes"], obj["edges"])


def rule_to_json(rule) -> dict:
    return {"name": rule.name, "left": graph_to_json(rule.L), "interface": graph_to_json(rule.K),
            "right": graph_to_json(rule.R), "l": morphism_to_json(rule.l),
            "r": morphism_to_json(rule.r)}


def rule_from_json(obj):
    from .dpo import Rule
    _need(obj, "left", "interface", "right", "l", "r")
    L, K, R = (graph_from_json(obj[k]) for k in ("left", "interface", "right"))
    return Rule(L, K, R, morphism_from_json(obj["l"], K, L), morphism_from_json(obj["r"], K, R),
                name=obj.get("name", "rule"))


# arrow name -> (source corner, target corner)
CUBE_ARROWS = {
    "m": ("A", "B"), "f": ("A", "C"), "g": ("B", "D"), "n": ("C", "D"),
    "m'": ("A'", "B'"), "f'": ("A'", "C'"), "g'": ("B'", "D'"), "n'": ("C'", "D'"),
    "a": ("A'", "A"), "b": ("B'", "B"), "c": ("C'", "C"), "d": ("D'", "D"),
}


def cube_to_json(cube) -> dict:
    graphs, arrows = {}, {}
    for name, (s, t) in CUBE_ARROWS.items():
        h = getattr(cube, name.replace("'", "_"))
        graphs[s], graphs[t] = graph_to_json(h.src), graph_to_json(h.dst)
        arrows[name] = morphism_to_json(h)
    return {"graphs": graphs, "morphisms": arrows}


def cube_from_json(obj):
    from .category import VkCube
    _need(obj, "graphs", "morphisms")
    graphs = {k: graph_from_json(v) for k, v in obj["graphs"].items()}
    arrows = {}
    for name, (s, t) in CUBE_ARROWS.items():
        if name not in obj["morphisms"] or s not in graphs or t not in graphs:
            raise FormatError(f"cube is missing arrow {name} or its corners")
        arrows[name.replace("'", "_")] = morphism_from_json(obj["morphisms"][name], graphs[s], graphs[t])
    return VkCube(**arrows)
