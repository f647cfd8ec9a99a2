"""Command-line front end.  Every command prints one JSON object (DOT for
``export-dot``); exit status 0 on success, 1 on a domain error, 2 on bad usage.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .category import coalg_pullback, coalg_pushout, vk_cube_check
from .dot import export_dot
from .dpo import apply_rule, derive, find_matches, gluing_check
from .encodings import EncodingKind, fixture, fixture_names, membership_matrix
from .errors import AdhesiaError, FormatError
from .finset import FinFunction, pullback, pushout
from .functors import parse_functor
from .graph import (
    CoalgGraph, edge_properties, flatten, morphism_violations, node_properties,
    validate_graph,
)
from .limits import Cospan, check_pb_preservation
from .terms import Flavor, member_of, parse_term, pot_range

MODES = {"ordinary": "ordinary", "monos": "along_monos", "along_monos": "along_monos",
         "weak": "weak"}


def _graph(ref: str) -> CoalgGraph:
    """A JSON file, or a fixture name when no such file exists."""
    path = Path(ref)
    if path.is_file():
        return io.graph_from_json(io.load(path))
    stem = ref[:-5] if ref.endswith(".json") else ref
    G = fixture(stem)
    if not isinstance(G, CoalgGraph):
        raise FormatError(f"{ref} names a rule, not a graph")
    return G


def _rule(ref: str):
    path = Path(ref)
    if path.is_file():
        return io.rule_from_json(io.load(path))
    stem = ref[:-5] if ref.endswith(".json") else ref
    r = fixture(stem)
    if isinstance(r, CoalgGraph):
        raise FormatError(f"{ref} names a graph, not a rule")
    return r


def _sets(obj):
    return {k: sorted(v) for k, v in obj.items()}


def cmd_validate(a):
    G = _graph(a.graph)
    problems = validate_graph(G)
    out = {"valid": not problems, "problems": problems}
    if a.kind:
        from .encodings import validate_encoding
        out["encoding"] = validate_encoding(G, EncodingKind.parse(a.kind))
    return out


def cmd_morphism_check(a):
    src, dst = _graph(a.src), _graph(a.dst)
    m = io.morphism_from_json(io.load(a.morphism), src, dst)
    bad = morphism_violations(m)
    return {"holds": not bad, "violations": bad}


def cmd_flatten(a):
    return _sets(flatten(_graph(a.graph)))


def cmd_properties(a):
    G = _graph(a.graph)
    return {"nodes": node_properties(G, a.component).to_json(),
            "edges": edge_properties(G).to_json()}


def cmd_pullback(a):
    obj = io.load(a.cospan)
    if "dom" in obj.get("f", {}):
        pb = pullback(FinFunction.from_json(obj["f"]), FinFunction.from_json(obj["g"]))
        return {"object": sorted(pb.obj), "pi_b": pb.pi_b.to_json(), "pi_c": pb.pi_c.to_json()}
    gs = {k: io.graph_from_json(obj[k]) for k in ("B", "C", "D")}
    f = io.morphism_from_json(obj["f"], gs["B"], gs["D"])
    g = io.morphism_from_json(obj["g"], gs["C"], gs["D"])
    A, pb, pc = coalg_pullback(f, g)
    return {"object": io.graph_to_json(A), "pi_b": pb.tables(), "pi_c": pc.tables()}


def cmd_pushout(a):
    obj = io.load(a.span)
    if "dom" in obj.get("f", {}):
        po = pushout(FinFunction.from_json(obj["f"]), FinFunction.from_json(obj["g"]))
        return {"object": sorted(po.obj), "in_b": po.in_b.to_json(), "in_c": po.in_c.to_json()}
    gs = {k: io.graph_from_json(obj[k]) for k in ("A", "B", "C")}
    f = io.morphism_from_json(obj["f"], gs["A"], gs["B"])
    g = io.morphism_from_json(obj["g"], gs["A"], gs["C"])
    D, ib, ic = coalg_pushout(f, g)
    return {"object": io.graph_to_json(D), "in_b": ib.tables(), "in_c": ic.tables()}


def cmd_matches(a):
    rule, G = _rule(a.rule), _graph(a.graph)
    out = []
    for i, m in enumerate(find_matches(rule, G)):
        out.append({"index": i, **m.tables(), "gluing_ok": gluing_check(rule, m, G).ok})
    return {"count": len(out), "matches": out}


def cmd_apply(a):
    rule, G = _rule(a.rule), _graph(a.graph)
    ms = find_matches(rule, G)
    if not 0 <= a.match < len(ms):
        from .errors import NoSuchMatch
        raise NoSuchMatch(f"rule has {len(ms)} matches, index {a.match} requested")
    s = apply_rule(rule, ms[a.match], G)
    return {"match": ms[a.match].tables(), "D": io.graph_to_json(s.D),
            "H": io.graph_to_json(s.H), "comatch": s.comatch.tables()}


def cmd_derive(a):
    G = _graph(a.graph)
    rules = {}
    for ref in a.rule or []:
        r = _rule(ref)
        rules[r.name] = r
    schedule = []
    for item in filter(None, (a.schedule or "").split(",")):
        name, _, idx = item.rpartition(":")
        if not name:
            raise FormatError(f"schedule entries look like name:index, got {item!r}")
        schedule.append((name, int(idx)))
    tr = derive(G, rules, schedule)
    return {"steps": [{"rule": s.rule, "match": s.match.tables()} for s in tr.steps],
            "result": io.graph_to_json(tr.result)}


def cmd_check_functor(a):
    F = parse_functor(a.functor)
    cs = Cospan.from_json(io.load(a.cospan))
    v = check_pb_preservation(F, cs, a.depth, a.width, a.len, MODES[a.mode])
    return v.to_json()


def cmd_vk_check(a):
    return vk_cube_check(io.cube_from_json(io.load(a.cube))).to_json()


def _flavor(text: str) -> Flavor:
    if text.startswith("Pot[") and text.endswith("]"):
        lo, hi = text[4:-1].split(",")
        return pot_range(int(lo), int(hi))
    if text == "PotDir":
        return pot_range(1, 2)
    return Flavor(text)


def cmd_membership(a):
    if a.term is None:
        return membership_matrix()
    universe = [u for u in (a.universe or "").split(",") if u]
    flavor = _flavor(a.flavor)
    return {"term": a.term, "flavor": a.flavor, "universe": sorted(universe),
            "member": member_of(parse_term(a.term), universe, flavor)}


def cmd_fixtures(a):
    if a.action == "list":
        return {"fixtures": fixture_names()}
    if not a.name:
        raise FormatError("fixtures dump needs a name")
    x = fixture(a.name)
    return io.graph_to_json(x) if isinstance(x, CoalgGraph) else io.rule_to_json(x)


def cmd_export_dot(a):
    return export_dot(_graph(a.graph))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="adhesia", description=__doc__.split("\n")[0])
    p.add_argument("--out", help="write the result here instead of standard output")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *flags):
        s = sub.add_parser(name)
        s.set_defaults(fn=fn)
        for flag in flags:
            if flag == "bounds":
                s.add_argument("--depth", type=int, default=3)
                s.add_argument("--width", type=int, default=3)
                s.add_argument("--len", type=int, default=3)
            else:
                s.add_argument(f"--{flag}", required=True)
        s.add_argument("--out", default=argparse.SUPPRESS)
        return s

    add("validate", cmd_validate, "graph").add_argument("--kind")
    add("morphism-check", cmd_morphism_check, "src", "dst", "morphism")
    add("flatten", cmd_flatten, "graph")
    add("properties", cmd_properties, "graph").add_argument("--component", type=int)
    add("pullback", cmd_pullback, "cospan")
    add("pushout", cmd_pushout, "span")
    add("matches", cmd_matches, "graph", "rule")
    add("apply", cmd_apply, "graph", "rule").add_argument("--match", type=int, default=0)
    d = add("derive", cmd_derive, "graph")
    d.add_argument("--rule", action="append")
    d.add_argument("--schedule", default="")
    c = add("check-functor", cmd_check_functor, "functor", "cospan", "bounds")
    c.add_argument("--mode", choices=sorted(MODES), default="ordinary")
    add("vk-check", cmd_vk_check, "cube")
    m = add("membership", cmd_membership)
    m.add_argument("--term")
    m.add_argument("--universe")
    m.add_argument("--flavor", default="PPa")
    f = add("fixtures", cmd_fixtures)
    f.add_argument("action", choices=["list", "dump"])
    f.add_argument("name", nargs="?")
    add("export-dot", cmd_export_dot, "graph")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = args.fn(args)
        code = 0
    except AdhesiaError as exc:
        result, code = {"error": exc.to_json()}, 1
    except (OSError, ValueError) as exc:
        result, code = {"error": {"code": "bad_input", "message": str(exc)}}, 1
    text = result if isinstance(result, str) else io.dumps(result)
    if getattr(args, "out", None) and code == 0:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
