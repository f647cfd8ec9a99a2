"""Double-pushout rewriting with injective rules and injective matches."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import terms as T
from .category import coalg_pushout, is_pushout
from .errors import GluingViolation, InvalidMorphism, NoSuchMatch, SignatureMismatch
from .finset import pushout_complement
from .graph import (
    CoalgGraph, GraphMorphism, check_morphism, find_homomorphisms, validate_graph,
)

__all__ = [
    "Rule", "GluingReport", "Step", "TraceStep", "DerivationTrace", "find_matches",
    "gluing_check", "apply_rule", "derive",
]


@dataclass(frozen=True)
class Rule:
    """``L <-l- K -r-> R`` with both legs injective homomorphisms."""

    L: CoalgGraph
    K: CoalgGraph
    R: CoalgGraph
    l: GraphMorphism
    r: GraphMorphism
    name: str = "rule"

    def __post_init__(self):
        if not (self.L.sig == self.K.sig == self.R.sig):
            raise SignatureMismatch("rule graphs must share one signature")
        if self.l.src != self.K or self.l.dst != self.L:
            raise InvalidMorphism("l must run from K to L")
        if self.r.src != self.K or self.r.dst != self.R:
            raise InvalidMorphism("r must run from K to R")
        for leg, name in ((self.l, "l"), (self.r, "r")):
            if not leg.injective:
                raise InvalidMorphism(f"{name} is not injective")
            if not check_morphism(leg):
                raise InvalidMorphism(f"{name} is not a homomorphism")
        for G, name in ((self.L, "L"), (self.K, "K"), (self.R, "R")):
            if validate_graph(G):
                raise InvalidMorphism(f"{name} is not a valid graph")

    def inverse(self) -> "Rule":
        return Rule(self.R, self.K, self.L, self.r, self.l, self.name + "^-1")


def find_matches(rule: Rule, G: CoalgGraph) -> list:
    """All injective homomorphisms ``L -> G`` in lexicographic table order."""
    if rule.L.sig != G.sig:
        raise SignatureMismatch(f"{rule.L.sig} differs from {G.sig}")
    return find_homomorphisms(rule.L, G, injective=True)


@dataclass(frozen=True)
class GluingReport:
    ok: bool
    witnesses: tuple = ()

    def to_json(self):
        return {"ok": self.ok, "witnesses": [dict(w) for w in self.witnesses]}


def _deleted(rule: Rule, m: GraphMorphism):
    keepN, keepE = rule.l.fN.image(), rule.l.fE.image()
    return (m.fN.image(rule.L.N - keepN), m.fE.image(rule.L.E - keepE))


def gluing_check(rule: Rule, match: GraphMorphism, G: CoalgGraph) -> GluingReport:
    """No element of ``G`` that survives may reference one that is deleted."""
    delN, delE = _deleted(rule, match)
    gone = delN | delE
    witnesses = []
    for x in sorted((G.N - delN) | (G.E - delE)):
        hit = T.atoms_of(G.image(x)) & gone
        if hit:
            witnesses.append({"element": x, "references": sorted(hit)})
    return GluingReport(not witnesses, tuple(witnesses))


@dataclass(frozen=True)
class Step:
    D: CoalgGraph
    H: CoalgGraph
    k: GraphMorphism       # K -> D
    d: GraphMorphism       # D -> G
    comatch: GraphMorphism  # R -> H
    h: GraphMorphism       # D -> H


def apply_rule(rule: Rule, match: GraphMorphism, G: CoalgGraph) -> Step:
    if match.src != rule.L or match.dst != G:
        raise InvalidMorphism("match must run from L to G")
    if not (match.injective and check_morphism(match)):
        raise InvalidMorphism("match must be an injective homomorphism")
    report = gluing_check(rule, match, G)
    if not report.ok:
        raise GluingViolation(f"dangling references: {list(report.witnesses)}", report.witnesses)
    DN, kN, dN = pushout_complement(rule.l.fN, match.fN)
    DE, kE, dE = pushout_complement(rule.l.fE, match.fE)
    D = G.restrict(DN, DE)
    k = GraphMorphism(rule.K, D, kN, kE)
    d = GraphMorphism(D, G, dN, dE)
    H, comatch, h = coalg_pushout(rule.r, k)
    if not (check_morphism(k) and check_morphism(d)):
        raise GluingViolation("pushout complement is not a sub-coalgebra")
    if not is_pushout(rule.l, k, match, d):
        raise GluingViolation("left square is not a pushout")
    if not is_pushout(rule.r, k, comatch, h):
        raise GluingViolation("right square is not a pushout")
    return Step(D, H, k, d, comatch, h)


@dataclass(frozen=True)
class TraceStep:
    rule: str
    match: GraphMorphism
    D: CoalgGraph
    H: CoalgGraph


@dataclass(frozen=True)
class DerivationTrace:
    start: CoalgGraph
    steps: tuple = ()

    @property
    def result(self) -> CoalgGraph:
        return self.steps[-1].H if self.steps else self.start

    def __len__(self):
        return len(self.steps)


def derive(G: CoalgGraph, rules: Mapping[str, Rule], schedule: Sequence) -> DerivationTrace:
    """Apply ``(rule name, match index)`` pairs in order, failing at the first bad step."""
    steps, cur = [], G
    for i, (name, idx) in enumerate(schedule):
        if name not in rules:
            raise NoSuchMatch(f"step {i}: unknown rule {name!r}", step=i)
        rule = rules[name]
        matches = find_matches(rule, cur)
        if not 0 <= idx < len(matches):
            raise NoSuchMatch(f"step {i}: rule {name!r} has {len(matches)} matches, "
                              f"index {idx} requested", step=i)
        try:
            s = apply_rule(rule, matches[idx], cur)
        except GluingViolation as exc:
            raise GluingViolation(f"step {i}: {exc}", exc.witnesses, step=i) from exc
        steps.append(TraceStep(name, matches[idx], s.D, s.H))
        cur = s.H
    return DerivationTrace(G, tuple(steps))
