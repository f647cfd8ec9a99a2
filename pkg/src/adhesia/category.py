"""Limits and colimits of coalgebraic graphs, plus the VK cube and M-class checks.

Pullbacks are taken along an injective leg: the carriers are pulled back in
finite sets and the structure maps are induced through ``inverse_hbar``.
Pushouts are taken along an injective leg: carriers are glued and the
structure maps are transported along the injections.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from . import terms as T
from .errors import (
    DomainMismatch, MalformedCube, NonInjectiveLeg, NotInM, SignatureMismatch,
    StructureClash,
)
from .finset import (
    FinFunction, induced_from_pushout, induced_into_pullback, pullback, pushout,
)
from .functors import FunctorExpr, SortedFunction, map_element
from .graph import (
    CoalgGraph, GraphMorphism, check_morphism, compose_morphisms, identity,
    morphism_violations,
)
from .limits import Cospan, check_pb_preservation, inverse_hbar
from .terms import Pair

__all__ = [
    "PullbackSquare", "PushoutSquare", "coalg_pullback", "coalg_pushout",
    "is_pullback", "is_pushout", "commutes", "VkCube", "VkReport", "vk_cube_check",
    "MClassReport", "m_class_suite", "preserves_monic_pullbacks",
]


class PullbackSquare(NamedTuple):
    obj: CoalgGraph
    pi_b: GraphMorphism
    pi_c: GraphMorphism


class PushoutSquare(NamedTuple):
    obj: CoalgGraph
    in_b: GraphMorphism
    in_c: GraphMorphism


_PROBE = Cospan(
    FinFunction({"b1", "b2"}, {"d1", "d2"}, {"b1": "d1", "b2": "d1"}),
    FinFunction({"c1"}, {"d1", "d2"}, {"c1": "d1"}),
    FinFunction({"p1", "p2"}, {"q1", "q2"}, {"p1": "q1", "p2": "q1"}),
    FinFunction({"r1"}, {"q1", "q2"}, {"r1": "q1"}),
)


@lru_cache(maxsize=None)
def preserves_monic_pullbacks(F: FunctorExpr) -> bool:
    """Bounded probe: does ``F`` preserve a small two-sorted pullback along a mono?"""
    return check_pb_preservation(F, _PROBE, 2, 2, 2, "along_monos").holds


def _same_sig(*graphs):
    sig = graphs[0].sig
    for G in graphs[1:]:
        if G.sig != sig:
            raise SignatureMismatch(f"{G.sig} differs from {sig}")


def coalg_pullback(f: GraphMorphism, g: GraphMorphism) -> PullbackSquare:
    """Pullback of ``B -f-> D <-g- C`` with ``g`` injective."""
    _same_sig(f.src, f.dst, g.src, g.dst)
    if f.dst != g.dst:
        raise DomainMismatch("cospan legs have different targets")
    if not g.injective:
        raise NonInjectiveLeg("the second leg must be injective")
    sig = f.src.sig
    for F in (sig.nodeF, sig.stF):
        if not preserves_monic_pullbacks(F):
            warnings.warn(f"{F} fails the pullback probe; induced structure may be wrong",
                          RuntimeWarning, stacklevel=2)
    cs = Cospan(f.fN, g.fN, f.fE, g.fE)
    pbN, pbE = pullback(f.fN, g.fN), pullback(f.fE, g.fE)
    B, C = f.src, g.src
    node = {p: inverse_hbar(sig.nodeF, cs, Pair(B.node[b], C.node[c]))
            for p, (b, c) in pbN.pairs.items()}
    st = {p: inverse_hbar(sig.stF, cs, Pair(B.st[b], C.st[c]))
          for p, (b, c) in pbE.pairs.items()}
    A = CoalgGraph(pbN.obj, pbE.obj, node, st, sig)
    pi_b = GraphMorphism(A, B, pbN.pi_b, pbE.pi_b)
    pi_c = GraphMorphism(A, C, pbN.pi_c, pbE.pi_c)
    if not (check_morphism(pi_b) and check_morphism(pi_c)):
        raise StructureClash("pullback projections are not homomorphisms")
    return PullbackSquare(A, pi_b, pi_c)


def _transport(F, in_b, in_c, B, C, leg_b, leg_c, obj):
    """Structure on the glued carrier; the B-side value wins, all must agree."""
    out = {}
    for d in sorted(obj):
        vals = [map_element(F, in_b, B[x]) for x in sorted(leg_b.preimage(d))]
        vals += [map_element(F, in_c, C[x]) for x in sorted(leg_c.preimage(d))]
        if any(v != vals[0] for v in vals):
            raise StructureClash(f"glued representatives of {d} disagree: "
                                 + ", ".join(sorted({T.show(v) for v in vals})))
        out[d] = vals[0]
    return out


def coalg_pushout(f: GraphMorphism, g: GraphMorphism) -> PushoutSquare:
    """Pushout of ``B <-f- A -g-> C`` with ``f`` injective."""
    _same_sig(f.src, f.dst, g.src, g.dst)
    if f.src != g.src:
        raise DomainMismatch("span legs have different sources")
    if not f.injective:
        raise NotInM("the first leg must be injective")
    sig = f.src.sig
    poN, poE = pushout(f.fN, g.fN), pushout(f.fE, g.fE)
    in_b = SortedFunction(poN.in_b, poE.in_b)
    in_c = SortedFunction(poN.in_c, poE.in_c)
    B, C = f.dst, g.dst
    node = _transport(sig.nodeF, in_b, in_c, B.node, C.node, poN.in_b, poN.in_c, poN.obj)
    st = _transport(sig.stF, in_b, in_c, B.st, C.st, poE.in_b, poE.in_c, poE.obj)
    D = CoalgGraph(poN.obj, poE.obj, node, st, sig)
    ib = GraphMorphism(B, D, poN.in_b, poE.in_b)
    ic = GraphMorphism(C, D, poN.in_c, poE.in_c)
    if not (check_morphism(ib) and check_morphism(ic)):
        raise StructureClash("pushout injections are not homomorphisms")
    return PushoutSquare(D, ib, ic)


# --------------------------------------------------------------------------
# universal properties, decided through the canonical constructions


def commutes(p1: GraphMorphism, q1: GraphMorphism, p2: GraphMorphism, q2: GraphMorphism) -> bool:
    """``q1 . p1 == q2 . p2``"""
    if p1.src != p2.src or q1.dst != q2.dst or p1.dst != q1.src or p2.dst != q2.src:
        return False
    return compose_morphisms(q1, p1) == compose_morphisms(q2, p2)


def _bijective(u: FinFunction) -> bool:
    return u.injective and u.image() == u.cod


def is_pullback(f: GraphMorphism, g: GraphMorphism, p: GraphMorphism, q: GraphMorphism) -> bool:
    """Is ``P -p-> B, P -q-> C`` a pullback of ``B -f-> D <-g- C``?  ``g`` injective."""
    if not commutes(p, f, q, g):
        return False
    can = coalg_pullback(f, g)
    try:
        uN = induced_into_pullback(pullback(f.fN, g.fN), p.fN, q.fN)
        uE = induced_into_pullback(pullback(f.fE, g.fE), p.fE, q.fE)
    except ValueError:
        return False
    u = GraphMorphism(p.src, can.obj, uN, uE)
    return _bijective(uN) and _bijective(uE) and check_morphism(u)


def is_pushout(f: GraphMorphism, g: GraphMorphism, p: GraphMorphism, q: GraphMorphism) -> bool:
    """Is ``B -p-> X <-q- C`` a pushout of ``B <-f- A -g-> C``?  ``f`` injective."""
    if not commutes(f, p, g, q):
        return False
    can = coalg_pushout(f, g)
    try:
        uN = induced_from_pushout(pushout(f.fN, g.fN), p.fN, q.fN)
        uE = induced_from_pushout(pushout(f.fE, g.fE), p.fE, q.fE)
    except ValueError:
        return False
    u = GraphMorphism(can.obj, p.dst, uN, uE)
    return _bijective(uN) and _bijective(uE) and check_morphism(u)


# --------------------------------------------------------------------------
# the vertical weak VK cube


@dataclass(frozen=True)
class VkCube:
    """Bottom ``n . f = g . m`` over ``A, B, C, D``; top primed likewise;
    verticals ``a, b, c, d`` from the top corners to the bottom ones."""

    m: GraphMorphism   # A -> B
    f: GraphMorphism   # A -> C
    g: GraphMorphism   # B -> D
    n: GraphMorphism   # C -> D
    m_: GraphMorphism  # A' -> B'
    f_: GraphMorphism  # A' -> C'
    g_: GraphMorphism  # B' -> D'
    n_: GraphMorphism  # C' -> D'
    a: GraphMorphism   # A' -> A
    b: GraphMorphism   # B' -> B
    c: GraphMorphism   # C' -> C
    d: GraphMorphism   # D' -> D

    ARROWS = ("m", "f", "g", "n", "m_", "f_", "g_", "n_", "a", "b", "c", "d")

    def arrows(self) -> dict:
        return {k: getattr(self, k) for k in self.ARROWS}


@dataclass(frozen=True)
class VkReport:
    top_is_pushout: bool
    fronts_are_pullbacks: bool
    biconditional_holds: bool

    def to_json(self):
        return {"top_is_pushout": self.top_is_pushout,
                "fronts_are_pullbacks": self.fronts_are_pullbacks,
                "biconditional_holds": self.biconditional_holds}


def _cube_preconditions(k: VkCube):
    for name, h in k.arrows().items():
        bad = morphism_violations(h)
        if bad:
            raise MalformedCube(f"{name} is not a homomorphism at {bad[0]['element']}")
    faces = {
        "bottom": (k.m, k.g, k.f, k.n), "top": (k.m_, k.g_, k.f_, k.n_),
        "back left": (k.m_, k.b, k.a, k.m), "back right": (k.f_, k.c, k.a, k.f),
        "front left": (k.g_, k.d, k.b, k.g), "front right": (k.n_, k.d, k.c, k.n),
    }
    for name, (p1, q1, p2, q2) in faces.items():
        if not commutes(p1, q1, p2, q2):
            raise MalformedCube(f"{name} face does not commute")
    for name in "abcd":
        if not getattr(k, name).injective:
            raise MalformedCube(f"vertical {name} is not injective")
    if not k.m.injective:
        raise MalformedCube("bottom leg m is not injective")
    if not is_pushout(k.m, k.f, k.g, k.n):
        raise MalformedCube("bottom face is not a pushout")
    if not is_pullback(k.m, k.b, k.a, k.m_):
        raise MalformedCube("back face over m is not a pullback")
    if not is_pullback(k.f, k.c, k.a, k.f_):
        raise MalformedCube("back face over f is not a pullback")


def vk_cube_check(cube: VkCube) -> VkReport:
    """Top square a pushout iff both front faces are pullbacks."""
    _cube_preconditions(cube)
    k = cube
    if k.m_.injective:
        top = is_pushout(k.m_, k.f_, k.g_, k.n_)
    else:
        top = False
    fronts = is_pullback(k.g, k.d, k.b, k.g_) and is_pullback(k.n, k.d, k.c, k.n_)
    return VkReport(top, fronts, top == fronts)


# --------------------------------------------------------------------------
# the class of injective homomorphisms


@dataclass
class MClassReport:
    stable_under_pushout: bool = True
    stable_under_pullback: bool = True
    closed_under_composition: bool = True
    contains_identities: bool = True
    witnesses: list = field(default_factory=list)
    checked: dict = field(default_factory=lambda: {"pushout": 0, "pullback": 0,
                                                   "composition": 0, "identity": 0})

    @property
    def ok(self) -> bool:
        return (self.stable_under_pushout and self.stable_under_pullback
                and self.closed_under_composition and self.contains_identities)

    def to_json(self):
        return {"stable_under_pushout": self.stable_under_pushout,
                "stable_under_pullback": self.stable_under_pullback,
                "closed_under_composition": self.closed_under_composition,
                "contains_identities": self.contains_identities,
                "checked": dict(self.checked), "witnesses": list(self.witnesses)}


def m_class_suite(samples) -> MClassReport:
    """Check the M-class clauses on ``("span", f, g)`` and ``("cospan", f, g)``
    samples.  Spans need ``f`` injective, cospans need ``g`` injective."""
    rep = MClassReport()
    monos = []
    for i, (kind, f, g) in enumerate(samples):
        for G in (f.src, f.dst, g.src, g.dst):
            rep.checked["identity"] += 1
            idG = identity(G)
            if not (idG.injective and check_morphism(idG)):
                rep.contains_identities = False
                rep.witnesses.append({"sample": i, "clause": "identity"})
        if kind == "span":
            sq = coalg_pushout(f, g)
            rep.checked["pushout"] += 1
            if not sq.in_c.injective:
                rep.stable_under_pushout = False
                rep.witnesses.append({"sample": i, "clause": "pushout"})
            monos += [f, sq.in_c] + ([sq.in_b, g] if g.injective else [])
        elif kind == "cospan":
            sq = coalg_pullback(f, g)
            rep.checked["pullback"] += 1
            if not sq.pi_b.injective:
                rep.stable_under_pullback = False
                rep.witnesses.append({"sample": i, "clause": "pullback"})
            monos += [g, sq.pi_b] + ([f, sq.pi_c] if f.injective else [])
        else:
            raise ValueError(f"unknown sample kind {kind!r}")
    for u in monos:
        for v in monos:
            if u.dst == v.src:
                rep.checked["composition"] += 1
                w = compose_morphisms(v, u)
                if not (w.injective and check_morphism(w)):
                    rep.closed_under_composition = False
                    rep.witnesses.append({"clause": "composition"})
    return rep
