"""Seeded random instances: functions, cospans, small graphs, spans and cubes.

Graphs use the signature ``(1, Pot(N))``: plain hypergraphs, where
homomorphisms are easy to build by hand.
"""
from __future__ import annotations

import random
from typing import Optional

from .category import VkCube, coalg_pullback, coalg_pushout
from .finset import FinFunction, induced_into_pullback, pullback
from .graph import CoalgGraph, GraphMorphism, Signature
from .limits import Cospan
from .terms import UNIT, Atom, SetOf

__all__ = [
    "HYPER", "random_function", "random_injection", "random_cospan", "random_graph",
    "random_subgraph", "random_quotient", "random_span", "random_graph_cospan",
    "random_cube", "perturb_cube", "m_class_samples", "inclusion",
]

HYPER = Signature.parse("1", "Pot(N)")


def _names(prefix: str, k: int) -> list:
    return [f"{prefix}{i}" for i in range(k)]


def random_function(rng: random.Random, dom, cod) -> FinFunction:
    cod = sorted(cod)
    if dom and not cod:
        raise ValueError("no function into the empty set")
    return FinFunction(dom, cod, {x: rng.choice(cod) for x in sorted(dom)})


def random_injection(rng: random.Random, dom, cod) -> FinFunction:
    dom, cod = sorted(dom), sorted(cod)
    return FinFunction(dom, cod, dict(zip(dom, rng.sample(cod, len(dom)))))


def random_cospan(rng: random.Random, max_size: int = 3, mono: bool = True,
                  two_sorted: bool = False) -> Cospan:
    """``B -f-> D <-g- C`` with carriers of at most ``max_size`` elements."""
    def legs(pb, pc, pd):
        D = _names(pd, rng.randint(1, max_size))
        B = _names(pb, rng.randint(0, max_size))
        if mono:
            C = _names(pc, rng.randint(0, len(D)))
            g = random_injection(rng, C, D)
        else:
            C = _names(pc, rng.randint(0, max_size))
            g = random_function(rng, C, D)
        return random_function(rng, B, D), g

    f, g = legs("b", "c", "d")
    if not two_sorted:
        return Cospan(f, g)
    fE, gE = legs("p", "q", "r")
    return Cospan(f, g, fE, gE)


def _hyper(N, st: dict) -> CoalgGraph:
    return CoalgGraph(N, set(st), {n: UNIT for n in N}, st, HYPER)


def random_graph(rng: random.Random, prefix: str = "", max_nodes: int = 3,
                 max_edges: int = 3) -> CoalgGraph:
    N = _names(prefix + "n", rng.randint(0, max_nodes))
    k = rng.randint(0, max_edges) if N else rng.randint(0, 1)
    st = {}
    for e in _names(prefix + "e", k):
        st[e] = SetOf(Atom(n) for n in N if rng.random() < 0.5)
    return _hyper(N, st)


def random_subgraph(rng: random.Random, G: CoalgGraph) -> CoalgGraph:
    """A random sub-coalgebra: kept edges only mention kept nodes."""
    N = {n for n in G.N if rng.random() < 0.7}
    E = {e for e in G.E if rng.random() < 0.7 and {a.name for a in G.st[e].members} <= N}
    return G.restrict(N, E)


def inclusion(A: CoalgGraph, B: CoalgGraph) -> GraphMorphism:
    return GraphMorphism.from_tables(A, B, {n: n for n in A.N}, {e: e for e in A.E})


def random_quotient(rng: random.Random, A: CoalgGraph, prefix: str) -> GraphMorphism:
    """A homomorphism out of ``A`` that may merge nodes and edges, into a
    graph that may also have extra material."""
    N = _names(prefix + "n", rng.randint(1 if A.N else 0, 3))
    fN = {n: rng.choice(N) for n in sorted(A.N)}
    st, fE = {}, {}
    for e in sorted(A.E):
        img = SetOf(Atom(fN[a.name]) for a in A.st[e].members)
        same = [x for x, t in st.items() if t == img]
        if same and rng.random() < 0.5:
            fE[e] = same[0]
        else:
            x = f"{prefix}e{len(st)}"
            st[x], fE[e] = img, x
    for _ in range(rng.randint(0, 1)):
        x = f"{prefix}e{len(st)}"
        st[x] = SetOf(Atom(n) for n in N if rng.random() < 0.5)
    C = _hyper(N, st)
    return GraphMorphism.from_tables(A, C, fN, fE)


def random_span(rng: random.Random):
    """``B <-m- A -f-> C`` with ``m`` an inclusion."""
    B = random_graph(rng, "b")
    A = random_subgraph(rng, B)
    return inclusion(A, B), random_quotient(rng, A, "c")


def random_graph_cospan(rng: random.Random):
    """``B -f-> D <-g- C`` with ``g`` an inclusion."""
    B = random_graph(rng, "b")
    f = random_quotient(rng, B, "d")
    C = random_subgraph(rng, f.dst)
    return f, inclusion(C, f.dst)


def random_cube(rng: random.Random) -> VkCube:
    """Pull a random bottom pushout back along a random sub-coalgebra inclusion."""
    m, f = random_span(rng)
    D, g, n = coalg_pushout(m, f)
    d = inclusion(random_subgraph(rng, D), D)
    _, b, g_ = coalg_pullback(g, d)
    _, c, n_ = coalg_pullback(n, d)
    A_, a, m_ = coalg_pullback(m, b)
    # f' is induced into the front-right pullback by (f . a, g' . m')
    pbN, pbE = pullback(n.fN, d.fN), pullback(n.fE, d.fE)
    fa = FinFunction(A_.N, f.dst.N, {x: f.fN(a.fN(x)) for x in A_.N})
    gm = FinFunction(A_.N, g_.dst.N, {x: g_.fN(m_.fN(x)) for x in A_.N})
    faE = FinFunction(A_.E, f.dst.E, {x: f.fE(a.fE(x)) for x in A_.E})
    gmE = FinFunction(A_.E, g_.dst.E, {x: g_.fE(m_.fE(x)) for x in A_.E})
    f_ = GraphMorphism(A_, c.src, induced_into_pullback(pbN, fa, gm),
                       induced_into_pullback(pbE, faE, gmE))
    return VkCube(m, f, g, n, m_, f_, g_, n_, a, b, c, d)


def perturb_cube(rng: random.Random, cube: VkCube) -> Optional[VkCube]:
    """Drop one element of C' outside the image of f' and unreferenced in C'.

    The front-right face stops being a pullback and the top stops being a
    pushout.  Returns None when no element qualifies.
    """
    C_ = cube.f_.dst
    used = cube.f_.fN.image() | cube.f_.fE.image()
    mentioned = {a.name for t in C_.st.values() for a in t.members}
    pool = sorted((C_.N - used - mentioned) | (C_.E - used))
    if not pool:
        return None
    x = rng.choice(pool)
    C2 = C_.restrict(C_.N - {x}, C_.E - {x})

    def cut(h: GraphMorphism, src=None, dst=None) -> GraphMorphism:
        src = src or h.src
        dst = dst or h.dst
        return GraphMorphism.from_tables(src, dst, {k: h.fN(k) for k in src.N},
                                         {k: h.fE(k) for k in src.E})

    return VkCube(cube.m, cube.f, cube.g, cube.n, cube.m_, cut(cube.f_, dst=C2), cube.g_,
                  cut(cube.n_, src=C2), cube.a, cube.b, cut(cube.c, src=C2), cube.d)


def m_class_samples(rng: random.Random, count: int) -> list:
    out = []
    for i in range(count):
        if i % 2 == 0:
            out.append(("span",) + random_span(rng))
        else:
            out.append(("cospan",) + random_graph_cospan(rng))
    return out
