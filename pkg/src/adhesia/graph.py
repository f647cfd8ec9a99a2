"""Coalgebraic graphs ``(N, E, node, st)`` and their homomorphisms.

``node: N -> nodeF(N, E)`` is the contains map and ``st: E -> stF(N, E)`` the
neighbour map.  Node and edge names share one atom namespace, so a term can
mention both sorts without tags.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import terms as T
from .errors import (
    CodomainMismatch, DomainMismatch, InvalidGraph, InvalidMorphism, ShapeMismatch,
    SignatureMismatch, UnknownAtom,
)
from .finset import FinFunction, compose
from .functors import (
    CarrierEnv, FunctorExpr, SortedFunction, element_of, map_element,
    parse_functor, pretty,
)
from .terms import Atom, Pair, Seq, SetOf, Term, UNIT

__all__ = [
    "Signature", "CoalgGraph", "GraphMorphism", "validate_graph", "check_morphism",
    "morphism_violations", "compose_morphisms", "identity", "flatten",
    "node_properties", "edge_properties", "NodeProperties", "EdgeProperties",
    "find_homomorphisms", "find_isomorphism", "isomorphic", "empty_graph",
]


@dataclass(frozen=True)
class Signature:
    nodeF: FunctorExpr
    stF: FunctorExpr

    @classmethod
    def parse(cls, node: str, st: str) -> "Signature":
        return cls(parse_functor(node), parse_functor(st))

    def to_json(self):
        return {"node": pretty(self.nodeF), "st": pretty(self.stF)}

    @classmethod
    def from_json(cls, obj) -> "Signature":
        return cls.parse(obj["node"], obj["st"])

    def __str__(self):
        return f"({pretty(self.nodeF)}, {pretty(self.stF)})"


def _frozen_map(m) -> dict:
    return {k: m[k] for k in sorted(m)}


@dataclass(frozen=True, eq=False)
class CoalgGraph:
    N: frozenset
    E: frozenset
    node: Mapping[str, Term]
    st: Mapping[str, Term]
    sig: Signature

    def __post_init__(self):
        N, E = frozenset(self.N), frozenset(self.E)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "E", E)
        if N & E:
            raise InvalidGraph(f"node and edge names overlap: {sorted(N & E)}")
        if set(self.node) != N:
            raise InvalidGraph("contains map must be defined exactly on the nodes")
        if set(self.st) != E:
            raise InvalidGraph("neighbour map must be defined exactly on the edges")
        for k, v in list(self.node.items()) + list(self.st.items()):
            if not isinstance(v, Term):
                raise InvalidGraph(f"image of {k} is not a term")
        object.__setattr__(self, "node", _frozen_map(self.node))
        object.__setattr__(self, "st", _frozen_map(self.st))

    def _key(self):
        return (self.sig, tuple(sorted(self.N)), tuple(sorted(self.E)),
                tuple(self.node.items()), tuple(self.st.items()))

    def __eq__(self, other):
        return isinstance(other, CoalgGraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    @property
    def env(self) -> CarrierEnv:
        return CarrierEnv(self.N, self.E)

    def image(self, x: str) -> Term:
        return self.node[x] if x in self.node else self.st[x]

    def restrict(self, N, E) -> "CoalgGraph":
        """Subgraph on the given carriers; images are copied unchanged."""
        N, E = frozenset(N), frozenset(E)
        return CoalgGraph(N, E, {n: self.node[n] for n in N}, {e: self.st[e] for e in E}, self.sig)

    def renamed(self, fN: Mapping[str, str], fE: Mapping[str, str]) -> "CoalgGraph":
        """Image under a bijective renaming of the carriers."""
        ren = {**fN, **fE}
        sub = lambda t: T.substitute(t, ren.__getitem__)
        return CoalgGraph(set(fN.values()), set(fE.values()),
                          {fN[n]: sub(t) for n, t in self.node.items()},
                          {fE[e]: sub(t) for e, t in self.st.items()}, self.sig)

    def __repr__(self):
        return f"CoalgGraph(N={sorted(self.N)}, E={sorted(self.E)}, sig={self.sig})"


def empty_graph(sig: Signature) -> CoalgGraph:
    return CoalgGraph(frozenset(), frozenset(), {}, {}, sig)


def validate_graph(G: CoalgGraph) -> list:
    """Problems with the structure maps; an empty list means the graph is valid."""
    env, out = G.env, []
    for kind, table, F in (("node", G.node, G.sig.nodeF), ("st", G.st, G.sig.stF)):
        for x, t in table.items():
            stray = T.atoms_of(t) - env.N - env.E
            if stray:
                out.append({"map": kind, "element": x,
                            "reason": f"mentions unknown atoms {sorted(stray)}"})
            elif not element_of(F, env, t):
                out.append({"map": kind, "element": x,
                            "reason": f"{T.show(t)} is not in {pretty(F)}"})
    return out


# --------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class GraphMorphism:
    src: CoalgGraph
    dst: CoalgGraph
    fN: FinFunction
    fE: FinFunction

    def __post_init__(self):
        if self.fN.dom != self.src.N or self.fN.cod != self.dst.N:
            raise InvalidMorphism("node map does not match the carriers")
        if self.fE.dom != self.src.E or self.fE.cod != self.dst.E:
            raise InvalidMorphism("edge map does not match the carriers")

    @classmethod
    def from_tables(cls, src, dst, nodes: Mapping[str, str], edges: Mapping[str, str]):
        try:
            return cls(src, dst, FinFunction(src.N, dst.N, nodes), FinFunction(src.E, dst.E, edges))
        except (DomainMismatch, CodomainMismatch) as exc:
            raise InvalidMorphism(str(exc)) from exc

    @property
    def sorted_fn(self) -> SortedFunction:
        return SortedFunction(self.fN, self.fE)

    @property
    def injective(self) -> bool:
        return self.fN.injective and self.fE.injective

    def __call__(self, x: str) -> str:
        return self.fN(x) if x in self.fN.dom else self.fE(x)

    def tables(self):
        return {"nodes": {k: self.fN(k) for k in sorted(self.fN.dom)},
                "edges": {k: self.fE(k) for k in sorted(self.fE.dom)}}

    def __repr__(self):
        return f"GraphMorphism({self.tables()})"


def morphism_violations(m: GraphMorphism) -> list:
    """Elements at which one of the two squares fails to commute."""
    if m.src.sig != m.dst.sig:
        raise SignatureMismatch(f"{m.src.sig} differs from {m.dst.sig}")
    f, out = m.sorted_fn, []
    for kind, F, table, target, fun in (
            ("node", m.src.sig.nodeF, m.src.node, m.dst.node, m.fN),
            ("st", m.src.sig.stF, m.src.st, m.dst.st, m.fE)):
        for x, t in table.items():
            try:
                got = map_element(F, f, t)
            except (ShapeMismatch, UnknownAtom) as exc:
                out.append({"map": kind, "element": x, "reason": str(exc)})
                continue
            want = target[fun(x)]
            if got != want:
                out.append({"map": kind, "element": x, "mapped": T.show(got),
                            "expected": T.show(want)})
    return out


def check_morphism(m: GraphMorphism) -> bool:
    return not morphism_violations(m)


def compose_morphisms(m2: GraphMorphism, m1: GraphMorphism) -> GraphMorphism:
    """``m2 . m1``"""
    return GraphMorphism(m1.src, m2.dst, compose(m2.fN, m1.fN), compose(m2.fE, m1.fE))


def identity(G: CoalgGraph) -> GraphMorphism:
    return GraphMorphism(G, G, FinFunction.identity(G.N), FinFunction.identity(G.E))


# --------------------------------------------------------------------------
# homomorphism search


def _shape(t: Term):
    """The term with atoms erased; invariant under injective renaming."""
    if isinstance(t, Atom):
        return "*"
    if isinstance(t, SetOf):
        return ("set",) + tuple(sorted((_shape(m) for m in t.members), key=repr))
    if isinstance(t, Pair):
        return ("pair", _shape(t.left), _shape(t.right))
    if isinstance(t, Seq):
        return ("seq",) + tuple(_shape(i) for i in t.items)
    return "unit"


def _search_order(G: CoalgGraph) -> list:
    """Breadth-first from each unvisited element, so constraints close early."""
    carriers = G.N | G.E
    order, seen = [], set()
    for root in sorted(G.N) + sorted(G.E):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            order.append(x)
            for y in sorted(T.atoms_of(G.image(x)) & carriers):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    return order


def find_homomorphisms(G: CoalgGraph, H: CoalgGraph, injective: bool = True,
                       fixed: Optional[Mapping[str, str]] = None) -> list:
    """All homomorphisms ``G -> H`` (optionally injective, optionally extending
    ``fixed``), ordered lexicographically by their assignment tables."""
    if G.sig != H.sig:
        raise SignatureMismatch(f"{G.sig} differs from {H.sig}")
    fixed = dict(fixed or {})
    order = _search_order(G)
    pos = {x: i for i, x in enumerate(order)}
    checks: dict = {}
    for x in order:
        deps = (T.atoms_of(G.image(x)) & (G.N | G.E)) | {x}
        checks.setdefault(max(pos[d] for d in deps), []).append(x)
    cands = {}
    for x in order:
        pool = sorted(H.N) if x in G.N else sorted(H.E)
        if injective:
            s = _shape(G.image(x))
            pool = [y for y in pool if _shape(H.image(y)) == s]
        if x in fixed:
            pool = [y for y in pool if y == fixed[x]]
        cands[x] = pool
    assign: dict = {}
    used: set = set()
    found = []

    def ok(x) -> bool:
        target = H.node if x in G.N else H.st
        # names are sort-disjoint, so renaming atoms is the functor action
        return T.substitute(G.image(x), assign.__getitem__) == target[assign[x]]

    def go(i):
        if i == len(order):
            found.append(dict(assign))
            return
        x = order[i]
        for y in cands[x]:
            if injective and y in used:
                continue
            assign[x] = y
            used.add(y)
            if all(ok(c) for c in checks.get(i, ())):
                go(i + 1)
            used.discard(y)
            del assign[x]

    go(0)
    tables = sorted(found, key=lambda a: (tuple((n, a[n]) for n in sorted(G.N)),
                                         tuple((e, a[e]) for e in sorted(G.E))))
    return [GraphMorphism(G, H, FinFunction(G.N, H.N, {n: a[n] for n in G.N}),
                          FinFunction(G.E, H.E, {e: a[e] for e in G.E})) for a in tables]


def find_isomorphism(G: CoalgGraph, H: CoalgGraph, limit: int = 8) -> Optional[GraphMorphism]:
    """An isomorphism ``G -> H`` or None.  Carriers above ``limit`` elements per
    sort are refused, since the search is exhaustive."""
    if len(G.N) != len(H.N) or len(G.E) != len(H.E) or G.sig != H.sig:
        return None
    if max(len(G.N), len(G.E)) > limit:
        raise ValueError(f"isomorphism search is bounded at {limit} elements per sort")
    found = find_homomorphisms(G, H, injective=True)
    return found[0] if found else None


def isomorphic(G: CoalgGraph, H: CoalgGraph, limit: int = 8) -> bool:
    return find_isomorphism(G, H, limit) is not None


# --------------------------------------------------------------------------
# flattening and properties


def _mentions(t: Term) -> frozenset:
    """Atoms reachable through sets, pairs and sequences of a neighbour term."""
    return T.atoms_of(t)


def flatten(G: CoalgGraph) -> dict:
    """``st+``: least fixpoint of ``st+(e) = nodes in st(e) | U st+(x) for edges x in st(e)``."""
    direct = {e: _mentions(G.st[e]) for e in G.E}
    plus = {e: frozenset() for e in G.E}
    changed = True
    while changed:
        changed = False
        for e in sorted(G.E):
            new = frozenset(direct[e] & G.N).union(*(plus[x] for x in direct[e] & G.E))
            if new != plus[e]:
                plus[e], changed = new, True
    return {e: plus[e] for e in sorted(G.E)}


@dataclass(frozen=True)
class NodeProperties:
    unique: bool
    atoms: frozenset
    containers: frozenset
    well_founded: bool
    hierarchical: bool
    witnesses: tuple = field(default=(), compare=False)

    def to_json(self):
        return {"unique": self.unique, "atoms": sorted(self.atoms),
                "containers": sorted(self.containers), "well_founded": self.well_founded,
                "hierarchical": self.hierarchical, "witnesses": list(self.witnesses)}


def _node_images(G: CoalgGraph, component: Optional[int]) -> dict:
    if component is None:
        return dict(G.node)
    out = {}
    for n, t in G.node.items():
        if not isinstance(t, Seq) or component >= len(t):
            raise InvalidGraph(f"contains image of {n} has no component {component}")
        out[n] = t.items[component]
    return out


def node_properties(G: CoalgGraph, component: Optional[int] = None) -> NodeProperties:
    """Nested-node predicates.  ``component`` selects one contains map when the
    contains images are tuples of several hierarchies."""
    img = _node_images(G, component)
    names = G.N | G.E
    atoms = frozenset(n for n, t in img.items() if t == Atom(n))
    containers = frozenset(n for n, t in img.items() if isinstance(t, SetOf))
    unique = len(set(img.values())) == len(img)
    by_value = {}
    for n in sorted(img):
        by_value.setdefault(img[n], n)
    witnesses = []

    # every set member is named (an atom of the carriers) or is itself a contains image
    parent = {n: set() for n in containers}
    for n in sorted(containers):
        for y in img[n].members:
            if isinstance(y, Atom) and y.name in names:
                parent[n].add(y.name)
            elif y in by_value:
                parent[n].add(by_value[y])
            else:
                witnesses.append({"property": "well_founded", "node": n,
                                  "member": T.show(y)})
    # and containment by name has no cycles
    state: dict = {}

    def cyclic(n) -> bool:
        state[n] = 1
        for m in sorted(parent.get(n, ())):
            if m not in parent:
                continue
            if state.get(m) == 1 or (state.get(m) is None and cyclic(m)):
                return True
        state[n] = 2
        return False

    for n in sorted(parent):
        if state.get(n) is None and cyclic(n):
            witnesses.append({"property": "well_founded", "node": n, "member": "cycle"})
            break
    well_founded = not any(w["property"] == "well_founded" for w in witnesses)

    hierarchical = True
    cs = sorted(containers)
    for i, a in enumerate(cs):
        for b in cs[i + 1:]:
            common = set(img[a].members) & set(img[b].members)
            if common:
                hierarchical = False
                witnesses.append({"property": "hierarchical", "nodes": [a, b],
                                  "shared": sorted(T.show(c) for c in common)})
    return NodeProperties(unique, atoms, containers, well_founded, hierarchical, tuple(witnesses))


@dataclass(frozen=True)
class EdgeProperties:
    atomic_edges: frozenset
    node_based: bool
    atomic: bool

    def to_json(self):
        return {"atomic_edges": sorted(self.atomic_edges), "node_based": self.node_based,
                "atomic": self.atomic}


def _over_nodes(t: Term, N: frozenset) -> bool:
    """``t`` lies in Pot(N), read componentwise through pairs and sequences."""
    if isinstance(t, SetOf):
        return all(isinstance(m, Atom) and m.name in N for m in t.members)
    if isinstance(t, Atom):
        return t.name in N
    if isinstance(t, (Pair, Seq)):
        return all(_over_nodes(c, N) for c in T.children(t))
    return t == UNIT


def edge_properties(G: CoalgGraph) -> EdgeProperties:
    plus = flatten(G)
    atomic_edges = frozenset(e for e in G.E if _over_nodes(G.st[e], G.N))
    # st+ is well-defined as a map into Pot(N) when no edge with neighbours
    # flattens to nothing, which happens exactly for pure edge cycles
    node_based = all(plus[e] or not _mentions(G.st[e]) for e in G.E)
    aV = node_properties(G).atoms if not _multi(G) else frozenset(G.N)
    atomic = node_based and all(plus[e] <= aV for e in G.E)
    return EdgeProperties(atomic_edges, node_based, atomic)


def _multi(G: CoalgGraph) -> bool:
    return any(isinstance(t, Seq) for t in G.node.values())
