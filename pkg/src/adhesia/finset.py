"""Finite sets and total functions: composition, pullbacks, pushouts, complements.

Finite sets are plain ``frozenset`` objects of atom names.  Synthesized
carriers get deterministic names: pullback elements are ``"(b,c)"`` and
merged pushout classes are ``"cls{x,y}"``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import CodomainMismatch, DomainMismatch, NotInjective

__all__ = [
    "FinFunction", "compose", "is_injective", "pullback", "pushout",
    "pushout_complement", "Pullback", "Pushout", "pair_name",
    "induced_into_pullback", "induced_from_pushout", "find_bijection",
]


def finset(elems: Iterable[str]) -> frozenset:
    return frozenset(elems)


@dataclass(frozen=True)
class FinFunction:
    dom: frozenset
    cod: frozenset
    mapping: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "dom", frozenset(self.dom))
        object.__setattr__(self, "cod", frozenset(self.cod))
        m = dict(self.mapping)
        if set(m) != self.dom:
            raise DomainMismatch("mapping keys must be exactly the domain")
        bad = {x: y for x, y in m.items() if y not in self.cod}
        if bad:
            raise CodomainMismatch(f"images outside the codomain: {bad}")
        object.__setattr__(self, "mapping", m)

    def __call__(self, x: str) -> str:
        return self.mapping[x]

    def __eq__(self, other):
        if not isinstance(other, FinFunction):
            return NotImplemented
        return (self.dom, self.cod, self.mapping) == (other.dom, other.cod, other.mapping)

    def __hash__(self):
        return hash((self.dom, self.cod, frozenset(self.mapping.items())))

    @classmethod
    def identity(cls, s: Iterable[str]) -> "FinFunction":
        s = frozenset(s)
        return cls(s, s, {x: x for x in s})

    @classmethod
    def inclusion(cls, sub: Iterable[str], sup: Iterable[str]) -> "FinFunction":
        sub = frozenset(sub)
        return cls(sub, sup, {x: x for x in sub})

    @classmethod
    def empty(cls, cod: Iterable[str] = ()) -> "FinFunction":
        return cls(frozenset(), cod, {})

    def image(self, xs: Iterable[str] | None = None) -> frozenset:
        xs = self.dom if xs is None else xs
        return frozenset(self.mapping[x] for x in xs)

    def preimage(self, y: str) -> frozenset:
        return frozenset(x for x, v in self.mapping.items() if v == y)

    @property
    def injective(self) -> bool:
        return is_injective(self)

    def to_json(self):
        return {"dom": sorted(self.dom), "cod": sorted(self.cod),
                "map": {k: self.mapping[k] for k in sorted(self.mapping)}}

    @classmethod
    def from_json(cls, obj) -> "FinFunction":
        return cls(obj["dom"], obj["cod"], obj["map"])

    def __repr__(self):
        body = ", ".join(f"{k}->{self.mapping[k]}" for k in sorted(self.mapping))
        return f"FinFunction({{{body}}})"


def compose(g: FinFunction, f: FinFunction) -> FinFunction:
    """``g . f``; requires ``cod(f) == dom(g)``."""
    if f.cod != g.dom:
        raise DomainMismatch("cod(f) differs from dom(g)")
    return FinFunction(f.dom, g.cod, {x: g.mapping[y] for x, y in f.mapping.items()})


def is_injective(f: FinFunction) -> bool:
    return len(set(f.mapping.values())) == len(f.mapping)


def pair_name(b: str, c: str) -> str:
    return f"({b},{c})"


@dataclass(frozen=True)
class Pullback:
    obj: frozenset
    pi_b: FinFunction
    pi_c: FinFunction
    pairs: Mapping[str, tuple] = field(hash=False)  # element name -> (b, c)

    def __iter__(self):
        return iter((self.obj, self.pi_b, self.pi_c))


def pullback(f: FinFunction, g: FinFunction) -> Pullback:
    """Pullback of the cospan ``B -f-> D <-g- C`` as the set of matching pairs."""
    if f.cod != g.cod:
        raise CodomainMismatch("cospan legs have different codomains")
    pairs = {}
    for b in sorted(f.dom):
        for c in sorted(g.dom):
            if f(b) == g(c):
                pairs[pair_name(b, c)] = (b, c)
    obj = frozenset(pairs)
    return Pullback(obj,
                    FinFunction(obj, f.dom, {p: bc[0] for p, bc in pairs.items()}),
                    FinFunction(obj, g.dom, {p: bc[1] for p, bc in pairs.items()}),
                    pairs)


def induced_into_pullback(pb: Pullback, y1: FinFunction, y2: FinFunction) -> FinFunction:
    """The unique ``u: Y -> A`` with ``pi_b . u = y1`` and ``pi_c . u = y2``.

    Raises ``ValueError`` if the comparison square does not commute.
    """
    back = {bc: name for name, bc in pb.pairs.items()}
    out = {}
    for y in y1.dom:
        key = (y1(y), y2(y))
        if key not in back:
            raise ValueError(f"comparison square does not commute at {y}")
        out[y] = back[key]
    return FinFunction(y1.dom, pb.obj, out)


@dataclass(frozen=True)
class Pushout:
    obj: frozenset
    in_b: FinFunction
    in_c: FinFunction

    def __iter__(self):
        return iter((self.obj, self.in_b, self.in_c))


def _classes(f: FinFunction, g: FinFunction) -> list:
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in f.cod:
        parent[("B", b)] = ("B", b)
    for c in g.cod:
        parent[("C", c)] = ("C", c)
    for a in sorted(f.dom):
        x, y = find(("B", f(a))), find(("C", g(a)))
        if x != y:
            parent[max(x, y)] = min(x, y)
    groups = {}
    for x in parent:
        groups.setdefault(find(x), set()).add(x)
    return sorted((sorted(cl) for cl in groups.values()))


def pushout(f: FinFunction, g: FinFunction) -> Pushout:
    """Pushout of the span ``B <-f- A -g-> C`` as ``(B + C)/~``.

    Class naming: a class with exactly one C-element takes that name, else
    one with exactly one B-element takes that name, else ``cls{...}`` over its
    member names.  Name collisions between classes are resolved by priming
    the B-side names.  Along an injective ``f`` every class has one C-element,
    so the C-carrier keeps its names.
    """
    if f.dom != g.dom:
        raise DomainMismatch("span legs have different domains")
    named = []
    for cl in _classes(f, g):
        cs = [n for side, n in cl if side == "C"]
        bs = [n for side, n in cl if side == "B"]
        if len(cs) == 1:
            name, from_c = cs[0], True
        elif len(bs) == 1 and not cs:
            name, from_c = bs[0], False
        else:
            name, from_c = "cls{" + ",".join(sorted({n for _, n in cl})) + "}", False
        named.append((cl, name, from_c))
    taken = {name for _, name, from_c in named if from_c}
    final = []
    for cl, name, from_c in named:
        if not from_c:
            while name in taken:
                name += "'"
            taken.add(name)
        final.append((cl, name))
    in_b, in_c = {}, {}
    for cl, name in final:
        for side, n in cl:
            (in_b if side == "B" else in_c)[n] = name
    obj = frozenset(name for _, name in final)
    return Pushout(obj, FinFunction(f.cod, obj, in_b), FinFunction(g.cod, obj, in_c))


def induced_from_pushout(po: Pushout, x1: FinFunction, x2: FinFunction) -> FinFunction:
    """The unique ``u: D -> X`` with ``u . in_b = x1`` and ``u . in_c = x2``."""
    out = {}
    for leg, x in ((po.in_b, x1), (po.in_c, x2)):
        for src, d in leg.mapping.items():
            v = x(src)
            if out.setdefault(d, v) != v:
                raise ValueError(f"comparison cocone is not compatible at {d}")
    return FinFunction(po.obj, x1.cod, out)


def pushout_complement(l: FinFunction, m: FinFunction):
    """For injective ``l: A -> B`` and ``m: B -> G`` return ``(D, d, g)``.

    ``D = G - m(B - l(A))`` with ``d = m . l`` corestricted to ``D`` and ``g``
    the inclusion ``D -> G``.
    """
    if not is_injective(l):
        raise NotInjective("l is not injective")
    if not is_injective(m):
        raise NotInjective("m is not injective")
    if l.cod != m.dom:
        raise DomainMismatch("cod(l) differs from dom(m)")
    deleted = m.image(l.cod - l.image())
    d_obj = m.cod - deleted
    d = FinFunction(l.dom, d_obj, {a: m(l(a)) for a in l.dom})
    return d_obj, d, FinFunction.inclusion(d_obj, m.cod)


def find_bijection(xs: Iterable[str], ys: Iterable[str], ok=None, limit: int = 8):
    """Search a bijection ``xs -> ys`` accepted by ``ok(mapping)``; None if absent."""
    xs, ys = sorted(xs), sorted(ys)
    if len(xs) != len(ys):
        return None
    if len(xs) > limit:
        raise ValueError(f"bijection search is bounded at {limit} elements")
    for perm in itertools.permutations(ys):
        mapping = dict(zip(xs, perm))
        if ok is None or ok(mapping):
            return mapping
    return None
