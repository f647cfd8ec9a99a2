"""Endofunctor expressions over the sorts N and E.

Concrete syntax::

    expr := "N" | "E" | "X" | "1" | "Pot(" expr ")" | "PotFin(" expr ")"
          | "Pot[" nat "," nat "](" expr ")" | "PotDir(" expr ")"
          | "PPa(" expr ")" | "PPb(" expr ")" | "PotOm(" expr ")"
          | "Star(" expr ")" | "Copy" nat "(" expr ")"
          | expr "*" expr | expr "+" expr | "(" expr ")"

``*`` binds tighter than ``+``; both associate to the left.  ``X`` is the
one-sorted identity and is interpreted on the node carrier.

Each expression has three readings: membership of a term in F(N, E),
the action of F on a pair of functions, and bounded enumeration of F(N, E).
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator

from . import terms as T
from .errors import ParseError, ShapeMismatch, UnknownAtom
from .finset import FinFunction, compose
from .terms import Atom, Flavor, Pair, Seq, SetOf, Term, UNIT

__all__ = [
    "FunctorExpr", "SortN", "SortE", "IdSort", "Final", "PotF", "PPaF", "PPbF",
    "PotOmF", "ProdF", "CoprodF", "StarF", "CopyF", "N", "E", "X", "ONE",
    "CarrierEnv", "SortedFunction", "Bounds", "parse_functor", "pretty",
    "element_of", "map_element", "enumerate_functor", "is_finite", "POT_DIR",
]


class FunctorExpr:
    def __str__(self):
        return pretty(self)


@dataclass(frozen=True)
class SortN(FunctorExpr):
    pass


@dataclass(frozen=True)
class SortE(FunctorExpr):
    pass


@dataclass(frozen=True)
class IdSort(FunctorExpr):
    pass


@dataclass(frozen=True)
class Final(FunctorExpr):
    pass


@dataclass(frozen=True)
class PotF(FunctorExpr):
    flavor: Flavor
    arg: FunctorExpr

    def __post_init__(self):
        if not self.flavor.flat:
            raise ValueError("PotF takes Pot, PotFin or PotRange")


@dataclass(frozen=True)
class PPaF(FunctorExpr):
    arg: FunctorExpr


@dataclass(frozen=True)
class PPbF(FunctorExpr):
    arg: FunctorExpr


@dataclass(frozen=True)
class PotOmF(FunctorExpr):
    arg: FunctorExpr


@dataclass(frozen=True)
class ProdF(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr


@dataclass(frozen=True)
class CoprodF(FunctorExpr):
    left: FunctorExpr
    right: FunctorExpr


@dataclass(frozen=True)
class StarF(FunctorExpr):
    arg: FunctorExpr


@dataclass(frozen=True)
class CopyF(FunctorExpr):
    """n-fold product of ``arg``; elements are sequences of length n."""

    n: int
    arg: FunctorExpr

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Copy needs n >= 1")


N, E, X, ONE = SortN(), SortE(), IdSort(), Final()
# undirected edge sets: one or two ends (a singleton is a loop)
POT_DIR = T.pot_range(1, 2)


@dataclass(frozen=True)
class CarrierEnv:
    N: frozenset
    E: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "N", frozenset(self.N))
        object.__setattr__(self, "E", frozenset(self.E))
        if self.N & self.E:
            raise ValueError(f"node and edge names overlap: {sorted(self.N & self.E)}")


@dataclass(frozen=True)
class SortedFunction:
    fN: FinFunction
    fE: FinFunction = field(default_factory=FinFunction.empty)

    @classmethod
    def identity(cls, env: CarrierEnv) -> "SortedFunction":
        return cls(FinFunction.identity(env.N), FinFunction.identity(env.E))

    @property
    def dom(self) -> CarrierEnv:
        return CarrierEnv(self.fN.dom, self.fE.dom)

    @property
    def cod(self) -> CarrierEnv:
        return CarrierEnv(self.fN.cod, self.fE.cod)

    @property
    def injective(self) -> bool:
        return self.fN.injective and self.fE.injective

    def then(self, g: "SortedFunction") -> "SortedFunction":
        """``g . self``"""
        return SortedFunction(compose(g.fN, self.fN), compose(g.fE, self.fE))


@dataclass(frozen=True)
class Bounds:
    depth: int = 3
    width: int = 3
    length: int = 3


# --------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(PotFin|PotDir|PotOm|Pot|PPa|PPb|Star|Copy|\d+|[NEX1]|[()\[\],*+])")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
            self.toks.append((m.group(1), m.start(1)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def pos(self):
        return self.toks[self.i][1] if self.i < len(self.toks) else len(self.text)

    def take(self, want=None):
        tok = self.peek()
        if tok is None or (want is not None and tok != want):
            raise ParseError(f"expected {want or 'a token'!r}, found {tok!r}", self.pos())
        self.i += 1
        return tok

    def nat(self):
        tok = self.peek()
        if tok is None or not tok.isdigit():
            raise ParseError("expected a number", self.pos())
        self.i += 1
        return int(tok)

    def expr(self):
        left = self.term()
        while self.peek() == "+":
            self.take()
            left = CoprodF(left, self.term())
        return left

    def term(self):
        left = self.atom()
        while self.peek() == "*":
            self.take()
            left = ProdF(left, self.atom())
        return left

    def wrapped(self):
        self.take("(")
        e = self.expr()
        self.take(")")
        return e

    def atom(self):
        tok = self.peek()
        simple = {"N": N, "E": E, "X": X, "1": ONE}
        if tok in simple:
            self.take()
            return simple[tok]
        if tok == "(":
            return self.wrapped()
        unary = {"Pot": T.POT, "PotFin": T.POTFIN, "PotDir": POT_DIR}
        if tok in ("Pot", "PotFin", "PotDir"):
            self.take()
            if tok == "Pot" and self.peek() == "[":
                self.take("[")
                lo = self.nat()
                self.take(",")
                hi = self.nat()
                self.take("]")
                if lo > hi:
                    raise ParseError("Pot[i,j] needs i <= j", self.pos())
                return PotF(T.pot_range(lo, hi), self.wrapped())
            return PotF(unary[tok], self.wrapped())
        wrappers = {"PPa": PPaF, "PPb": PPbF, "PotOm": PotOmF, "Star": StarF}
        if tok in wrappers:
            self.take()
            return wrappers[tok](self.wrapped())
        if tok == "Copy":
            self.take()
            n = self.nat()
            if n < 1:
                raise ParseError("Copy needs n >= 1", self.pos())
            return CopyF(n, self.wrapped())
        raise ParseError(f"unexpected {tok!r}", self.pos())


def parse_functor(text: str) -> FunctorExpr:
    p = _Parser(text)
    e = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing {p.peek()!r}", p.pos())
    return e


def pretty(F: FunctorExpr) -> str:
    if isinstance(F, SortN):
        return "N"
    if isinstance(F, SortE):
        return "E"
    if isinstance(F, IdSort):
        return "X"
    if isinstance(F, Final):
        return "1"
    if isinstance(F, PotF):
        k = F.flavor
        head = {"Pot": "Pot", "PotFin": "PotFin"}.get(k.kind, f"Pot[{k.lo},{k.hi}]")
        return f"{head}({pretty(F.arg)})"
    if isinstance(F, (PPaF, PPbF, PotOmF, StarF)):
        head = {PPaF: "PPa", PPbF: "PPb", PotOmF: "PotOm", StarF: "Star"}[type(F)]
        return f"{head}({pretty(F.arg)})"
    if isinstance(F, CopyF):
        return f"Copy{F.n}({pretty(F.arg)})"
    if isinstance(F, ProdF):
        l, r = pretty(F.left), pretty(F.right)
        if isinstance(F.left, CoprodF):
            l = f"({l})"
        if isinstance(F.right, (CoprodF, ProdF)):
            r = f"({r})"
        return f"{l} * {r}"
    if isinstance(F, CoprodF):
        r = pretty(F.right)
        if isinstance(F.right, CoprodF):
            r = f"({r})"
        return f"{pretty(F.left)} + {r}"
    raise TypeError(f"not a functor expression: {F!r}")


# --------------------------------------------------------------------------
# membership


def element_of(F: FunctorExpr, env: CarrierEnv, t: Term) -> bool:
    """Decide ``t in F(env)``."""
    if isinstance(F, (SortN, IdSort)):
        return isinstance(t, Atom) and t.name in env.N
    if isinstance(F, SortE):
        return isinstance(t, Atom) and t.name in env.E
    if isinstance(F, Final):
        return t == UNIT
    if isinstance(F, ProdF):
        return (isinstance(t, Pair) and element_of(F.left, env, t.left)
                and element_of(F.right, env, t.right))
    if isinstance(F, CoprodF):
        return element_of(F.left, env, t) or element_of(F.right, env, t)
    if isinstance(F, StarF):
        return isinstance(t, Seq) and all(element_of(F.arg, env, i) for i in t.items)
    if isinstance(F, CopyF):
        return (isinstance(t, Seq) and len(t) == F.n
                and all(element_of(F.arg, env, i) for i in t.items))
    base = lambda s: element_of(F.arg, env, s)
    if isinstance(F, PotF):
        return T.in_flat(t, base, F.flavor)
    if isinstance(F, PPaF):
        return T.in_ppa(t, base)
    if isinstance(F, PPbF):
        return T.in_ppb(t, base)
    if isinstance(F, PotOmF):
        return T.in_potom(t, base)
    raise TypeError(f"not a functor expression: {F!r}")


# --------------------------------------------------------------------------
# action on morphisms


def _map_atom(fun: FinFunction, t: Term) -> Term:
    if not isinstance(t, Atom):
        raise ShapeMismatch(f"expected an atom, got {T.show(t)}")
    if t.name not in fun.dom:
        raise UnknownAtom(f"atom {t.name!r} is outside the domain")
    return Atom(fun(t.name))


def map_element(F: FunctorExpr, f: SortedFunction, t: Term) -> Term:
    """Apply ``F(f)`` to ``t``: atoms are renamed, sets re-canonicalized."""
    if isinstance(F, (SortN, IdSort)):
        return _map_atom(f.fN, t)
    if isinstance(F, SortE):
        return _map_atom(f.fE, t)
    if isinstance(F, Final):
        if t != UNIT:
            raise ShapeMismatch("the final functor only contains unit")
        return UNIT
    if isinstance(F, ProdF):
        if not isinstance(t, Pair):
            raise ShapeMismatch(f"expected a pair, got {T.show(t)}")
        return Pair(map_element(F.left, f, t.left), map_element(F.right, f, t.right))
    if isinstance(F, CoprodF):
        try:
            return map_element(F.left, f, t)
        except (ShapeMismatch, UnknownAtom):
            return map_element(F.right, f, t)
    if isinstance(F, (StarF, CopyF)):
        if not isinstance(t, Seq) or isinstance(F, CopyF) and len(t) != F.n:
            raise ShapeMismatch(f"expected a sequence, got {T.show(t)}")
        return Seq(map_element(F.arg, f, i) for i in t.items)
    if isinstance(F, PotF):
        if not isinstance(t, SetOf):
            raise ShapeMismatch(f"expected a set, got {T.show(t)}")
        return SetOf(map_element(F.arg, f, m) for m in t.members)
    if isinstance(F, (PPaF, PPbF, PotOmF)):
        # total action: set structure is kept, base elements go through the argument
        if isinstance(t, SetOf):
            try:
                return map_element(F.arg, f, t)
            except (ShapeMismatch, UnknownAtom):
                return SetOf(map_element(F, f, m) for m in t.members)
        return map_element(F.arg, f, t)
    raise TypeError(f"not a functor expression: {F!r}")


# --------------------------------------------------------------------------
# enumeration


def is_finite(F: FunctorExpr) -> bool:
    """True when F(N, E) is finite for finite carriers (no recursion, no words)."""
    if isinstance(F, (SortN, SortE, IdSort, Final)):
        return True
    if isinstance(F, (ProdF, CoprodF)):
        return is_finite(F.left) and is_finite(F.right)
    if isinstance(F, (PotF, CopyF)):
        return is_finite(F.arg)
    return False


def _enum(F: FunctorExpr, env: CarrierEnv, d: int, b: Bounds) -> list:
    """Elements of F(env) of depth <= d, sorted and duplicate-free."""
    if isinstance(F, (SortN, IdSort)):
        return sorted(Atom(n) for n in env.N)
    if isinstance(F, SortE):
        return sorted(Atom(n) for n in env.E)
    if isinstance(F, Final):
        return [UNIT]
    if isinstance(F, ProdF):
        ls, rs = _enum(F.left, env, d, b), _enum(F.right, env, d, b)
        return sorted(Pair(l, r) for l in ls for r in rs)
    if isinstance(F, CoprodF):
        return sorted(set(_enum(F.left, env, d, b)) | set(_enum(F.right, env, d, b)))
    if isinstance(F, StarF):
        items = _enum(F.arg, env, d, b)
        return sorted(Seq(w) for k in range(b.length + 1)
                      for w in itertools.product(items, repeat=k))
    if isinstance(F, CopyF):
        items = _enum(F.arg, env, d, b)
        return sorted(Seq(w) for w in itertools.product(items, repeat=F.n))
    if isinstance(F, PotF):
        if is_finite(F.arg):
            return sorted(T.enum_flat(_enum(F.arg, env, d, b), F.flavor, None))
        if d < 1:
            return []
        return sorted(T.enum_flat(_enum(F.arg, env, d - 1, b), F.flavor, b.width))
    base_at = lambda k: _enum(F.arg, env, k, b)
    if isinstance(F, PPaF):
        return T.enum_ppa(base_at, d, b.width)
    if isinstance(F, PPbF):
        return T.enum_ppb(base_at, d, b.width)
    if isinstance(F, PotOmF):
        return T.enum_potom(base_at, d, b.width)
    raise TypeError(f"not a functor expression: {F!r}")


def enumerate_functor(F: FunctorExpr, env: CarrierEnv, depth_bound: int = 3,
                      width_bound: int = 3, len_bound: int = 3) -> Iterator[Term]:
    """Elements of F(env) within the bounds, in canonical order.

    ``depth_bound`` caps set nesting, ``width_bound`` caps the size of
    recursively built sets, ``len_bound`` caps words of ``Star``.  Powersets
    of finite arguments are emitted in full.
    """
    b = Bounds(depth_bound, width_bound, len_bound)
    if min(b.depth, b.width, b.length) < 0:
        raise ValueError("bounds must be non-negative")
    return iter(_enum(F, env, b.depth, b))
