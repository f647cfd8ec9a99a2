"""Pullback preservation for functor expressions, decided at bounded size.

For a cospan ``B -f-> D <-g- C`` with pullback ``(A, pB, pC)`` the functor
``F`` maps the pullback into the pullback ``P`` of ``F(f)`` and ``F(g)`` by

    h(t) = (F(pB)(t), F(pC)(t)).

``F`` preserves the pullback when ``h`` is a bijection.  Along an injective
``g`` an explicit inverse ``hbar`` exists for every constructor in the
language; :func:`inverse_hbar` builds it by structural recursion.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import terms as T
from .errors import NonInjectiveLeg, NotAnElement, NotInPullback, ShapeMismatch, UnknownAtom
from .finset import FinFunction, Pullback, pullback
from .functors import (
    CarrierEnv, CopyF, CoprodF, Final, FunctorExpr, IdSort, PotF, PotOmF, PPaF,
    PPbF, ProdF, SortE, SortN, SortedFunction, StarF, element_of,
    enumerate_functor, map_element,
)
from .terms import Atom, Pair, Seq, SetOf, Term, UNIT

__all__ = [
    "Cospan", "PreservationVerdict", "functor_pullback", "comparison_h",
    "inverse_hbar", "check_pb_preservation", "MODES",
]

MODES = ("ordinary", "along_monos", "weak")


@dataclass(frozen=True)
class Cospan:
    """``B -f-> D <-g- C`` on nodes, with an optional edge component."""

    f: FinFunction
    g: FinFunction
    fE: FinFunction = field(default_factory=FinFunction.empty)
    gE: FinFunction = field(default_factory=FinFunction.empty)

    def __post_init__(self):
        from .errors import CodomainMismatch
        if self.f.cod != self.g.cod or self.fE.cod != self.gE.cod:
            raise CodomainMismatch("cospan legs have different codomains")

    @property
    def mono(self) -> bool:
        """True when ``g`` is injective on both sorts."""
        return self.g.injective and self.gE.injective

    def legs(self):
        return SortedFunction(self.f, self.fE), SortedFunction(self.g, self.gE)

    def to_json(self):
        out = {"f": self.f.to_json(), "g": self.g.to_json()}
        if self.fE.dom or self.gE.dom or self.fE.cod:
            out.update(fE=self.fE.to_json(), gE=self.gE.to_json())
        return out

    @classmethod
    def from_json(cls, obj) -> "Cospan":
        kw = {}
        if "fE" in obj:
            kw = dict(fE=FinFunction.from_json(obj["fE"]), gE=FinFunction.from_json(obj["gE"]))
        return cls(FinFunction.from_json(obj["f"]), FinFunction.from_json(obj["g"]), **kw)


@dataclass(frozen=True)
class _Square:
    envA: CarrierEnv
    envB: CarrierEnv
    envC: CarrierEnv
    pB: SortedFunction
    pC: SortedFunction
    pbN: Pullback
    pbE: Pullback


_squares: dict = {}


def _square(cs: Cospan) -> _Square:
    sq = _squares.get(cs)
    if sq is None:
        pbN, pbE = pullback(cs.f, cs.g), pullback(cs.fE, cs.gE)
        sq = _Square(CarrierEnv(pbN.obj, pbE.obj), CarrierEnv(cs.f.dom, cs.fE.dom),
                     CarrierEnv(cs.g.dom, cs.gE.dom),
                     SortedFunction(pbN.pi_b, pbE.pi_b), SortedFunction(pbN.pi_c, pbE.pi_c),
                     pbN, pbE)
        if len(_squares) > 256:
            _squares.clear()
        _squares[cs] = sq
    return sq


def functor_pullback(F: FunctorExpr, cs: Cospan, depth: int = 3, width: int = 3,
                     length: int = 3) -> list:
    """All enumerated pairs ``(X, Y)`` in ``F(B) x F(C)`` with ``F(f)X = F(g)Y``."""
    sq = _square(cs)
    f, g = cs.legs()
    by_image: dict = {}
    for y in enumerate_functor(F, sq.envC, depth, width, length):
        by_image.setdefault(map_element(F, g, y), []).append(y)
    out = []
    for x in enumerate_functor(F, sq.envB, depth, width, length):
        for y in by_image.get(map_element(F, f, x), ()):
            out.append(Pair(x, y))
    return sorted(out)


def comparison_h(F: FunctorExpr, cs: Cospan, t: Term) -> Pair:
    sq = _square(cs)
    if not element_of(F, sq.envA, t):
        raise NotAnElement(f"{T.show(t)} is not in F(A)")
    return Pair(map_element(F, sq.pB, t), map_element(F, sq.pC, t))


class _Hbar:
    def __init__(self, cs: Cospan, literal: bool):
        self.cs = cs
        self.sq = _square(cs)
        self.f, self.g = cs.legs()
        self.literal = literal

    def matches(self, F, x, y) -> bool:
        try:
            return map_element(F, self.f, x) == map_element(F, self.g, y)
        except (ShapeMismatch, UnknownAtom):
            return False

    def base(self, F, x, y) -> bool:
        return element_of(F, self.sq.envB, x) and element_of(F, self.sq.envC, y)

    def atom(self, fun: FinFunction, pb: Pullback, x, y):
        if not (isinstance(x, Atom) and isinstance(y, Atom)):
            raise NotInPullback(f"expected atoms, got {T.show(x)} and {T.show(y)}")
        if x.name not in fun.dom or y.name not in pb.pi_c.cod:
            raise NotInPullback(f"({x.name},{y.name}) is outside the carriers")
        name = T.Atom(f"({x.name},{y.name})")
        if name.name not in pb.obj:
            raise NotInPullback(f"{x.name} and {y.name} have different images")
        return name

    def matched_members(self, F, X, Y):
        """Pairs (x, y) of members whose images under F agree."""
        for x in X.members:
            for y in Y.members:
                if self.matches(F, x, y):
                    yield x, y

    def __call__(self, F: FunctorExpr, X: Term, Y: Term) -> Term:
        if isinstance(F, (SortN, IdSort)):
            return self.atom(self.cs.f, self.sq.pbN, X, Y)
        if isinstance(F, SortE):
            return self.atom(self.cs.fE, self.sq.pbE, X, Y)
        if isinstance(F, Final):
            return UNIT
        if isinstance(F, ProdF):
            if not (isinstance(X, Pair) and isinstance(Y, Pair)):
                raise NotInPullback("product components must be pairs")
            return Pair(self(F.left, X.left, Y.left), self(F.right, X.right, Y.right))
        if isinstance(F, CoprodF):
            side = F.left if self.base(F.left, X, Y) else F.right
            return self(side, X, Y)
        if isinstance(F, (StarF, CopyF)):
            if not (isinstance(X, Seq) and isinstance(Y, Seq)) or len(X) != len(Y):
                raise NotInPullback("sequence components must have equal length")
            return Seq(self(F.arg, x, y) for x, y in zip(X.items, Y.items))
        if isinstance(F, PotF):
            self._need_sets(X, Y)
            return SetOf(self(F.arg, x, y) for x, y in self.matched_members(F.arg, X, Y))
        if isinstance(F, (PPaF, PPbF, PotOmF)):
            if self.base(F.arg, X, Y) and not isinstance(F, PPbF):
                return self(F.arg, X, Y)
            self._need_sets(X, Y)
            if self.literal:
                return self._literal(F, X, Y)
            out = []
            for x, y in self.matched_members(F, X, Y):
                out.append(self(F.arg if self.base(F.arg, x, y) else F, x, y))
            return SetOf(out)
        raise TypeError(f"not a functor expression: {F!r}")

    @staticmethod
    def _need_sets(X, Y):
        if not (isinstance(X, SetOf) and isinstance(Y, SetOf)):
            raise NotInPullback(f"expected sets, got {T.show(X)} and {T.show(Y)}")

    def _literal(self, F, X, Y):
        # base pairs with equal images, then the flattened union over all
        # pairs of set members
        base = [self(F.arg, x, y) for x in X.members for y in Y.members
                if self.base(F.arg, x, y) and self.matches(F.arg, x, y)]
        flat = []
        for x in X.members:
            for y in Y.members:
                if isinstance(x, SetOf) and isinstance(y, SetOf):
                    flat.extend(self._literal(F, x, y).members)
        return SetOf(base + flat)


def inverse_hbar(F: FunctorExpr, cs: Cospan, xy: Pair, literal: bool = False) -> Term:
    """The inverse of :func:`comparison_h` along an injective ``g``.

    Matched atoms ``x, y`` go to the pair atom ``(x,y)``; a pair of sets goes
    to the set of ``hbar(x', y')`` over members with equal images.  Since
    ``F(g)`` is injective every member of ``X`` has exactly one partner in
    ``Y``.  ``literal=True`` instead unions the recursive results over all
    pairs of set members, which loses one level of nesting per step; it is
    kept for comparison only.
    """
    if not cs.mono:
        raise NonInjectiveLeg("g must be injective on both sorts")
    if not isinstance(xy, Pair):
        raise NotInPullback("expected a pair (X, Y)")
    sq = _square(cs)
    X, Y = xy.left, xy.right
    f, g = cs.legs()
    if not (element_of(F, sq.envB, X) and element_of(F, sq.envC, Y)):
        raise NotInPullback("components are not elements of F(B) and F(C)")
    if map_element(F, f, X) != map_element(F, g, Y):
        raise NotInPullback("components have different images in F(D)")
    return _Hbar(cs, literal)(F, X, Y)


@dataclass(frozen=True)
class PreservationVerdict:
    holds: bool
    mode: str
    sizes: tuple  # (|F(A)|, |P|) within the bounds
    witness: Optional[dict] = None

    def to_json(self):
        return {"holds": self.holds, "mode": self.mode, "sizes": list(self.sizes),
                "witness": self.witness}


def check_pb_preservation(F: FunctorExpr, cs: Cospan, depth: int = 3, width: int = 3,
                          length: int = 3, mode: str = "ordinary") -> PreservationVerdict:
    """Does ``F`` preserve the pullback of ``cs`` within the bounds?

    ``ordinary`` and ``along_monos`` ask for ``h`` to be bijective onto the
    enumerated ``P``; ``weak`` only asks for surjectivity.  ``along_monos``
    requires ``g`` to be injective.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if mode == "along_monos" and not cs.mono:
        raise NonInjectiveLeg("along_monos needs an injective g")
    sq = _square(cs)
    FA = list(enumerate_functor(F, sq.envA, depth, width, length))
    P = functor_pullback(F, cs, depth, width, length)
    preimage: dict = {}
    witness = None
    for t in FA:
        img = Pair(map_element(F, sq.pB, t), map_element(F, sq.pC, t))
        if img in preimage and witness is None and mode != "weak":
            witness = {"kind": "merged", "elements": [T.term_to_json(preimage[img]),
                                                      T.term_to_json(t)]}
        preimage.setdefault(img, t)
    if witness is None:
        for p in P:
            if p not in preimage:
                witness = {"kind": "not_hit", "element": T.term_to_json(p)}
                break
    return PreservationVerdict(witness is None, mode, (len(FA), len(P)), witness)
