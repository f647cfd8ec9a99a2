"""Finite nested terms: atoms, extensional sets, pairs, sequences and unit.

Sets are canonical on construction (duplicate-free, members sorted by the
canonical term order), so structural equality is extensional equality.
The same module decides membership in the (super)power-set flavors and
enumerates bounded fragments of them.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import FormatError, ParseError, UnknownAtom

__all__ = [
    "Term", "Atom", "SetOf", "Pair", "Seq", "UNIT", "Unit",
    "make_set", "depth", "atoms_of", "Flavor", "POT", "POTFIN", "PPA", "PPB",
    "POTOM", "pot_range", "member_of", "enumerate_terms", "parse_term",
    "show", "term_to_json", "term_from_json",
]


class Term:
    """Base class of all nested terms. Instances are immutable and hashable."""

    __slots__ = ("_key", "_hash", "_depth")

    def _init(self, key):
        object.__setattr__(self, "_key", key)
        object.__setattr__(self, "_hash", hash(key))
        object.__setattr__(self, "_depth", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Term):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __le__(self, other):
        return self._key <= other._key

    def __gt__(self, other):
        return self._key > other._key

    def __ge__(self, other):
        return self._key >= other._key

    def __str__(self):
        return show(self)

    def __repr__(self):
        return f"{type(self).__name__}<{show(self)}>"


class Atom(Term):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not isinstance(name, str) or not name:
            raise ValueError("atom names are nonempty strings")
        object.__setattr__(self, "name", name)
        self._init((0, name))


class SetOf(Term):
    """A finite set of terms, stored as a sorted duplicate-free tuple."""

    __slots__ = ("members",)

    def __init__(self, members: Iterable[Term] = ()):
        ms = tuple(sorted(set(members)))
        object.__setattr__(self, "members", ms)
        self._init((1, tuple(m._key for m in ms)))

    @classmethod
    def _from_sorted(cls, ms: tuple) -> "SetOf":
        # caller guarantees ms is strictly increasing in the canonical order
        self = cls.__new__(cls)
        object.__setattr__(self, "members", ms)
        self._init((1, tuple(m._key for m in ms)))
        return self

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, item):
        return item in self.members


class Pair(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        self._init((2, left._key, right._key))


class Seq(Term):
    __slots__ = ("items",)

    def __init__(self, items: Iterable[Term] = ()):
        its = tuple(items)
        object.__setattr__(self, "items", its)
        self._init((3, tuple(i._key for i in its)))

    def __iter__(self):
        return iter(self.items)

    def __len__(self):
        return len(self.items)


class Unit(Term):
    __slots__ = ()

    def __init__(self):
        self._init((4,))


UNIT = Unit()


def make_set(members: Iterable[Term]) -> SetOf:
    return SetOf(members)


def depth(t: Term) -> int:
    """Number of nested set parentheses (0 for atoms, 1 for the empty set)."""
    d = t._depth
    if d is not None:
        return d
    if isinstance(t, SetOf):
        d = 1 + max((depth(m) for m in t.members), default=0)
    elif isinstance(t, Pair):
        d = max(depth(t.left), depth(t.right))
    elif isinstance(t, Seq):
        d = max((depth(i) for i in t.items), default=0)
    else:
        d = 0
    object.__setattr__(t, "_depth", d)
    return d


def children(t: Term) -> tuple:
    if isinstance(t, SetOf):
        return t.members
    if isinstance(t, Pair):
        return (t.left, t.right)
    if isinstance(t, Seq):
        return t.items
    return ()


def atoms_of(t: Term) -> frozenset:
    """Names of all atoms occurring at any nesting level."""
    out = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Atom):
            out.add(s.name)
        else:
            stack.extend(children(s))
    return frozenset(out)


def substitute(t: Term, mapping: Callable[[str], str]) -> Term:
    """Rename every atom through ``mapping``; sets are re-canonicalized."""
    if isinstance(t, Atom):
        return Atom(mapping(t.name))
    if isinstance(t, SetOf):
        return SetOf(substitute(m, mapping) for m in t.members)
    if isinstance(t, Pair):
        return Pair(substitute(t.left, mapping), substitute(t.right, mapping))
    if isinstance(t, Seq):
        return Seq(substitute(i, mapping) for i in t.items)
    return t


# --------------------------------------------------------------------------
# flavors


@dataclass(frozen=True)
class Flavor:
    kind: str  # Pot | PotFin | PotRange | PPa | PPb | PotOm
    lo: int = 0
    hi: int | None = None

    def __post_init__(self):
        if self.kind not in ("Pot", "PotFin", "PotRange", "PPa", "PPb", "PotOm"):
            raise ValueError(f"unknown flavor {self.kind!r}")
        if self.kind == "PotRange" and (self.hi is None or self.lo > self.hi):
            raise ValueError("PotRange needs lo <= hi")

    @property
    def flat(self) -> bool:
        return self.kind in ("Pot", "PotFin", "PotRange")

    def __str__(self):
        if self.kind == "PotRange":
            return f"Pot[{self.lo},{self.hi}]"
        return self.kind


POT = Flavor("Pot")
POTFIN = Flavor("PotFin")
PPA = Flavor("PPa")
PPB = Flavor("PPb")
POTOM = Flavor("PotOm")


def pot_range(lo: int, hi: int) -> Flavor:
    return Flavor("PotRange", lo, hi)


# Membership predicates, generic in the base-element predicate so that the
# functor language can reuse them over arbitrary argument functors.

def in_flat(t: Term, is_base, flavor: Flavor) -> bool:
    if not isinstance(t, SetOf):
        return False
    if flavor.kind == "PotRange" and not flavor.lo <= len(t) <= flavor.hi:
        return False
    return all(is_base(m) for m in t.members)


def in_ppa(t: Term, is_base) -> bool:
    if is_base(t):
        return True
    return isinstance(t, SetOf) and all(in_ppa(m, is_base) for m in t.members)


def in_ppb(t: Term, is_base) -> bool:
    if not isinstance(t, SetOf):
        return False
    ms = t.members
    return all(is_base(m) for m in ms) or all(in_ppb(m, is_base) for m in ms)


def potom_levels(t: Term, is_base, cap: int) -> frozenset:
    """Levels ``i <= cap`` with ``t`` in the i-fold iterated powerset of the base."""
    levels = {0} if is_base(t) else set()
    if isinstance(t, SetOf):
        common = set(range(cap))
        for m in t.members:
            common &= potom_levels(m, is_base, cap)
            if not common:
                break
        levels |= {i + 1 for i in common}
    return frozenset(levels)


def in_potom(t: Term, is_base) -> bool:
    return bool(potom_levels(t, is_base, depth(t) + 1))


def in_flavor(t: Term, is_base, flavor: Flavor) -> bool:
    if flavor.flat:
        return in_flat(t, is_base, flavor)
    if flavor.kind == "PPa":
        return in_ppa(t, is_base)
    if flavor.kind == "PPb":
        return in_ppb(t, is_base)
    return in_potom(t, is_base)


def _pure(t: Term) -> bool:
    if isinstance(t, Atom):
        return True
    return isinstance(t, SetOf) and all(_pure(m) for m in t.members)


def member_of(t: Term, universe: Iterable[str], flavor: Flavor) -> bool:
    """Decide whether ``t`` belongs to ``flavor`` applied to the atom set ``universe``."""
    universe = frozenset(universe)
    stray = atoms_of(t) - universe
    if stray:
        raise UnknownAtom(f"atoms outside the universe: {sorted(stray)}")
    if not _pure(t):
        return False
    return in_flavor(t, lambda s: isinstance(s, Atom), flavor)


# --------------------------------------------------------------------------
# enumeration


def subsets(pool: Sequence[Term], max_size: int, min_size: int = 0) -> list:
    """All sets drawn from ``pool`` with cardinality in ``[min_size, max_size]``."""
    pool = sorted(set(pool))
    out = []
    for k in range(min_size, min(max_size, len(pool)) + 1):
        out.extend(SetOf._from_sorted(c) for c in itertools.combinations(pool, k))
    return out


def enum_flat(base: Sequence[Term], flavor: Flavor, width: int | None) -> list:
    lo, hi = (flavor.lo, flavor.hi) if flavor.kind == "PotRange" else (0, len(base))
    if width is not None:
        hi = min(hi, width)
    return subsets(base, hi, lo)


def enum_ppa(base_at, depth_bound: int, width: int) -> list:
    """PPa over a base; ``base_at(d)`` lists base elements of depth <= d."""
    level = sorted(set(base_at(0)))
    for d in range(1, depth_bound + 1):
        level = sorted(set(base_at(d)) | set(subsets(level, width)))
    return level


def enum_ppb(base_at, depth_bound: int, width: int) -> list:
    level: list = []
    for d in range(1, depth_bound + 1):
        level = sorted(set(subsets(sorted(set(base_at(d - 1))), width))
                       | set(subsets(level, width)))
    return level


def enum_potom(base_at, depth_bound: int, width: int) -> list:
    out = set()
    for i in range(depth_bound + 1):
        # the i-fold iterated powerset, restricted to depth <= depth_bound
        layer = sorted(set(base_at(depth_bound - i)))
        for _ in range(i):
            layer = subsets(layer, width)
        out.update(layer)
    return sorted(out)


def enumerate_terms(universe: Iterable[str], flavor: Flavor, depth_bound: int,
                    width_bound: int) -> Iterator[Term]:
    """Members of ``flavor`` over ``universe`` within the bounds, in canonical order.

    The flat flavors (Pot, PotFin, PotRange) are finite over a finite
    universe and are emitted in full; the bounds only cut the recursive ones.
    """
    if depth_bound < 0 or width_bound < 0:
        raise ValueError("bounds must be non-negative")
    atoms = sorted(Atom(a) for a in set(universe))
    if flavor.flat:
        terms = enum_flat(atoms, flavor, None)
    else:
        base_at = lambda d: atoms
        if flavor.kind == "PPa":
            terms = enum_ppa(base_at, depth_bound, width_bound)
        elif flavor.kind == "PPb":
            terms = enum_ppb(base_at, depth_bound, width_bound)
        else:
            terms = enum_potom(base_at, depth_bound, width_bound)
    return iter(sorted(terms))


# --------------------------------------------------------------------------
# text syntax:  a  {a,b}  (x,y)  <a,b>  ()

_PLAIN = re.compile(r"[^\s{}()<>,\"]+")


def show(t: Term) -> str:
    if isinstance(t, Atom):
        return t.name if _PLAIN.fullmatch(t.name) else '"' + t.name.replace('"', '\\"') + '"'
    if isinstance(t, SetOf):
        return "{" + ",".join(show(m) for m in t.members) + "}"
    if isinstance(t, Pair):
        return f"({show(t.left)},{show(t.right)})"
    if isinstance(t, Seq):
        return "<" + ",".join(show(i) for i in t.items) + ">"
    return "()"


class _TermParser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def items(self, close):
        out = []
        if self.peek() == close:
            self.pos += 1
            return out
        while True:
            out.append(self.term())
            if self.peek() == ",":
                self.pos += 1
                continue
            self.expect(close)
            return out

    def term(self) -> Term:
        ch = self.peek()
        if ch == "{":
            self.pos += 1
            return SetOf(self.items("}"))
        if ch == "<":
            self.pos += 1
            return Seq(self.items(">"))
        if ch == "(":
            self.pos += 1
            parts = self.items(")")
            if not parts:
                return UNIT
            if len(parts) != 2:
                raise ParseError("pairs have exactly two components", self.pos)
            return Pair(*parts)
        if ch == '"':
            m = re.compile(r'"((?:[^"\\]|\\.)*)"').match(self.text, self.pos)
            if not m:
                raise ParseError("unterminated quoted atom", self.pos)
            self.pos = m.end()
            return Atom(m.group(1).replace('\\"', '"'))
        m = _PLAIN.match(self.text, self.pos)
        if not m:
            raise ParseError("expected a term", self.pos)
        self.pos = m.end()
        return Atom(m.group(0))


def parse_term(text: str) -> Term:
    """Parse the compact text syntax, e.g. ``{n2,{n1,n2},n5}`` or ``(<a,b>,{})``."""
    p = _TermParser(text)
    t = p.term()
    if p.peek():
        raise ParseError("trailing input", p.pos)
    return t


# --------------------------------------------------------------------------
# JSON encoding


def term_to_json(t: Term):
    if isinstance(t, Atom):
        return {"atom": t.name}
    if isinstance(t, SetOf):
        return {"set": [term_to_json(m) for m in t.members]}
    if isinstance(t, Pair):
        return {"pair": [term_to_json(t.left), term_to_json(t.right)]}
    if isinstance(t, Seq):
        return {"seq": [term_to_json(i) for i in t.items]}
    return {"unit": True}


def term_from_json(obj) -> Term:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise FormatError(f"not a term: {obj!r}")
    (tag, val), = obj.items()
    if tag == "atom" and isinstance(val, str):
        return Atom(val)
    if tag == "set" and isinstance(val, list):
        return SetOf(term_from_json(v) for v in val)
    if tag == "pair" and isinstance(val, list) and len(val) == 2:
        return Pair(term_from_json(val[0]), term_from_json(val[1]))
    if tag == "seq" and isinstance(val, list):
        return Seq(term_from_json(v) for v in val)
    if tag == "unit" and val is True:
        return UNIT
    raise FormatError(f"not a term: {obj!r}")
