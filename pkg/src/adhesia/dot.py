"""Graphviz rendering: containers become nested clusters, edges become boxes."""
from __future__ import annotations

from . import terms as T
from .graph import CoalgGraph
from .terms import Atom, Pair, Seq, SetOf, Term

__all__ = ["export_dot"]


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


class _Writer:
    def __init__(self, G: CoalgGraph):
        self.G = G
        self.lines = []
        self.placed = set()
        self.clusters = 0
        self.by_value = {}
        for n in sorted(G.N):
            t = G.node[n]
            if isinstance(t, SetOf):
                self.by_value.setdefault(t, n)

    def emit(self, indent, text):
        self.lines.append("  " * indent + text)

    def place(self, name, indent):
        if name in self.placed:
            return
        self.placed.add(name)
        t = self.G.node.get(name)
        if isinstance(t, SetOf):
            self.cluster(name, t, indent)
        else:
            self.emit(indent, f"{_q(name)};")

    def cluster(self, label, t: SetOf, indent):
        self.clusters += 1
        self.emit(indent, f"subgraph cluster_{self.clusters} {{")
        self.emit(indent + 1, f"label={_q(label)};")
        if label in self.G.N:
            self.emit(indent + 1, f"{_q(label)} [shape=point];")
        for m in t.members:
            if isinstance(m, Atom):
                if m.name in self.G.N:
                    self.place(m.name, indent + 1)
            elif isinstance(m, SetOf):
                owner = self.by_value.get(m)
                if owner is not None:
                    self.place(owner, indent + 1)
                else:
                    self.cluster(T.show(m), m, indent + 1)
        self.emit(indent, "}")

    def arcs(self, e: str, t: Term):
        box = _q(e)
        ends = lambda s: sorted(T.atoms_of(s))
        if isinstance(t, Pair):
            for x in ends(t.left):
                self.emit(1, f"{_q(x)} -> {box};")
            for y in ends(t.right):
                self.emit(1, f"{box} -> {_q(y)};")
        elif isinstance(t, Seq):
            for i, x in enumerate(t.items):
                for y in ends(x):
                    self.emit(1, f"{box} -> {_q(y)} [label={i}];")
        else:
            for y in ends(t):
                self.emit(1, f"{box} -> {_q(y)} [dir=none];")


def export_dot(G: CoalgGraph, name: str = "G") -> str:
    """DOT text for ``G``; deterministic for equal graphs."""
    w = _Writer(G)
    w.emit(0, f"digraph {_q(name)} {{")
    w.emit(1, "compound=true;")
    inner = set()
    for n in G.N:
        t = G.node[n]
        if isinstance(t, SetOf):
            for m in t.members:
                if isinstance(m, Atom) and m.name != n:
                    inner.add(m.name)
                elif m in w.by_value and w.by_value[m] != n:
                    inner.add(w.by_value[m])
    for n in sorted(G.N - inner):
        w.place(n, 1)
    for n in sorted(G.N):  # leftovers on containment cycles
        w.place(n, 1)
    for e in sorted(G.E):
        w.emit(1, f"{_q(e)} [shape=box];")
    for e in sorted(G.E):
        w.arcs(e, G.st[e])
    w.emit(0, "}")
    return "\n".join(w.lines) + "\n"
