"""The root system, reflections and the derived Coxeter labels."""
from __future__ import annotations

import re
from collections import deque
from functools import lru_cache

from .coxeter import (DEFAULT_CAP, CoxeterGraph, WElement, element_of_word, enumerate_W,
                      generator_action, pairing, vector_sign)
from .errors import CapExceeded, ContextMismatch, MixedSignRoot, NotSpherical
from .numfield import INF, NEGATIVE, POSITIVE, ZERO, coxeter_value, format_element, parse_element

DEFAULT_DEPTH = 8


class Undetermined:
    """A label the bounded pair-orbit search could not decide."""

    __slots__ = ("depth",)

    def __init__(self, depth):
        self.depth = depth

    def __eq__(self, other):
        return isinstance(other, Undetermined) and other.depth == self.depth

    def __hash__(self):
        return hash(("undetermined", self.depth))

    def __repr__(self):
        return f"Undetermined({self.depth})"

    def __str__(self):
        return f"undetermined({self.depth})"


def format_label(m):
    if m == INF:
        return "inf"
    return str(m)


class Root:
    """A root u(alpha_s); equality and hashing use the coordinates only."""

    __slots__ = ("graph", "coords", "word", "simple")

    def __init__(self, graph: CoxeterGraph, coords, word=(), simple=None):
        self.graph = graph
        self.coords = tuple(coords)
        self.word = tuple(word)
        self.simple = simple

    @classmethod
    def simple_root(cls, graph, s):
        i = graph.index[s]
        ctx = graph.ctx
        return cls(graph, tuple(ctx.one if j == i else ctx.zero for j in range(graph.rank)), (), s)

    @classmethod
    def from_witness(cls, graph, word, s):
        coords = Root.simple_root(graph, s).coords
        for t in reversed(tuple(word)):
            coords = generator_action(graph, t, coords)
        return cls(graph, coords, word, s)

    def __eq__(self, other):
        if not isinstance(other, Root):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __neg__(self):
        return Root(self.graph, tuple(-c for c in self.coords), self.word + (self.simple,), self.simple)

    def __repr__(self):
        return f"Root({format_root(self)})"

    def __str__(self):
        return format_root(self)

    def act(self, t):
        """t(beta) for a generator t, extending the witness on the left."""
        return Root(self.graph, generator_action(self.graph, t, self.coords), (t,) + self.word, self.simple)

    def apply(self, w: WElement):
        return Root(self.graph, w.apply(self.coords), w.witness + self.word, self.simple)

    def witness_element(self) -> WElement:
        return element_of_word(self.graph, self.word)


def format_coord(c):
    q = c.rational()
    if q is not None:
        return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
    return format_element(c)


def format_root(beta: Root) -> str:
    return "[" + ",".join(format_coord(c) for c in beta.coords) + "]"


def parse_coords(text: str, graph: CoxeterGraph):
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"root coordinates must be bracketed: {text!r}")
    parts = [p for p in re.split(r",(?![^()]*\))", s[1:-1])]
    if len(parts) != graph.rank:
        raise ValueError(f"expected {graph.rank} coordinates, got {len(parts)}")
    return tuple(parse_element(p, graph.ctx) for p in parts)


def is_positive(beta: Root) -> bool:
    signs = {c.sign() for c in beta.coords} - {ZERO}
    if signs == {POSITIVE}:
        return True
    if signs == {NEGATIVE}:
        return False
    raise MixedSignRoot(f"{beta} is not a root")


def inner(beta: Root, gamma: Root):
    _same_graph(beta, gamma)
    return pairing(beta.graph, beta.coords, gamma.coords)


def reflection_of_root(beta: Root) -> WElement:
    """r_beta = u s u^-1 for the witness beta = u(alpha_s)."""
    word = beta.word + (beta.simple,) + tuple(reversed(beta.word))
    return element_of_word(beta.graph, word)


def _same_graph(beta, gamma):
    if beta.graph is not gamma.graph and beta.graph != gamma.graph:
        raise ContextMismatch("roots of different graphs")


class RootSystem:
    """Roots found by BFS over witness length; complete when ``depth`` is None."""

    def __init__(self, graph, roots, depth):
        self.graph = graph
        self.roots = tuple(roots)
        self.depth = depth
        self._lookup = {r.coords: r for r in self.roots}

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __contains__(self, beta):
        return beta.coords in self._lookup

    @property
    def complete(self):
        return self.depth is None

    def canonical(self, beta: Root) -> Root:
        """The stored copy of beta (shortest witness), or beta itself."""
        return self._lookup.get(beta.coords, beta)

    def positive(self):
        return [r for r in self.roots if is_positive(r)]

    def simple(self):
        return [Root.simple_root(self.graph, s) for s in self.graph.vertices]


def enumerate_roots(g: CoxeterGraph, depth=None, cap: int = DEFAULT_CAP) -> RootSystem:
    if depth is None and g.classification.kind != "spherical":
        raise NotSpherical("complete root enumeration needs a finite Coxeter group")
    return _enumerate_roots(g, depth, cap)


@lru_cache(maxsize=64)
def _enumerate_roots(g, depth, cap):
    start = [Root.simple_root(g, s) for s in g.vertices]
    found = {r.coords: r for r in start}
    order = list(start)
    queue = deque((r, 0) for r in start)
    while queue:
        r, d = queue.popleft()
        if depth is not None and d >= depth:
            continue
        for t in g.vertices:
            x = r.act(t)
            if x.coords not in found:
                found[x.coords] = x
                order.append(x)
                if len(order) > cap:
                    raise CapExceeded("enumerate_roots", cap)
                queue.append((x, d + 1))
    for r in list(order):
        neg = -r
        if neg.coords not in found:
            found[neg.coords] = neg
            order.append(neg)
    return RootSystem(g, order, depth)


@lru_cache(maxsize=64)
def pair_orbit_table(g: CoxeterGraph):
    """Unordered root pairs (as frozensets of coordinates) in the orbit of a simple pair."""
    if g.classification.kind != "spherical":
        raise NotSpherical("pair orbit table needs a finite Coxeter group")
    table = {}
    simples = [Root.simple_root(g, s).coords for s in g.vertices]
    W = enumerate_W(g)
    for i in range(g.rank):
        for j in range(i + 1, g.rank):
            m = g.table[i][j]
            if m == INF:
                continue
            for w in W:
                key = frozenset((w.apply(simples[i]), w.apply(simples[j])))
                prev = table.setdefault(key, m)
                assert prev == m, "pair carries two labels"
    return table


def _label_candidates(g, c):
    for m in g.finite_labels():
        if coxeter_value(m, g.ctx) == c:
            return m
    return None


def _orbit_search(g, beta, gamma, m, depth):
    """BFS over W-images of {beta, gamma}; True if a simple pair labelled m is reached."""
    targets = set()
    simples = [Root.simple_root(g, s).coords for s in g.vertices]
    for i in range(g.rank):
        for j in range(i + 1, g.rank):
            if g.table[i][j] == m:
                targets.add(frozenset((simples[i], simples[j])))
    start = frozenset((beta.coords, gamma.coords))
    seen = {start}
    frontier = [start]
    for d in range(depth + 1):
        if any(p in targets for p in frontier):
            return True
        if d == depth:
            break
        nxt = []
        for p in frontier:
            a, b = tuple(p)
            for t in g.vertices:
                q = frozenset((generator_action(g, t, a), generator_action(g, t, b)))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return False


def mhat(beta: Root, gamma: Root, g: CoxeterGraph | None = None, search_depth: int = DEFAULT_DEPTH,
         method: str = "auto"):
    """Derived label of the pair {beta, gamma}: 1, an integer >= 2, INF or Undetermined.

    ``method`` selects ``auto`` (closed form when simply laced, orbit test
    otherwise), ``orbit`` or ``closed`` (simply laced graphs only).
    """
    _same_graph(beta, gamma)
    g = g or beta.graph
    if beta.coords == gamma.coords:
        return 1
    c = pairing(g, beta.coords, gamma.coords)
    if c.sign() == POSITIVE or (c + 2).sign() != POSITIVE:
        return INF
    simply_laced = all(m in (1, 2, 3) for row in g.table for m in row)
    if method == "closed" and not simply_laced:
        raise ValueError("closed form needs a simply laced graph")
    if method == "closed" or (method == "auto" and simply_laced):
        q = c.rational()
        return {0: 2, -1: 3}.get(q, INF)
    if method not in ("auto", "orbit"):
        raise ValueError(f"unknown method {method!r}")
    m = _label_candidates(g, c)
    if m is None:
        return INF
    if g.classification.kind == "spherical":
        key = frozenset((beta.coords, gamma.coords))
        return m if pair_orbit_table(g).get(key) == m else INF
    if _orbit_search(g, beta, gamma, m, search_depth):
        return m
    return Undetermined(search_depth)
