"""Coxeter graphs and the canonical linear representation of W.

Elements of W are exact matrices acting on the span of the simple roots.
Since the canonical representation is faithful, equality of elements is
entrywise equality of matrices.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import catalog
from .errors import CapExceeded, ContextMismatch, GraphParseError, NotSpherical
from .numfield import INF, NEGATIVE, POSITIVE, ZERO, FieldElement, coxeter_value, make_context

DEFAULT_CAP = 10**6


class CoxeterGraph:
    """Vertex names plus a symmetric label table; unlisted pairs have label 2."""

    def __init__(self, vertices, labels=None):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise GraphParseError(f"duplicate vertex names in {vertices}")
        self.vertices = vertices
        self.index = {v: i for i, v in enumerate(vertices)}
        n = len(vertices)
        table = [[2] * n for _ in range(n)]
        for i in range(n):
            table[i][i] = 1
        for (a, b), m in (labels or {}).items():
            i, j = self.index[a], self.index[b]
            if i == j:
                raise GraphParseError(f"diagonal label for {a}")
            if m != INF and (int(m) != m or m < 2):
                raise GraphParseError(f"label {m} on {a} {b} must be an integer >= 2 or inf")
            m = INF if m == INF else int(m)
            table[i][j] = table[j][i] = m
        self.table = tuple(tuple(row) for row in table)
        self.ctx = make_context({m for row in self.table for m in row if m not in (1, INF)})

    @classmethod
    def from_table(cls, vertices, table):
        labels = {}
        for i, a in enumerate(vertices):
            for j in range(i + 1, len(vertices)):
                if table[i][j] != 2:
                    labels[(a, vertices[j])] = table[i][j]
        return cls(vertices, labels)

    @property
    def rank(self):
        return len(self.vertices)

    def m(self, s, t):
        return self.table[self.index[s]][self.index[t]]

    def _key(self):
        return (self.vertices, self.table)

    def __eq__(self, other):
        return isinstance(other, CoxeterGraph) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        edges = [f"{self.vertices[i]}-{self.vertices[j]}:{_fmt_label(self.table[i][j])}"
                 for i in range(self.rank) for j in range(i + 1, self.rank) if self.table[i][j] != 2]
        return f"CoxeterGraph({' '.join(self.vertices)}; {', '.join(edges)})"

    def finite_labels(self):
        return sorted({m for row in self.table for m in row if m not in (1, INF)})

    def is_simply_laced(self):
        return all(m in (1, 2, 3) for row in self.table for m in row)

    def subgraph(self, vertices):
        idx = [self.index[v] for v in vertices]
        return CoxeterGraph.from_table(tuple(vertices), [[self.table[i][j] for j in idx] for i in idx])

    def components(self):
        """Connected components (edges are labels >= 3, including inf) as index lists."""
        seen, comps = set(), []
        for start in range(self.rank):
            if start in seen:
                continue
            comp, stack = [], [start]
            seen.add(start)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.rank):
                    if j not in seen and self.table[i][j] not in (1, 2):
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    @cached_property
    def gram(self):
        return gram_matrix(self)

    @cached_property
    def generator_matrices(self):
        n, G, ctx = self.rank, self.gram, self.ctx
        mats = []
        for s in range(n):
            rows = []
            for i in range(n):
                if i == s:
                    rows.append(tuple((ctx.one if j == s else ctx.zero) - G[s][j] for j in range(n)))
                else:
                    rows.append(tuple(ctx.one if j == i else ctx.zero for j in range(n)))
            mats.append(tuple(rows))
        return tuple(mats)

    @cached_property
    def identity_matrix(self):
        n, ctx = self.rank, self.ctx
        return tuple(tuple(ctx.one if i == j else ctx.zero for j in range(n)) for i in range(n))

    @cached_property
    def classification(self):
        return classify(self)


def _fmt_label(m):
    return "inf" if m == INF else str(m)


def _parse_label(tok):
    if tok.lower() in ("inf", "infinity", "oo"):
        return INF
    try:
        m = int(tok)
    except ValueError:
        raise GraphParseError(f"bad label {tok!r}") from None
    if m < 2:
        raise GraphParseError(f"label {m} < 2")
    return m


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the line-oriented graph format (``;`` also separates lines).

    ``vertices a b ...`` declares vertices, ``edge a b m`` sets a label
    (``inf`` allowed), ``family <code> <n>`` appends a catalogued component
    with vertices named ``s<k>``.
    """
    vertices, labels = [], {}

    def set_label(a, b, m):
        key = frozenset((a, b))
        if key in labels and labels[key][2] != m:
            raise GraphParseError(f"conflicting labels for edge {a} {b}")
        labels[key] = (a, b, m)

    for raw in text.replace(";", "\n").splitlines():
        line = raw.split("#", 1)[0].split()
        if not line:
            continue
        cmd, args = line[0], line[1:]
        if cmd == "vertices":
            for v in args:
                if v in vertices:
                    raise GraphParseError(f"vertex {v} declared twice")
                vertices.append(v)
        elif cmd == "edge":
            if len(args) != 3:
                raise GraphParseError(f"edge needs two vertices and a label: {raw.strip()!r}")
            a, b, m = args
            for v in (a, b):
                if v not in vertices:
                    raise GraphParseError(f"unknown vertex {v!r} in edge")
            if a == b:
                raise GraphParseError(f"loop edge on {a}")
            set_label(a, b, _parse_label(m))
        elif cmd == "family":
            if len(args) != 2:
                raise GraphParseError(f"family needs a code and a size: {raw.strip()!r}")
            code, n = args
            try:
                size, edges = catalog.family(code, int(n))
            except (KeyError, ValueError):
                raise GraphParseError(f"unknown family {code} {n}") from None
            base = len(vertices)
            names = [f"s{base + i + 1}" for i in range(size)]
            for v in names:
                if v in vertices:
                    raise GraphParseError(f"family vertex {v} clashes with a declared vertex")
            vertices.extend(names)
            for i, j, m in edges:
                set_label(names[i], names[j], m)
        else:
            raise GraphParseError(f"unknown directive {cmd!r}")
    if not vertices:
        raise GraphParseError("graph has no vertices")
    return CoxeterGraph(vertices, {(a, b): m for a, b, m in labels.values()})


def gram_matrix(g: CoxeterGraph):
    ctx = g.ctx
    n = g.rank
    return tuple(tuple(ctx.from_rational(2) if i == j else coxeter_value(g.table[i][j], ctx)
                       for j in range(n)) for i in range(n))


def definiteness(matrix):
    """Exact definiteness of a symmetric matrix over the field.

    Returns ``(kind, rank)`` with kind one of ``definite``, ``semidefinite``
    (singular, positive), ``indefinite``.  Symmetric elimination with
    diagonal pivoting: a negative diagonal entry or a zero diagonal entry
    with a nonzero row rules out positivity.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    active = list(range(n))
    rank = 0
    while active:
        pivot = None
        for i in active:
            s = a[i][i].sign()
            if s == NEGATIVE:
                return "indefinite", None
            if s == POSITIVE and pivot is None:
                pivot = i
        if pivot is None:
            if any(not a[i][j].is_zero() for i in active for j in active):
                return "indefinite", None
            break
        active.remove(pivot)
        inv = a[pivot][pivot].inverse()
        for i in active:
            f = a[i][pivot] * inv
            if f.is_zero():
                continue
            for j in active:
                a[i][j] = a[i][j] - f * a[pivot][j]
        rank += 1
    return ("definite" if rank == n else "semidefinite"), rank


@dataclass(frozen=True)
class ComponentType:
    vertices: tuple
    kind: str
    family: str | None


@dataclass(frozen=True)
class Classification:
    kind: str
    components: tuple

    def to_dict(self):
        return {"kind": self.kind,
                "components": [{"vertices": list(c.vertices), "kind": c.kind, "family": c.family}
                               for c in self.components]}


def classify(g: CoxeterGraph) -> Classification:
    comps = []
    G = g.gram
    for comp in g.components():
        sub = [[G[i][j] for j in comp] for i in comp]
        kind, _ = definiteness(sub)
        kind = {"definite": "spherical", "semidefinite": "affine"}.get(kind, "other")
        name = None
        if kind != "other":
            name = catalog.identify(kind, [[g.table[i][j] for j in comp] for i in comp])
        comps.append(ComponentType(tuple(g.vertices[i] for i in comp), kind, name))
    kinds = {c.kind for c in comps}
    if kinds <= {"spherical"}:
        kind = "spherical"
    elif kinds <= {"spherical", "affine"}:
        kind = "affine"
    else:
        kind = "other"
    return Classification(kind, tuple(comps))


def gram_rank(g: CoxeterGraph):
    kind, rank = definiteness(g.gram)
    return rank


# -- the canonical representation ------------------------------------------

def pairing(g: CoxeterGraph, u, v) -> FieldElement:
    """Canonical bilinear form <u, v> on coordinate vectors."""
    G = g.gram
    acc = g.ctx.zero
    for i, a in enumerate(u):
        if a.is_zero():
            continue
        row = G[i]
        for j, b in enumerate(v):
            if not b.is_zero():
                acc = acc + a * row[j] * b
    return acc


def generator_action(g: CoxeterGraph, s, v):
    """s(v) = v - <v, alpha_s> alpha_s."""
    i = g.index[s] if not isinstance(s, int) else s
    c = g.ctx.zero
    for j, b in enumerate(v):
        if not b.is_zero():
            c = c + b * g.gram[j][i]
    out = list(v)
    out[i] = out[i] - c
    return tuple(out)


def vector_sign(v):
    """Sign of the first nonzero coordinate (all coordinates of a root share it)."""
    for a in v:
        s = a.sign()
        if s != ZERO:
            return s
    return ZERO


class WElement:
    """An element of W as an exact matrix, with a word that produces it."""

    __slots__ = ("graph", "matrix", "witness")

    def __init__(self, graph: CoxeterGraph, matrix, witness=()):
        self.graph = graph
        self.matrix = matrix
        self.witness = tuple(witness)

    def __eq__(self, other):
        if not isinstance(other, WElement):
            return NotImplemented
        return w_equal(self, other)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WElement({' '.join(self.witness) or '1'})"

    def __mul__(self, other: "WElement") -> "WElement":
        if other.graph is not self.graph and other.graph != self.graph:
            raise ContextMismatch("elements of different Coxeter groups")
        return WElement(self.graph, _matmul(self.matrix, other.matrix), self.witness + other.witness)

    def times_generator(self, s) -> "WElement":
        """Right multiplication by a generator (index or name)."""
        g = self.graph
        i = g.index[s] if not isinstance(s, int) else s
        G = g.gram
        rows = []
        for row in self.matrix:
            col_s = row[i]
            if col_s.is_zero():
                rows.append(row)
                continue
            rows.append(tuple((-col_s if j == i else a - G[i][j] * col_s) if not G[i][j].is_zero() or j == i
                              else a for j, a in enumerate(row)))
        return WElement(g, tuple(rows), self.witness + (g.vertices[i],))

    def inverse(self) -> "WElement":
        return element_of_word(self.graph, tuple(reversed(self.witness)))

    def apply(self, v):
        return tuple(_dot(row, v, self.graph.ctx) for row in self.matrix)

    def column(self, s):
        i = self.graph.index[s] if not isinstance(s, int) else s
        return tuple(row[i] for row in self.matrix)

    def is_identity(self):
        return self.matrix == self.graph.identity_matrix

    def preserves_form(self):
        B, G = self.matrix, self.graph.gram
        Bt = tuple(zip(*B))
        return _matmul(_matmul(Bt, G), B) == G


def _dot(row, v, ctx):
    acc = ctx.zero
    for a, b in zip(row, v):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


def _matmul(A, B):
    Bt = tuple(zip(*B))
    ctx = A[0][0].ctx if A and A[0] else None
    return tuple(tuple(_dot(row, col, ctx) for col in Bt) for row in A)


def identity(g: CoxeterGraph) -> WElement:
    return WElement(g, g.identity_matrix, ())


def element_of_word(g: CoxeterGraph, word) -> WElement:
    w = identity(g)
    for s in word:
        if s not in g.index:
            raise KeyError(f"unknown generator {s!r}")
        w = w.times_generator(s)
    return w


def w_equal(a: WElement, b: WElement) -> bool:
    if a.graph is not b.graph and a.graph != b.graph:
        raise ContextMismatch("elements of different Coxeter groups")
    return a.matrix == b.matrix


def right_descents(w: WElement):
    """Generators s with lg(ws) < lg(w), i.e. w(alpha_s) negative."""
    return frozenset(s for s in range(w.graph.rank) if vector_sign(w.column(s)) == NEGATIVE)


def reduced_word(w: WElement):
    """A reduced word for w by the descent walk."""
    steps = []
    while not w.is_identity():
        for s in range(w.graph.rank):
            if vector_sign(w.column(s)) == NEGATIVE:
                break
        steps.append(w.graph.vertices[s])
        w = w.times_generator(s)
    return tuple(reversed(steps))


def length(w: WElement) -> int:
    return len(reduced_word(w))


def longest_element(g: CoxeterGraph) -> WElement:
    if g.classification.kind != "spherical":
        raise NotSpherical(f"{g} is not of spherical type")
    w = identity(g)
    while True:
        for s in range(g.rank):
            if vector_sign(w.column(s)) == POSITIVE:
                w = w.times_generator(s)
                break
        else:
            return w


def enumerate_W(g: CoxeterGraph, cap: int = DEFAULT_CAP):
    """All elements of W in ShortLex order (BFS, generators in vertex order)."""
    if cap <= 0:
        raise ValueError("cap must be positive")
    return list(_enumerate_W(g, cap))


@lru_cache(maxsize=64)
def _enumerate_W(g, cap):
    start = identity(g)
    seen = {start.matrix}
    out = [start]
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in range(g.rank):
            x = w.times_generator(s)
            if x.matrix not in seen:
                seen.add(x.matrix)
                out.append(x)
                if len(out) > cap:
                    raise CapExceeded("enumerate_W", cap)
                queue.append(x)
    return tuple(out)


def alternating_product(a, b, m: int, side: str = "left"):
    """Prod_L(a, b, m) = a b a ... or Prod_R(a, b, m) = ... a b (length m)."""
    if m < 0:
        raise ValueError("length must be nonnegative")
    if side == "left":
        return tuple(a if i % 2 == 0 else b for i in range(m))
    if side == "right":
        return tuple(b if (m - 1 - i) % 2 == 0 else a for i in range(m))
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def prod_left(a, b, m):
    return alternating_product(a, b, m, "left")


def prod_right(a, b, m):
    return alternating_product(a, b, m, "right")
