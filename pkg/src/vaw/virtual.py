"""Words in VA[Gamma], the projections onto W, and kernel rewriting.

A word is a sequence of letters ``(kind, vertex, exponent)`` with kind
``"sigma"`` or ``"tau"``.  Kernel words are sequences of ``(Root, eps)``
standing for the root-indexed generators delta_beta.
"""
from __future__ import annotations

import re
from itertools import combinations

from .coxeter import CoxeterGraph, WElement, identity, prod_right, reduced_word
from .numfield import INF
from .errors import NotInKernel, UndeterminedLabel, WordParseError
from .roots import DEFAULT_DEPTH, Root, Undetermined, enumerate_roots, format_root, mhat, parse_coords

SIGMA, TAU = "sigma", "tau"

_TOKEN = re.compile(r"^([st]):([^\s^]+)(?:\^([+-]?1))?$")


class VAWord:
    """A word over sigma_s^{+-1} and tau_s (tau exponents are always +1)."""

    __slots__ = ("graph", "letters")

    def __init__(self, graph: CoxeterGraph, letters=()):
        out = []
        for kind, v, e in letters:
            if kind not in (SIGMA, TAU):
                raise WordParseError(f"unknown letter kind {kind!r}")
            if v not in graph.index:
                raise WordParseError(f"unknown vertex {v!r}")
            if e not in (1, -1):
                raise WordParseError(f"exponent must be +-1, got {e}")
            out.append((kind, v, 1 if kind == TAU else e))
        self.graph = graph
        self.letters = tuple(out)

    def __add__(self, other):
        return VAWord(self.graph, self.letters + other.letters)

    def __eq__(self, other):
        return isinstance(other, VAWord) and self.graph == other.graph and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self):
        return VAWord(self.graph, [(k, v, -e) for k, v, e in reversed(self.letters)])

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"VAWord({format_word(self)!r})"


def format_word(w: VAWord) -> str:
    toks = []
    for kind, v, e in w.letters:
        tok = ("s:" if kind == SIGMA else "t:") + v
        toks.append(tok + ("^-1" if e == -1 else ""))
    return " ".join(toks)


def parse_word(text: str, graph: CoxeterGraph) -> VAWord:
    letters = []
    for tok in text.split():
        m = _TOKEN.match(tok)
        if not m:
            raise WordParseError(f"bad token {tok!r}")
        kind = SIGMA if m.group(1) == "s" else TAU
        letters.append((kind, m.group(2), -1 if m.group(3) == "-1" else 1))
    return VAWord(graph, letters)


def sigma(graph, s, e=1):
    return VAWord(graph, [(SIGMA, s, e)])


def tau(graph, s):
    return VAWord(graph, [(TAU, s, 1)])


def pi_K(w: VAWord) -> WElement:
    """sigma_s -> 1, tau_s -> s."""
    x = identity(w.graph)
    for kind, v, _ in w.letters:
        if kind == TAU:
            x = x.times_generator(v)
    return x


def pi_P(w: VAWord) -> WElement:
    """sigma_s, tau_s -> s."""
    x = identity(w.graph)
    for _, v, _ in w.letters:
        x = x.times_generator(v)
    return x


def iota_W(graph, word) -> VAWord:
    return VAWord(graph, [(TAU, v, 1) for v in word])


def iota_A(graph, word) -> VAWord:
    """Letters are vertices or ``(vertex, exponent)`` pairs."""
    letters = []
    for x in word:
        v, e = (x, 1) if isinstance(x, str) else x
        letters.append((SIGMA, v, e))
    return VAWord(graph, letters)


class KernelWord:
    """A word in the generators delta_beta with its support and derived labels."""

    def __init__(self, graph: CoxeterGraph, letters=(), depth: int = DEFAULT_DEPTH):
        self.graph = graph
        self.letters = tuple((beta, int(e)) for beta, e in letters)
        self.depth = depth
        self._labels = None

    @property
    def support(self):
        seen = {}
        for beta, _ in self.letters:
            seen.setdefault(beta, beta)
        return tuple(seen.values())

    @property
    def labels(self):
        """Derived labels on unordered support pairs, keyed by index pairs (i, j), i < j."""
        if self._labels is None:
            self._labels = support_labels(self.graph, self.support, self.depth)
        return self._labels

    def __eq__(self, other):
        return isinstance(other, KernelWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        return KernelWord(self.graph, self.letters + other.letters, self.depth)

    def inverse(self):
        return KernelWord(self.graph, [(b, -e) for b, e in reversed(self.letters)], self.depth)

    def __str__(self):
        return format_kernel_word(self)

    def __repr__(self):
        return f"KernelWord({format_kernel_word(self)!r})"


def support_labels(graph, roots, depth=DEFAULT_DEPTH):
    labels = {}
    for (i, a), (j, b) in combinations(enumerate(roots), 2):
        m = mhat(a, b, graph, depth)
        if isinstance(m, Undetermined):
            raise UndeterminedLabel(a, b, depth)
        labels[(i, j)] = m
    return labels


def format_kernel_word(k: KernelWord) -> str:
    return " ".join(f"d:{format_root(b)}" + ("^-1" if e == -1 else "") for b, e in k.letters)


def parse_kernel_word(text: str, graph: CoxeterGraph, depth: int = DEFAULT_DEPTH) -> KernelWord:
    letters = []
    for tok in text.split():
        if not tok.startswith("d:"):
            raise WordParseError(f"bad kernel token {tok!r}")
        body, e = tok[2:], 1
        if body.endswith("^-1"):
            body, e = body[:-3], -1
        try:
            coords = parse_coords(body, graph)
        except ValueError as exc:
            raise WordParseError(str(exc)) from None
        letters.append((canonical_root(Root(graph, coords), depth), e))
    return KernelWord(graph, letters, depth)


def canonical_root(beta: Root, depth: int = DEFAULT_DEPTH) -> Root:
    """Attach a short witness: the enumerated copy for finite W, else a reduced one."""
    g = beta.graph
    if g.classification.kind == "spherical":
        found = enumerate_roots(g).canonical(beta)
        if found is not beta:
            return found
    if beta.simple is None:
        # search for a witness among roots of bounded witness length
        found = enumerate_roots(g, depth).canonical(beta)
        if found is beta:
            raise ValueError(f"{format_root(beta)} is not a root within depth {depth}")
        return found
    word = reduced_word(beta.witness_element()) if beta.word else ()
    return Root(g, beta.coords, word, beta.simple)


def kernel_rewrite(w: VAWord, depth: int = DEFAULT_DEPTH, labels: bool = True) -> KernelWord:
    """Rewrite a word in the kernel of pi_K over the generators delta_beta.

    The sigma letter at position i contributes delta_{beta_i}^{eps_i} with
    beta_i the image of alpha_s under the tau-prefix before it.
    """
    g = w.graph
    u = identity(g)
    out = []
    for kind, v, e in w.letters:
        if kind == TAU:
            u = u.times_generator(v)
        else:
            beta = Root(g, u.column(v), u.witness, v)
            out.append((canonical_root(beta, depth), e))
    if not u.is_identity():
        raise NotInKernel(f"pi_K({format_word(w)}) = {' '.join(reduced_word(u))} is not trivial")
    k = KernelWord(g, out, depth)
    if labels:
        k.labels
    return k


def w_action(w: WElement, k: KernelWord) -> KernelWord:
    """w . delta_beta = delta_{w(beta)} letterwise."""
    return KernelWord(k.graph, [(canonical_root(b.apply(w), k.depth), e) for b, e in k.letters], k.depth)


def expand_kernel(k: KernelWord) -> VAWord:
    """delta_beta^eps -> iota_W(u) sigma_s^eps iota_W(u)^-1 for the witness beta = u(alpha_s)."""
    letters = []
    for beta, e in k.letters:
        letters.extend((TAU, v, 1) for v in beta.word)
        letters.append((SIGMA, beta.simple, e))
        letters.extend((TAU, v, 1) for v in reversed(beta.word))
    return VAWord(k.graph, letters)


def defining_relators(graph: CoxeterGraph):
    """Relator words of the defining presentation, tagged v1, v2 or v3."""
    out = []
    vs = graph.vertices
    for s in vs:
        out.append(("v2", VAWord(graph, [(TAU, s, 1), (TAU, s, 1)])))
    for s in vs:
        for t in vs:
            m = graph.m(s, t)
            if s == t or m == INF:
                continue
            if s < t:
                lhs = iota_A(graph, prod_right(t, s, m))
                rhs = iota_A(graph, prod_right(s, t, m))
                out.append(("v1", lhs + rhs.inverse()))
                lhs = iota_W(graph, prod_right(t, s, m))
                rhs = iota_W(graph, prod_right(s, t, m))
                out.append(("v2", lhs + rhs.inverse()))
            r = s if m % 2 == 0 else t
            p = iota_W(graph, prod_right(s, t, m - 1))
            out.append(("v3", p + sigma(graph, s) + p.inverse() + sigma(graph, r, -1)))
    return out
