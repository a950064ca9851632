"""The derived graph on a finite root set, kernel presentations, and the
free-of-infinity and dimension reports."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from .coxeter import CoxeterGraph, classify, gram_rank, prod_right
from .errors import NotSpherical, UndeterminedLabel, VawError
from .numfield import INF
from .roots import DEFAULT_DEPTH, Root, enumerate_roots, format_label, format_root, mhat, reflection_of_root
from .virtual import canonical_root, support_labels

MAX_FOI_VERTICES = 20


class GammaHat:
    """The derived Coxeter graph restricted to a finite sequence of roots."""

    def __init__(self, base: CoxeterGraph, roots, labels=None, depth: int = DEFAULT_DEPTH):
        self.base = base
        self.roots = tuple(roots)
        if len(set(self.roots)) != len(self.roots):
            raise ValueError("repeated root in vertex set")
        self.depth = depth
        self.labels = dict(labels) if labels is not None else support_labels(base, self.roots, depth)
        self.index = {r: i for i, r in enumerate(self.roots)}

    def __len__(self):
        return len(self.roots)

    def label(self, i, j):
        if i == j:
            return 1
        return self.labels[(i, j) if i < j else (j, i)]

    def table(self, idx=None):
        idx = range(len(self.roots)) if idx is None else idx
        return tuple(tuple(self.label(i, j) for j in idx) for i in idx)

    def restrict(self, idx):
        idx = list(idx)
        labels = {(a, b): self.label(i, j) for a, i in enumerate(idx) for b, j in enumerate(idx) if a < b}
        return GammaHat(self.base, [self.roots[i] for i in idx], labels, self.depth)

    def as_coxeter_graph(self) -> CoxeterGraph:
        """The same labels on vertices named b0, b1, ..."""
        return _graph_of_table(self.table())

    def names(self, prefix="d"):
        return [prefix + format_root(r) for r in self.roots]


@lru_cache(maxsize=4096)
def _graph_of_table(table) -> CoxeterGraph:
    return CoxeterGraph.from_table(tuple(f"b{i}" for i in range(len(table))), table)


def gamma_hat(g: CoxeterGraph, X=None, depth: int = DEFAULT_DEPTH) -> GammaHat:
    """Derived graph on X; X=None means all of Phi (finite W only)."""
    if X is None:
        if g.classification.kind != "spherical":
            raise NotSpherical("the full derived graph is infinite for infinite W")
        X = enumerate_roots(g).roots
    X = [canonical_root(r, depth) for r in X]
    return GammaHat(g, X, depth=depth)


@dataclass
class Presentation:
    generators: list
    relations: list
    labels: list = field(default_factory=list)

    def to_text(self):
        lines = ["gen " + " ".join(self.generators)]
        for lhs, rhs in self.relations:
            lines.append(f"rel {' '.join(lhs)} = {' '.join(rhs)}")
        return "\n".join(lines)

    def to_dict(self):
        return {"generators": list(self.generators),
                "relations": [{"lhs": list(l), "rhs": list(r)} for l, r in self.relations],
                "labels": [{"pair": list(p), "label": m} for p, m in self.labels]}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _label_rows(h, names):
    rows = []
    for i in range(len(h.roots)):
        for j in range(i + 1, len(h.roots)):
            rows.append(((names[i], names[j]), format_label(h.label(i, j))))
    return rows


def kva_presentation(h: GammaHat) -> Presentation:
    names = h.names("d")
    rels = []
    for i in range(len(h.roots)):
        for j in range(i + 1, len(h.roots)):
            m = h.label(i, j)
            if m == INF:
                continue
            b, c = names[i], names[j]
            rels.append((prod_right(c, b, m), prod_right(b, c, m)))
    return Presentation(names, rels, _label_rows(h, names))


def z_word(beta: Root, gamma: Root, m: int):
    """(beta_1, ..., beta_m) with beta_1 = beta.

    Even k: beta_k = Prod_R(r_gamma, r_beta, k-1)(gamma); odd k:
    beta_k = Prod_R(r_beta, r_gamma, k-1)(beta).  Products act rightmost first.
    """
    found = mhat(beta, gamma)
    if m == INF or found != m:
        raise ValueError(f"label {format_label(m)} does not match derived label {found}")
    refl = {"b": reflection_of_root(beta), "c": reflection_of_root(gamma)}
    out = []
    for k in range(1, m + 1):
        word, target = (prod_right("c", "b", k - 1), gamma) if k % 2 == 0 else (prod_right("b", "c", k - 1), beta)
        v = target.coords
        for x in reversed(word):
            v = refl[x].apply(v)
        out.append(canonical_root(Root(beta.graph, v), DEFAULT_DEPTH) if k > 1 else beta)
    return tuple(out)


def z_relation(beta, gamma, m):
    """(Z(gamma, beta, m), Z(beta, gamma, m)) as root sequences in displayed order."""
    lhs = tuple(reversed(z_word(beta, gamma, m)))
    rhs = tuple(reversed(z_word(gamma, beta, m)))
    return lhs, rhs


def pva_presentation(h: GammaHat) -> Presentation:
    names = h.names("z")
    name_of = {format_root(r): n for r, n in zip(h.roots, names)}
    rels = []
    for i in range(len(h.roots)):
        for j in range(i + 1, len(h.roots)):
            m = h.label(i, j)
            if m == INF:
                continue
            lhs, rhs = z_relation(h.roots[i], h.roots[j], m)
            rels.append((tuple(name_of.get(format_root(r), "z" + format_root(r)) for r in lhs),
                         tuple(name_of.get(format_root(r), "z" + format_root(r)) for r in rhs)))
    return Presentation(names, rels, _label_rows(h, names))


# -- free-of-infinity analysis ----------------------------------------------

def _cliques(n, adjacent):
    """All nonempty cliques of the graph on range(n), as sorted tuples."""
    out = []

    def grow(clique, candidates):
        for k, v in enumerate(candidates):
            c = clique + (v,)
            out.append(c)
            grow(c, [u for u in candidates[k + 1:] if adjacent(v, u)])

    grow((), list(range(n)))
    return out


@lru_cache(maxsize=None)
def _kind_of_table(table):
    return classify(_graph_of_table(table)).kind


def _nsph_table(table):
    n = len(table)
    finite = lambda i, j: table[i][j] != INF
    memo = {}

    def best(sub):
        if sub in memo:
            return memo[sub]
        t = tuple(tuple(table[i][j] for j in sub) for i in sub)
        if _kind_of_table(t) == "spherical":
            val = len(sub)
        else:
            val = max(best(sub[:k] + sub[k + 1:]) for k in range(len(sub)))
        memo[sub] = val
        return val

    cliques = _cliques(n, finite)
    return max((best(c) for c in cliques), default=0)


def n_sph(g) -> int:
    """Largest size of a spherical vertex subset (a CoxeterGraph or GammaHat)."""
    table = g.table if isinstance(g, CoxeterGraph) else g.table()
    if len(table) > MAX_FOI_VERTICES:
        raise ValueError(f"n_sph limited to {MAX_FOI_VERTICES} vertices")
    return _nsph_table(tuple(tuple(r) for r in table))


@dataclass
class FoiRow:
    subset: tuple
    kind: str
    family: str | None
    n_sph: int


@dataclass
class FoiReport:
    rows: list
    n_sph_X: int
    n_sph_base: int
    max_size: int

    @property
    def violations(self):
        return [r for r in self.rows if r.kind not in ("spherical", "affine")]

    @property
    def nsph_ok(self):
        return self.n_sph_X <= self.n_sph_base

    @property
    def size_ok(self):
        return self.max_size <= 2 * self.n_sph_base

    @property
    def ok(self):
        return not self.violations and self.nsph_ok and self.size_ok

    def to_dict(self):
        return {"subsets": [{"roots": list(r.subset), "kind": r.kind, "family": r.family, "n_sph": r.n_sph}
                            for r in self.rows],
                "n_sph_X": self.n_sph_X, "n_sph_base": self.n_sph_base,
                "max_free_of_infinity_size": self.max_size,
                "n_sph_bound_holds": self.nsph_ok, "size_bound_holds": self.size_ok,
                "violations": len(self.violations)}


def foi_analysis(h: GammaHat, base: CoxeterGraph | None = None) -> FoiReport:
    """Classify the derived graph on every free-of-infinity subset of X."""
    base = base or h.base
    if base.classification.kind not in ("spherical", "affine"):
        raise VawError(f"base graph is of type {base.classification.kind}")
    if len(h) > MAX_FOI_VERTICES:
        raise ValueError(f"free-of-infinity analysis limited to {MAX_FOI_VERTICES} roots")
    table = h.table()
    rows = []
    nsph_cache = {}
    for c in _cliques(len(h), lambda i, j: table[i][j] != INF):
        sub = h.restrict(c)
        cls = classify(sub.as_coxeter_graph())
        fam = cls.components[0].family if len(cls.components) == 1 else \
            " x ".join(str(x.family) for x in cls.components)
        nsph_cache[c] = _nsph_table(sub.table())
        rows.append(FoiRow(tuple(format_root(h.roots[i]) for i in c), cls.kind, fam, nsph_cache[c]))
    nx = max(nsph_cache.values(), default=0)
    return FoiReport(rows, nx, n_sph(base), max((len(r.subset) for r in rows), default=0))


def dimension_report(g: CoxeterGraph) -> dict:
    kind = g.classification.kind
    if kind == "spherical":
        n = g.rank
        return {"kind": kind, "n": n, "cd_KVA": n, "vcd_VA": n, "exact": True}
    if kind == "affine":
        k = n_sph(g)
        assert k == gram_rank(g), "spherical dimension disagrees with the Gram rank"
        return {"kind": kind, "n_sph": k, "cd_KVA": k + 1, "vcd_VA": 2 * k + 1, "exact": False}
    raise VawError("dimension report needs a spherical or affine graph")


def format_dimension_report(rep: dict) -> str:
    op = "=" if rep["exact"] else "<="
    return f"cd(KVA){op}{rep['cd_KVA']} vcd(VA){op}{rep['vcd_VA']}"
