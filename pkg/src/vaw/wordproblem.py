"""Deciding triviality in VA[Gamma].

A word is first tested in W through pi_K; a word in the kernel is rewritten
over the generators delta_beta and handed to Artin-group solvers on the
derived graph of its support.  Components split along label-2 separations.
Spherical components use a Garside normal form, components with labels in
{2, inf} use the right-angled normal form.  Any other component is reduced
by deleting contiguous subwords that are already known to be trivial inside
a decidable parabolic subgroup; if that gets stuck the verdict is
``unsupported``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import lru_cache

from .coxeter import CoxeterGraph, _matmul, enumerate_W, longest_element, reduced_word
from .errors import NotSpherical, VawError
from .numfield import INF
from .presentations import GammaHat, _graph_of_table
from .roots import DEFAULT_DEPTH, format_root
from .virtual import KernelWord, VAWord, format_word, kernel_rewrite, parse_word, pi_K


# -- Garside machinery on a finite Coxeter group -------------------------------

class GarsideTables:
    """Multiplication and descent tables of a finite W, simples as integer indices."""

    def __init__(self, graph: CoxeterGraph):
        if graph.classification.kind != "spherical":
            raise NotSpherical(f"{graph} is not of spherical type")
        W = enumerate_W(graph)
        index = {w.matrix: i for i, w in enumerate(W)}
        n = graph.rank
        self.graph = graph
        self.size = len(W)
        self.rmul = [[index[w.times_generator(s).matrix] for s in range(n)] for w in W]
        # BFS order is ShortLex, so lengths come from the first visit
        self.length = [0] * self.size
        for i, w in enumerate(W):
            self.length[i] = len(w.witness)
        gens = [graph.generator_matrices[s] for s in range(n)]
        self.lmul = [[index[_matmul(gens[s], w.matrix)] for w in W] for s in range(n)]
        self.rdesc = [frozenset(s for s in range(n) if self.length[self.rmul[x][s]] < self.length[x])
                      for x in range(self.size)]
        self.ldesc = [frozenset(s for s in range(n) if self.length[self.lmul[s][x]] < self.length[x])
                      for x in range(self.size)]
        self.delta = index[longest_element(graph).matrix]
        d = W[self.delta]
        self.phi = [index[_matmul(_matmul(d.matrix, w.matrix), d.matrix)] for w in W]
        self.words = [w.witness for w in W]
        self.identity = 0

    def generator(self, s):
        return self.rmul[0][s]

    def complement(self, s):
        """The simple x with x s = Delta, so s^-1 = Delta^-1 x."""
        return self.rmul[self.delta][s]


@lru_cache(maxsize=256)
def garside_tables(graph: CoxeterGraph) -> GarsideTables:
    return GarsideTables(graph)


@dataclass(frozen=True)
class GarsideForm:
    """Delta^infimum * factors, left-weighted, factors nonidentity and not Delta."""

    infimum: int
    factors: tuple
    words: tuple = field(default=(), compare=False)

    def is_trivial(self):
        return self.infimum == 0 and not self.factors

    def __str__(self):
        parts = [f"D^{self.infimum}"] if self.infimum else []
        parts += ["(" + " ".join(w) + ")" for w in self.words]
        return " ".join(parts) or "1"


class _Engine:
    """Incremental left normal form for one spherical graph."""

    def __init__(self, tables: GarsideTables):
        self.t = tables
        self.inf = 0
        self.factors = []

    def _slide(self, i):
        """Make (factors[i], factors[i+1]) left-weighted; return True if anything moved."""
        t, f = self.t, self.factors
        a, b = f[i], f[i + 1]
        moved = False
        while True:
            extra = t.ldesc[b] - t.rdesc[a]
            if not extra:
                break
            s = min(extra)
            a, b = t.rmul[a][s], t.lmul[s][b]
            moved = True
        f[i], f[i + 1] = a, b
        return moved

    def _normalize(self):
        while True:
            changed = False
            for i in range(len(self.factors) - 2, -1, -1):
                changed |= self._slide(i)
            if not changed:
                break
        while self.factors and self.factors[0] == self.t.delta:
            self.factors.pop(0)
            self.inf += 1
        self.factors = [x for x in self.factors if x != self.t.identity]

    def push_simple(self, x):
        if x != self.t.identity:
            self.factors.append(x)
            self._normalize()

    def push_delta(self, k):
        if k % 2:
            self.factors = [self.t.phi[x] for x in self.factors]
        self.inf += k

    def push_letter(self, s, e):
        if e == 1:
            self.push_simple(self.t.generator(s))
        else:
            self.push_delta(-1)
            self.push_simple(self.t.complement(s))

    def push_form(self, form: GarsideForm):
        self.push_delta(form.infimum)
        for x in form.factors:
            self.push_simple(x)

    def form(self):
        return GarsideForm(self.inf, tuple(self.factors), tuple(self.t.words[x] for x in self.factors))


def _letters_by_index(component: GammaHat, word):
    out = []
    for beta, e in word:
        if beta not in component.index:
            raise VawError(f"{format_root(beta)} is not a vertex of the component")
        out.append((component.index[beta], e))
    return out


def garside_normal_form(component: GammaHat, word) -> GarsideForm:
    """Left normal form of a signed word of (Root, eps) letters."""
    eng = _Engine(garside_tables(component.as_coxeter_graph()))
    for i, e in _letters_by_index(component, word):
        eng.push_letter(i, e)
    return eng.form()


def garside_product(component: GammaHat, a: GarsideForm, b: GarsideForm) -> GarsideForm:
    eng = _Engine(garside_tables(component.as_coxeter_graph()))
    eng.push_form(a)
    eng.push_form(b)
    return eng.form()


def garside_form_by_halves(component: GammaHat, word) -> GarsideForm:
    """The same normal form computed by divide and conquer."""
    word = list(word)
    if len(word) <= 1:
        return garside_normal_form(component, word)
    mid = len(word) // 2
    return garside_product(component, garside_form_by_halves(component, word[:mid]),
                           garside_form_by_halves(component, word[mid:]))


# -- right-angled tier -------------------------------------------------------------

def _raag_reduce(letters, commute):
    out = []
    for r, e in letters:
        for p in range(len(out) - 1, -1, -1):
            q, f = out[p]
            if q == r:
                if f == -e:
                    del out[p]
                    break
                out.append((r, e))
                break
            if not commute(q, r):
                out.append((r, e))
                break
        else:
            out.append((r, e))
    # lexicographic representative of the commutation class
    rest, nf = out, []
    while rest:
        best = None
        for p, (r, e) in enumerate(rest):
            if all(commute(q, r) and q != r for q, _ in rest[:p]):
                if best is None or (r, e) < rest[best]:
                    best = p
        nf.append(rest[best])
        rest = rest[:best] + rest[best + 1:]
    return nf


def raag_normal_form(component: GammaHat, word):
    """Reduced lexicographic normal form for labels in {2, inf}, as (Root, eps) letters."""
    n = len(component)
    for i in range(n):
        for j in range(i + 1, n):
            if component.label(i, j) not in (2, INF):
                raise VawError("right-angled normal form needs labels in {2, inf}")
    letters = _letters_by_index(component, word)
    nf = _raag_reduce(letters, lambda a, b: component.label(a, b) == 2)
    return [(component.roots[i], e) for i, e in nf]


# -- splitting and dispatch ---------------------------------------------------------

def _components(idx, label):
    idx = sorted(idx)
    comps, seen = [], set()
    for v in idx:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in idx:
                if b not in seen and label(a, b) not in (1, 2):
                    seen.add(b)
                    stack.append(b)
        comps.append(tuple(sorted(comp)))
    return comps


def component_split(h: GammaHat, k):
    """Pairs (sub-GammaHat, projected letters) over the components of the support."""
    letters = k.letters if isinstance(k, KernelWord) else k
    idx = {h.index[b] for b, _ in letters}
    out = []
    for comp in _components(idx, h.label):
        members = {h.roots[i] for i in comp}
        out.append((h.restrict(comp), [(b, e) for b, e in letters if b in members]))
    return out


@dataclass
class SolveOutcome:
    verdict: str
    reason: str = ""
    certificate: list = field(default_factory=list)

    @property
    def trivial(self):
        return self.verdict == "trivial"

    def __str__(self):
        return f"unsupported: {self.reason}" if self.verdict == "unsupported" else self.verdict

    def to_dict(self):
        return {"verdict": self.verdict, "reason": self.reason, "certificate": self.certificate}


class _Solver:
    """Decides words over integer vertex indices of a fixed GammaHat."""

    def __init__(self, h: GammaHat):
        self.h = h
        self._kind = {}
        # classes of vertices joined by odd labels; exponent sums per class are invariants
        parent = list(range(len(h)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i in range(len(h)):
            for j in range(i + 1, len(h)):
                m = h.label(i, j)
                if m != INF and m % 2:
                    parent[find(i)] = find(j)
        self.cls = [find(i) for i in range(len(h))]

    def kind(self, comp):
        """spherical, raag or mixed for a connected vertex set."""
        if comp not in self._kind:
            table = self.h.table(comp)
            if all(m in (1, 2, INF) for row in table for m in row):
                kind = "raag"
            elif INF not in {m for row in table for m in row} and \
                    _graph_of_table(table).classification.kind == "spherical":
                kind = "spherical"
            else:
                kind = "mixed"
            self._kind[comp] = kind
        return self._kind[comp]

    def decidable(self, idx):
        return all(self.kind(c) != "mixed" for c in _components(idx, self.h.label))

    def describe(self, comp):
        g = _graph_of_table(self.h.table(comp))
        cls = g.classification
        fam = "/".join(str(c.family) for c in cls.components if c.family) or "unnamed"
        roots = " ".join(format_root(self.h.roots[i]) for i in comp)
        return f"{cls.kind} component {fam} on {{{roots}}}"

    def decide_component(self, comp, letters):
        """(trivial?, certificate) for letters on a decidable component."""
        pos = {v: i for i, v in enumerate(comp)}
        local = [(pos[v], e) for v, e in letters]
        if self.kind(comp) == "raag":
            table = self.h.table(comp)
            nf = _raag_reduce(local, lambda a, b: table[a][b] == 2)
            cert = " ".join(f"d:{format_root(self.h.roots[comp[i]])}" + ("^-1" if e < 0 else "")
                            for i, e in nf)
            return not nf, {"tier": "raag", "normal_form": cert or "1"}
        eng = _Engine(garside_tables(_graph_of_table(self.h.table(comp))))
        for i, e in local:
            eng.push_letter(i, e)
        form = eng.form()
        return form.is_trivial(), {"tier": "garside", "normal_form": str(form)}

    def is_trivial_decidable(self, letters):
        for comp in _components({v for v, _ in letters}, self.h.label):
            members = set(comp)
            ok, _ = self.decide_component(comp, [(v, e) for v, e in letters if v in members])
            if not ok:
                return False
        return True

    def balanced(self, letters):
        sums = {}
        for v, e in letters:
            sums[self.cls[v]] = sums.get(self.cls[v], 0) + e
        return not any(sums.values())

    def reduce_once(self, letters):
        """Delete the longest trivial window with decidable support, or return None."""
        n = len(letters)
        windows = []
        for i in range(n):
            support = set()
            for j in range(i, n):
                support.add(letters[j][0])
                if not self.decidable(support):
                    break
                if j > i and self.balanced(letters[i:j + 1]):
                    windows.append((j - i + 1, i, j))
        windows.sort(key=lambda w: (-w[0], w[1]))
        for _, i, j in windows:
            if self.is_trivial_decidable(letters[i:j + 1]):
                return letters[:i] + letters[j + 1:]
        return None

    def solve(self, letters):
        cert = []
        for comp in _components({v for v, _ in letters}, self.h.label):
            members = set(comp)
            proj = [(v, e) for v, e in letters if v in members]
            if self.kind(comp) != "mixed":
                ok, c = self.decide_component(comp, proj)
                c["component"] = [format_root(self.h.roots[i]) for i in comp]
                cert.append(c)
                if not ok:
                    return SolveOutcome("nontrivial", certificate=cert)
                continue
            while proj:
                reduced = self.reduce_once(proj)
                if reduced is None:
                    return SolveOutcome("unsupported", self.describe(comp), cert)
                proj = reduced
                if self.decidable({v for v, _ in proj}):
                    break
            sub = self.solve(proj) if proj else SolveOutcome("trivial")
            cert.append({"tier": "local-reduction", "component": [format_root(self.h.roots[i]) for i in comp],
                         "reduced_to": " ".join(f"d:{format_root(self.h.roots[v])}" + ("^-1" if e < 0 else "")
                                                for v, e in proj)})
            cert.extend(sub.certificate)
            if not sub.trivial:
                return SolveOutcome(sub.verdict, sub.reason, cert)
        return SolveOutcome("trivial", certificate=cert)


def artin_solve(h: GammaHat, k) -> SolveOutcome:
    """Decide triviality of a kernel word in the Artin group of the derived graph."""
    letters = k.letters if isinstance(k, KernelWord) else k
    idx = [(h.index[b], e) for b, e in letters]
    return _Solver(h).solve(idx)


def va_solve(g: CoxeterGraph, w: VAWord, depth: int = DEFAULT_DEPTH) -> SolveOutcome:
    """Decide whether a word of VA[Gamma] is trivial."""
    if g.classification.kind not in ("spherical", "affine"):
        warnings.warn(f"graph of type {g.classification.kind}: outside the spherical and affine cases",
                      stacklevel=2)
    u = pi_K(w)
    if not u.is_identity():
        return SolveOutcome("nontrivial", certificate=[{"tier": "coxeter",
                                                        "pi_K": " ".join(reduced_word(u))}])
    k = kernel_rewrite(w, depth)
    h = GammaHat(g, k.support, k.labels, depth)
    return artin_solve(h, k)


def va_solve_text(g, text, depth=DEFAULT_DEPTH):
    return va_solve(g, parse_word(text, g), depth)


__all__ = ["GarsideForm", "GarsideTables", "SolveOutcome", "artin_solve", "component_split",
           "format_word", "garside_form_by_halves", "garside_normal_form", "garside_product",
           "garside_tables", "raag_normal_form", "va_solve"]
