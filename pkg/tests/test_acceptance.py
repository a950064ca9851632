"""Acceptance checks, one per criterion.

Run ``python3 tests/test_acceptance.py`` for one PASS/FAIL line per criterion,
or collect with pytest (``pytest -s`` shows the lines).
"""
import itertools
import random
import sys
import time

import pytest

from vaw.coxeter import element_of_word, enumerate_W, length, longest_element, parse_graph, reduced_word, w_equal
from vaw.numfield import INF
from vaw.presentations import (dimension_report, foi_analysis, gamma_hat, kva_presentation, n_sph,
                               pva_presentation, z_word)
from vaw.roots import Root, enumerate_roots, format_root, inner, mhat
from vaw.virtual import (KernelWord, VAWord, defining_relators, expand_kernel, iota_W, kernel_rewrite,
                         sigma, tau, w_action)
from vaw.wordproblem import garside_form_by_halves, garside_normal_form, va_solve


def fam(code, n):
    return parse_graph(f"family {code} {n}")


def alpha(g, i, j):
    """alpha_{i,j} = e_j - e_i in simple-root coordinates of A_{n-1}."""
    lo, hi = min(i, j), max(i, j)
    c = tuple(g.ctx.one if lo <= k + 1 < hi else g.ctx.zero for k in range(g.rank))
    if i > j:
        c = tuple(-x for x in c)
    return enumerate_roots(g).canonical(Root(g, c))


def check(number, title, limit, fn):
    start = time.perf_counter()
    try:
        detail = fn()
        ok = True
    except AssertionError as exc:
        detail, ok = f"assertion failed: {exc}", False
    elapsed = time.perf_counter() - start
    ok = ok and elapsed <= limit
    print(f"{'PASS' if ok else 'FAIL'} {number:>2} {title}: {detail or 'ok'} ({elapsed:.2f}s, limit {limit}s)")
    return ok


# 1 ------------------------------------------------------------------------

def _index_rule(p, q):
    (i, j), (k, l) = p, q
    if (i, j) == (k, l):
        return 1
    if (j == k or l == i) and len({i, j, k, l}) == 3:
        return 3
    if len({i, j, k, l}) == 4:
        return 2
    return INF


def criterion_1():
    pairs = 0
    for n in (3, 4):
        g = fam("A", n - 1)
        idx = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        for p, q in itertools.product(idx, repeat=2):
            assert mhat(alpha(g, *p), alpha(g, *q), method="orbit") == _index_rule(p, q), (p, q)
            pairs += 1
    return f"{pairs} pairs"


# 2 ------------------------------------------------------------------------

def criterion_2():
    g = fam("D", 4)
    R = list(enumerate_roots(g))
    assert len(R) == 24
    for a, b in itertools.product(R, repeat=2):
        c = inner(a, b).rational()
        want = 1 if a == b else {0: 2, -1: 3}.get(c, INF)
        assert mhat(a, b, method="orbit") == want
    return f"{len(R) ** 2} pairs"


# 3 ------------------------------------------------------------------------

def criterion_3():
    for code, nr, nw in (("A", 6, 6), ("B", 8, 8)):
        g = fam(code, 2)
        R = enumerate_roots(g)
        assert len(R) == nr and len(enumerate_W(g)) == nw
        assert length(longest_element(g)) == len(R.positive())
    g = fam("B", 2)
    w0 = longest_element(g)
    assert all(w_equal(w0 * w, w * w0) for w in enumerate_W(g))
    for s in g.vertices:
        a = Root.simple_root(g, s)
        assert a.apply(w0) == -a
    return ""


# 4 ------------------------------------------------------------------------

def criterion_4():
    total = 0
    for code, n in (("A", 2), ("B", 2), ("A", 3)):
        g = fam(code, n)
        rep = foi_analysis(gamma_hat(g))
        assert not rep.violations and rep.ok, (code, n)
        assert all(r.kind in ("spherical", "affine") for r in rep.rows)
        total += len(rep.rows)
    g = fam("A", 2)
    tri = gamma_hat(g, [alpha(g, 1, 2), alpha(g, 2, 3), alpha(g, 3, 1)])
    comp = tri.as_coxeter_graph().classification
    assert comp.kind == "affine" and comp.components[0].family == "tA2"
    assert n_sph(tri) == 2
    return f"{total} subsets, 0 violations"


# 5 ------------------------------------------------------------------------

def criterion_5():
    g = fam("B", 2)
    R = list(enumerate_roots(g))
    n = 0
    for a, b in itertools.product(R, repeat=2):
        m = mhat(a, b)
        if m in (1, INF):
            continue
        assert z_word(a, b, m) == tuple(reversed(z_word(b, a, m)))
        n += 1
    p = pva_presentation(gamma_hat(g))
    for lhs, rhs in p.relations:
        assert rhs == tuple(reversed(lhs))
    return f"{n} pairs, {len(p.relations)} relations"


# 6 ------------------------------------------------------------------------

def criterion_6():
    cases = [fam("A", 3), fam("B", 2), fam("tA", 2)]
    for g in cases:
        h = gamma_hat(g, [Root.simple_root(g, s) for s in g.vertices])
        p = kva_presentation(h)
        assert len(p.generators) == g.rank
        for i, j in itertools.combinations(range(g.rank), 2):
            assert h.label(i, j) == g.table[i][j]
        finite = sum(1 for i, j in itertools.combinations(range(g.rank), 2) if g.table[i][j] != INF)
        assert len(p.relations) == finite
    g = fam("A", 2)
    p = pva_presentation(gamma_hat(g))
    z = {(i, j): "z" + format_root(alpha(g, i, j)) for i in range(1, 4) for j in range(1, 4) if i != j}
    want = set()
    for i, j, k in itertools.permutations(range(1, 4)):
        lhs = (z[i, j], z[i, k], z[j, k])
        want.add(frozenset((lhs, tuple(reversed(lhs)))))
    assert {frozenset(r) for r in p.relations} == want
    return "PVB3 matched"


# 7 ------------------------------------------------------------------------

def _random_va(g, n, rng):
    return VAWord(g, [(rng.choice(["sigma", "tau"]), rng.choice(g.vertices), rng.choice([1, -1]))
                      for _ in range(n)])


def criterion_7():
    rng = random.Random(7)
    bad = 0
    for code in ("A", "B"):
        g = fam(code, 2)
        rels = [r for _, r in defining_relators(g)]
        for _ in range(200):
            w = VAWord(g)
            for _ in range(rng.randint(1, 4)):
                r = rng.choice(rels)
                if rng.random() < 0.5:
                    r = r.inverse()
                c = _random_va(g, rng.randint(0, 8), rng)
                w = w + c + r + c.inverse()
            bad += va_solve(g, w).verdict != "trivial"
    nontrivial = []
    for code in ("A", "B"):
        g = fam(code, 2)
        s = g.vertices[0]
        a = Root.simple_root(g, s)
        nontrivial += [(g, tau(g, s)), (g, sigma(g, s)),
                       (g, expand_kernel(KernelWord(g, [(a, 1), (-a, -1)])))]
    g = fam("A", 2)
    a12, a23 = alpha(g, 1, 2), alpha(g, 2, 3)
    nontrivial.append((g, expand_kernel(KernelWord(g, [(a12, 1), (a23, 1), (a12, -1), (a23, -1)]))))
    g = fam("B", 2)
    u = iota_W(g, reduced_word(longest_element(g)))
    nontrivial.append((g, u + sigma(g, "s1") + u.inverse() + sigma(g, "s1", -1)))
    bad += sum(va_solve(g, w).verdict != "nontrivial" for g, w in nontrivial)
    assert bad == 0, f"{bad} misclassified"
    return f"400 relator products, {len(nontrivial)} nontrivial words, 0 misclassified"


# 8 ------------------------------------------------------------------------

def criterion_8():
    g = fam("A", 2)
    h = gamma_hat(g, [Root.simple_root(g, s) for s in g.vertices])
    a, b = h.roots
    assert garside_normal_form(h, [(a, 1), (b, 1), (a, 1)]) == garside_normal_form(h, [(b, 1), (a, 1), (b, 1)])
    rng = random.Random(8)
    for _ in range(100):
        w = _random_va(g, 30, rng)
        assert va_solve(g, w + w.inverse()).verdict == "trivial"
    for _ in range(100):
        word = [(rng.choice(h.roots), rng.choice([1, -1])) for _ in range(30)]
        assert garside_normal_form(h, word) == garside_form_by_halves(h, word)
    return "100 w.w^-1 trivial, 100 order checks"


# 9 ------------------------------------------------------------------------

def criterion_9():
    rng = random.Random(9)
    graphs = [fam("A", 2), fam("B", 2), fam("A", 3), fam("tA", 2)]
    for n in range(100):
        g = graphs[n % len(graphs)]
        R = list(enumerate_roots(g)) if g.classification.kind == "spherical" else list(enumerate_roots(g, 3))
        k = KernelWord(g, [(rng.choice(R), rng.choice([1, -1])) for _ in range(rng.randint(0, 10))])
        assert kernel_rewrite(expand_kernel(k), labels=False).letters == k.letters
        word = tuple(rng.choice(g.vertices) for _ in range(rng.randint(0, 6)))
        u = iota_W(g, word)
        conj = kernel_rewrite(u + expand_kernel(k) + u.inverse(), labels=False)
        assert conj.letters == w_action(element_of_word(g, word), k).letters
    return "100 round trips"


# 10 -----------------------------------------------------------------------

def criterion_10():
    exact = {("A", 1): 1, ("A", 3): 3, ("B", 2): 2}
    for key, n in exact.items():
        r = dimension_report(fam(*key))
        assert r["exact"] and r["cd_KVA"] == n and r["vcd_VA"] == n, key
    for key, (cd, vcd) in {("tA", 2): (3, 5), ("tA", 1): (2, 3)}.items():
        r = dimension_report(fam(*key))
        assert not r["exact"] and r["cd_KVA"] == cd and r["vcd_VA"] == vcd, key
    return ""


CRITERIA = [
    (1, "mhat index rules on A2, A3", 30, criterion_1),
    (2, "simply-laced closed form on D4", 120, criterion_2),
    (3, "root and length invariants", 10, criterion_3),
    (4, "free-of-infinity subsets", 300, criterion_4),
    (5, "z-word reversal on B2", 10, criterion_5),
    (6, "presentation sanity", 10, criterion_6),
    (7, "word problem soundness", 120, criterion_7),
    (8, "Garside engine", 60, criterion_8),
    (9, "kernel round trip and equivariance", 60, criterion_9),
    (10, "dimension reports", 1, criterion_10),
]


@pytest.mark.parametrize("number,title,limit,fn", CRITERIA, ids=[str(c[0]) for c in CRITERIA])
def test_criterion(number, title, limit, fn):
    assert check(number, title, limit, fn)


if __name__ == "__main__":
    results = [check(*c) for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
