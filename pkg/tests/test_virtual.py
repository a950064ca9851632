import random

import pytest

from vaw.coxeter import element_of_word, enumerate_W, longest_element, parse_graph, reduced_word, w_equal
from vaw.errors import NotInKernel, WordParseError
from vaw.numfield import INF
from vaw.roots import Root, enumerate_roots, format_root
from vaw.virtual import (KernelWord, VAWord, defining_relators, expand_kernel, format_kernel_word,
                         iota_A, iota_W, kernel_rewrite, parse_kernel_word, parse_word, pi_K, pi_P, sigma,
                         tau, w_action)


def fam(code, n):
    return parse_graph(f"family {code} {n}")


def random_word(g, n, rng):
    return VAWord(g, [(rng.choice(["sigma", "tau"]), rng.choice(g.vertices), rng.choice([1, -1]))
                      for _ in range(n)])


def test_parse_and_format():
    g = fam("A", 2)
    w = parse_word("s:s1 t:s2^-1 s:s2^-1 t:s1^1", g)
    assert w.letters == (("sigma", "s1", 1), ("tau", "s2", 1), ("sigma", "s2", -1), ("tau", "s1", 1))
    assert str(w) == "s:s1 t:s2 s:s2^-1 t:s1"
    assert parse_word(str(w), g) == w
    for bad in ["x:s1", "s:s9", "s:s1^2", "s1"]:
        with pytest.raises(WordParseError):
            parse_word(bad, g)


def test_projections():
    g = fam("A", 2)
    assert pi_K(tau(g, "s1")) == element_of_word(g, ("s1",))
    assert pi_K(sigma(g, "s1", -1)).is_identity()
    assert pi_K(tau(g, "s1") + tau(g, "s1")).is_identity()
    assert pi_P(sigma(g, "s1")) == element_of_word(g, ("s1",))
    assert pi_P(tau(g, "s1") + sigma(g, "s1", -1)).is_identity()
    assert pi_P(VAWord(g)).is_identity()


def test_projections_are_homomorphisms():
    rng = random.Random(2)
    for code, n in [("A", 3), ("B", 2), ("tA", 2)]:
        g = fam(code, n)
        for _ in range(25):
            u, v = random_word(g, rng.randint(0, 8), rng), random_word(g, rng.randint(0, 8), rng)
            assert w_equal(pi_K(u + v), pi_K(u) * pi_K(v))
            assert w_equal(pi_P(u + v), pi_P(u) * pi_P(v))


def test_sections():
    g = fam("A", 2)
    assert iota_W(g, ("s1", "s2")).letters == (("tau", "s1", 1), ("tau", "s2", 1))
    assert iota_A(g, [("s1", -1)]).letters == (("sigma", "s1", -1),)
    rng = random.Random(4)
    for _ in range(100):
        word = tuple(rng.choice(g.vertices) for _ in range(rng.randint(0, 9)))
        assert w_equal(pi_K(iota_W(g, word)), element_of_word(g, word))
        assert pi_K(iota_A(g, word)).is_identity()


def test_rewrite_examples():
    g = fam("A", 2)
    k = kernel_rewrite(parse_word("t:s1 s:s2 t:s1", g))
    assert format_kernel_word(k) == "d:[1,1]"
    assert [format_root(r) for r in k.support] == ["[1,1]"]
    assert format_kernel_word(kernel_rewrite(sigma(g, "s1"))) == "d:[1,0]"
    k = kernel_rewrite(parse_word("s:s1 t:s1 s:s1^-1 t:s1", g))
    assert format_kernel_word(k) == "d:[1,0] d:[-1,0]^-1"
    assert k.labels == {(0, 1): INF}
    with pytest.raises(NotInKernel):
        kernel_rewrite(tau(g, "s1"))


def test_rewrite_keeps_cancelling_pairs():
    g = fam("A", 2)
    k = kernel_rewrite(sigma(g, "s1") + sigma(g, "s1", -1))
    assert len(k) == 2


def test_expand_examples():
    g = fam("A", 2)
    a = Root.simple_root(g, "s1")
    assert str(expand_kernel(KernelWord(g, [(a, 1)]))) == "s:s1"
    b = Root.from_witness(g, ("s1",), "s2")
    assert str(expand_kernel(KernelWord(g, [(b, 1)]))) == "t:s1 s:s2 t:s1"
    assert len(expand_kernel(KernelWord(g, []))) == 0


def test_w_action():
    g = fam("A", 2)
    a_t = Root.simple_root(g, "s2")
    k = KernelWord(g, [(a_t, 1)])
    assert w_action(element_of_word(g, ()), k) == k
    assert format_kernel_word(w_action(element_of_word(g, ("s1",)), k)) == "d:[1,1]"
    b = fam("B", 2)
    w0 = longest_element(b)
    a_s = Root.simple_root(b, "s1")
    assert w_action(w0, KernelWord(b, [(a_s, 1)])).letters[0][0] == -a_s


def _random_kernel_word(g, rng, n):
    R = list(enumerate_roots(g)) if g.classification.kind == "spherical" else list(enumerate_roots(g, 3))
    return KernelWord(g, [(rng.choice(R), rng.choice([1, -1])) for _ in range(n)])


@pytest.mark.parametrize("code,n", [("A", 2), ("B", 2), ("A", 3), ("H", 3), ("tA", 2), ("tC", 2)])
def test_round_trip(code, n):
    g = fam(code, n)
    rng = random.Random(8)
    for _ in range(20):
        k = _random_kernel_word(g, rng, rng.randint(0, 10))
        back = kernel_rewrite(expand_kernel(k), labels=False)
        assert back.letters == k.letters


@pytest.mark.parametrize("code,n", [("A", 3), ("B", 2), ("tA", 2)])
def test_equivariance(code, n):
    g = fam(code, n)
    rng = random.Random(9)
    for _ in range(15):
        k = _random_kernel_word(g, rng, rng.randint(1, 6))
        word = tuple(rng.choice(g.vertices) for _ in range(rng.randint(0, 6)))
        w = element_of_word(g, word)
        conj = iota_W(g, word) + expand_kernel(k) + iota_W(g, word).inverse()
        assert kernel_rewrite(conj, labels=False).letters == w_action(w, k).letters


def test_witness_independence():
    # u(alpha_s) = v(alpha_t) gives the same generator whichever witness is used
    g = fam("B", 3)
    seen = {}
    for w in enumerate_W(g):
        for s in g.vertices:
            col = w.column(s)
            conj = iota_W(g, w.witness) + sigma(g, s) + iota_W(g, w.witness).inverse()
            k = kernel_rewrite(conj, labels=False)
            assert len(k) == 1 and k.letters[0][0].coords == col
            seen.setdefault(col, set()).add(k.letters[0][0])
    assert len(seen) == 18


def test_semidirect_split():
    g = fam("A", 2)
    rng = random.Random(12)
    for _ in range(20):
        w = random_word(g, 10, rng)
        u = iota_W(g, reduced_word(pi_K(w)))
        k = kernel_rewrite(w + u.inverse(), labels=False)
        rebuilt = expand_kernel(k) + u
        assert w_equal(pi_K(rebuilt), pi_K(w))
        assert w_equal(pi_P(rebuilt), pi_P(w))


def test_relators_are_in_both_kernels():
    for code, n in [("A", 2), ("B", 2), ("I2", 5), ("tA", 2)]:
        g = fam(code, n)
        for tag, r in defining_relators(g):
            assert tag in ("v1", "v2", "v3")
            assert pi_K(r).is_identity() and pi_P(r).is_identity()


def test_kernel_word_parse():
    g = fam("B", 2)
    k = parse_kernel_word("d:[1,(1*x)] d:[0,1]^-1", g)
    assert format_kernel_word(k) == "d:[1,(1*x)] d:[0,1]^-1"
    with pytest.raises(WordParseError):
        parse_kernel_word("q:[1,0]", g)
