"""Named connected Coxeter graphs of spherical and affine type.

Each builder returns ``(n_vertices, edges)`` with edges ``(i, j, m)`` on
vertex indices ``0..n-1``; pairs not listed carry label 2.
"""
import math
from itertools import permutations

INF = math.inf


def _path(n, labels=None):
    labels = labels or {}
    return [(i, i + 1, labels.get(i, 3)) for i in range(n - 1)]


def _star(arms):
    # arms measured in vertices, not counting the centre
    edges, nxt = [], 1
    for arm in arms:
        prev = 0
        for _ in range(arm):
            edges.append((prev, nxt, 3))
            prev, nxt = nxt, nxt + 1
    return nxt, edges


def family(code: str, n: int):
    """Vertex count and edge list of the catalogued graph ``code`` with parameter ``n``."""
    c = code
    if c == "A" and n >= 1:
        return n, _path(n)
    if c == "B" and n >= 2:
        return n, _path(n, {n - 2: 4})
    if c == "D" and n >= 4:
        return n, _path(n - 1) + [(n - 3, n - 1, 3)]
    if c == "E" and n in (6, 7, 8):
        return _star((1, 2, n - 4))
    if c == "F" and n == 4:
        return 4, _path(4, {1: 4})
    if c == "H" and n in (3, 4):
        return n, _path(n, {0: 5})
    if c == "I2" and n >= 2:
        return 2, [(0, 1, n)]
    if c == "tA" and n == 1:
        return 2, [(0, 1, INF)]
    if c == "tA" and n >= 2:
        return n + 1, _path(n + 1) + [(n, 0, 3)]
    if c == "tB" and n >= 3:
        # fork at vertex 2, label 4 at the far end
        edges = [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n)]
        edges[-1] = (n - 1, n, 4)
        return n + 1, edges
    if c == "tC" and n >= 2:
        return n + 1, _path(n + 1, {0: 4, n - 1: 4})
    if c == "tD" and n >= 4:
        edges = [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 2)]
        edges += [(n - 2, n - 1, 3), (n - 2, n, 3)]
        return n + 1, edges
    if c == "tE" and n in (6, 7, 8):
        arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}[n]
        return _star(arms)
    if c == "tF" and n == 4:
        return 5, _path(5, {2: 4})
    if c == "tG" and n == 2:
        return 3, _path(3, {1: 6})
    raise KeyError(f"unknown family {code} {n}")


FAMILY_CODES = ("A", "B", "D", "E", "F", "H", "I2", "tA", "tB", "tC", "tD", "tE", "tF", "tG")


def family_name(code, n):
    return f"I2({n})" if code == "I2" else f"{code}{n}"


def _candidates(kind, k, labels):
    if kind == "spherical":
        yield ("A", k)
        if k >= 2:
            yield ("B", k)
        if k >= 4:
            yield ("D", k)
        if k in (6, 7, 8):
            yield ("E", k)
        if k == 4:
            yield ("F", 4)
        if k in (3, 4):
            yield ("H", k)
        if k == 2:
            for m in labels:
                if m != INF and m >= 5:
                    yield ("I2", int(m))
    elif kind == "affine":
        n = k - 1
        if n >= 1:
            yield ("tA", n)
        if n >= 3:
            yield ("tB", n)
        if n >= 2:
            yield ("tC", n)
        if n >= 4:
            yield ("tD", n)
        if n in (6, 7, 8):
            yield ("tE", n)
        if n == 4:
            yield ("tF", 4)
        if n == 2:
            yield ("tG", 2)


def _label_table(n, edges):
    table = [[2] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = 1
    for i, j, m in edges:
        table[i][j] = table[j][i] = m
    return table


def isomorphic(table_a, table_b) -> bool:
    """Labelled-graph isomorphism by backtracking with degree pruning."""
    n = len(table_a)
    if n != len(table_b):
        return False

    def profile(t, i):
        return sorted((t[i][j] for j in range(n) if j != i and t[i][j] != 2), key=str)

    pa = [profile(table_a, i) for i in range(n)]
    pb = [profile(table_b, i) for i in range(n)]
    if sorted(map(str, pa)) != sorted(map(str, pb)):
        return False
    if n > 10:
        return any(all(table_a[i][j] == table_b[p[i]][p[j]] for i in range(n) for j in range(n))
                   for p in permutations(range(n)))
    mapping = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for c in range(n):
            if used[c] or pa[i] != pb[c]:
                continue
            if all(table_a[i][j] == table_b[c][mapping[j]] for j in range(i)):
                mapping[i], used[c] = c, True
                if extend(i + 1):
                    return True
                used[c] = False
        return False

    return extend(0)


def identify(kind, table):
    """Catalogue name of a connected graph of the given kind, or None."""
    k = len(table)
    labels = {table[i][j] for i in range(k) for j in range(k) if i != j}
    for code, n in _candidates(kind, k, labels):
        size, edges = family(code, n)
        if isomorphic(table, _label_table(size, edges)):
            return family_name(code, n)
    return None
