"""Exact arithmetic in the real field Q(2cos(pi/L)).

Every entry -2cos(pi/m) of a canonical Gram matrix lives in Q(theta) with
theta = 2cos(pi/L) and L the lcm of the finite labels.  Elements are stored
as reduced residues modulo the minimal polynomial of theta, so structural
equality is field equality.  Signs are decided with rational interval
arithmetic on an isolating bracket of theta; no floats after construction.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache, reduce

from .errors import ContextMismatch

NEGATIVE, ZERO, POSITIVE = -1, 0, 1
INF = math.inf

# Polynomials are lists of coefficients, lowest degree first.


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def _pscale(p, c):
    return _trim([c * a for a in p])


def _pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _pdivmod(p, q):
    p = [Fraction(a) for a in _trim(p)]
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(q[-1])
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    while len(p) >= len(q):
        c = p[-1] / lead
        shift = len(p) - len(q)
        quot[shift] = c
        for i, b in enumerate(q):
            p[shift + i] -= c * b
        p = _trim(p)
    return _trim(quot), p


def _peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> tuple:
    """Integer coefficients of the n-th cyclotomic polynomial."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _pdivmod(num, list(cyclotomic(d)))
            assert not rem
    return tuple(int(c) for c in num)


@lru_cache(maxsize=None)
def dickson(k: int) -> tuple:
    """Integer polynomial P_k with P_k(z + 1/z) = z^k + z^-k, so 2cos(k a) = P_k(2cos a)."""
    if k == 0:
        return (2,)
    if k == 1:
        return (0, 1)
    return tuple(_padd(_pmul([0, 1], list(dickson(k - 1))), _pscale(list(dickson(k - 2)), -1)))


def _minpoly_2cos(L: int) -> list:
    if L == 1:
        return [2, 1]  # theta = 2cos(pi) = -2
    phi = cyclotomic(2 * L)
    d = (len(phi) - 1) // 2
    psi = [phi[d]]
    for k in range(1, d + 1):
        psi = _padd(psi, _pscale(list(dickson(k)), phi[d + k]))
    return [int(c) for c in psi]


def _sturm_count(p, lo, hi):
    """Number of distinct real roots of p in (lo, hi]."""
    seq = [_trim(p), _trim([i * c for i, c in enumerate(p)][1:])]
    while len(seq[-1]) > 0:
        _, r = _pdivmod(seq[-2], seq[-1])
        if not r:
            break
        seq.append(_pscale(r, -1))

    def changes(x):
        signs = [v for v in (_peval(q, x) for q in seq) if v != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))

    return changes(lo) - changes(hi)


class FieldContext:
    """The number field Q(theta), theta = 2cos(pi/L), with an isolating bracket."""

    __slots__ = ("L", "minpoly", "bracket", "degree", "_xpow", "zero", "one", "theta")

    def __init__(self, L: int):
        self.L = L
        self.minpoly = tuple(_minpoly_2cos(L))
        self.degree = len(self.minpoly) - 1
        est = 2 * math.cos(math.pi / L)
        if self.degree == 1:
            root = Fraction(-self.minpoly[0], self.minpoly[1])
            self.bracket = (root, root)
        else:
            self.bracket = self._isolate(est)
        # x^k mod minpoly for k in [deg, 2 deg - 2]
        n = self.degree
        self._xpow = {}
        for k in range(n, 2 * n - 1):
            _, r = _pdivmod([0] * k + [1], list(self.minpoly))
            self._xpow[k] = tuple(r + [0] * (n - len(r)))
        self.zero = FieldElement(self, (Fraction(0),) * n)
        self.one = self.from_rational(1)
        self.theta = self.element([0, 1]) if n > 1 else self.from_rational(self.bracket[0])

    def _isolate(self, est):
        psi = list(self.minpoly)
        width = 1e-9
        while True:
            lo, hi = Fraction(est - width), Fraction(est + width)
            if _sturm_count(psi, lo, hi) == 1 and _peval(psi, hi) != 0:
                return lo, hi
            width /= 16
            if width < 1e-15:
                raise ArithmeticError(f"cannot isolate 2cos(pi/{self.L})")

    def __repr__(self):
        return f"FieldContext(L={self.L}, minpoly={list(self.minpoly)})"

    def __reduce__(self):
        return (make_context_for_L, (self.L,))

    def element(self, coeffs) -> "FieldElement":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.degree:
            _, coeffs = _pdivmod(coeffs, list(self.minpoly))
        coeffs = list(coeffs) + [Fraction(0)] * (self.degree - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def from_rational(self, q) -> "FieldElement":
        return FieldElement(self, (Fraction(q),) + (Fraction(0),) * (self.degree - 1))

    def parse(self, text: str) -> "FieldElement":
        return parse_element(text, self)


@lru_cache(maxsize=None)
def make_context_for_L(L: int) -> FieldContext:
    return FieldContext(L)


def make_context(finite_labels) -> FieldContext:
    """Context for the lcm of the given finite labels (rationals when empty)."""
    labels = [int(m) for m in finite_labels]
    if any(m < 2 for m in labels):
        raise ValueError(f"Coxeter labels must be >= 2, got {sorted(labels)}")
    return make_context_for_L(reduce(math.lcm, labels, 1))


class FieldElement:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return self.ctx.from_rational(other)
        if other.ctx is not self.ctx and other.ctx.L != self.ctx.L:
            raise ContextMismatch(f"L={self.ctx.L} vs L={other.ctx.L}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return self._check(other) - self

    def __neg__(self):
        return FieldElement(self.ctx, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        other = self._check(other)
        n = self.ctx.degree
        if n == 1:
            return FieldElement(self.ctx, (self.coeffs[0] * other.coeffs[0],))
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = prod[:n]
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(self.ctx._xpow[k]):
                    out[i] += c * r
        return FieldElement(self.ctx, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in number field")
        if self.ctx.degree == 1:
            return FieldElement(self.ctx, (1 / self.coeffs[0],))
        # extended Euclid: s*a + t*psi = g with g constant
        r0, r1 = list(self.ctx.minpoly), _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _padd(s0, _pscale(_pmul(q, s1), -1))
        return self.ctx.element(_pscale(s1, 1 / Fraction(r1[0])))

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __rtruediv__(self, other):
        return self._check(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx.L == other.ctx.L and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == self.ctx.from_rational(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def rational(self):
        """The value as a Fraction when it is rational, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def sign(self) -> int:
        if self.is_zero():
            return ZERO
        q = self.rational()
        if q is not None:
            return POSITIVE if q > 0 else NEGATIVE
        psi = self.ctx.minpoly
        lo, hi = self.ctx.bracket
        p = _trim(self.coeffs)
        while True:
            a, b = _interval_horner(p, lo, hi)
            if a > 0:
                return POSITIVE
            if b < 0:
                return NEGATIVE
            mid = (lo + hi) / 2
            if (_peval(psi, mid) > 0) == (_peval(psi, hi) > 0):
                hi = mid
            else:
                lo = mid

    def __float__(self):
        return float(_peval(list(self.coeffs), math.cos(math.pi / self.ctx.L) * 2)) \
            if self.ctx.degree > 1 else float(self.coeffs[0])

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"FieldElement({format_element(self)}, L={self.ctx.L})"


def _interval_horner(p, lo, hi):
    a = b = Fraction(0)
    for c in reversed(p):
        cands = (a * lo, a * hi, b * lo, b * hi)
        a, b = min(cands) + c, max(cands) + c
    return a, b


def coxeter_value(m, ctx: FieldContext) -> FieldElement:
    """-2cos(pi/m) as an exact element; -2 for m = infinity."""
    if m == INF:
        return ctx.from_rational(-2)
    m = int(m)
    if m < 2 or ctx.L % m:
        raise ValueError(f"label {m} does not divide L={ctx.L}")
    return -ctx.element(dickson(ctx.L // m)) if ctx.degree > 1 else \
        ctx.from_rational(-_peval(list(dickson(ctx.L // m)), ctx.bracket[0]))


def arith(op: str, a: FieldElement, b: FieldElement | None = None) -> FieldElement:
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if b is None:
        raise TypeError(f"{op} needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def sign(a: FieldElement) -> int:
    return a.sign()


def _fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_element(a: FieldElement) -> str:
    """Render as (c0 + c1*x + ... + ck*x^k), zero terms omitted, x = 2cos(pi/L)."""
    parts = []
    for k, c in enumerate(a.coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("*x" if k == 1 else f"*x^{k}")
        if not parts:
            parts.append(f"{_fmt_q(c)}{mono}")
        else:
            parts.append(f"{'-' if c < 0 else '+'} {_fmt_q(abs(c))}{mono}")
    return "(" + (" ".join(parts) if parts else "0") + ")"


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)(?:\s*\*\s*x(?:\^(\d+))?)?")


def parse_element(text: str, ctx: FieldContext) -> FieldElement:
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    s = s.strip()
    coeffs = {}
    pos = 0
    if not s:
        raise ValueError(f"empty field element {text!r}")
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse field element {text!r}")
        sgn, num, power = m.groups()
        k = 0 if "x" not in m.group(0) else int(power or 1)
        coeffs[k] = coeffs.get(k, 0) + (-1 if sgn == "-" else 1) * Fraction(num)
        pos = m.end()
        while pos < len(s) and s[pos] == " ":
            pos += 1
    dense = [coeffs.get(k, 0) for k in range(max(coeffs) + 1)]
    return ctx.element(dense)
