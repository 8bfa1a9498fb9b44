"""Dense univariate polynomials over Q (coefficient lists, low degree first)
and over simple extensions Q[t]/(q)."""
from __future__ import annotations

from fractions import Fraction

from .algebra import factor
from .poly import MultiPoly

UPoly = list  # list[Fraction]


def trim(p) -> UPoly:
    p = [Fraction(c) for c in p]
    while p and not p[-1]:
        p.pop()
    return p


def deg(p) -> int:
    return len(trim(p)) - 1


def add(a, b) -> UPoly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def neg(a) -> UPoly:
    return [-c for c in a]


def sub(a, b) -> UPoly:
    return add(a, neg(b))


def mul(a, b) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a, b) -> tuple[UPoly, UPoly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = trim(r)
    return trim(q), r


def monic(a) -> UPoly:
    a = trim(a)
    return [c / a[-1] for c in a] if a else a


def gcd(a, b) -> UPoly:
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_(a, b)[1]
    return monic(a)


def deriv(a) -> UPoly:
    return trim([i * c for i, c in enumerate(a)][1:])


def evaluate(a, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def irreducible_factors(a) -> list[UPoly]:
    """Distinct monic irreducible factors over Q, sorted by degree then coefficients."""
    a = trim(a)
    if len(a) <= 1:
        return []
    p = MultiPoly.from_univariate(a, "t")
    facs = [f.univariate_coeffs("t") for f, _ in factor(p)[1]]
    return sorted((monic(f) for f in facs), key=lambda f: (len(f), f))


def rational_roots(a) -> list[Fraction]:
    return sorted(-f[0] for f in irreducible_factors(a) if len(f) == 2)


def has_nonrational_roots(a) -> bool:
    return any(len(f) > 2 for f in irreducible_factors(a))


def to_str(a, name="t") -> str:
    return str(MultiPoly.from_univariate(a, name))


class NumberField:
    """Arithmetic in Q[t]/(q) for an irreducible q."""

    def __init__(self, q):
        self.q = monic(q)

    def reduce(self, a) -> UPoly:
        return divmod_(a, self.q)[1]

    def mul(self, a, b) -> UPoly:
        return self.reduce(mul(a, b))

    def inv(self, a) -> UPoly:
        # extended Euclid in Q[t]
        r0, r1 = self.q, self.reduce(a)
        s0, s1 = [], [Fraction(1)]
        while deg(r1) > 0:
            qq, r = divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, sub(s0, mul(qq, s1))
        if not r1:
            raise ZeroDivisionError("element is zero in the number field")
        return self.reduce([c / r1[0] for c in s1])

    def poly_gcd_degree(self, polys) -> int:
        """Degree of the gcd in K[x] of polynomials given as lists of K-elements."""
        def norm(p):
            p = [self.reduce(c) for c in p]
            while p and not p[-1]:
                p.pop()
            return p

        def pmod(a, b):
            a = list(a)
            inv_lb = self.inv(b[-1])
            while len(a) >= len(b) and a:
                k = len(a) - len(b)
                c = self.mul(a[-1], inv_lb)
                for i, y in enumerate(b):
                    a[i + k] = sub(a[i + k], self.mul(c, y))
                a = norm(a)
            return a

        g: list = []
        for p in polys:
            a, b = norm(p), g
            if not b:
                g = a
                continue
            while b:
                a, b = b, pmod(a, b)
            g = a
            if len(g) == 1:
                return 0
        return len(g) - 1 if g else -1
