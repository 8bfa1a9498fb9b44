"""Gcd, factorisation and squarefreeness over Q.

Multivariate gcd and factorisation over Q are delegated to sympy; the
results are converted straight back to MultiPoly.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import sympy

from ..errors import InvalidInput
from .poly import MultiPoly


@lru_cache(maxsize=None)
def _gens(variables: tuple[str, ...]):
    return tuple(sympy.Symbol(v) for v in variables)


def to_sympy(p: MultiPoly) -> sympy.Poly:
    data = {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.items()}
    return sympy.Poly.from_dict(data or {(0,) * p.nvars: 0}, *_gens(p.variables), domain=sympy.QQ)


def from_sympy(sp: sympy.Poly, variables) -> MultiPoly:
    vs = tuple(variables)
    gens = tuple(str(g) for g in sp.gens)
    terms = {}
    for e, c in sp.as_dict().items():
        c = sympy.Rational(c)
        terms[e] = Fraction(int(c.p), int(c.q))
    return MultiPoly(gens, terms).with_variables(vs)


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Monic (grlex) gcd; gcd(0, 0) = 0."""
    if a.variables != b.variables:
        raise InvalidInput("gcd of polynomials over different variables")
    if not a:
        return b.monic()
    if not b:
        return a.monic()
    if a.is_constant() or b.is_constant():
        return MultiPoly.const(1, a.variables)
    return from_sympy(sympy.gcd(to_sympy(a), to_sympy(b)), a.variables).monic()


def gcd_many(polys) -> MultiPoly:
    polys = list(polys)
    g = MultiPoly.zero(polys[0].variables)
    for p in polys:
        g = poly_gcd(g, p)
        if g.is_constant() and g:
            break
    return g


def factor(p: MultiPoly) -> tuple[Fraction, list[tuple[MultiPoly, int]]]:
    """Irreducible factorisation over Q: (constant, [(factor, multiplicity)])."""
    if not p:
        raise InvalidInput("cannot factor the zero polynomial")
    if p.is_constant():
        return p.constant_term(), []
    c, facs = to_sympy(p).factor_list()
    c = sympy.Rational(c)
    out = []
    for f, k in facs:
        m = from_sympy(f, p.variables)
        lc = m.leading_coeff()
        c *= sympy.Rational(lc.numerator, lc.denominator) ** k
        out.append((m.monic(), int(k)))
    out.sort(key=lambda t: (t[0].degree(), str(t[0])))
    return Fraction(int(c.p), int(c.q)), out


def is_irreducible(p: MultiPoly) -> bool:
    _, facs = factor(p)
    return len(facs) == 1 and facs[0][1] == 1


def is_reduced(p: MultiPoly) -> bool:
    """No repeated factor: gcd(p, all partial derivatives) is constant."""
    if not p:
        return False
    g = p
    for v in p.used_variables():
        g = poly_gcd(g, p.derivative(v))
    return g.is_constant()


def is_squarefree(f: MultiPoly) -> bool:
    """Univariate squarefreeness: gcd(f, f') constant."""
    used = f.used_variables()
    if len(used) > 1:
        raise InvalidInput("is_squarefree expects a univariate polynomial")
    if not f:
        raise InvalidInput("is_squarefree of the zero polynomial")
    if not used:
        return True
    return poly_gcd(f, f.derivative(used[0])).is_constant()


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors (monic)."""
    if p.is_constant():
        return MultiPoly.const(1, p.variables)
    out = MultiPoly.const(1, p.variables)
    for f, _ in factor(p)[1]:
        out = out * f
    return out
