"""Exact solving of zero-dimensional polynomial systems in two (affine) or
three (projective) variables.

Rational solutions are returned explicitly. Solutions over proper
extensions of Q are detected rigorously (gcd over Q[t]/(q)) and reported
only as descriptions, never approximated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import count

from ..errors import InvalidInput, PositiveDimensional
from . import univariate as up
from .algebra import gcd_many, poly_gcd
from .poly import MultiPoly, resultant


@dataclass(frozen=True)
class SolveResult:
    points: tuple[tuple[Fraction, ...], ...]
    nonrational: tuple[str, ...] = field(default=())

    @property
    def complete(self) -> bool:
        return not self.nonrational


def _shear_candidates():
    yield 0
    for k in count(1):
        yield k
        yield -k


def _nonzero(polys):
    return [p for p in polys if p]


def solve_affine(polys) -> SolveResult:
    """All common zeros of polynomials in two variables."""
    polys = _nonzero(polys)
    if not polys:
        raise PositiveDimensional("no equations: the whole plane is a solution")
    vs = polys[0].variables
    if len(vs) != 2 or any(p.variables != vs for p in polys):
        raise InvalidInput("solve_affine expects polynomials in the same two variables")
    if any(p.is_constant() for p in polys):
        return SolveResult(())
    g = gcd_many(polys)
    if not g.is_constant():
        raise PositiveDimensional(f"common curve component {g}")
    x, y = vs
    polys = sorted(polys, key=lambda p: (p.degree(), len(p.terms), str(p)))
    f = polys[0]
    d = f.degree()
    top = f.homogeneous_part(d)
    c = next(c for c in _shear_candidates() if top.evaluate((1, c)))
    X, Y = MultiPoly.var(x, vs), MultiPoly.var(y, vs)
    sheared = [p.subs({x: X, y: Y + X * c}) for p in polys]
    fs, rest = sheared[0], sheared[1:]
    h = None
    for lam in _combinations(len(rest)):
        cand = sum((r * k for r, k in zip(rest, lam)), MultiPoly.zero(vs))
        if cand and poly_gcd(fs, cand).is_constant():
            h = cand
            break
    if h.degree_in(x) <= 0:
        R = h ** fs.degree_in(x)
    else:
        R = resultant(fs, h, x)
    Ru = R.univariate_coeffs(y)
    points, nonrational = [], []
    for q in up.irreducible_factors(Ru):
        if len(q) == 2:
            y0 = -q[0]
            G = []
            for p in sheared:
                G = up.gcd(G, p.subs({y: y0}, target_vars=vs).univariate_coeffs(x))
            for x0 in up.rational_roots(G):
                points.append((x0, y0 + c * x0))
            if up.has_nonrational_roots(G):
                nonrational.append(f"{y} = {y0} + {c}*{x}, {x} a root of {up.to_str(G, x)}")
        else:
            K = up.NumberField(q)
            lifted = []
            for p in sheared:
                coeffs = p.coefficients_in(x)
                top_k = max(coeffs)
                lifted.append([
                    K.reduce(coeffs[k].univariate_coeffs(y)) if k in coeffs else []
                    for k in range(top_k + 1)
                ])
            if K.poly_gcd_degree(lifted) > 0:
                nonrational.append(f"{y} - {c}*{x} a root of {up.to_str(q, y)}")
    return SolveResult(tuple(sorted(set(points))), tuple(nonrational))


def _combinations(n):
    if n == 1:
        yield (1,)
        return
    yield (1,) * n
    for k in count(2):
        yield tuple(k ** i for i in range(n))


def solve_univariate(polys) -> SolveResult:
    polys = _nonzero(polys)
    if not polys:
        raise PositiveDimensional("no equations")
    g: list = []
    for p in polys:
        g = up.gcd(g, p.univariate_coeffs())
    if len(g) == 1:
        return SolveResult(())
    pts = tuple((r,) for r in up.rational_roots(g))
    nr = tuple(f"root of {up.to_str(f)}" for f in up.irreducible_factors(g) if len(f) > 2)
    return SolveResult(pts, nr)


def normalize_projective(p) -> tuple[Fraction, ...]:
    """Scale so that the last nonzero coordinate is 1."""
    p = tuple(Fraction(c) for c in p)
    last = next(c for c in reversed(p) if c)
    return tuple(c / last for c in p)


def solve_projective(polys) -> SolveResult:
    """Common zeros in P^2 of homogeneous polynomials in three variables."""
    polys = _nonzero(polys)
    if not polys:
        raise PositiveDimensional("no equations")
    vs = polys[0].variables
    if len(vs) != 3:
        raise InvalidInput("solve_projective expects three homogeneous variables")
    a, b, c = vs
    pts, nonrat = [], []
    affine = [p.dehomogenize(c) for p in polys]
    res = solve_affine(affine)
    pts += [(u, v, Fraction(1)) for u, v in res.points]
    nonrat += [f"affine: {s}" for s in res.nonrational]
    at_inf = [p.dehomogenize(c).homogeneous_part(p.degree()).dehomogenize(b) for p in polys]
    if all(not q for q in at_inf):
        raise PositiveDimensional("the line at infinity lies in the solution set")
    res = solve_univariate(at_inf)
    pts += [(u, Fraction(1), Fraction(0)) for (u,) in res.points]
    nonrat += [f"at infinity: {s}" for s in res.nonrational]
    if all(not p.evaluate((1, 0, 0)) for p in polys):
        pts.append((Fraction(1), Fraction(0), Fraction(0)))
    return SolveResult(tuple(sorted(set(normalize_projective(p) for p in pts))), tuple(nonrat))
