"""Plane curves over Q and their singular / non-transversal points."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ..errors import InvalidInput
from ..exactmath.algebra import is_reduced, poly_gcd
from ..exactmath.poly import MultiPoly, parse_poly
from ..exactmath.solve import SolveResult, solve_affine, solve_projective

AFFINE = ("u", "v")
PROJECTIVE = ("u", "v", "w")


@dataclass(frozen=True)
class PlaneCurve:
    """Reduced affine plane curve f(u, v) = 0 with its closure in P^2."""

    equation: MultiPoly
    name: str = "C"

    def __post_init__(self):
        f = self.equation
        if f.variables != AFFINE:
            f = f.with_variables(AFFINE)
            object.__setattr__(self, "equation", f)
        if f.is_constant():
            raise InvalidInput("a plane curve needs a nonconstant equation")
        if not is_reduced(f):
            raise InvalidInput(f"curve {self.name} is not reduced: {f}")

    @classmethod
    def parse(cls, text: str, name: str = "C") -> "PlaneCurve":
        return cls(parse_poly(text, AFFINE), name)

    @property
    def degree(self) -> int:
        return self.equation.degree()

    @property
    def projective(self) -> MultiPoly:
        return self.equation.homogenize("w")

    def passes_through_origin(self) -> bool:
        return self.equation.constant_term() == 0

    def __str__(self):
        return str(self.equation)


LINE_AT_INFINITY = MultiPoly.var("w", PROJECTIVE)


def _gradient(F: MultiPoly):
    return [F.derivative(x) for x in PROJECTIVE]


def _cross(a, b):
    return [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]


def singular_system(F: MultiPoly) -> list[MultiPoly]:
    return [F, *_gradient(F)]


def tangency_system(F: MultiPoly, G: MultiPoly) -> list[MultiPoly]:
    """Points of F = G = 0 where the two gradients are parallel."""
    return [F, G, *_cross(_gradient(F), _gradient(G))]


def singular_points_rational(C: PlaneCurve) -> tuple[list[tuple[Fraction, ...]], bool]:
    """Rational singular points of the projective closure and a flag telling
    whether singular points over a proper extension of Q also exist."""
    res = solve_projective(singular_system(C.projective))
    return list(res.points), bool(res.nonrational)


@dataclass(frozen=True)
class BadPoints:
    points: tuple[tuple[Fraction, ...], ...]
    reasons: dict
    nonrational: tuple[str, ...]


def bad_root_points(components: dict[str, MultiPoly]) -> BadPoints:
    """Points of P^2 where the union of the given homogeneous curves is not SNC.

    Reasons: a singular point of one component, a non-transversal meeting of
    two components, or a point on three components.
    """
    found: dict[tuple, list[str]] = {}
    nonrat: list[str] = []

    def record(res: SolveResult, why: str):
        for p in res.points:
            found.setdefault(p, []).append(why)
        nonrat.extend(f"{why}: {s}" for s in res.nonrational)

    names = list(components)
    for n in names:
        F = components[n]
        if F.degree() > 1:
            record(solve_projective(singular_system(F)), f"singular point of {n}")
    for a, b in combinations(names, 2):
        record(solve_projective(tangency_system(components[a], components[b])), f"tangency of {a} and {b}")
    for trio in combinations(names, 3):
        record(solve_projective([components[n] for n in trio]), "triple point of " + ", ".join(trio))
    pts = tuple(sorted(found))
    return BadPoints(pts, {p: found[p] for p in pts}, tuple(nonrat))


@dataclass(frozen=True)
class SNCVerdict:
    status: str  # "snc" | "not_snc" | "unknown"
    witness: dict | None = None


def is_snc_pair(C1: PlaneCurve, C2: PlaneCurve) -> SNCVerdict:
    """SNC test for C1 + C2 in the affine plane.

    Smoothness: the affine Jacobian system of each curve has no solution
    over an algebraic closure. Transversality: f1 = f2 = det(grad f1, grad f2)
    = 0 has no solution. Solutions over extensions of Q are detected exactly,
    so the verdict is never a guess.
    """
    f1, f2 = C1.equation, C2.equation
    g = poly_gcd(f1, f2)
    if not g.is_constant():
        raise InvalidInput(f"curves share the component {g}")
    for C in (C1, C2):
        f = C.equation
        res = solve_affine([f, f.derivative("u"), f.derivative("v")])
        if res.points or res.nonrational:
            return SNCVerdict("not_snc", {
                "reason": f"{C.name} is singular",
                "points": [list(map(str, p)) for p in res.points],
                "nonrational": list(res.nonrational),
            })
    jac = f1.derivative("u") * f2.derivative("v") - f1.derivative("v") * f2.derivative("u")
    res = solve_affine([f1, f2, jac])
    if res.points or res.nonrational:
        return SNCVerdict("not_snc", {
            "reason": "non-transversal intersection",
            "points": [list(map(str, p)) for p in res.points],
            "nonrational": list(res.nonrational),
        })
    return SNCVerdict("snc", None)
