"""Presentations of linear hyperbolic one-torus actions on affine space.

A weight vector F defines 0 -> Z -F-> Z^n -P-> Z^(n-1) -> 0 with a section
s (s.F = 1). The i-th ray is the primitive vector on the i-th column of P,
and its segment is s applied to the nonnegative part of the fibre
P^-1(v_i), which is the line x0 + t*F.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd

from .errors import DegenerateRay, HyperbolicityError, InvalidInput, NotPrimitive
from .exactmath.algebra import is_squarefree, poly_gcd
from .exactmath.intmat import (
    IntMatrix,
    content,
    egcd,
    hermite_normal_form,
    invariant_factors,
)
from .exactmath.poly import MultiPoly, parse_poly
from .segdiv import DivisorLabel, Interval, SegmentalDivisor

A3_SURFACE = "Bl_0(A^2)"


def family_surface(d: int) -> str:
    return "Bl_0(A^2)" if d == 1 else f"Bl_(u,v^{d})(A^2)"


def _weights(F) -> tuple[int, ...]:
    F = tuple(int(x) for x in F)
    if len(F) < 2:
        raise InvalidInput("weight vector needs at least two entries")
    if not any(F):
        raise InvalidInput("weight vector is zero")
    if content(F) != 1:
        raise NotPrimitive(f"weight vector {F} is not primitive (gcd {content(F)})")
    return F


def _unimodular_reducer(F) -> list[list[int]]:
    """Unimodular V with V.F = e1 (F primitive), built from row operations."""
    n = len(F)
    col = list(F)
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    while sum(1 for x in col if x) > 1 or not col[0]:
        nz = [(abs(x), i) for i, x in enumerate(col) if x]
        _, p = min(nz)
        for i in range(n):
            if i != p and col[i]:
                q = col[i] // col[p]
                col[i] -= q * col[p]
                V[i] = [a - q * b for a, b in zip(V[i], V[p])]
        if sum(1 for x in col if x) == 1 and p != 0:
            col[0], col[p] = col[p], col[0]
            V[0], V[p] = V[p], V[0]
    if col[0] < 0:
        V[0] = [-a for a in V[0]]
    return V


def cokernel_map(F) -> IntMatrix:
    """The (n-1) x n matrix P with kernel Z*F, surjective, in row Hermite form."""
    F = _weights(F)
    V = _unimodular_reducer(F)
    P, _ = hermite_normal_form(V[1:])
    return P


def default_bound(F) -> int:
    return max(3, max(abs(int(x)) for x in F))


def minimal_sections(F, bound: int | None = None) -> list[tuple[int, ...]]:
    """All sections of minimal support with entries bounded by ``bound``, sorted."""
    F = _weights(F)
    n = len(F)
    B = default_bound(F) if bound is None else int(bound)
    if B < 1:
        raise InvalidInput("bound must be positive")
    rng = [k for k in range(-B, B + 1) if k]
    for size in range(1, n + 1):
        found = []
        for support in combinations(range(n), size):
            if any(F[i] == 0 for i in support):
                continue
            *free, last = support
            for vals in product(rng, repeat=len(free)):
                r = 1 - sum(F[i] * x for i, x in zip(free, vals))
                if r % F[last]:
                    continue
                y = r // F[last]
                if y and abs(y) <= B:
                    s = [0] * n
                    for i, x in zip(free, vals):
                        s[i] = x
                    s[last] = y
                    found.append(tuple(s))
        if found:
            return sorted(found)
    raise InvalidInput(f"no section of {F} with entries bounded by {B}")


def preferred_section(F, bound: int | None = None) -> tuple[int, ...]:
    """Minimal support, then smallest absolute-value sequence, then a
    positive first nonzero entry."""
    def key(s):
        first = next(x for x in s if x)
        return (tuple(abs(x) for x in s), first < 0)

    return min(minimal_sections(F, bound), key=key)


@dataclass(frozen=True)
class LatticePresentation:
    F: tuple[int, ...]
    P: IntMatrix
    s: tuple[int, ...]

    def __post_init__(self):
        F = _weights(self.F)
        P = tuple(tuple(int(x) for x in row) for row in self.P)
        s = tuple(int(x) for x in self.s)
        n = len(F)
        object.__setattr__(self, "F", F)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "s", s)
        if len(P) != n - 1 or any(len(r) != n for r in P) or len(s) != n:
            raise InvalidInput("P must be (n-1) x n and s of length n")
        if any(sum(a * b for a, b in zip(r, F)) for r in P):
            raise InvalidInput("P.F != 0")
        if sum(a * b for a, b in zip(s, F)) != 1:
            raise InvalidInput("s.F != 1")
        if any(d != 1 for d in invariant_factors(P)):
            raise InvalidInput("P is not surjective onto Z^(n-1)")

    @property
    def n(self) -> int:
        return len(self.F)

    @classmethod
    def canonical(cls, F, s=None) -> "LatticePresentation":
        F = _weights(F)
        return cls(F, cokernel_map(F), tuple(s) if s is not None else preferred_section(F))

    def is_hyperbolic(self) -> bool:
        return any(x > 0 for x in self.F) and any(x < 0 for x in self.F)

    def section_shift(self, other_s) -> tuple[int, ...]:
        """w in Z^(n-1) with other_s - s = w.P."""
        diff = [a - b for a, b in zip(other_s, self.s)]
        if sum(a * b for a, b in zip(diff, self.F)):
            raise InvalidInput("not a section of the same weight vector")
        return _solve_row_combination(self.P, diff)


def _solve_row_combination(P, target) -> tuple[int, ...]:
    """Integer w with w.P = target (P has full row rank, unimodular-extendable)."""
    H, U = hermite_normal_form(P)
    # w.P = target  <=>  (w.U^-1).H = target; H is echelon so solve top-down.
    m = len(H)
    z = [Fraction(0)] * m
    rem = [Fraction(x) for x in target]
    for i in range(m):
        col = next(j for j, x in enumerate(H[i]) if x)
        z[i] = rem[col] / H[i][col]
        rem = [r - z[i] * h for r, h in zip(rem, H[i])]
    if any(rem) or any(q.denominator != 1 for q in z):
        raise InvalidInput("target is not an integer combination of the rows of P")
    z = [int(q) for q in z]
    # w = z.U
    return tuple(sum(z[i] * U[i][j] for i in range(m)) for j in range(len(U[0])))


@dataclass(frozen=True)
class AHPresentation:
    lattice: LatticePresentation
    rays: tuple[tuple[int, ...], ...]
    segments: tuple[Interval, ...]
    divisor: SegmentalDivisor

    def to_json(self) -> dict:
        return {
            "F": list(self.lattice.F),
            "P": [list(r) for r in self.lattice.P],
            "s": list(self.lattice.s),
            "rays": [list(r) for r in self.rays],
            "divisor": self.divisor.to_json(),
        }


def coordinate_labels(n: int) -> list[DivisorLabel]:
    return [DivisorLabel(f"D{i + 1}", "abstract", "unknown") for i in range(n)]


def ray_segments(lat: LatticePresentation, labels=None, surface: str | None = None) -> AHPresentation:
    """Rays and segments of the presentation, one per coordinate.

    ``segments`` keeps every ray (zero segments included); ``divisor``
    drops the zero ones.
    """
    if not lat.is_hyperbolic():
        raise HyperbolicityError(f"weight vector {lat.F} is not hyperbolic")
    F, n = lat.F, lat.n
    labels = list(labels) if labels is not None else coordinate_labels(n)
    rays, segs = [], []
    for i in range(n):
        col = [lat.P[r][i] for r in range(n - 1)]
        g = content(col)
        if g == 0:
            raise DegenerateRay(f"column {i + 1} of P is zero")
        rays.append(tuple(c // g for c in col))
        # x0 = e_i / g solves P x0 = v_i; the fibre is x0 + t F
        x0 = [Fraction(int(j == i), g) for j in range(n)]
        lo = hi = None
        for j in range(n):
            if F[j] > 0:
                b = -x0[j] / F[j]
                lo = b if lo is None else max(lo, b)
            elif F[j] < 0:
                b = -x0[j] / F[j]
                hi = b if hi is None else min(hi, b)
            elif x0[j] < 0:
                raise DegenerateRay(f"fibre over ray {i + 1} misses the orthant")
        if lo is None or hi is None:
            raise HyperbolicityError("unbounded fibre")
        if lo > hi:
            raise DegenerateRay(f"fibre over ray {i + 1} misses the orthant")
        base = sum(Fraction(a) * b for a, b in zip(lat.s, x0))
        segs.append(Interval(base + lo, base + hi))
    divisor = SegmentalDivisor(surface or f"toric{list(F)}", tuple(zip(labels, segs)))
    return AHPresentation(lat, tuple(rays), tuple(segs), divisor)


def same_up_to_section_shift(A: AHPresentation, B: AHPresentation) -> bool:
    """Identical rays, and segments differing ray-by-ray by the integer w(v_i)
    where s_B - s_A = w.P."""
    if A.lattice.F != B.lattice.F or A.lattice.P != B.lattice.P or A.rays != B.rays:
        return False
    w = A.lattice.section_shift(B.lattice.s)
    for v, ia, ib in zip(A.rays, A.segments, B.segments):
        if ia.shift(sum(a * b for a, b in zip(w, v))) != ib:
            return False
    return True


def integer_translates(I: Interval, J: Interval) -> bool:
    return I.length == J.length and (I.lo - J.lo).denominator == 1


# --- affine space with weights (a, b, -c) --------------------------------

@dataclass(frozen=True)
class A3ActionData:
    a: int
    b: int
    c: int
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if min(self.a, self.b, self.c) <= 0:
            raise InvalidInput("weights a, b, c must be positive")
        if gcd(gcd(self.a, self.b), self.c) != 1:
            raise NotPrimitive(f"weights ({self.a}, {self.b}, {-self.c}) are not primitive")
        if self.alpha * self.a + self.beta * self.b - self.gamma * self.c != 1:
            raise InvalidInput("Bezout identity alpha*a + beta*b - gamma*c = 1 fails")

    @classmethod
    def create(cls, a: int, b: int, c: int, section=None) -> "A3ActionData":
        if min(a, b, c) <= 0:
            raise InvalidInput("weights a, b, c must be positive")
        if gcd(gcd(a, b), c) != 1:
            raise NotPrimitive(f"weights ({a}, {b}, {-c}) are not primitive")
        s = tuple(section) if section is not None else preferred_section((a, b, -c))
        if len(s) != 3:
            raise InvalidInput("section must have three entries")
        return cls(a, b, c, *s)

    @property
    def rho_ac(self) -> int:
        return gcd(self.a, self.c)

    @property
    def rho_bc(self) -> int:
        return gcd(self.b, self.c)

    @property
    def delta(self) -> int:
        return gcd(self.a // self.rho_ac, self.b // self.rho_bc)

    @property
    def F(self) -> tuple[int, int, int]:
        return (self.a, self.b, -self.c)

    @property
    def section(self) -> tuple[int, int, int]:
        return (self.alpha, self.beta, self.gamma)

    def quotient_is_plane(self) -> bool:
        """True when the closed form below matches the actual lattice data:
        every column gcd of the cokernel equals the one the formula assumes."""
        return self.c == self.rho_ac * self.rho_bc


def a3_labels() -> list[DivisorLabel]:
    return [
        DivisorLabel("D1", "strict-transform", "yes"),
        DivisorLabel("D2", "strict-transform", "yes"),
        DivisorLabel("E", "exceptional", "yes"),
    ]


def a3_presentation(data: A3ActionData) -> SegmentalDivisor:
    """Closed form {alpha*rho_ac/c}D1 + {beta*rho_bc/c}D2 + [gamma/delta, gamma/delta + 1/(delta*c)]E."""
    c, dl = data.c, data.delta
    d1, d2, e = a3_labels()
    lo = Fraction(data.gamma, dl)
    return SegmentalDivisor(A3_SURFACE, (
        (d1, Interval.point(Fraction(data.alpha * data.rho_ac, c))),
        (d2, Interval.point(Fraction(data.beta * data.rho_bc, c))),
        (e, Interval(lo, lo + Fraction(1, dl * c))),
    ))


def a3_oracle(data: A3ActionData) -> AHPresentation:
    """General ray/segment computation with the canonical cokernel map."""
    lat = LatticePresentation.canonical(data.F, data.section)
    return ray_segments(lat, labels=a3_labels(), surface=A3_SURFACE)


def a3_agrees_with_oracle(data: A3ActionData) -> bool:
    """Closed form and oracle agree ray by ray up to integer translations."""
    closed = a3_presentation(data)
    oracle = a3_oracle(data)
    return all(integer_translates(closed.interval(name), seg)
               for name, seg in zip(("D1", "D2", "E"), oracle.segments))


# --- the hypersurface family -----------------------------------------------

@dataclass(frozen=True)
class FamilyData:
    d: int
    alpha2: int
    alpha3: int
    p: MultiPoly
    a: int
    b: int

    @classmethod
    def create(cls, d: int, alpha2: int, alpha3: int, p: MultiPoly | str) -> "FamilyData":
        if isinstance(p, str):
            p = parse_poly(p, ("v",))
        if min(d, alpha2, alpha3) <= 0:
            raise InvalidInput("d, alpha2, alpha3 must be positive")
        if len(p.used_variables()) > 1 or (p.used_variables() and p.used_variables() != ("v",)):
            raise InvalidInput("p must be a polynomial in v")
        p = p.with_variables(("v",))
        if p.constant_term() != 0:
            raise InvalidInput("p(0) must vanish")
        if p.degree() < 1:
            raise InvalidInput("p must have degree at least 1")
        g, a, b = egcd(d * alpha3, alpha2)
        if g != 1:
            raise InvalidInput(f"gcd(d*alpha3, alpha2) = {g}, expected 1")
        return cls(d, alpha2, alpha3, p, a, b)

    @property
    def F(self) -> tuple[int, int, int, int]:
        a2, a3 = self.alpha2, self.alpha3
        return (a2 * a3, -a2 * a3, self.d * a3, a2)

    @property
    def P(self) -> IntMatrix:
        return ((1, 1, 0, 0), (0, self.d, self.alpha2, 0), (0, 1, 0, self.alpha3))

    @property
    def section(self) -> tuple[int, int, int, int]:
        return (0, 0, self.a, self.b)

    def hypersurface(self) -> MultiPoly:
        return family_equation(self.d, self.alpha2, self.alpha3, self.p)


def family_equation(d, alpha2, alpha3, p: MultiPoly) -> MultiPoly:
    """y^(d-1) z^alpha2 + t^alpha3 + p(xy)/y in the variables (x, y, z, t)."""
    vs = ("x", "y", "z", "t")
    x, y, z, t = (MultiPoly.var(v, vs) for v in vs)
    out = y ** (d - 1) * z ** alpha2 + t ** alpha3
    for (k,), c in p.with_variables(("v",)).items():
        out = out + x ** k * y ** (k - 1) * c
    return out


def family_labels() -> tuple[DivisorLabel, DivisorLabel, DivisorLabel]:
    return (
        DivisorLabel("D1", "strict-transform", "yes"),
        DivisorLabel("D2", "strict-transform", "yes"),
        DivisorLabel("E", "exceptional", "yes"),
    )


def family_presentation(data: FamilyData):
    """Divisor {a/alpha2}D1 + {b/alpha3}D2 + [0, 1/(alpha2*alpha3)]E and the
    curves L1 = {u = 0}, L2 = {u + p(v) = 0}."""
    from .curvegeom import PlaneCurve

    d1, d2, e = family_labels()
    D = SegmentalDivisor(family_surface(data.d), (
        (d1, Interval.point(Fraction(data.a, data.alpha2))),
        (d2, Interval.point(Fraction(data.b, data.alpha3))),
        (e, Interval(0, Fraction(1, data.alpha2 * data.alpha3))),
    ))
    uv = ("u", "v")
    u = MultiPoly.var("u", uv)
    L1 = PlaneCurve(u, name="L1")
    L2 = PlaneCurve(u + data.p.with_variables(uv), name="L2")
    return D, L1, L2


def family_oracle(data: FamilyData) -> AHPresentation:
    """Ray/segment computation on the family's own lattice data.

    Coordinates (x, y, z, t) carry the labels (Dx, E, D1, D2); the x-ray has a
    zero segment.
    """
    lat = LatticePresentation(data.F, data.P, data.section)
    d1, d2, e = family_labels()
    labels = [DivisorLabel("Dx", "abstract", "unknown"), e, d1, d2]
    return ray_segments(lat, labels=labels, surface=family_surface(data.d))


@dataclass(frozen=True)
class SmoothnessVerdict:
    smooth: bool
    witness: MultiPoly | None = None

    @property
    def label(self) -> str:
        return "smooth" if self.smooth else "singular"


def family_smoothness(data: FamilyData) -> SmoothnessVerdict:
    """Smooth iff p is squarefree; the witness is gcd(p, p')."""
    p = data.p
    if is_squarefree(p):
        return SmoothnessVerdict(True)
    return SmoothnessVerdict(False, poly_gcd(p, p.derivative("v")))


def affine_modification_equation(f: MultiPoly, g: MultiPoly, fresh: str = "y") -> MultiPoly:
    """g - y*f in the variables of f and g plus a fresh variable."""
    if f.variables != g.variables:
        raise InvalidInput("f and g must share a variable list")
    if fresh in f.variables:
        raise InvalidInput(f"variable {fresh!r} already in use")
    vs = f.variables + (fresh,)
    return g.with_variables(vs) - MultiPoly.var(fresh, vs) * f.with_variables(vs)
