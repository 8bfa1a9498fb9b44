"""Rational maps between affine spaces (or from an affine hypersurface) over Q,
with exact verification of inverse pairs, curve pullbacks and weight
equivariance."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .errors import DomainViolation, InvalidInput
from .exactmath.algebra import factor, poly_gcd
from .exactmath.poly import MultiPoly, parse_poly, serialize_poly
from .exactmath.ratfunc import RatFunc, ratfunc_from

PLANE = ("u", "v")


@dataclass(frozen=True)
class RationalMap:
    """source -> target given by one rational function per target variable.

    ``domain`` is a polynomial in the source variables; the map is asserted
    to be defined (and, for builtins, invertible) where it does not vanish.
    ``relation`` optionally restricts the source to a hypersurface.
    """

    source: tuple[str, ...]
    target: tuple[str, ...]
    components: tuple[RatFunc, ...]
    domain: MultiPoly
    relation: MultiPoly | None = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        src = tuple(self.source)
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "target", tuple(self.target))
        if len(self.components) != len(self.target):
            raise InvalidInput("one component per target variable is required")
        comps = tuple(ratfunc_from(c, src) for c in self.components)
        for c in comps:
            if c.variables != src:
                raise InvalidInput("components must be written in the source variables")
        object.__setattr__(self, "components", comps)
        dom = self.domain if isinstance(self.domain, MultiPoly) else parse_poly(str(self.domain), src)
        if not dom:
            raise InvalidInput("declared domain must be a nonzero polynomial")
        object.__setattr__(self, "domain", dom.with_variables(src))
        if self.relation is not None:
            object.__setattr__(self, "relation", self.relation.with_variables(src))

    @classmethod
    def build(cls, source, target, components, domain="1", relation=None, name="") -> "RationalMap":
        source = tuple(source)
        comps = tuple(ratfunc_from(c, source) for c in components)
        dom = parse_poly(domain, source) if isinstance(domain, str) else domain
        rel = parse_poly(relation, source) if isinstance(relation, str) else relation
        return cls(source, tuple(target), comps, dom, rel, name)

    @classmethod
    def identity(cls, variables) -> "RationalMap":
        v = tuple(variables)
        return cls(v, v, tuple(RatFunc.var(x, v) for x in v), MultiPoly.const(1, v), None, "id")

    def __call__(self, point) -> tuple[Fraction, ...]:
        return tuple(c.evaluate(point) for c in self.components)

    def substitution(self) -> dict[str, RatFunc]:
        return dict(zip(self.target, self.components))

    def pull(self, h) -> RatFunc:
        """h o self for h a polynomial or rational function in the target variables."""
        h = ratfunc_from(h, self.target)
        return h.subs(self.substitution(), target_vars=self.source)

    def to_json(self) -> dict:
        return {
            "source": list(self.source),
            "target": list(self.target),
            "components": [str(c) for c in self.components],
            "domain": serialize_poly(self.domain),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalMap":
        try:
            return cls.build(data["source"], data["target"], data["components"], data.get("domain", "1"),
                             data.get("relation"), data.get("name", ""))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed map JSON: {exc}") from None


def compose(f: RationalMap, g: RationalMap) -> RationalMap:
    """f o g (apply g first)."""
    if tuple(g.target) != tuple(f.source):
        raise InvalidInput(f"cannot compose: {g.target} is not {f.source}")
    comps = tuple(g.pull(c) for c in f.components)
    pulled_dom = g.pull(f.domain)
    dom = g.domain * pulled_dom.num
    for c in g.components:
        dom = dom * c.den
    name = f"{f.name}o{g.name}" if f.name and g.name else ""
    return RationalMap(g.source, f.target, comps, dom, g.relation, name)


def _is_zero_mod(r: RatFunc, relation: MultiPoly | None) -> bool:
    if r.is_zero():
        return True
    return relation is not None and relation.divides(r.num)


@dataclass(frozen=True)
class InverseCheck:
    ok: bool
    residues: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def _identity_residues(h: RationalMap, label: str) -> list[str]:
    out = []
    for v, c in zip(h.target, h.components):
        r = c - RatFunc.var(v, h.source)
        if not _is_zero_mod(r, h.relation):
            out.append(f"{label}: {v} -> {v} + ({r})")
    return out


def verify_mutual_inverse(f: RationalMap, g: RationalMap) -> InverseCheck:
    """Exact check that g o f and f o g are identities, modulo the source
    relation of each side, and that each map lands on the other's source
    hypersurface when there is one."""
    if tuple(f.target) != tuple(g.source) or tuple(g.target) != tuple(f.source):
        raise InvalidInput("maps are not composable both ways")
    residues = _identity_residues(compose(g, f), "g o f") + _identity_residues(compose(f, g), "f o g")
    for a, b, label in ((f, g, "g"), (g, f, "f")):
        if a.relation is not None:
            r = b.pull(a.relation)
            if not _is_zero_mod(r, b.relation):
                residues.append(f"{label} misses the source hypersurface: {r}")
    return InverseCheck(not residues, tuple(residues))


def _factors_of(p: MultiPoly) -> list[MultiPoly]:
    if p.is_constant():
        return []
    return [q for q, _ in factor(p)[1]]


def pullback_curve(f: RationalMap, C) -> tuple[MultiPoly, RatFunc]:
    """Write C o f = image * cofactor where the cofactor is a unit on the
    declared domain (built only from factors of the domain)."""
    r = f.pull(ratfunc_from(C, f.target))
    if r.is_zero():
        raise DomainViolation("the curve pulls back to zero")
    dom_factors = _factors_of(f.domain)
    if f.relation is not None:
        raise InvalidInput("curve pullback is defined for maps between affine spaces only")

    def is_domain_factor(q: MultiPoly) -> bool:
        return any(q == d or q == -d for d in dom_factors) or any(
            (poly_gcd(q, d)).degree() == q.degree() for d in dom_factors)

    for q in _factors_of(r.den):
        if not is_domain_factor(q):
            raise DomainViolation(f"denominator factor {q} vanishes on the declared domain")
    const, facs = factor(r.num)
    image = MultiPoly.const(1, f.source)
    unit = MultiPoly.const(const, f.source)
    for q, k in facs:
        if is_domain_factor(q):
            unit = unit * q ** k
        else:
            image = image * q ** k
    return image, RatFunc(unit, r.den)


def is_coordinate(p: MultiPoly) -> str | None:
    """Name of the variable when p is a nonzero multiple of one coordinate."""
    if len(p.terms) != 1 or p.degree() != 1:
        return None
    (e, _), = p.terms.items()
    return p.variables[e.index(1)]


def check_equivariance(f: RationalMap, source_weights: Mapping[str, int], target_weights: Mapping[str, int],
                       modulus: int | None = None) -> tuple[bool, list[str]]:
    """Every component must be a quotient of weighted-homogeneous polynomials
    whose weight difference is the weight of its target variable (mod n for
    a cyclic group of order n); the source relation must be homogeneous too."""
    ws = tuple(source_weights[v] for v in f.source)
    red = (lambda x: x % modulus) if modulus else (lambda x: x)
    problems = []

    def weight(p: MultiPoly) -> int | None:
        s = {red(w) for w in p.weights(ws)}
        return s.pop() if len(s) == 1 else None

    for v, c in zip(f.target, f.components):
        a, b = weight(c.num), weight(c.den)
        if a is None or b is None:
            problems.append(f"component {v} is not weighted homogeneous")
        elif red(a - b) != red(target_weights[v]):
            problems.append(f"component {v} has weight {red(a - b)}, expected {red(target_weights[v])}")
    if f.relation is not None and weight(f.relation) is None:
        problems.append("source relation is not weighted homogeneous")
    return not problems, problems


# builtin maps ---------------------------------------------------------------

def _plane(comps, domain="1", name="") -> RationalMap:
    return RationalMap.build(PLANE, PLANE, comps, domain, None, name)


def _p_split(p) -> MultiPoly:
    """g with p = v*(1 + g) for a polynomial p(v) with p(0) = 0, p'(0) != 0."""
    p = ratfunc_from(p, PLANE).num if not isinstance(p, MultiPoly) else p.with_variables(PLANE)
    if p.degree_in("u") > 0:
        raise InvalidInput("p must be a polynomial in v")
    v = MultiPoly.var("v", PLANE)
    if p.constant_term() != 0 or p.coeff((0, 1)) == 0:
        raise InvalidInput("p must vanish to order exactly one at 0")
    return p.divexact(v) - 1


def rectify_phi(p) -> tuple[RationalMap, RationalMap]:
    g = _p_split(p)
    u, v = (MultiPoly.var(x, PLANE) for x in PLANE)
    g_sum = g.subs({"v": u + v}, PLANE)
    fwd = RationalMap(PLANE, PLANE, (RatFunc.from_poly(-u * (g_sum + 1)), RatFunc.from_poly(u + v)),
                      g_sum + 1, None, "rectify_phi")
    den = RatFunc.from_poly(g + 1)
    w = RatFunc.from_poly(u) / den
    inv = RationalMap(PLANE, PLANE, (-w, RatFunc.from_poly(v) + w), g + 1, None, "rectify_phi_inv")
    return fwd, inv


def _psi_common(d, a2, a3):
    for k in (d, a2, a3):
        if int(k) < 1:
            raise InvalidInput("d, alpha2, alpha3 must be positive integers")
    return int(d), int(a2), int(a3)


def psi1(d, a2, a3) -> tuple[RationalMap, RationalMap]:
    d, a2, a3 = _psi_common(d, a2, a3)
    src, tgt = ("x", "y", "z", "t"), ("Y", "Z", "T")
    rel = f"x + x^{d}*y^{d - 1} + z^{a2} + t^{a3}"
    unit = f"1 + (x*y)^{d - 1}"
    fwd = RationalMap.build(src, tgt, [f"-y/({unit})", "z", "t"], unit, rel, "psi1")
    q = f"(Y*Z^{a2} + Y*T^{a3})"
    inv_unit = f"1 + {q}^{d - 1}"
    inv = RationalMap.build(tgt, src, [
        f"-(Z^{a2} + T^{a3})/({inv_unit})",
        f"-Y*({inv_unit})",
        "Z",
        "T",
    ], inv_unit, None, "psi1_inv")
    return fwd, inv


def psi2(d, a2, a3) -> tuple[RationalMap, RationalMap]:
    d, a2, a3 = _psi_common(d, a2, a3)
    src, tgt = ("x", "y", "z", "t"), ("Y", "Z", "T")
    rel = f"x + y^{d - 1}*(x^{d} + z^{a2}) + t^{a3}"
    unit = f"1 + (x*y)^{d - 1}"
    fwd = RationalMap.build(src, tgt, [f"-y/({unit})", "z", "t"], unit, rel, "psi2")
    q = f"(Y^{d}*Z^{a2} + Y*T^{a3})"
    inv_unit = f"1 + {q}^{d - 1}"
    inv = RationalMap.build(tgt, src, [
        f"-Y^{d - 1}*Z^{a2} - T^{a3}/({inv_unit})",
        f"-Y*({inv_unit})",
        "Z",
        "T",
    ], inv_unit, None, "psi2_inv")
    return fwd, inv


def second_kind_phi(d) -> tuple[RationalMap, RationalMap]:
    d = int(d)
    if d < 1:
        raise InvalidInput("d must be a positive integer")
    s = "(v - u^2)"
    fwd_den = f"1 - u*{s}^{d - 1}"
    fwd = _plane([f"u*(1 + {s}^{2 * d - 1})/({fwd_den})", f"v - u^2"],
                 f"({fwd_den})*(1 + {s}^{2 * d - 1})", "second_kind_phi")
    inv_den = f"1 + v^{2 * d - 1} + u*v^{d - 1}"
    inv = _plane([f"u/({inv_den})", f"v + (u/({inv_den}))^2"], inv_den, "second_kind_phi_inv")
    return fwd, inv


def triangular_pair() -> tuple[RationalMap, RationalMap]:
    """The two plane automorphisms (u, v+u^2) and (u+v^2, v)."""
    return _plane(["u", "v + u^2"], "1", "shear_v"), _plane(["u + v^2", "v"], "1", "shear_u")


def triangular_inverse() -> RationalMap:
    """Inverse of the composite (u+(v+u^2)^2, v+u^2)."""
    return _plane(["u - v^2", "v - (u - v^2)^2"], "1", "triangular_inverse")


BUILTINS: dict[str, Callable[..., tuple[RationalMap, RationalMap]]] = {
    "rectify_phi": rectify_phi,
    "psi1": psi1,
    "psi2": psi2,
    "second_kind_phi": second_kind_phi,
    "triangular_pair": triangular_pair,
}


def builtin(name: str, *params):
    try:
        fn = BUILTINS[name]
    except KeyError:
        raise InvalidInput(f"unknown builtin map {name!r}; choose from {sorted(BUILTINS)}") from None
    return fn(*params)


def builtin_weights(name: str, *params) -> tuple[dict, dict, int | None]:
    """(source weights, target weights, cyclic order or None) for a builtin's forward map."""
    if name in ("psi1", "psi2"):
        d, a2, a3 = (int(x) for x in params)
        z = a3 if name == "psi1" else d * a3
        src = {"x": a2 * a3, "y": -a2 * a3, "z": z, "t": a2}
        return src, {"Y": -a2 * a3, "Z": z, "T": a2}, None
    if name == "second_kind_phi":
        d = int(params[0])
        w = {"u": d, "v": 1}
        return w, w, 2 * d - 1
    raise InvalidInput(f"no weight data for {name!r}")


# rectification certificates -------------------------------------------------

@dataclass(frozen=True)
class Rectification:
    """A birational map f of the plane, regular and invertible where its
    domain does not vanish (the origin included), pulling each curve back
    to a coordinate axis times a unit."""

    map: RationalMap
    images: tuple[tuple[str, str, str], ...]  # (curve, axis, cofactor)

    def to_json(self) -> dict:
        return {
            "map": self.map.name,
            "definition": self.map.to_json(),
            "images": [{"curve": c, "axis": a, "cofactor": u} for c, a, u in self.images],
        }


def _try_certificate(fwd: RationalMap, inv: RationalMap, curves) -> Rectification | None:
    origin = (0,) * len(fwd.source)
    if fwd.domain.evaluate(origin) == 0 or not verify_mutual_inverse(fwd, inv):
        return None
    images, axes = [], set()
    for C in curves:
        try:
            img, unit = pullback_curve(fwd, C)
        except DomainViolation:
            return None
        axis = is_coordinate(img)
        if axis is None or axis in axes or unit.num.evaluate(origin) == 0:
            return None
        axes.add(axis)
        images.append((serialize_poly(C), axis, str(unit)))
    return Rectification(fwd, tuple(images))


def _linear_pair(f1: MultiPoly, f2: MultiPoly):
    if f1.degree() != 1 or f2.degree() != 1:
        return None
    a, b, c = f1.coeff((1, 0)), f1.coeff((0, 1)), f1.constant_term()
    p, q, r = f2.coeff((1, 0)), f2.coeff((0, 1)), f2.constant_term()
    det = a * q - b * p
    if not det:
        return None
    # (u, v) -> point where f1 = u and f2 = v
    U = f"(({q})*(u - ({c})) - ({b})*(v - ({r})))/({det})"
    V = f"(({a})*(v - ({r})) - ({p})*(u - ({c})))/({det})"
    fwd = _plane([U, V], "1", "affine_linear")
    inv = RationalMap(PLANE, PLANE, (RatFunc.from_poly(f1), RatFunc.from_poly(f2)),
                      MultiPoly.const(1, PLANE), None, "affine_linear_inv")
    return fwd, inv


def find_rectification(C1, C2) -> Rectification | None:
    """Search the builtin families for a verified rectification of the pair."""
    f1 = C1.equation if hasattr(C1, "equation") else ratfunc_from(C1, PLANE).num
    f2 = C2.equation if hasattr(C2, "equation") else ratfunc_from(C2, PLANE).num
    u = MultiPoly.var("u", PLANE)
    candidates = []
    for a, b in ((f1, f2), (f2, f1)):
        lin = _linear_pair(a, b)
        if lin:
            candidates.append(lin)
        if a.degree() == 1 and a.monic() == u and b.degree_in("u") == 1 and b.coeff((1, 0)):
            p = b * (1 / b.coeff((1, 0))) - u
            if p.degree_in("u") == 0:
                try:
                    candidates.append(rectify_phi(p))
                except InvalidInput:
                    pass
        if a.monic() == u and b.degree_in("u") == 2 and b.degree() >= 2:
            d = _second_kind_degree(b)
            if d is not None:
                candidates.append(second_kind_phi(d))
    for fwd, inv in candidates:
        cert = _try_certificate(fwd, inv, (f1, f2))
        if cert is not None:
            return cert
    return None


def _second_kind_degree(b: MultiPoly) -> int | None:
    """d when b is a nonzero multiple of v + (u + v^d)^2."""
    for d in range(1, b.degree() + 1):
        target = parse_poly(f"v + (u + v^{d})^2", PLANE)
        lc = b.leading_coeff() / target.leading_coeff()
        if b == target * lc:
            return d
    return None

