"""Clusters of infinitely near points over P^2.

Every blown-up point keeps a local picture: coordinates (x, y) centred at
the point, the chart map (U, V, W)(x, y) back to P^2, and the local
equations of all components passing through it (tracked curves, optional
boundary lines and earlier exceptional curves, the latter being x or y).
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from ..errors import InvalidInput, NonrationalCenter
from ..exactmath import univariate as up
from ..exactmath.poly import MultiPoly
from ..exactmath.solve import normalize_projective
from .curves import LINE_AT_INFINITY, PROJECTIVE, PlaneCurve

LOCAL = ("x", "y")
X = MultiPoly.var("x", LOCAL)
Y = MultiPoly.var("y", LOCAL)
INFINITY = "L_inf"


def exc_name(i: int) -> str:
    return f"E{i}"


@dataclass(frozen=True)
class LocalState:
    chart: tuple[MultiPoly, MultiPoly, MultiPoly]
    components: tuple[tuple[str, MultiPoly], ...]
    exc_axes: tuple[bool, bool] = (False, False)

    def names(self) -> list[str]:
        return [n for n, _ in self.components]

    def equation(self, name: str) -> MultiPoly | None:
        return next((g for n, g in self.components if n == name), None)

    def multiplicity(self, name: str) -> int:
        g = self.equation(name)
        return g.order() if g is not None else 0


@dataclass(frozen=True)
class ClusterPoint:
    id: int
    parent: int | None
    root: tuple[Fraction, Fraction, Fraction] | None
    direction: tuple[Fraction, Fraction] | None
    chart_map: tuple[tuple[int, Fraction], ...]
    proximate_to: frozenset[int]

    @property
    def is_root(self) -> bool:
        return self.parent is None

    @property
    def is_satellite(self) -> bool:
        return len(self.proximate_to) == 2

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "parent": -1 if self.parent is None else self.parent,
            "proximate_to": sorted(self.proximate_to),
            "root": [str(c) for c in self.root] if self.root is not None else None,
        }


@dataclass(frozen=True)
class RootCenter:
    coords: tuple[Fraction, Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "coords", normalize_projective(self.coords))


@dataclass(frozen=True)
class NearCenter:
    parent: int
    direction: tuple[Fraction, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "direction", normalize_direction(self.direction))


def normalize_direction(d) -> tuple[Fraction, Fraction]:
    a, b = (Fraction(c) for c in d)
    if a:
        return (Fraction(1), b / a)
    if not b:
        raise InvalidInput("direction [0:0] is not a point")
    return (Fraction(0), Fraction(1))


@dataclass(frozen=True)
class BlowupCluster:
    curves: tuple[PlaneCurve, ...]
    boundary: tuple[str, ...] = ()
    points: tuple[ClusterPoint, ...] = ()
    states: tuple[LocalState, ...] = ()
    mult_table: tuple[tuple[str, tuple[int, ...]], ...] = ()
    log: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        names = [c.name for c in self.curves] + list(self.boundary)
        if len(set(names)) != len(names):
            raise InvalidInput(f"component names must be unique: {names}")
        if not self.mult_table:
            object.__setattr__(self, "mult_table", tuple((n, ()) for n in names))

    @classmethod
    def empty(cls, curves: Iterable[PlaneCurve], with_line_at_infinity: bool = False) -> "BlowupCluster":
        return cls(tuple(curves), (INFINITY,) if with_line_at_infinity else ())

    # queries
    def __len__(self):
        return len(self.points)

    @property
    def ids(self) -> list[int]:
        return [p.id for p in self.points]

    def point(self, pid: int) -> ClusterPoint:
        return self.points[self._index(pid)]

    def state(self, pid: int) -> LocalState:
        return self.states[self._index(pid)]

    def _index(self, pid: int) -> int:
        for i, p in enumerate(self.points):
            if p.id == pid:
                return i
        raise InvalidInput(f"no cluster point with id {pid}")

    def component_names(self) -> list[str]:
        return [c.name for c in self.curves] + list(self.boundary)

    def curve(self, name: str) -> PlaneCurve:
        for c in self.curves:
            if c.name == name:
                return c
        raise InvalidInput(f"curve {name!r} is not tracked by this cluster")

    def global_equations(self) -> dict[str, MultiPoly]:
        eqs = {c.name: c.projective for c in self.curves}
        if INFINITY in self.boundary:
            eqs[INFINITY] = LINE_AT_INFINITY
        return eqs

    def degree(self, name: str) -> int:
        return 1 if name == INFINITY else self.curve(name).degree

    def mults(self, name: str) -> tuple[int, ...]:
        for n, m in self.mult_table:
            if n == name:
                return m
        raise InvalidInput(f"component {name!r} is not tracked by this cluster")

    @property
    def curve_mults(self) -> dict[str, tuple[int, ...]]:
        return dict(self.mult_table)

    def roots(self) -> list[ClusterPoint]:
        return [p for p in self.points if p.is_root]

    def children(self, pid: int) -> list[ClusterPoint]:
        return [p for p in self.points if p.parent == pid]

    def root_of(self, pid: int) -> ClusterPoint:
        p = self.point(pid)
        while p.parent is not None:
            p = self.point(p.parent)
        return p

    def proximity_matrix(self) -> list[list[int]]:
        """Pi[i][i] = 1 and Pi[i][j] = -1 when point j is proximate to point i."""
        n = len(self.points)
        idx = {p.id: i for i, p in enumerate(self.points)}
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for p in self.points:
            for q in p.proximate_to:
                M[idx[q]][idx[p.id]] = -1
        return M

    def signature(self) -> tuple:
        return tuple((p.id, p.parent, tuple(sorted(p.proximate_to))) for p in self.points)

    def to_json(self) -> dict:
        return {
            "points": [p.to_json() for p in self.points],
            "mults": {n: list(m) for n, m in self.mult_table},
        }


def root_chart(coords) -> tuple[MultiPoly, MultiPoly, MultiPoly]:
    a, b, c = normalize_projective(coords)
    one = MultiPoly.const(1, LOCAL)
    if c:
        return (X + a, Y + b, one)
    if b:
        return (X + a, one, Y)
    return (one, X, Y)


def _pullback(F: MultiPoly, chart) -> MultiPoly:
    return F.subs(dict(zip(PROJECTIVE, chart)), target_vars=LOCAL)


def root_state(cluster: BlowupCluster, coords) -> LocalState:
    chart = root_chart(coords)
    comps = []
    for name, F in cluster.global_equations().items():
        g = _pullback(F, chart)
        if g.constant_term() == 0:
            comps.append((name, g))
    return LocalState(chart, tuple(comps), (False, False))


def _step(direction) -> dict[str, MultiPoly]:
    a, t = direction
    if a:
        return {"x": X, "y": X * (Y + t)}
    return {"x": X * Y, "y": Y}


def child_state(state: LocalState, parent_id: int, direction) -> LocalState:
    """Local picture at the point of the new exceptional curve over ``state``
    in the given direction."""
    direction = normalize_direction(direction)
    sub = _step(direction)
    first_chart = bool(direction[0])
    comps = []
    for name, g in state.components:
        m = g.order()
        h = g.subs(sub, target_vars=LOCAL)
        h = h.divexact((X if first_chart else Y) ** m)
        if h.constant_term() == 0:
            comps.append((name, h))
    comps.append((exc_name(parent_id), X if first_chart else Y))
    chart = tuple(c.subs(sub, target_vars=LOCAL) for c in state.chart)
    xa, ya = state.exc_axes
    if first_chart:
        axes = (True, ya and direction[1] == 0)
    else:
        axes = (xa, True)
    return LocalState(chart, tuple(comps), axes)


def tangent_product(state: LocalState) -> MultiPoly:
    R = MultiPoly.const(1, LOCAL)
    for _, g in state.components:
        R = R * g.lowest_form()
    return R


def bad_directions(state: LocalState, where: dict | None = None) -> list[tuple[Fraction, Fraction]]:
    """Directions on the new exceptional line where the configuration is not
    SNC: the multiple roots of the product of the tangent cones."""
    R = tangent_product(state)
    if R.is_constant():
        return []
    out = []
    r = [R.coeff((R.degree() - k, k)) for k in range(R.degree() + 1)]
    g = up.gcd(up.trim(r), up.deriv(up.trim(r)))
    if len(g) > 1:
        if up.has_nonrational_roots(g):
            raise NonrationalCenter(
                f"non-SNC points over a proper extension of Q: roots of {up.to_str(g)}",
                {**(where or {}), "polynomial": up.to_str(g)},
            )
        out = [(Fraction(1), t) for t in up.rational_roots(g)]
    if R.coeff((0, R.degree())) == 0 and R.coeff((1, R.degree() - 1)) == 0:
        # x^2 divides R: the direction x = 0 is a multiple root
        out.append((Fraction(0), Fraction(1)))
    return out


def is_snc_state(state: LocalState) -> bool:
    comps = [g for _, g in state.components]
    if len(comps) > 2 or any(g.order() != 1 for g in comps):
        return False
    if len(comps) == 2:
        a, b = (g.homogeneous_part(1) for g in comps)
        cross = a.coeff((1, 0)) * b.coeff((0, 1)) - a.coeff((0, 1)) * b.coeff((1, 0))
        return cross != 0
    return True


def local_state(cluster: BlowupCluster, center) -> LocalState:
    if isinstance(center, RootCenter):
        return root_state(cluster, center.coords)
    if isinstance(center, NearCenter):
        return child_state(cluster.state(center.parent), center.parent, center.direction)
    raise InvalidInput(f"unsupported center {center!r}")


def blowup_at(cluster: BlowupCluster, center, curves: Iterable[PlaneCurve] | None = None) -> BlowupCluster:
    """Blow up one more point and append it to the cluster."""
    if curves is not None:
        curves = tuple(curves)
        if not cluster.points:
            cluster = replace(cluster, curves=curves, mult_table=())
        elif {c.name for c in curves} != {c.name for c in cluster.curves}:
            raise InvalidInput("tracked curves cannot change once points were blown up")
    new_id = len(cluster.points) + 1
    if isinstance(center, RootCenter):
        if any(p.root == center.coords for p in cluster.points):
            raise InvalidInput(f"root point {center.coords} already blown up")
        st = root_state(cluster, center.coords)
        pt = ClusterPoint(new_id, None, center.coords, None, (), frozenset())
    elif isinstance(center, NearCenter):
        parent = cluster.point(center.parent)
        if any(c.direction == center.direction for c in cluster.children(parent.id)):
            raise InvalidInput(f"direction {center.direction} over point {parent.id} already blown up")
        st = child_state(cluster.state(parent.id), parent.id, center.direction)
        prox = frozenset(int(n[1:]) for n in st.names() if n.startswith("E") and n[1:].isdigit())
        a, t = center.direction
        step = (1, t) if a else (2, Fraction(0))
        pt = ClusterPoint(new_id, parent.id, None, center.direction, parent.chart_map + (step,), prox)
    else:
        raise InvalidInput(f"unsupported center {center!r}")
    table = tuple((n, m + (st.multiplicity(n),)) for n, m in cluster.mult_table)
    return replace(cluster, points=cluster.points + (pt,), states=cluster.states + (st,), mult_table=table)
