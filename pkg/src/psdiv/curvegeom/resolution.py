"""Log resolution of plane curve configurations by point blow-ups, plus an
independent checker for the resulting clusters."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..errors import InvalidInput, NonrationalCenter, ResolutionGuard
from ..exactmath.algebra import poly_gcd
from ..exactmath.poly import MultiPoly
from .cluster import (
    LOCAL,
    BlowupCluster,
    LocalState,
    NearCenter,
    RootCenter,
    bad_directions,
    blowup_at,
    normalize_direction,
)
from .curves import PROJECTIVE, PlaneCurve, bad_root_points


def _fmt_point(p) -> str:
    return "[" + ":".join(str(c) for c in p) + "]"


def guard_limit(curves: Sequence[PlaneCurve]) -> int:
    return 64 * sum(c.degree for c in curves) ** 2


def log_resolution(curves: Sequence[PlaneCurve], with_line_at_infinity: bool = False) -> BlowupCluster:
    """Blow up until the total transform of the curves (and L_inf, when asked)
    together with all exceptional curves is SNC.

    Root points are taken in lexicographic order; every tower is explored
    depth-first, directions ordered by slope with the vertical one last.
    """
    curves = tuple(curves)
    if not curves:
        raise InvalidInput("nothing to resolve")
    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            g = poly_gcd(curves[a].equation, curves[b].equation)
            if not g.is_constant():
                raise InvalidInput(f"curves {curves[a].name} and {curves[b].name} share the component {g}")
    cluster = BlowupCluster.empty(curves, with_line_at_infinity)
    bad = bad_root_points(cluster.global_equations())
    if bad.nonrational:
        raise NonrationalCenter(
            "non-SNC points over a proper extension of Q: " + "; ".join(bad.nonrational),
            {"stage": "root points", "details": list(bad.nonrational)},
            partial=cluster,
        )
    limit = guard_limit(curves)

    def grow(cl: BlowupCluster, center) -> BlowupCluster:
        if len(cl) >= limit:
            raise ResolutionGuard(f"more than {limit} blow-ups; aborting")
        return blowup_at(cl, center)

    def tower(cl: BlowupCluster, pid: int) -> BlowupCluster:
        try:
            dirs = bad_directions(cl.state(pid), {"over_point": pid})
        except NonrationalCenter as exc:
            exc.partial = cl
            raise
        for d in sorted(dirs, key=lambda d: (d[0] == 0, d[1])):
            cl = grow(cl, NearCenter(pid, d))
            cl = tower(cl, cl.points[-1].id)
        return cl

    for p in bad.points:
        cluster = grow(cluster, RootCenter(p))
        cluster = tower(cluster, cluster.points[-1].id)
    return cluster


@dataclass(frozen=True)
class PointCheck:
    id: int
    components: tuple[str, ...]
    tangent_product: str
    multiple_directions: tuple[tuple[Fraction, Fraction], ...]
    blown_up_directions: tuple[tuple[Fraction, Fraction], ...]

    @property
    def ok(self) -> bool:
        return set(self.multiple_directions) == set(self.blown_up_directions)


@dataclass(frozen=True)
class SNCCertificate:
    root_bad_points: tuple[tuple[Fraction, ...], ...]
    roots_blown_up: tuple[tuple[Fraction, ...], ...]
    checks: tuple[PointCheck, ...]
    mults_agree: bool

    @property
    def ok(self) -> bool:
        return (set(self.root_bad_points) == set(self.roots_blown_up)
                and self.mults_agree and all(c.ok for c in self.checks))

    def failures(self) -> list[str]:
        out = []
        if set(self.root_bad_points) != set(self.roots_blown_up):
            out.append("root centers differ from the non-SNC points of the plane configuration")
        if not self.mults_agree:
            out.append("recorded multiplicities disagree with the recomputed ones")
        out += [f"point {c.id}: non-SNC directions {c.multiple_directions} but blown up {c.blown_up_directions}"
                for c in self.checks if not c.ok]
        return out

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "root_bad_points": [_fmt_point(p) for p in self.root_bad_points],
            "points": [
                {
                    "id": c.id,
                    "components": list(c.components),
                    "tangent_product": c.tangent_product,
                    "non_snc_directions": [_fmt_point(d) for d in c.multiple_directions],
                }
                for c in self.checks
            ],
        }


def _recomputed_state(cluster: BlowupCluster, pid: int) -> tuple[list[str], list[MultiPoly]]:
    """Local equations at a cluster point, rebuilt from the total pullback
    through the stored chart rather than from the incremental strict
    transforms."""
    st = cluster.state(pid)
    x = MultiPoly.var("x", LOCAL)
    y = MultiPoly.var("y", LOCAL)
    names, eqs = [], []
    for name, F in cluster.global_equations().items():
        G = F.subs(dict(zip(PROJECTIVE, st.chart)), target_vars=LOCAL)
        for i, axis in enumerate((x, y)):
            if st.exc_axes[i] and G:
                G = G.divexact(axis ** min(e[i] for e in G.terms))
        if G.constant_term() == 0:
            names.append(name)
            eqs.append(G)
    if st.exc_axes[0]:
        names.append("exc:x")
        eqs.append(x)
    if st.exc_axes[1]:
        names.append("exc:y")
        eqs.append(y)
    return names, eqs


def snc_certificate(cluster: BlowupCluster) -> SNCCertificate:
    """Independent check that a cluster is a minimal-by-construction log
    resolution: blown-up roots are exactly the non-SNC points of the plane
    configuration, and at every point the blown-up directions are exactly
    the directions where the configuration stays non-SNC."""
    bad = bad_root_points(cluster.global_equations())
    roots = tuple(p.root for p in cluster.roots())
    checks = []
    mults_ok = True
    for k, p in enumerate(cluster.points):
        names, eqs = _recomputed_state(cluster, p.id)
        for n in cluster.component_names():
            m = eqs[names.index(n)].order() if n in names else 0
            if cluster.mults(n)[k] != m:
                mults_ok = False
        R = MultiPoly.const(1, LOCAL)
        for g in eqs:
            R = R * g.lowest_form()
        fake = LocalState(cluster.state(p.id).chart, tuple(zip(names, eqs)))
        dirs = tuple(bad_directions(fake, {"over_point": p.id}))
        children = tuple(c.direction for c in cluster.children(p.id))
        checks.append(PointCheck(p.id, tuple(names), str(R), dirs, children))
    return SNCCertificate(tuple(bad.points), roots, tuple(checks), mults_ok)


def log_resolution_pair(C1: PlaneCurve, C2: PlaneCurve, with_line_at_infinity: bool = False):
    """Resolve C1 + C2 and return (cluster, certificate)."""
    if C1.name == C2.name:
        C2 = PlaneCurve(C2.equation, C2.name + "'")
    cluster = log_resolution((C1, C2), with_line_at_infinity)
    return cluster, snc_certificate(cluster)


def cluster_labels(cluster: BlowupCluster) -> dict[int, str]:
    """Human labels E1, E2, ... over the first root, E'1, ... over the second."""
    labels = {}
    order = {r.id: i for i, r in enumerate(cluster.roots())}
    counters: dict[int, int] = {}
    for p in cluster.points:
        r = order[cluster.root_of(p.id).id]
        counters[r] = counters.get(r, 0) + 1
        labels[p.id] = "E" + "'" * r + str(counters[r])
    return labels


def chain_multiplicities(cluster: BlowupCluster, name: str) -> dict[tuple, tuple[int, ...]]:
    """Multiplicity sequence of one tracked component, grouped by root."""
    m = cluster.mults(name)
    out: dict[tuple, list[int]] = {}
    for k, p in enumerate(cluster.points):
        out.setdefault(cluster.root_of(p.id).root, []).append(m[k])
    return {r: tuple(v) for r, v in out.items()}


__all__ = [
    "PointCheck", "SNCCertificate", "chain_multiplicities", "cluster_labels",
    "guard_limit", "log_resolution", "log_resolution_pair", "normalize_direction",
    "snc_certificate",
]
