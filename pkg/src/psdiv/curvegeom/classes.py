"""Divisor classes on blow-ups of P^2.

Two bases of the Picard lattice are used. The orthogonal basis is
(l, e_1, ..., e_n) with e_i the total transform of the i-th exceptional
curve; the form is diag(1, -1, ..., -1). The curve basis (l, E_1, ..., E_n)
uses the strict transforms E_i = e_i - sum_{j proximate to i} e_j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import InvalidInput
from ..exactmath.algebra import is_irreducible
from ..exactmath.rational import format_rational
from .cluster import BlowupCluster
from .curves import PlaneCurve
from .resolution import cluster_labels, log_resolution

BASES = ("orthogonal", "curve")


def _proximate_pairs(cluster: BlowupCluster):
    idx = {p.id: k for k, p in enumerate(cluster.points)}
    return idx, [(idx[p.id], [idx[q] for q in p.proximate_to]) for p in cluster.points]


def orthogonal_to_curve(cluster: BlowupCluster, x) -> tuple[Fraction, ...]:
    """Coefficients y on E_j from coefficients x on e_j: y_j = x_j + sum_{j prox i} y_i."""
    _, pairs = _proximate_pairs(cluster)
    y = [Fraction(0)] * len(x)
    for j, prox in pairs:
        y[j] = Fraction(x[j]) + sum((y[i] for i in prox), Fraction(0))
    return tuple(y)


def curve_to_orthogonal(cluster: BlowupCluster, y) -> tuple[Fraction, ...]:
    _, pairs = _proximate_pairs(cluster)
    return tuple(Fraction(y[j]) - sum((Fraction(y[i]) for i in prox), Fraction(0)) for j, prox in pairs)


@dataclass(frozen=True)
class DivisorClass:
    """l_coeff * l + sum exc_coeffs[i] * (e_i or E_i) + sum c * [strict transform of a tracked curve].

    Strict-transform terms stay symbolic so that total transforms can be
    written as C~ + sum e_i E_i; `expanded()` turns them into lattice vectors.
    """

    basis: str
    l_coeff: Fraction
    exc_coeffs: tuple[Fraction, ...]
    strict: tuple[tuple[str, Fraction], ...] = ()
    cluster: BlowupCluster | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.basis not in BASES:
            raise InvalidInput(f"unknown basis {self.basis!r}")
        object.__setattr__(self, "l_coeff", Fraction(self.l_coeff))
        object.__setattr__(self, "exc_coeffs", tuple(Fraction(c) for c in self.exc_coeffs))
        object.__setattr__(self, "strict", tuple((n, Fraction(c)) for n, c in self.strict if c))
        if self.cluster is not None and len(self.exc_coeffs) != len(self.cluster):
            raise InvalidInput("coefficient count does not match the cluster")

    @classmethod
    def line(cls, cluster: BlowupCluster, basis: str = "orthogonal") -> "DivisorClass":
        return cls(basis, 1, (0,) * len(cluster), (), cluster)

    @classmethod
    def exceptional(cls, cluster: BlowupCluster, pid: int, basis: str = "orthogonal") -> "DivisorClass":
        k = cluster.ids.index(pid)
        return cls(basis, 0, tuple(int(i == k) for i in range(len(cluster))), (), cluster)

    def _need_cluster(self) -> BlowupCluster:
        if self.cluster is None:
            raise InvalidInput("class is not attached to a cluster")
        return self.cluster

    def expanded(self) -> "DivisorClass":
        """Replace strict-transform symbols by d*l - sum m_i e_i."""
        if not self.strict:
            return self
        cl = self._need_cluster()
        D = self.to_basis("orthogonal")
        l = D.l_coeff
        x = list(D.exc_coeffs)
        for name, c in self.strict:
            l += c * cl.degree(name)
            for k, m in enumerate(cl.mults(name)):
                x[k] -= c * m
        return DivisorClass("orthogonal", l, tuple(x), (), cl).to_basis(self.basis)

    def to_basis(self, basis: str) -> "DivisorClass":
        if basis == self.basis:
            return self
        cl = self._need_cluster()
        conv = orthogonal_to_curve if basis == "curve" else curve_to_orthogonal
        return DivisorClass(basis, self.l_coeff, conv(cl, self.exc_coeffs), self.strict, cl)

    def _combine(self, other: "DivisorClass", sign: int) -> "DivisorClass":
        if self.cluster is not other.cluster and self.cluster is not None and other.cluster is not None:
            if self.cluster.signature() != other.cluster.signature():
                raise InvalidInput("classes live on different clusters")
        other = other.to_basis(self.basis)
        strict = dict(self.strict)
        for n, c in other.strict:
            strict[n] = strict.get(n, Fraction(0)) + sign * c
        return DivisorClass(
            self.basis,
            self.l_coeff + sign * other.l_coeff,
            tuple(a + sign * b for a, b in zip(self.exc_coeffs, other.exc_coeffs)),
            tuple(strict.items()),
            self.cluster or other.cluster,
        )

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, k) -> "DivisorClass":
        k = Fraction(k)
        return DivisorClass(self.basis, k * self.l_coeff, tuple(k * c for c in self.exc_coeffs),
                            tuple((n, k * c) for n, c in self.strict), self.cluster)

    __rmul__ = scale

    def same_class(self, other: "DivisorClass") -> bool:
        a = self.expanded().to_basis("orthogonal")
        b = other.expanded().to_basis("orthogonal")
        return a.l_coeff == b.l_coeff and a.exc_coeffs == b.exc_coeffs

    def describe(self, labels: dict[int, str] | None = None) -> str:
        cl = self.cluster
        if labels is None:
            labels = cluster_labels(cl) if cl is not None else {}
        ids = cl.ids if cl is not None else list(range(1, len(self.exc_coeffs) + 1))
        sym = "e" if self.basis == "orthogonal" else "E"
        parts = [(self.l_coeff, "l")] if self.l_coeff else []
        parts += [(c, labels.get(i, f"E{i}").replace("E", sym, 1)) for i, c in zip(ids, self.exc_coeffs) if c]
        parts += [(c, f"~{n}") for n, c in self.strict]
        if not parts:
            return "0"
        out = ""
        for c, s in parts:
            mag = "" if abs(c) == 1 else format_rational(abs(c))
            out += (" - " if c < 0 else " + ") + mag + s
        return out[3:] if out.startswith(" + ") else "-" + out[3:]

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "l": format_rational(self.l_coeff),
            "exceptional": [format_rational(c) for c in self.exc_coeffs],
            "strict": {n: format_rational(c) for n, c in self.strict},
        }


def canonical_class(cluster: BlowupCluster, basis: str = "curve") -> DivisorClass:
    K = DivisorClass("orthogonal", -3, (1,) * len(cluster), (), cluster)
    return K.to_basis(basis)


def total_transform(cluster: BlowupCluster, name: str) -> DivisorClass:
    """pi^*C as C~ + sum e_i E_i, with e given by the proximity recursion from the multiplicities."""
    if name not in cluster.component_names():
        raise InvalidInput(f"curve {name!r} is not tracked by this cluster")
    e = orthogonal_to_curve(cluster, cluster.mults(name))
    return DivisorClass("curve", 0, e, ((name, 1),), cluster)


def strict_transform(cluster: BlowupCluster, name: str) -> DivisorClass:
    return DivisorClass("curve", 0, (0,) * len(cluster), ((name, 1),), cluster)


def intersection_number(A: DivisorClass, B: DivisorClass) -> Fraction:
    if A.cluster is not None and B.cluster is not None and A.cluster.signature() != B.cluster.signature():
        raise InvalidInput("classes live on different clusters")
    a = A.expanded().to_basis("orthogonal")
    b = B.expanded().to_basis("orthogonal")
    if len(a.exc_coeffs) != len(b.exc_coeffs):
        raise InvalidInput("classes live on different clusters")
    return a.l_coeff * b.l_coeff - sum((x * y for x, y in zip(a.exc_coeffs, b.exc_coeffs)), Fraction(0))


def proximity_inequalities_hold(cluster: BlowupCluster, name: str) -> bool:
    m = cluster.mults(name)
    idx = {p.id: k for k, p in enumerate(cluster.points)}
    for p in cluster.points:
        prox_sum = sum(m[idx[q.id]] for q in cluster.points if p.id in q.proximate_to)
        if m[idx[p.id]] < prox_sum:
            return False
    return True


def geometric_genus(C: PlaneCurve) -> int:
    """(d-1)(d-2)/2 minus the delta contributions m(m-1)/2 of all infinitely near points."""
    if not is_irreducible(C.equation):
        raise InvalidInput(f"curve {C.name} is reducible over Q")
    cluster = log_resolution((C,))
    d = C.degree
    g = (d - 1) * (d - 2) // 2 - sum(m * (m - 1) // 2 for m in cluster.mults(C.name))
    if g < 0:
        raise InvalidInput(f"curve {C.name} is not absolutely irreducible (genus formula gives {g})")
    return g
