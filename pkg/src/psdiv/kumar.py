"""Effectivity of 2K + D on log resolutions of plane curve pairs, the
rectifiability obstruction it yields, and the combined rationality report."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .curvegeom import (
    BlowupCluster,
    DivisorClass,
    PlaneCurve,
    canonical_class,
    cluster_labels,
    geometric_genus,
    log_resolution_pair,
    strict_transform,
    total_transform,
)
from .curvegeom.cluster import LOCAL
from .errors import IncompleteGeometry, InconsistentCertificates, InvalidInput, NonrationalCenter
from .exactmath.poly import MultiPoly, monomials_of_degree
from .exactmath.rational import format_rational
from .ratmaps import Rectification, find_rectification
from .segdiv import SegmentalDivisor

EFFECTIVE, EMPTY, UNKNOWN = "EFFECTIVE", "EMPTY", "UNKNOWN"
NOT_RECTIFIABLE, INCONCLUSIVE = "NOT_RECTIFIABLE", "INCONCLUSIVE"
NOT_GM_RATIONAL, GM_LINEARLY_RATIONAL = "NOT_GM_RATIONAL", "GM_LINEARLY_RATIONAL"
DEFAULT_N_MAX = 8


def kumar_murthy_class_on(cluster: BlowupCluster) -> DivisorClass:
    """2K + (strict transforms of the tracked curves), in the curve basis.
    A boundary line added for the resolution is not part of D."""
    M = canonical_class(cluster).scale(2)
    for C in cluster.curves:
        M = M + strict_transform(cluster, C.name)
    return M.expanded()


def kumar_murthy_class(C1: PlaneCurve, C2: PlaneCurve, with_line_at_infinity: bool = False):
    cluster, _ = log_resolution_pair(C1, C2, with_line_at_infinity)
    return cluster, kumar_murthy_class_on(cluster)


# linear systems --------------------------------------------------------------

def rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows if any(r)]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c]:
                k = rows[i][c] / p[c]
                rows[i] = [a - k * b for a, b in zip(rows[i], p)]
        r += 1
    return r


def _valuation_rows(d: int, cluster: BlowupCluster, nu) -> tuple[int, list[list[Fraction]]]:
    monos = monomials_of_degree(d, 3)
    rows: list[list[Fraction]] = []
    for k, p in enumerate(cluster.points):
        n = int(nu[k])
        if n <= 0:
            continue
        U, V, W = (c.truncate(n) for c in cluster.state(p.id).chart)
        powers = {}

        def pw(base, name, e):
            key = (name, e)
            if key not in powers:
                acc = MultiPoly.const(1, LOCAL)
                for _ in range(e):
                    acc = acc.mul_truncated(base, n)
                powers[key] = acc
            return powers[key]

        images = []
        for e in monos:
            img = pw(U, "u", e[0]).mul_truncated(pw(V, "v", e[1]), n).mul_truncated(pw(W, "w", e[2]), n)
            images.append(img)
        for a in range(n):
            for b in range(n - a):
                row = [img.coeff((a, b)) for img in images]
                if any(row):
                    rows.append(row)
    return len(monos), rows


def h0_with_valuations(d: int, cluster: BlowupCluster, nu) -> int:
    """Dimension of the degree-d forms whose pullback vanishes to order at
    least nu_i along the i-th exceptional curve."""
    if d < 0:
        return 0
    if any(int(x) < 0 for x in nu):
        raise InvalidInput("valuation bounds must be nonnegative")
    n, rows = _valuation_rows(d, cluster, nu)
    return n - rank(rows)


def h0_plane_system(d: int, cluster: BlowupCluster, mults) -> int:
    """Dimension of the degree-d forms through the cluster points with the
    assigned (virtual) multiplicities, i.e. H^0 of d*l - sum mults_i e_i."""
    mults = [int(m) for m in mults]
    if len(mults) != len(cluster):
        raise InvalidInput("one multiplicity per cluster point is required")
    if any(m < 0 for m in mults):
        raise InvalidInput("multiplicities must be nonnegative")
    idx = {p.id: k for k, p in enumerate(cluster.points)}
    nu = [0] * len(mults)
    for k, p in enumerate(cluster.points):
        nu[k] = mults[k] + sum(nu[idx[q]] for q in p.proximate_to)
    return h0_with_valuations(d, cluster, nu)


# effectivity -----------------------------------------------------------------

@dataclass(frozen=True)
class EffectivityVerdict:
    status: str
    certificate: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"status": self.status, "certificate": self.certificate}


def nef_battery(cluster: BlowupCluster) -> list[tuple[str, DivisorClass]]:
    out = [("l", DivisorClass.line(cluster))]
    for r in cluster.roots():
        out.append((f"l-e{r.id}", DivisorClass.line(cluster) - DivisorClass.exceptional(cluster, r.id)))
    return out


def _pairing(A: DivisorClass, B: DivisorClass) -> Fraction:
    a, b = A.expanded().to_basis("orthogonal"), B.expanded().to_basis("orthogonal")
    return a.l_coeff * b.l_coeff - sum((x * y for x, y in zip(a.exc_coeffs, b.exc_coeffs)), Fraction(0))


def emptiness_certificate(cluster: BlowupCluster, M: DivisorClass) -> dict | None:
    for name, N in nef_battery(cluster):
        p = _pairing(N, M)
        if p < 0:
            return {"nef_class": name, "pairing": format_rational(p)}
    return None


def effectivity_certificate(cluster: BlowupCluster, M: DivisorClass, n_max: int) -> dict | None:
    M = M.expanded().to_basis("curve")
    labels = cluster_labels(cluster)
    for n in range(1, n_max + 1):
        d = n * M.l_coeff
        c = [n * x for x in M.exc_coeffs]
        if d < 0 or d.denominator != 1 or any(x.denominator != 1 for x in c):
            continue
        if all(x >= 0 for x in c):
            return {
                "n": n,
                "kind": "decomposition",
                "l": format_rational(d),
                "exceptional": {labels[p.id]: format_rational(x) for p, x in zip(cluster.points, c) if x},
            }
        nu = [max(0, -int(x)) for x in c]
        h = h0_with_valuations(int(d), cluster, nu)
        if h > 0:
            return {"n": n, "kind": "linear-system", "degree": int(d), "valuations": nu, "h0": h}
    return None


def effectivity_verdict(cluster: BlowupCluster, M: DivisorClass, n_max: int = DEFAULT_N_MAX) -> EffectivityVerdict:
    if int(n_max) < 1:
        raise InvalidInput("n_max must be at least 1")
    empty = emptiness_certificate(cluster, M)
    eff = effectivity_certificate(cluster, M, int(n_max))
    if empty and eff:
        raise InconsistentCertificates(f"class is both effective ({eff}) and empty ({empty})")
    if eff:
        return EffectivityVerdict(EFFECTIVE, eff)
    if empty:
        return EffectivityVerdict(EMPTY, empty)
    return EffectivityVerdict(UNKNOWN, {"n_max": int(n_max)})


# rectifiability --------------------------------------------------------------

KM_STATUS = {EFFECTIVE: "geq_zero", EMPTY: "minus_infinity", UNKNOWN: "unknown"}


@dataclass(frozen=True)
class RectifiabilityReport:
    pair: tuple[str, str]
    km_status: str
    verdict: str
    certificate: dict
    citations: tuple[str, ...]
    cluster: BlowupCluster | None = field(default=None, compare=False, repr=False)
    kumar_class: DivisorClass | None = field(default=None, compare=False, repr=False)
    rectification: Rectification | None = field(default=None, compare=False, repr=False)
    note: str = ""

    def to_json(self, full: bool = False) -> dict:
        out = {
            "pair": list(self.pair),
            "km_status": self.km_status,
            "verdict": self.verdict,
            "certificate": self.certificate,
            "citations": list(self.citations),
        }
        if self.note:
            out["note"] = self.note
        if self.rectification is not None:
            out["rectification"] = self.rectification.to_json()
        if full and self.cluster is not None:
            cl = self.cluster
            labels = cluster_labels(cl)
            out["cluster"] = cl.to_json()
            out["labels"] = {str(k): v for k, v in labels.items()}
            out["canonical_class"] = canonical_class(cl).describe(labels)
            out["total_transforms"] = {
                n: total_transform(cl, n).describe(labels) for n in cl.component_names()
            }
            out["kumar_murthy_class"] = self.kumar_class.describe(labels)
        return out


def rectifiability_verdict(C1: PlaneCurve, C2: PlaneCurve, n_max: int = DEFAULT_N_MAX,
                           with_line_at_infinity: bool = False) -> RectifiabilityReport:
    cluster, M = kumar_murthy_class(C1, C2, with_line_at_infinity)
    ev = effectivity_verdict(cluster, M, n_max)
    km = KM_STATUS[ev.status]
    rect = find_rectification(C1, C2)
    verdict = NOT_RECTIFIABLE if km == "geq_zero" else INCONCLUSIVE
    if verdict == NOT_RECTIFIABLE and rect is not None:
        raise InconsistentCertificates("a verified rectification exists for a pair with effective 2K+D")
    note = ""
    if km == "minus_infinity":
        note = "negative Kumar-Murthy dimension does not by itself imply rectifiability"
    cites = ("kumar-murthy-obstruction",) + (("rectification-certificate",) if rect else ())
    return RectifiabilityReport(
        (str(C1), str(C2)), km, verdict, {"effectivity": ev.to_json()}, cites, cluster, M, rect, note)


# combined report ---------------------------------------------------------------

@dataclass(frozen=True)
class GmReport:
    verdict: str
    reasons: tuple[dict, ...]
    citations: tuple[str, ...]

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "citations": list(self.citations), "reasons": list(self.reasons)}


def gm_rationality_report(presentation: SegmentalDivisor, curves: dict[str, PlaneCurve],
                          n_max: int = DEFAULT_N_MAX) -> GmReport:
    """Aggregate the genus obstruction, the Kumar-Murthy obstruction and
    rectification certificates for the curves supporting a presentation."""
    support = []
    for lab, _ in presentation.components:
        if lab.kind == "exceptional":
            continue
        if lab.name not in curves:
            raise IncompleteGeometry(f"component {lab.name!r} has no plane curve attached")
        support.append(curves[lab.name])
    reasons: list[dict] = []
    for C in support:
        try:
            g = geometric_genus(C)
        except (InvalidInput, NonrationalCenter) as exc:
            reasons.append({"check": "genus", "curve": C.name, "result": "skipped", "why": str(exc)})
            continue
        reasons.append({"check": "genus", "curve": C.name, "result": g})
        if g > 0:
            return GmReport(NOT_GM_RATIONAL, tuple(reasons), ("genus-obstruction",))
    if len(support) == 2:
        C1, C2 = support
        try:
            rep = rectifiability_verdict(C1, C2, n_max)
        except NonrationalCenter as exc:
            reasons.append({"check": "kumar-murthy", "result": "skipped", "why": str(exc)})
        else:
            reasons.append({"check": "kumar-murthy", "result": rep.verdict, "km_status": rep.km_status})
            if rep.verdict == NOT_RECTIFIABLE:
                return GmReport(NOT_GM_RATIONAL, tuple(reasons), ("kumar-murthy-obstruction",))
            if rep.rectification is not None:
                reasons.append({"check": "rectification", "result": rep.rectification.to_json()})
                return GmReport(GM_LINEARLY_RATIONAL, tuple(reasons), ("rectification-certificate",))
    return GmReport(INCONCLUSIVE, tuple(reasons), ())


__all__ = [
    "DEFAULT_N_MAX", "EFFECTIVE", "EMPTY", "GM_LINEARLY_RATIONAL", "GmReport", "INCONCLUSIVE",
    "NOT_GM_RATIONAL", "NOT_RECTIFIABLE", "RectifiabilityReport", "UNKNOWN", "EffectivityVerdict",
    "effectivity_verdict", "gm_rationality_report", "h0_plane_system", "h0_with_valuations",
    "kumar_murthy_class", "kumar_murthy_class_on", "nef_battery", "rectifiability_verdict",
]
