"""Command line front end. JSON goes to stdout, a short summary to stderr.

Exit codes: 0 success, 1 verification failure, 2 invalid input,
3 aborted computation (blow-up center not defined over Q).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import __version__
from .ahpres import (
    A3ActionData,
    FamilyData,
    LatticePresentation,
    a3_oracle,
    a3_presentation,
    family_oracle,
    family_presentation,
    family_smoothness,
    integer_translates,
    ray_segments,
)
from .curvegeom import PlaneCurve, log_resolution_pair
from .errors import InvalidInput, NonrationalCenter, PsdivError
from .kumar import DEFAULT_N_MAX, gm_rationality_report, rectifiability_verdict
from .ratmaps import (
    RationalMap,
    builtin,
    builtin_weights,
    check_equivariance,
    compose,
    triangular_inverse,
    is_coordinate,
    pullback_curve,
    verify_mutual_inverse,
)
from .segdiv import SegmentalDivisor, evaluate_at, from_plus_minus, to_plus_minus

OK, VERIFY_FAILED, BAD_INPUT, ABORTED = 0, 1, 2, 3


class Outcome:
    def __init__(self, payload: dict, code: int = OK, summary: str = ""):
        self.payload, self.code, self.summary = payload, code, summary


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidInput(f"expected comma separated integers, got {text!r}") from None


def load_fixture(name: str) -> dict:
    path = Path(name)
    if path.exists():
        return json.loads(path.read_text())
    res = resources.files("psdiv") / "fixtures" / (name if name.endswith(".json") else name + ".json")
    if not res.is_file():
        raise InvalidInput(f"no such presentation file or fixture: {name}")
    return json.loads(res.read_text())


# commands ------------------------------------------------------------------

def cmd_a3(args) -> Outcome:
    section = _ints(args.section) if args.section else None
    data = A3ActionData.create(args.a, args.b, args.c, section)
    D = a3_presentation(data)
    out = {"weights": [args.a, args.b, -args.c], "section": list(data.section),
           "divisor": str(D), "presentation": D.to_json()}
    code = OK
    if args.oracle:
        try:
            orc = a3_oracle(data)
            agree = all(integer_translates(D.interval(n), s) for n, s in zip(("D1", "D2", "E"), orc.segments))
            out["oracle"] = {"rays": [list(r) for r in orc.rays], "segments": [str(s) for s in orc.segments],
                             "agrees": agree}
            code = OK if agree else VERIFY_FAILED
        except PsdivError as exc:
            out["oracle"] = {"error": str(exc)}
            code = VERIFY_FAILED
    return Outcome(out, code, str(D))


def cmd_family(args) -> Outcome:
    data = FamilyData.create(args.d, args.alpha2, args.alpha3, args.p)
    D, L1, L2 = family_presentation(data)
    sm = family_smoothness(data)
    orc = family_oracle(data)
    out = {
        "parameters": {"d": data.d, "alpha2": data.alpha2, "alpha3": data.alpha3, "p": str(data.p)},
        "bezout": {"a": data.a, "b": data.b},
        "divisor": str(D),
        "presentation": D.to_json(),
        "smoothness": {"verdict": sm.label, "witness": str(sm.witness) if sm.witness is not None else None},
        "curves": {"L1": str(L1), "L2": str(L2)},
        "hypersurface": str(data.hypersurface()),
        "oracle_segments": [str(s) for s in orc.segments],
    }
    return Outcome(out, OK, f"{D}  ({sm.label})")


def cmd_present(args) -> Outcome:
    lat = LatticePresentation.canonical(args.weights, _ints(args.section) if args.section else None)
    pres = ray_segments(lat)
    out = pres.to_json()
    out["segments"] = [str(s) for s in pres.segments]
    return Outcome(out, OK, str(pres.divisor))


def cmd_rectifiability(args) -> Outcome:
    C1 = PlaneCurve.parse(args.curve1, "C1")
    C2 = PlaneCurve.parse(args.curve2, "C2")
    rep = rectifiability_verdict(C1, C2, args.n_max, args.with_infinity)
    return Outcome(rep.to_json(full=True), OK, f"km {rep.km_status}: {rep.verdict}")


def _builtin_cases(only: str | None, d: int | None):
    cases = [
        ("rectify_phi", ("v+v^2",)),
        ("psi1", (2, 2, 3)),
        ("psi2", (2, 2, 3)),
        ("second_kind_phi", (2,)),
        ("second_kind_phi", (3,)),
    ]
    if only:
        cases = [c for c in cases if c[0] == only]
        if only == "triangular_pair":
            cases = []
        elif not cases:
            raise InvalidInput(f"unknown builtin {only!r}")
    if d is not None:
        cases = [(n, (d,) + p[1:] if n != "rectify_phi" else p) for n, p in cases]
        cases = list(dict.fromkeys(cases))
    return cases


def _triangular_row() -> dict:
    a, b = builtin("triangular_pair")
    composite = compose(b, a)
    inv = triangular_inverse()
    ok = verify_mutual_inverse(composite, inv)
    img, unit = pullback_curve(inv, "u+(v+u^2)^2")
    axis = is_coordinate(img)
    return {"map": "triangular_pair", "params": [], "inverse": ok.ok, "residues": list(ok.residues),
            "pullback": {"image": str(img), "cofactor": str(unit), "axis": axis},
            "pass": bool(ok.ok and axis is not None and unit.is_polynomial() and unit.num.is_constant())}


def cmd_verify_maps(args) -> Outcome:
    rows = []
    for name, params in _builtin_cases(args.only, args.d):
        fwd, inv = builtin(name, *params)
        chk = verify_mutual_inverse(fwd, inv)
        row = {"map": name, "params": [str(p) for p in params], "inverse": chk.ok, "residues": list(chk.residues)}
        if name != "rectify_phi":
            sw, tw, mod = builtin_weights(name, *params)
            eq_ok, problems = check_equivariance(fwd, sw, tw, mod)
            row["equivariant"] = eq_ok
            row["equivariance_problems"] = problems
        else:
            eq_ok = True
        row["pass"] = chk.ok and eq_ok
        rows.append(row)
    if args.only in (None, "triangular_pair"):
        rows.append(_triangular_row())
    if args.fixture:
        data = load_fixture(args.fixture)
        f = RationalMap.from_json(data["forward"])
        g = RationalMap.from_json(data["inverse"])
        chk = verify_mutual_inverse(f, g)
        rows.append({"map": data.get("name", "fixture"), "params": [], "inverse": chk.ok,
                     "residues": list(chk.residues), "pass": chk.ok})
    ok = all(r["pass"] for r in rows)
    summary = "\n".join(f"{'PASS' if r['pass'] else 'FAIL'}  {r['map']} {','.join(r['params'])}" for r in rows)
    return Outcome({"results": rows, "all_pass": ok}, OK if ok else VERIFY_FAILED, summary)


def cmd_report(args) -> Outcome:
    data = load_fixture(args.presentation)
    try:
        D = SegmentalDivisor.from_json(data["presentation"])
        curves = {k: PlaneCurve.parse(v, k) for k, v in data.get("curves", {}).items()}
    except KeyError as exc:
        raise InvalidInput(f"presentation file lacks {exc}") from None
    rep = gm_rationality_report(D, curves, args.n_max)
    out = {"presentation": str(D), **rep.to_json()}
    return Outcome(out, OK, rep.verdict)


def cmd_selftest(args) -> Outcome:
    """Internal consistency checks on seeded random data."""
    rng = random.Random(args.seed)
    checks = {}
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 4)
        comps = []
        for i in range(n):
            lo = rng.randint(-12, 12) / rng.randint(1, 6)
            comps.append((f"D{i}", lo, lo + rng.randint(0, 12) / rng.randint(1, 6)))
        D = SegmentalDivisor.from_json({"surface": "S", "components": [
            {"label": nm, "lo": str(_frac(lo)), "hi": str(_frac(hi))} for nm, lo, hi in comps]})
        p, m = to_plus_minus(D)
        if from_plus_minus("S", p, m) != D:
            bad += 1
        k = rng.randint(-6, 6)
        j = rng.randint(0, 6)
        if evaluate_at(D, k * j) != evaluate_at(D, k).scale(j):
            bad += 1
    checks["segmental_roundtrip_and_homogeneity"] = bad == 0
    triples = [(rng.randint(1, 9), rng.randint(1, 9), rng.randint(1, 9)) for _ in range(30)]
    agree = True
    for a, b, c in triples:
        try:
            data = A3ActionData.create(a, b, c)
        except InvalidInput:
            continue
        if data.quotient_is_plane():
            orc = a3_oracle(data)
            D = a3_presentation(data)
            agree &= all(integer_translates(D.interval(nm), s) for nm, s in zip(("D1", "D2", "E"), orc.segments))
    checks["closed_form_on_plane_quotients"] = agree
    _, cert = log_resolution_pair(PlaneCurve.parse("u+(v+u^2)^2", "C"), PlaneCurve.parse("v*(v-1)+u", "C2"), True)
    checks["resolution_certificate"] = cert.ok
    fwd, inv = builtin("second_kind_phi", rng.randint(2, 4))
    checks["second_kind_inverse"] = verify_mutual_inverse(fwd, inv).ok
    ok = all(checks.values())
    return Outcome({"seed": args.seed, "checks": checks, "all_pass": ok}, OK if ok else VERIFY_FAILED,
                   "selftest " + ("passed" if ok else "FAILED"))


def _frac(x: float) -> Fraction:
    return Fraction(x).limit_denominator(720)


def cmd_run(args) -> Outcome:
    jobs = json.loads(Path(args.jobs).read_text())
    if not isinstance(jobs, list):
        raise InvalidInput("jobs file must hold a JSON list")
    results, worst = [], OK
    for job in jobs:
        if not isinstance(job, dict) or "command" not in job:
            raise InvalidInput("every job needs a 'command'")
        argv = [str(job["command"])] + [str(a) for a in job.get("args", [])]
        if job["command"] == "run":
            raise InvalidInput("nested batch files are not supported")
        res = execute(argv)
        results.append({"command": argv, "exit_code": res.code, "output": res.payload})
        worst = max(worst, res.code)
    return Outcome({"jobs": results}, worst, f"{len(results)} jobs, worst exit code {worst}")


# parser ----------------------------------------------------------------------

class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as exceptions so batch jobs can keep going."""

    def error(self, message):
        raise _ArgError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="psdiv", description="Presentations and rationality certificates for torus actions.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("a3", help="closed-form presentation for weights (a, b, -c) on A^3")
    for k in ("a", "b", "c"):
        p.add_argument(k, type=int)
    p.add_argument("--section", help="alpha,beta,gamma with alpha*a + beta*b - gamma*c = 1")
    p.add_argument("--oracle", action="store_true", help="cross-check against the general ray computation")
    p.set_defaults(fn=cmd_a3)

    p = sub.add_parser("family", help="presentation and smoothness for the hypersurface family")
    p.add_argument("d", type=int)
    p.add_argument("alpha2", type=int)
    p.add_argument("alpha3", type=int)
    p.add_argument("p", help="polynomial in v with p(0) = 0")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("present", help="rays and segments for an arbitrary weight vector")
    p.add_argument("weights", type=int, nargs="+")
    p.add_argument("--section")
    p.set_defaults(fn=cmd_present)

    p = sub.add_parser("rectifiability", help="Kumar-Murthy obstruction for a pair of plane curves")
    p.add_argument("curve1")
    p.add_argument("curve2")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--with-infinity", action="store_true", help="also resolve against the line at infinity")
    p.set_defaults(fn=cmd_rectifiability)

    p = sub.add_parser("verify-maps", help="check the builtin birational maps")
    p.add_argument("--only")
    p.add_argument("--d", type=int)
    p.add_argument("--fixture", help="extra map pair (JSON with 'forward' and 'inverse')")
    p.set_defaults(fn=cmd_verify_maps)

    p = sub.add_parser("report", help="combined rationality report for a presentation file")
    p.add_argument("presentation", help="JSON file or builtin fixture name")
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.set_defaults(fn=cmd_report)

    p = sub.add_parser("selftest")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_selftest)

    p = sub.add_parser("run", help="execute a JSON list of jobs")
    p.add_argument("jobs")
    p.set_defaults(fn=cmd_run)
    return ap


def execute(argv) -> Outcome:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _ArgError as exc:
        return Outcome({"error": str(exc)}, BAD_INPUT, f"error: {exc}")
    try:
        return args.fn(args)
    except NonrationalCenter as exc:
        partial = exc.partial.to_json() if exc.partial is not None else None
        return Outcome({"error": str(exc), "where": _jsonable(exc.where), "partial_cluster": partial},
                       ABORTED, f"aborted: {exc}")
    except (InvalidInput, json.JSONDecodeError, OSError) as exc:
        return Outcome({"error": str(exc)}, BAD_INPUT, f"error: {exc}")


def _jsonable(x):
    return json.loads(json.dumps(x, default=str))


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res = execute(argv)
    sys.stdout.write(json.dumps(res.payload, indent=2, default=str) + "\n")
    if res.summary:
        sys.stderr.write(res.summary + "\n")
    return res.code


if __name__ == "__main__":
    sys.exit(main())
