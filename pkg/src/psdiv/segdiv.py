"""Segmental divisors: formal sums of prime divisors with closed rational
interval coefficients, and the operations used to read off their
evaluations and plus/minus parts."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable

from .errors import IncompleteGeometry, InvalidInput
from .exactmath.rational import as_fraction, format_rational, parse_rational

KINDS = ("strict-transform", "exceptional", "abstract")
TRISTATE = ("yes", "no", "unknown")


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        lo, hi = as_fraction(self.lo), as_fraction(self.hi)
        if lo > hi:
            raise InvalidInput(f"empty interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, a) -> "Interval":
        return cls(a, a)

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __add__(self, other: "Interval") -> "Interval":
        return minkowski_sum(self, other)

    def scale(self, k) -> "Interval":
        """k * [a, b] as a set (endpoints swap for negative k)."""
        k = as_fraction(k)
        a, b = k * self.lo, k * self.hi
        return Interval(min(a, b), max(a, b))

    def shift(self, t) -> "Interval":
        t = as_fraction(t)
        return Interval(self.lo + t, self.hi + t)

    def min_value(self, n) -> Fraction:
        n = as_fraction(n)
        return min(n * self.lo, n * self.hi)

    def __str__(self):
        if self.is_singleton:
            return "{" + format_rational(self.lo) + "}"
        return f"[{format_rational(self.lo)},{format_rational(self.hi)}]"


def minkowski_sum(I: Interval, J: Interval) -> Interval:
    return Interval(I.lo + J.lo, I.hi + J.hi)


@dataclass(frozen=True)
class DivisorLabel:
    name: str
    kind: str = "abstract"
    meets_exceptional: str = "unknown"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown divisor kind {self.kind!r}")
        if self.meets_exceptional not in TRISTATE:
            raise InvalidInput(f"meets_exceptional must be one of {TRISTATE}")
        if self.kind == "exceptional" and self.meets_exceptional != "yes":
            object.__setattr__(self, "meets_exceptional", "yes")


@dataclass(frozen=True)
class QDivisor:
    components: tuple[tuple[DivisorLabel, Fraction], ...] = ()

    def __post_init__(self):
        seen = set()
        clean = []
        for lab, c in self.components:
            if lab.name in seen:
                raise InvalidInput(f"duplicate label {lab.name!r}")
            seen.add(lab.name)
            c = as_fraction(c)
            if c:
                clean.append((lab, c))
        object.__setattr__(self, "components", tuple(clean))

    def coefficient(self, name: str) -> Fraction:
        return next((c for lab, c in self.components if lab.name == name), Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return {lab.name: c for lab, c in self.components}

    def labels(self) -> dict[str, DivisorLabel]:
        return {lab.name: lab for lab, _ in self.components}

    def __add__(self, other: "QDivisor") -> "QDivisor":
        labs = {**self.labels(), **other.labels()}
        a, b = self.as_dict(), other.as_dict()
        return QDivisor(tuple((labs[n], a.get(n, 0) + b.get(n, 0)) for n in _ordered(self, other)))

    def __neg__(self):
        return QDivisor(tuple((lab, -c) for lab, c in self.components))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k) -> "QDivisor":
        k = as_fraction(k)
        return QDivisor(tuple((lab, k * c) for lab, c in self.components))

    def dominates(self, other: "QDivisor") -> bool:
        """Coefficientwise self >= other."""
        a, b = self.as_dict(), other.as_dict()
        return all(a.get(n, 0) >= b.get(n, 0) for n in set(a) | set(b))

    def __eq__(self, other):
        if not isinstance(other, QDivisor):
            return NotImplemented
        return self.as_dict() == other.as_dict()

    def __hash__(self):
        return hash(frozenset(self.as_dict().items()))

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"({format_rational(c)}){lab.name}" for lab, c in self.components)


def _ordered(*divs) -> list[str]:
    names: list[str] = []
    for d in divs:
        for lab, _ in d.components:
            if lab.name not in names:
                names.append(lab.name)
    return names


@dataclass(frozen=True)
class SegmentalDivisor:
    surface: str
    components: tuple[tuple[DivisorLabel, Interval], ...] = field(default=())

    def __post_init__(self):
        seen = set()
        clean = []
        for lab, I in self.components:
            if lab.name in seen:
                raise InvalidInput(f"duplicate label {lab.name!r}")
            seen.add(lab.name)
            if not isinstance(I, Interval):
                I = Interval(*I)
            if not (I.lo == 0 and I.hi == 0):
                clean.append((lab, I))
        object.__setattr__(self, "components", tuple(clean))

    @classmethod
    def build(cls, surface: str, parts: Iterable) -> "SegmentalDivisor":
        return cls(surface, tuple(parts))

    def interval(self, name: str) -> Interval:
        return next((I for lab, I in self.components if lab.name == name), Interval(0, 0))

    def label(self, name: str) -> DivisorLabel:
        for lab, _ in self.components:
            if lab.name == name:
                return lab
        raise KeyError(name)

    def names(self) -> list[str]:
        return [lab.name for lab, _ in self.components]

    def with_labels(self, **updates: DivisorLabel) -> "SegmentalDivisor":
        return replace(self, components=tuple((updates.get(lab.name, lab), I) for lab, I in self.components))

    def __add__(self, other: "SegmentalDivisor") -> "SegmentalDivisor":
        labs = {lab.name: lab for lab, _ in self.components + other.components}
        names = [n for n in labs]
        return SegmentalDivisor(self.surface, tuple(
            (labs[n], minkowski_sum(self.interval(n), other.interval(n))) for n in names))

    def _key(self):
        return self.surface, frozenset((lab.name, I) for lab, I in self.components)

    def __eq__(self, other):
        if not isinstance(other, SegmentalDivisor):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __str__(self):
        if not self.components:
            return "0"
        return " + ".join(f"{I}{lab.name}" for lab, I in self.components)

    def to_json(self) -> dict:
        return {
            "surface": self.surface,
            "components": [
                {
                    "label": lab.name,
                    "kind": lab.kind,
                    "meets_exceptional": lab.meets_exceptional,
                    "lo": format_rational(I.lo),
                    "hi": format_rational(I.hi),
                }
                for lab, I in self.components
            ],
        }

    @classmethod
    def from_json(cls, data) -> "SegmentalDivisor":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            comps = tuple(
                (DivisorLabel(c["label"], c.get("kind", "abstract"), c.get("meets_exceptional", "unknown")),
                 Interval(parse_rational(str(c["lo"])), parse_rational(str(c["hi"]))))
                for c in data["components"]
            )
            return cls(str(data["surface"]), comps)
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed segmental divisor JSON: {exc}") from None


def evaluate_at(D: SegmentalDivisor, n: int) -> QDivisor:
    """The Q-divisor D(n): each coefficient is min(n*lo, n*hi)."""
    return QDivisor(tuple((lab, I.min_value(n)) for lab, I in D.components))


def to_plus_minus(D: SegmentalDivisor) -> tuple[QDivisor, QDivisor]:
    return evaluate_at(D, 1), evaluate_at(D, -1)


def from_plus_minus(surface: str, d_plus: QDivisor, d_minus: QDivisor) -> SegmentalDivisor:
    """Rebuild {1}*D+ + [0,1]*(-D- - D+)."""
    labs = {**d_minus.labels(), **d_plus.labels()}
    p, m = d_plus.as_dict(), d_minus.as_dict()
    parts = []
    for name in _ordered(d_plus, d_minus):
        a = p.get(name, Fraction(0))
        width = -m.get(name, Fraction(0)) - a
        parts.append((labs[name], minkowski_sum(Interval.point(a), Interval(0, 1).scale(width))))
    return SegmentalDivisor(surface, tuple(parts))


def hat_restrict(D: SegmentalDivisor) -> SegmentalDivisor:
    """Drop the components that do not meet the exceptional divisor."""
    for lab, _ in D.components:
        if lab.kind != "exceptional" and lab.meets_exceptional == "unknown":
            raise IncompleteGeometry(f"component {lab.name!r} has unknown intersection with the exceptional divisor")
    kept = tuple((lab, I) for lab, I in D.components
                 if lab.kind == "exceptional" or lab.meets_exceptional == "yes")
    return SegmentalDivisor(D.surface, kept)
