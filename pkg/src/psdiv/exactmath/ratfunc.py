from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from ..errors import InvalidInput
from .algebra import poly_gcd
from .poly import MultiPoly, _Parser, serialize_poly
from .rational import as_fraction


class RatFunc:
    """Quotient of two MultiPolys, kept reduced.

    The gcd is cancelled and the denominator scaled so that its grlex
    leading coefficient is 1; two RatFuncs are equal iff their stored
    numerators and denominators are.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly | None = None, *, reduce: bool = True):
        if den is None:
            den = MultiPoly.const(1, num.variables)
        if num.variables != den.variables:
            raise InvalidInput("numerator and denominator use different variables")
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = MultiPoly.const(1, num.variables)
        elif reduce and not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num, den = num.divexact(g), den.divexact(g)
        lc = den.leading_coeff()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p, None, reduce=False)

    @classmethod
    def const(cls, c, variables) -> "RatFunc":
        return cls.from_poly(MultiPoly.const(c, variables))

    @classmethod
    def var(cls, name, variables) -> "RatFunc":
        return cls.from_poly(MultiPoly.var(name, variables))

    @property
    def variables(self):
        return self.num.variables

    def is_zero(self) -> bool:
        return not self.num

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc.from_poly(other)
        return RatFunc.const(other, self.variables)

    def __add__(self, other):
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return RatFunc(self.den ** (-k), self.num ** (-k), reduce=False)
        return RatFunc(self.num ** k, self.den ** k, reduce=False)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, MultiPoly, int, Fraction)):
            o = self._coerce(other)
            return not (self.num * o.den - o.num * self.den)
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def evaluate(self, point) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("rational function evaluated on its pole locus")
        return self.num.evaluate(point) / d

    def subs(self, mapping: Mapping[str, object], target_vars) -> "RatFunc":
        """Substitute rational functions for variables.

        Uses one common denominator per substituted variable, so the result
        is formed with a single gcd cancellation.
        """
        tv = tuple(target_vars)
        images: dict[str, RatFunc] = {}
        for v in self.variables:
            if v in mapping:
                m = mapping[v]
                if isinstance(m, MultiPoly):
                    m = RatFunc.from_poly(m.with_variables(tv))
                elif not isinstance(m, RatFunc):
                    m = RatFunc.const(m, tv)
                elif m.variables != tv:
                    m = RatFunc(m.num.with_variables(tv), m.den.with_variables(tv), reduce=False)
            else:
                m = RatFunc.var(v, tv) if v in tv else None
            images[v] = m
        num = _subs_homogenised(self.num, self.den, images, tv)
        return RatFunc(*num)

    def __str__(self):
        if self.den == 1:
            return serialize_poly(self.num)
        return f"({serialize_poly(self.num)})/({serialize_poly(self.den)})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _subs_homogenised(num: MultiPoly, den: MultiPoly, images, tv):
    """Return (N', D') with N'/D' = num(images)/den(images)."""
    vs = num.variables
    degs = [max(num.degree_in(v), den.degree_in(v), 0) for v in vs]
    cache: dict[tuple[str, int, int], MultiPoly] = {}

    def piece(i, k, which):
        key = (i, k, which)
        if key not in cache:
            img = images[vs[i]]
            base = img.num if which == 0 else img.den
            cache[key] = base ** k
        return cache[key]

    def transform(p: MultiPoly) -> MultiPoly:
        out = MultiPoly.zero(tv)
        for e, c in p.items():
            term = MultiPoly.const(c, tv)
            for i, k in enumerate(e):
                if degs[i] == 0:
                    continue
                if images[vs[i]] is None:
                    raise InvalidInput(f"variable {vs[i]!r} has no image")
                if k:
                    term = term * piece(i, k, 0)
                if degs[i] - k:
                    term = term * piece(i, degs[i] - k, 1)
            out = out + term
        return out

    return transform(num), transform(den)


class _RatParser(_Parser):
    def const(self, c):
        return RatFunc.const(c, self.vars)

    def variable(self, name):
        return RatFunc.var(name, self.vars)


def parse_ratfunc(text: str, variables) -> RatFunc:
    """Parse a rational function: the polynomial grammar plus '/' between factors."""
    value = _RatParser(text, variables, allow_division=True).parse()
    return value if isinstance(value, RatFunc) else RatFunc.from_poly(value)


def ratfunc_from(value, variables) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, MultiPoly):
        return RatFunc.from_poly(value)
    if isinstance(value, str):
        return parse_ratfunc(value, variables)
    return RatFunc.const(as_fraction(value), variables)
