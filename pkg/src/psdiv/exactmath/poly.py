"""Sparse multivariate polynomials over Q with a grlex canonical form."""
from __future__ import annotations

import re
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Mapping

from ..errors import InvalidInput, ParseError
from .rational import as_fraction, format_rational

Exps = tuple[int, ...]


def _grlex_key(e: Exps):
    return (sum(e), e)


class MultiPoly:
    """Immutable sparse polynomial.

    ``variables`` fixes the variable order; ``terms`` maps exponent tuples to
    nonzero Fractions.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exps, object] | None = None):
        vs = tuple(variables)
        if len(set(vs)) != len(vs):
            raise InvalidInput(f"repeated variable names in {vs}")
        clean: dict[Exps, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(vs) or any(k < 0 for k in e):
                raise InvalidInput(f"bad exponent vector {e} for variables {vs}")
            c = as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        object.__setattr__(self, "variables", vs)
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("MultiPoly is immutable")

    # construction helpers
    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exps, Fraction]) -> "MultiPoly":
        p = object.__new__(cls)
        object.__setattr__(p, "variables", variables)
        object.__setattr__(p, "_terms", terms)
        object.__setattr__(p, "_hash", None)
        return p

    @classmethod
    def zero(cls, variables) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def const(cls, c, variables) -> "MultiPoly":
        vs = tuple(variables)
        c = as_fraction(c)
        return cls._raw(vs, {(0,) * len(vs): c} if c else {})

    @classmethod
    def var(cls, name: str, variables) -> "MultiPoly":
        vs = tuple(variables)
        if name not in vs:
            raise InvalidInput(f"unknown variable {name!r}")
        e = tuple(int(v == name) for v in vs)
        return cls._raw(vs, {e: Fraction(1)})

    @classmethod
    def monomial(cls, exps: Exps, variables, coeff=1) -> "MultiPoly":
        return cls(variables, {tuple(exps): coeff})

    # basic queries
    @property
    def terms(self) -> dict[Exps, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coeff(self, exps: Exps) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((e[i] for e in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (multiplicity at the origin)."""
        return min((sum(e) for e in self._terms), default=-1)

    def homogeneous_part(self, k: int) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: c for e, c in self._terms.items() if sum(e) == k})

    def lowest_form(self) -> "MultiPoly":
        return self.homogeneous_part(self.order()) if self else self

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self) -> tuple[Exps, Fraction]:
        if not self._terms:
            raise InvalidInput("zero polynomial has no leading term")
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def leading_coeff(self) -> Fraction:
        return self.leading_term()[1]

    def used_variables(self) -> tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.variables) if any(e[i] for e in self._terms))

    def _index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise InvalidInput(f"unknown variable {name!r}") from None

    # equality and hashing
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.variables, frozenset(self._terms.items()))))
        return self._hash

    # arithmetic
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.variables != self.variables:
                raise InvalidInput(f"variable mismatch: {self.variables} vs {other.variables}")
            return other
        return MultiPoly.const(other, self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self._terms)
        for e, c in other._terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return MultiPoly._raw(self.variables, t)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = as_fraction(other)
            if not c:
                return MultiPoly.zero(self.variables)
            return MultiPoly._raw(self.variables, {e: v * c for e, v in self._terms.items()})
        other = self._coerce(other)
        t: dict[Exps, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return self.divexact(other)
        c = as_fraction(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (1 / c)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise InvalidInput("polynomial powers need a nonnegative integer exponent")
        result = MultiPoly.const(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def truncate(self, n: int) -> "MultiPoly":
        """Drop every term of total degree >= n."""
        return MultiPoly._raw(self.variables, {e: c for e, c in self._terms.items() if sum(e) < n})

    def mul_truncated(self, other: "MultiPoly", n: int) -> "MultiPoly":
        t: dict[Exps, Fraction] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            if d1 >= n:
                continue
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) >= n:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in t.items() if c})

    def monic(self) -> "MultiPoly":
        return self * (1 / self.leading_coeff()) if self else self

    def derivative(self, name: str) -> "MultiPoly":
        i = self._index(name)
        t = {}
        for e, c in self._terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                t[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.variables, t)

    # division
    def divmod(self, divisor: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Division by a single polynomial with grlex leading terms.

        The remainder is zero exactly when ``divisor`` divides ``self``.
        """
        divisor = self._coerce(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = divisor.leading_term()
        q: dict[Exps, Fraction] = {}
        r: dict[Exps, Fraction] = {}
        p = dict(self._terms)
        while p:
            e = max(p, key=_grlex_key)
            c = p[e]
            if all(a >= b for a, b in zip(e, le)):
                qe = tuple(a - b for a, b in zip(e, le))
                qc = c / lc
                q[qe] = q.get(qe, 0) + qc
                for de, dc in divisor._terms.items():
                    te = tuple(a + b for a, b in zip(qe, de))
                    v = p.get(te, 0) - qc * dc
                    if v:
                        p[te] = v
                    else:
                        p.pop(te, None)
            else:
                r[e] = c
                del p[e]
        return MultiPoly._raw(self.variables, {e: c for e, c in q.items() if c}), MultiPoly._raw(self.variables, r)

    def divides(self, other: "MultiPoly") -> bool:
        return not other.divmod(self)[1]

    def divexact(self, divisor: "MultiPoly") -> "MultiPoly":
        q, r = self.divmod(divisor)
        if r:
            raise InvalidInput("inexact polynomial division")
        return q

    # substitution and evaluation
    def evaluate(self, point) -> Fraction:
        if isinstance(point, Mapping):
            vals = [as_fraction(point[v]) for v in self.variables]
        else:
            vals = [as_fraction(x) for x in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for x, k in zip(vals, e):
                if k:
                    term *= x ** k
            total += term
        return total

    def subs(self, mapping: Mapping[str, object], target_vars=None) -> "MultiPoly":
        """Substitute polynomials (or scalars) for variables.

        Unmapped variables are kept and must exist in ``target_vars``
        (default: this polynomial's variables).
        """
        tv = tuple(target_vars) if target_vars is not None else None
        if tv is None:
            tv = next((m.variables for m in mapping.values() if isinstance(m, MultiPoly)), self.variables)
        images = []
        for i, v in enumerate(self.variables):
            if v in mapping:
                m = mapping[v]
                m = m if isinstance(m, MultiPoly) else MultiPoly.const(m, tv)
                if m.variables != tv:
                    m = m.with_variables(tv)
            elif any(e[i] for e in self._terms):
                m = MultiPoly.var(v, tv)
            else:
                m = None
            images.append(m)
        cache: dict[tuple[int, int], MultiPoly] = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] if k == 1 else power(i, k - 1) * images[i]
            return cache[key]

        out = MultiPoly.zero(tv)
        for e, c in self._terms.items():
            term = MultiPoly.const(c, tv)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def with_variables(self, new_vars) -> "MultiPoly":
        """Re-express over another variable list (must contain every used variable)."""
        nv = tuple(new_vars)
        if nv == self.variables:
            return self
        idx = []
        for i, v in enumerate(self.variables):
            if v in nv:
                idx.append(nv.index(v))
            elif any(e[i] for e in self._terms):
                raise InvalidInput(f"variable {v!r} is used but absent from {nv}")
            else:
                idx.append(None)
        t = {}
        for e, c in self._terms.items():
            f = [0] * len(nv)
            for i, k in enumerate(e):
                if idx[i] is not None:
                    f[idx[i]] = k
            t[tuple(f)] = c
        return MultiPoly._raw(nv, t)

    def coefficients_in(self, name: str) -> dict[int, "MultiPoly"]:
        """Group by the power of one variable; coefficients keep all variables."""
        i = self._index(name)
        groups: dict[int, dict[Exps, Fraction]] = {}
        for e, c in self._terms.items():
            f = list(e)
            k = f[i]
            f[i] = 0
            groups.setdefault(k, {})[tuple(f)] = c
        return {k: MultiPoly._raw(self.variables, t) for k, t in groups.items()}

    def univariate_coeffs(self, name: str | None = None) -> list[Fraction]:
        """Dense coefficient list (low to high) of a polynomial in one variable."""
        used = self.used_variables()
        if name is None:
            if len(used) > 1:
                raise InvalidInput(f"polynomial is not univariate: uses {used}")
            name = used[0] if used else self.variables[0]
        elif any(v != name for v in used):
            raise InvalidInput(f"polynomial is not univariate in {name!r}")
        i = self._index(name)
        out = [Fraction(0)] * (max((e[i] for e in self._terms), default=0) + 1)
        for e, c in self._terms.items():
            out[e[i]] = c
        return out

    @classmethod
    def from_univariate(cls, coeffs, name: str, variables=None) -> "MultiPoly":
        vs = tuple(variables) if variables is not None else (name,)
        i = vs.index(name)
        t = {}
        for k, c in enumerate(coeffs):
            if c:
                e = [0] * len(vs)
                e[i] = k
                t[tuple(e)] = as_fraction(c)
        return cls._raw(vs, t)

    def homogenize(self, name: str = "w", degree: int | None = None) -> "MultiPoly":
        d = self.degree() if degree is None else degree
        nv = self.variables + (name,)
        return MultiPoly._raw(nv, {e + (d - sum(e),): c for e, c in self._terms.items()})

    def dehomogenize(self, name: str) -> "MultiPoly":
        i = self._index(name)
        nv = self.variables[:i] + self.variables[i + 1:]
        t: dict[Exps, Fraction] = {}
        for e, c in self._terms.items():
            f = e[:i] + e[i + 1:]
            t[f] = t.get(f, 0) + c
        return MultiPoly._raw(nv, {e: c for e, c in t.items() if c})

    def weights(self, w: Mapping[str, int] | tuple[int, ...]) -> set[int]:
        """Set of weighted degrees of the terms."""
        ws = tuple(w[v] for v in self.variables) if isinstance(w, Mapping) else tuple(w)
        return {sum(a * b for a, b in zip(e, ws)) for e in self._terms}

    # text
    def __str__(self):
        return serialize_poly(self)

    def __repr__(self):
        return f"MultiPoly({self.variables}, {serialize_poly(self)!r})"


def _monomial_str(e: Exps, variables) -> str:
    parts = []
    for v, k in zip(variables, e):
        if k == 1:
            parts.append(v)
        elif k:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def serialize_poly(p: MultiPoly) -> str:
    """Canonical text: grlex-descending terms, reduced rational coefficients."""
    if not p:
        return "0"
    out = []
    for i, (e, c) in enumerate(p.sorted_terms()):
        mono = _monomial_str(e, p.variables)
        a = abs(c)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*^()/]))")


def _tokenize(text: str):
    pos, toks = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            stripped = len(text) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[stripped]!r}", stripped)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("num", num, start))
        elif name is not None:
            toks.append(("name", name, start))
        else:
            toks.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    """Recursive-descent parser; ``ring`` supplies const/var/arith hooks."""

    def __init__(self, text, variables, allow_division):
        self.toks = _tokenize(text)
        self.i = 0
        self.vars = tuple(variables)
        self.allow_division = allow_division

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        value = self.expr()
        kind, tok, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {tok!r}", pos)
        return value

    def expr(self):
        sign = 1
        kind, tok, _ = self.peek()
        if kind == "op" and tok in "+-":
            self.take()
            sign = -1 if tok == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while True:
            kind, tok, _ = self.peek()
            if kind == "op" and tok in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if tok == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.factor()
        while True:
            kind, tok, pos = self.peek()
            if kind == "op" and tok == "*":
                self.take()
                value = value * self.factor()
            elif kind == "op" and tok == "/" and self.allow_division:
                self.take()
                value = value / self.factor()
            elif kind == "op" and tok == "/":
                raise ParseError("division is only allowed inside rational literals", pos)
            else:
                return value

    def factor(self):
        base = self.base()
        kind, tok, pos = self.peek()
        if kind == "op" and tok == "^":
            self.take()
            kind, tok, pos = self.take()
            if kind != "num" or "/" in tok:
                raise ParseError("exponent must be a nonnegative integer", pos)
            base = base ** int(tok)
        return base

    def base(self):
        kind, tok, pos = self.take()
        if kind == "num":
            return self.const(Fraction(tok))
        if kind == "name":
            if tok not in self.vars:
                raise ParseError(f"unknown variable {tok!r}", pos)
            return self.variable(tok)
        if kind == "op" and tok == "(":
            value = self.expr()
            kind, tok2, pos2 = self.take()
            if tok2 != ")":
                raise ParseError("expected ')'", pos2)
            return value
        raise ParseError(f"unexpected token {tok!r}" if tok else "unexpected end of input", pos)

    def const(self, c):
        return MultiPoly.const(c, self.vars)

    def variable(self, name):
        return MultiPoly.var(name, self.vars)


def parse_poly(text: str, variables) -> MultiPoly:
    """Parse a polynomial in the given variables.

    Grammar: sums and differences of products of powers of integers,
    rationals ``p/q``, variables and parenthesised expressions; ``**`` is
    accepted as a synonym of ``^`` and an expression may start with a sign.
    """
    if not isinstance(text, str):
        raise InvalidInput("polynomial text must be a string")
    return _Parser(text, variables, allow_division=False).parse()


def resultant(f: MultiPoly, g: MultiPoly, name: str) -> MultiPoly:
    """Sylvester resultant eliminating ``name``.

    f's coefficients fill the top rows (highest power first), so
    res(f, g) = lc(f)^deg(g) * prod g(roots of f).
    """
    if f.variables != g.variables:
        raise InvalidInput("resultant of polynomials over different variables")
    if not f or not g:
        raise InvalidInput("resultant with a zero polynomial")
    m, n = f.degree_in(name), g.degree_in(name)
    if m == 0 and n == 0:
        raise InvalidInput(f"both polynomials are constant in {name!r}")
    fc, gc = f.coefficients_in(name), g.coefficients_in(name)
    zero = MultiPoly.zero(f.variables)
    size = m + n
    rows = []
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + m - k] = fc.get(k, zero)
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + n - k] = gc.get(k, zero)
        rows.append(row)
    return poly_det(rows, f.variables)


def poly_det(rows, variables) -> MultiPoly:
    """Bareiss determinant of a square matrix of MultiPoly entries."""
    M = [list(r) for r in rows]
    n = len(M)
    if n == 0:
        return MultiPoly.const(1, variables)
    sign = 1
    prev = MultiPoly.const(1, variables)
    for k in range(n - 1):
        if not M[k][k]:
            piv = next((i for i in range(k + 1, n) if M[i][k]), None)
            if piv is None:
                return MultiPoly.zero(variables)
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num.divexact(prev) if num else num
        prev = M[k][k]
    return M[n - 1][n - 1] * sign


def monomials_of_degree(d: int, nvars: int):
    """Exponent tuples of total degree d, grlex-descending."""
    out = [e for e in _cartesian(range(d + 1), repeat=nvars) if sum(e) == d]
    return sorted(out, reverse=True)
