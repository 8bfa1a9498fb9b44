from fractions import Fraction

from ..errors import ParseError

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse "p", "-p" or "p/q" (no floats)."""
    s = text.strip()
    body = s[1:] if s[:1] in "+-" else s
    parts = body.split("/")
    if not (1 <= len(parts) <= 2) or not all(p.isdigit() for p in parts):
        raise ParseError(f"not a rational literal: {text!r}")
    if len(parts) == 2 and int(parts[1]) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(s)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
