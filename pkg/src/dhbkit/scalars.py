"""Scalar domains: exact rationals, Eisenstein rationals, complex floats.

Rationals are plain :class:`fractions.Fraction`. Eisenstein rationals
``a + b*w`` (``w`` a primitive cube root of unity) are :class:`Eis`. Complex
floats are Python ``complex`` and only ever compared with a tolerance.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

RATIONAL = "rational"
EISENSTEIN = "eisenstein"
COMPLEX = "complex"

SQRT3_2 = math.sqrt(3.0) / 2.0


class Eis:
    """Element ``a + b*w`` of Q(w), with ``w**2 = -1 - w``."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = Fraction(a)
        self.b = Fraction(b)

    @staticmethod
    def _coerce(other):
        if isinstance(other, Eis):
            return other
        if isinstance(other, (int, Fraction)):
            return Eis(other, 0)
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) + other
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Eis(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Eis(-self.a, -self.b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) * other
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # (a + b w)(c + d w) = ac - bd + (ad + bc - bd) w
        bd = self.b * o.b
        return Eis(self.a * o.a - bd, self.a * o.b + self.b * o.a - bd)

    __rmul__ = __mul__

    def conjugate(self):
        return Eis(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def __truediv__(self, other):
        if isinstance(other, (float, complex)):
            return complex(self) / other
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("Eisenstein division by zero")
        c = self * o.conjugate()
        return Eis(c.a / n, c.b / n)

    def __rtruediv__(self, other):
        if isinstance(other, (float, complex)):
            return other / complex(self)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return Eis(1) / (self ** (-k))
        out, base = Eis(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __complex__(self):
        return complex(float(self.a) - 0.5 * float(self.b), SQRT3_2 * float(self.b))

    def __repr__(self):
        return f"Eis({self.a}, {self.b})"

    def __str__(self):
        return format_scalar(self)


OMEGA = Eis(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Eis))


def domain_of(values: Iterable) -> str:
    """Smallest domain holding every value. Raises on anything unknown."""
    dom = RATIONAL
    for v in values:
        if isinstance(v, Eis):
            if dom == RATIONAL:
                dom = EISENSTEIN
        elif isinstance(v, (int, Fraction)):
            continue
        elif isinstance(v, (float, complex)):
            return COMPLEX
        else:
            raise TypeError(f"unsupported scalar {v!r}")
    return dom


def convert(x, domain: str):
    """Coerce ``x`` into ``domain``; exact domains never accept floats."""
    if domain == COMPLEX:
        return complex(x)
    if isinstance(x, (float, complex)):
        raise TypeError(f"refusing float {x!r} in exact domain {domain}")
    if domain == EISENSTEIN:
        return x if isinstance(x, Eis) else Eis(x)
    if isinstance(x, Eis):
        if x.b != 0:
            raise TypeError(f"{x} is not rational")
        return x.a
    return Fraction(x)


def close(x, y, tol: float = 1e-12) -> bool:
    """Tolerance equality for the complex-float domain, exact otherwise."""
    if is_exact(x) and is_exact(y):
        return x == y
    x, y = complex(x), complex(y)
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def to_complex(x) -> complex:
    return complex(x)


def rationalize(x: float, max_den: int = 10**6) -> Fraction:
    return Fraction(x).limit_denominator(max_den)


def eisenstein_from_complex(z: complex, max_den: int = 10**6) -> Eis:
    b = z.imag / SQRT3_2
    a = z.real + 0.5 * b
    return Eis(rationalize(a, max_den), rationalize(b, max_den))


def parse_scalar(text, domain: str = RATIONAL):
    """Parse ``"p/q"`` or ``"p/q+r/s w"`` exactly; complex accepts ``[re, im]``."""
    if domain == COMPLEX:
        if isinstance(text, (list, tuple)):
            return complex(float(text[0]), float(text[1]))
        return complex(text)
    if isinstance(text, int) and not isinstance(text, bool):
        return convert(text, domain)
    if not isinstance(text, str):
        raise ValueError(f"exact scalars must be strings, got {text!r}")
    s = text.replace(" ", "")
    if not s.endswith("w"):
        return convert(Fraction(s), domain)
    if domain == RATIONAL:
        raise ValueError(f"{text!r} is not rational")
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        head, tail = body[:cut], body[cut:]
    else:
        head, tail = "0", body
    b = {"": 1, "+": 1, "-": -1}.get(tail)
    return Eis(Fraction(head), Fraction(tail) if b is None else b)


def format_scalar(x):
    """Inverse of :func:`parse_scalar`; complex values become ``[re, im]``."""
    if isinstance(x, Eis):
        if x.b == 0:
            return str(x.a)
        sign = "-" if x.b < 0 else "+"
        return f"{x.a}{sign}{abs(x.b)} w"
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    z = complex(x)
    return [z.real, z.imag]
