"""Univariate polynomials and rational functions over exact scalars."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class Poly:
    """Dense polynomial, coefficients lowest degree first."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Sequence = ()):
        self.c = _trim(Fraction(x) if isinstance(x, int) else x for x in coeffs)

    @classmethod
    def const(cls, v):
        return cls((v,))

    @classmethod
    def linear_root(cls, a):
        """``z - a``."""
        return cls((-a, 1))

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def __bool__(self):
        return bool(self.c)

    def lead(self):
        return self.c[-1]

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.c), len(other.c))
        z = 0
        return Poly(
            (self.c[i] if i < len(self.c) else z) + (other.c[i] if i < len(other.c) else z) for i in range(n)
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly(-x for x in self.c)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.c or not other.c:
            return Poly()
        out = [0] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x == 0:
                continue
            for j, y in enumerate(other.c):
                out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly((1,))
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _as_poly(other)
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        q = [0] * max(len(rem) - len(other.c) + 1, 0)
        inv = _inv(other.lead())
        for s in range(len(q) - 1, -1, -1):
            f = rem[s + len(other.c) - 1] * inv
            q[s] = f
            if f != 0:
                for j, y in enumerate(other.c):
                    rem[s + j] = rem[s + j] - f * y
        return Poly(q), Poly(rem[: len(other.c) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        other = _as_poly(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        acc = 0 * x
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * x for i, x in enumerate(self.c) if i > 0)

    def monic(self) -> "Poly":
        if not self.c:
            return self
        inv = _inv(self.lead())
        return Poly(x * inv for x in self.c)

    def __repr__(self):
        return f"Poly({list(self.c)})"


def _inv(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def _as_poly(x) -> Poly:
    return x if isinstance(x, Poly) else Poly((x,))


def gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


class RationalFunction:
    """``num / den`` kept in lowest terms with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = Poly((1,)) if den is None else _as_poly(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            self.num, self.den = Poly(), Poly((1,))
            return
        g = gcd(num, den)
        num, den = num // g, den // g
        lead = _inv(den.lead())
        self.num = num * lead
        self.den = den * lead

    def __add__(self, other):
        o = _as_rf(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_as_rf(other))

    def __rsub__(self, other):
        return _as_rf(other) - self

    def __mul__(self, other):
        o = _as_rf(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_rf(other)
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return _as_rf(other) / self

    def __eq__(self, other):
        o = _as_rf(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def is_zero(self) -> bool:
        return not self.num

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(), self.den * self.den
        )

    def __call__(self, z):
        return self.num(z) / self.den(z)

    def __repr__(self):
        return f"RationalFunction({self.num!r}, {self.den!r})"


def _as_rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x)
