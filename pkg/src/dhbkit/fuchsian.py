"""Fuchsian potentials, Darboux-Halphen-Brioschi systems and Halphen maps.

A potential ``Q(z) = sum_j alpha_j/(z-a_j)^2 + sum_j beta_j/((z-a_j)(z-a_{j+1}))``
gives the quadratic system in ``X_0..X_m``

    dX_k/dtau = X_k^2 - sum_j alpha_j (X_j-X_0)^2
                      - sum_j beta_j (X_j-X_0)(X_{j+1}-X_0)

plus, for ``m >= 3``, quadric relations fixing cross ratios of the ``X_j``.
``X_0`` carries the pole at infinity.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from . import core
from .core import Algebra, QuadraticSystem, QuadricForm
from .polys import Poly, RationalFunction
from .scalars import domain_of

INF = "inf"


class NotRepresentableError(ValueError):
    pass


@dataclass(frozen=True)
class FuchsianData:
    poles: tuple
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        object.__setattr__(self, "poles", tuple(self.poles))
        object.__setattr__(self, "alpha", tuple(self.alpha))
        object.__setattr__(self, "beta", tuple(self.beta))
        m = len(self.poles)
        if m < 2:
            raise core.InvalidInputError("need at least two poles")
        if len(self.alpha) != m or len(self.beta) != m - 1:
            raise core.InvalidInputError(f"expected {m} alphas and {m - 1} betas")
        for p, q in itertools.combinations(self.poles, 2):
            if p == q:
                raise core.InvalidInputError(f"duplicate pole {p}")

    @property
    def m(self) -> int:
        return len(self.poles)

    @property
    def domain(self) -> str:
        return domain_of(self.poles + self.alpha + self.beta)


@dataclass(frozen=True)
class GDHBSystem:
    system: QuadraticSystem
    constraints: tuple
    fuchsian: FuchsianData

    @property
    def m(self) -> int:
        return self.fuchsian.m


class HGParams(NamedTuple):
    alpha: object
    beta: object
    gamma: object


class HalphenABC(NamedTuple):
    a: object
    b: object
    c: object


class Exponents(NamedTuple):
    p: object
    q: object
    r: object


# -- gDHB construction -----------------------------------------------------


def shared_quadratic(fd: FuchsianData) -> dict:
    """Monomial coefficients of ``sum alpha (X_j-X_0)^2 + sum beta (..)(..)``."""
    out: dict = {}

    def add(key, v):
        key = tuple(sorted(key))
        out[key] = out.get(key, 0) + v

    for j, a in enumerate(fd.alpha, start=1):
        add((j, j), a)
        add((0, j), -2 * a)
        add((0, 0), a)
    for j, b in enumerate(fd.beta, start=1):
        # (X_j - X_0)(X_{j+1} - X_0)
        add((j, j + 1), b)
        add((0, j), -b)
        add((0, j + 1), -b)
        add((0, 0), b)
    return out


def gdhb_system(alpha: Sequence, beta: Sequence) -> QuadraticSystem:
    """Right-hand sides only; the poles enter through the constraints alone."""
    m = len(alpha)
    fd_like = FuchsianData(tuple(range(m)), tuple(alpha), tuple(beta))
    n = m + 1
    dom = domain_of(tuple(alpha) + tuple(beta))
    shared = QuadricForm.from_monomials(n, shared_quadratic(fd_like), dom)
    o = core.one_of(dom)
    a = [[[-shared.b[j][k] for k in range(n)] for j in range(n)] for _ in range(n)]
    for k in range(n):
        a[k][k][k] = a[k][k][k] + o
    return QuadraticSystem(a, labels=tuple(f"X{k}" for k in range(n)), domain=dom)


def build_gdhb(fd: FuchsianData, all_tuples: bool = False) -> GDHBSystem:
    system = gdhb_system(fd.alpha, fd.beta)
    if fd.domain != system.domain:
        system = QuadraticSystem(system.a, labels=system.labels, domain=fd.domain)
    return GDHBSystem(system, tuple(anharmonic_constraints(fd.poles, all_tuples)), fd)


# -- cross ratios ----------------------------------------------------------


def _is_inf(x) -> bool:
    return isinstance(x, str) and x == INF


def cross_ratio(a, b, c, d):
    """``(a-b)(c-d) / ((c-b)(a-d))``, one argument may be :data:`INF`.

    With one point at infinity the two factors containing it cancel. Raises
    ZeroDivisionError when the configuration is indeterminate.
    """
    pts = (a, b, c, d)
    infs = [i for i, p in enumerate(pts) if _is_inf(p)]
    if len(infs) > 1:
        raise ZeroDivisionError("more than one point at infinity")
    num = [(0, 1), (2, 3)]
    den = [(2, 1), (0, 3)]
    if infs:
        i = infs[0]
        num = [f for f in num if i not in f]
        den = [f for f in den if i not in f]
    top = 1
    for p, q in num:
        top = top * (pts[p] - pts[q])
    bottom = 1
    for p, q in den:
        bottom = bottom * (pts[p] - pts[q])
    if bottom == 0:
        raise ZeroDivisionError("indeterminate cross ratio")
    if isinstance(top, int) and isinstance(bottom, int):
        return Fraction(top, bottom)
    return top / bottom


def cross_ratio_quadric(n: int, idx: Sequence[int], k, domain: str) -> QuadricForm:
    """``(X_p-X_q)(X_r-X_s) - k (X_r-X_q)(X_p-X_s)`` for ``idx = (p, q, r, s)``."""
    p, q, r, s = idx
    coeffs: dict = {}

    def add_product(u, v, scale):
        # (X_u0 - X_u1)(X_v0 - X_v1)
        for (i, si), (j, sj) in itertools.product(((u[0], 1), (u[1], -1)), ((v[0], 1), (v[1], -1))):
            key = tuple(sorted((i, j)))
            coeffs[key] = coeffs.get(key, 0) + scale * si * sj

    add_product((p, q), (r, s), 1)
    add_product((r, q), (p, s), -k)
    return QuadricForm.from_monomials(n, coeffs, domain)


def constraint_tuples(m: int, all_tuples: bool = False) -> list:
    if m < 3:
        return []
    if all_tuples:
        return list(itertools.combinations(range(m + 1), 4))
    return [(0, j, j + 1, j + 2) for j in range(1, m - 1)]


def anharmonic_constraints(poles: Sequence, all_tuples: bool = False) -> list:
    """Quadrics in ``X_0..X_m`` fixing cross ratios; ``X_0`` pairs with infinity."""
    m = len(poles)
    ext = (INF,) + tuple(poles)
    dom = domain_of(poles)
    out = []
    for idx in constraint_tuples(m, all_tuples):
        k = cross_ratio(*(ext[i] for i in idx))
        out.append(cross_ratio_quadric(m + 1, idx, k, dom).normalized())
    return out


# -- potentials ------------------------------------------------------------


def q_rational_from_fuchsian(fd: FuchsianData) -> RationalFunction:
    total = RationalFunction(Poly())
    lin = [Poly.linear_root(a) for a in fd.poles]
    for al, l in zip(fd.alpha, lin):
        if al != 0:
            total = total + RationalFunction(Poly.const(al), l * l)
    for j, be in enumerate(fd.beta):
        if be != 0:
            total = total + RationalFunction(Poly.const(be), lin[j] * lin[j + 1])
    return total


def _laurent_top(num: Poly, den: Poly, a):
    """Coefficients ``(c_-2, c_-1)`` of ``num/den`` at ``z = a`` (pole order <= 2)."""
    lin = Poly.linear_root(a)
    order = 0
    d = den
    while True:
        q, r = divmod(d, lin)
        if r:
            break
        d = q
        order += 1
    if order > 2:
        raise NotRepresentableError(f"pole of order {order} at {a}")
    # (z-a)^2 Q = num (z-a)^(2-order) / d
    p = num * lin ** (2 - order)
    pa, da = p(a), d(a)
    c2 = pa / da
    c1 = (p.derivative()(a) * da - pa * d.derivative()(a)) / (da * da)
    return c2, c1


def fuchsian_from_q(q: RationalFunction, poles: Sequence) -> FuchsianData:
    """Read ``alpha`` and the ``beta`` chain off ``Q`` for the given pole order."""
    poles = tuple(poles)
    if q.num.degree > q.den.degree - 2 and not q.is_zero():
        raise NotRepresentableError("Q must be O(z^-2) at infinity")
    rest = q.den
    lin = [Poly.linear_root(a) for a in poles]
    for l in lin:
        while True:
            qq, r = divmod(rest, l)
            if r:
                break
            rest = qq
    if rest.degree > 0:
        raise NotRepresentableError("Q has poles outside the listed points")
    alphas, residues = [], []
    for a in poles:
        c2, c1 = _laurent_top(q.num, q.den, a)
        alphas.append(c2)
        residues.append(c1)
    if sum(residues, 0 * residues[0]) != 0:
        raise NotRepresentableError("simple-pole residues do not sum to zero")
    betas = []
    prev = 0
    for j in range(len(poles) - 1):
        carry = residues[j] + (prev / (poles[j - 1] - poles[j]) if j > 0 else 0)
        b = carry * (poles[j] - poles[j + 1])
        betas.append(b)
        prev = b
    fd = FuchsianData(poles, tuple(alphas), tuple(betas))
    if not (q_rational_from_fuchsian(fd) - q).is_zero():
        raise NotRepresentableError("Q is not of the double/simple pole form")
    return fd


def normal_form_reduce(p: RationalFunction, q: RationalFunction) -> RationalFunction:
    """Potential of ``Y'' + Q Y = 0`` equivalent to ``y'' + p y' + q y = 0``."""
    return q - p.derivative() / 2 - p * p / 4


# -- Halphen's second equation and the hypergeometric map ------------------


HALPHEN2_E_MAP = ((-1, 1, 1), (1, -1, 1), (1, 1, -1))


def _frac(x):
    return Fraction(x) if isinstance(x, int) else x


def halphen2_from_abc(abc: HalphenABC) -> QuadraticSystem:
    a, b, c = (_frac(v) for v in abc)
    dom = domain_of([a, b, c])

    def f(v):
        x, y, z = v
        shared = c * (x - y) ** 2 + b * (z - x) ** 2 + a * (y - z) ** 2
        return (x * x + shared, y * y + shared, z * z + shared)

    sys = core.system_from_field(3, f, dom)
    return QuadraticSystem(sys.a, labels=("X", "Y", "Z"), domain=dom)


def abc_from_hypergeometric(hg: HGParams) -> HalphenABC:
    al, be, ga = (_frac(v) for v in hg)
    a = (2 * al * be - ga - al * ga - be * ga + ga * ga) / 4
    b = (al * al + be * be + ga - al * ga - be * ga - 1) / 4
    c = (-2 * al * be - ga + al * ga + be * ga) / 4
    return HalphenABC(a, b, c)


def exponents(hg: HGParams) -> Exponents:
    al, be, ga = (_frac(v) for v in hg)
    return Exponents(1 - ga, -al - be + ga, al - be)


def halphen2_algebra_table(abc: HalphenABC) -> Algebra:
    """Multiplication table of the Halphen-II algebra in the basis ``e_1, e_2, e_3``."""
    a, b, c = (_frac(v) for v in abc)
    dom = domain_of([a, b, c])
    one = core.one_of(dom)
    e = (one, one, one)

    def vec(*pairs):
        out = [core.zero_of(dom)] * 3
        for idx, v in pairs:
            out[idx] = out[idx] + v
        return out

    def plus_e(v, s):
        return [x + s * y for x, y in zip(v, e)]

    products = {
        (0, 0): plus_e(vec(), 1 + 4 * (b + c)),
        (1, 1): plus_e(vec(), 1 + 4 * (a + c)),
        (2, 2): plus_e(vec(), 1 + 4 * (a + b)),
        (0, 1): plus_e(vec((2, -one)), -4 * c),
        (1, 2): plus_e(vec((0, -one)), -4 * a),
        (0, 2): plus_e(vec((1, -one)), -4 * b),
    }
    t = [[[None] * 3 for _ in range(3)] for _ in range(3)]
    for (j, k), v in products.items():
        for i in range(3):
            t[i][j][k] = v[i]
            t[i][k][j] = v[i]
    return Algebra(t, domain=dom)


def hypergeometric_pq(hg: HGParams) -> tuple:
    """``(p, q)`` of ``z(1-z)y'' + (gamma - (alpha+beta+1)z)y' - alpha beta y = 0``."""
    al, be, ga = (_frac(v) for v in hg)
    lead = Poly((0, 1, -1))
    p = RationalFunction(Poly((ga, -(al + be + 1))), lead)
    q = RationalFunction(Poly.const(-al * be), lead) if al * be != 0 else RationalFunction(Poly())
    return p, q


def hypergeometric_fuchsian(hg: HGParams) -> FuchsianData:
    """Normal-form potential of the hypergeometric equation with poles (0, 1)."""
    p, q = hypergeometric_pq(hg)
    return fuchsian_from_q(normal_form_reduce(p, q), (Fraction(0), Fraction(1)))


def gdhb_params_from_abc(abc: HalphenABC) -> tuple:
    """``(alpha_1, alpha_2), (beta_1,)`` making the m=2 system equal Halphen II."""
    a, b, c = (_frac(v) for v in abc)
    return (-(a + c), -(a + b)), (2 * a,)
