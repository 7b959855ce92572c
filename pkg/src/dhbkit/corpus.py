"""Built-in systems: classical examples plus round-trip fixtures."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as F
from typing import Callable, Sequence

from . import core, linalg
from .core import QuadraticSystem, QuadricForm
from .fuchsian import (
    FuchsianData,
    HalphenABC,
    HGParams,
    abc_from_hypergeometric,
    build_gdhb,
    fuchsian_from_q,
    halphen2_from_abc,
    hypergeometric_fuchsian,
    normal_form_reduce,
)
from .polys import Poly, RationalFunction
from .scalars import EISENSTEIN, OMEGA, Eis


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    system: QuadraticSystem
    quadric: QuadricForm | None = None
    fuchsian: FuchsianData | None = None
    note: str = ""


def solve_sums(smat: Sequence[Sequence], rhs: QuadraticSystem, labels=None) -> QuadraticSystem:
    """From ``S X' = R(X)`` with invertible ``S`` to ``X' = S^{-1} R(X)``."""
    sinv = linalg.inverse(core._as_domain_matrix(smat, rhs.domain))
    n = rhs.n
    z = core.zero_of(rhs.domain)
    a = [
        [[sum((sinv[i][r] * rhs.a[r][j][k] for r in range(n)), z) for k in range(n)] for j in range(n)]
        for i in range(n)
    ]
    return QuadraticSystem(a, labels=labels, domain=rhs.domain)


def euler_top() -> QuadraticSystem:
    def f(x):
        return (2 * x[1] * x[2], 2 * x[0] * x[2], 2 * x[0] * x[1])

    return _labelled(core.system_from_field(3, f), ("X1", "X2", "X3"))


def lotka_volterra(a=1, b=1, c=1, d=1) -> QuadraticSystem:
    """Homogeneous form with the dummy ``N3``."""
    a, b, c, d = (F(v) for v in (a, b, c, d))

    def f(n):
        return (a * n[0] * n[2] - b * n[0] * n[1], -c * n[0] * n[2] - d * n[0] * n[1], 0 * n[0])

    return _labelled(core.system_from_field(3, f), ("N1", "N2", "N3"))


HALPHEN1_SUMS = ((0, 1, 1), (1, 0, 1), (1, 1, 0))


def halphen1_sums_rhs() -> QuadraticSystem:
    def f(x):
        return (2 * x[1] * x[2], 2 * x[0] * x[2], 2 * x[0] * x[1])

    return core.system_from_field(3, f)


def halphen1() -> QuadraticSystem:
    return solve_sums(HALPHEN1_SUMS, halphen1_sums_rhs(), labels=("X1", "X2", "X3"))


def halphen2(a=F(-1, 8), b=F(-1, 8), c=F(-1, 8)) -> QuadraticSystem:
    return halphen2_from_abc(HalphenABC(F(a), F(b), F(c)))


def chazy_k0_system() -> QuadraticSystem:
    """Variables ``(X, W, V)``."""

    def f(v):
        x, w, u = v
        shared = (u - x) * (w - x)
        return (x * x + shared, w * w - (x - w) ** 2 + shared, u * u + (w - x) ** 2 - (x - u) ** 2 + shared)

    return _labelled(core.system_from_field(3, f), ("X", "W", "V"))


LEVEL3_SUMS = ((1, 1, 1, 0), (1, 0, 1, 1), (1, 1, 0, 1), (0, 1, 1, 1))


def level3_sums_rhs() -> QuadraticSystem:
    def f(v):
        w, x, y, z = v
        return (w * x + x * y + y * w, w * y + y * z + z * w, w * x + x * z + z * w, x * y + y * z + z * x)

    return core.system_from_field(4, f, EISENSTEIN)


def level3_system() -> tuple[QuadraticSystem, QuadricForm]:
    """Variables ``(W, X, Y, Z)`` and the relation
    ``w^2 (XZ+YW) + w (XW+YZ) + (XY+ZW) = 0``."""
    sys = solve_sums(LEVEL3_SUMS, level3_sums_rhs(), labels=("W", "X", "Y", "Z"))
    w, x, y, z = range(4)
    w2 = OMEGA * OMEGA
    q = QuadricForm.from_monomials(
        4,
        {(x, z): w2, (w, y): w2, (w, x): OMEGA, (y, z): OMEGA, (x, y): Eis(1), (w, z): Eis(1)},
        EISENSTEIN,
    )
    return sys, q


def level3_picard_fuchs() -> tuple[RationalFunction, RationalFunction]:
    """``(1-t^3) y'' - 3t^2 y' - t y = 0`` as ``y'' + p y' + q y = 0``."""
    lead = Poly((1, 0, 0, -1))
    return RationalFunction(Poly((0, 0, -3)), lead), RationalFunction(Poly((0, -1)), lead)


LEVEL3_POLES = (Eis(1), OMEGA, OMEGA * OMEGA)


def level3_fuchsian() -> FuchsianData:
    p, q = level3_picard_fuchs()
    return fuchsian_from_q(normal_form_reduce(p, q), LEVEL3_POLES)


def riccati_identity() -> QuadraticSystem:
    return _labelled(core.riccati_system(((1, 0), (0, 1))), ("X11", "X12", "X22"))


def padded_euler() -> tuple[QuadraticSystem, QuadricForm]:
    """Euler's top with an inert fourth variable and a nonzero quadric."""
    e = euler_top()
    z = F(0)
    a = [[[e.a[i][j][k] if max(i, j, k) < 3 else z for k in range(4)] for j in range(4)] for i in range(4)]
    q = QuadricForm.from_monomials(4, {(0, 1): F(1), (2, 3): F(-1)})
    return QuadraticSystem(a, labels=("X1", "X2", "X3", "D")), q


# fixed fixtures with known (alpha, beta); the scrambled one stores its basis
ROUND_TRIP = {
    "roundtrip-a": FuchsianData((F(0), F(1), F(-1)), (F(1, 4), F(-1, 3), F(2)), (F(1, 2), F(-1))),
    "roundtrip-b": FuchsianData((F(2), F(-3), F(1, 2)), (F(-1, 5), F(3, 7), F(0)), (F(5, 6), F(-2, 9))),
}
SCRAMBLE_BASIS = ((1, 1, 0, 0), (0, 1, 0, 1), (-1, 0, 1, 0), (0, 0, 2, 1))


def round_trip_entry(name: str, scramble: bool = False) -> CorpusEntry:
    from . import dhb

    fd = ROUND_TRIP[name]
    g = build_gdhb(fd)
    sys, q = g.system, g.constraints[0]
    note = f"alpha={list(map(str, fd.alpha))} beta={list(map(str, fd.beta))}"
    if scramble:
        pa, inv = dhb.scramble(dhb.ParametricAlgebra.from_system(sys, q), SCRAMBLE_BASIS)
        sys, q = QuadraticSystem(pa.base.c, domain=pa.domain), pa.quadric
        note += " basis=" + str([[str(x) for x in row] for row in inv])
        return CorpusEntry(name + "-scrambled", sys, q, None, note)
    return CorpusEntry(name, sys, q, fd, note)


def _labelled(sys: QuadraticSystem, labels) -> QuadraticSystem:
    return QuadraticSystem(sys.a, labels=labels, domain=sys.domain)


def _level3_entry() -> CorpusEntry:
    sys, q = level3_system()
    return CorpusEntry("level3", sys, q, level3_fuchsian(), "Brioschi data from the Picard-Fuchs equation")


def _theta_entry() -> CorpusEntry:
    hg = HGParams(F(1, 2), F(1, 2), F(1))
    return CorpusEntry(
        "halphen2-theta", halphen2(*abc_from_hypergeometric(hg)), None, hypergeometric_fuchsian(hg), "a=b=c=-1/8"
    )


EULER_INTEGRAL = QuadricForm.from_monomials(3, {(0, 0): F(1), (1, 1): F(-1)})


def _halphen2_entry(a=1, b=2, c=3) -> CorpusEntry:
    a, b, c = F(a), F(b), F(c)
    return CorpusEntry("halphen2", halphen2(a, b, c), note=f"a={a} b={b} c={c}")


def _lotka_entry(a=1, b=1, c=1, d=1) -> CorpusEntry:
    return CorpusEntry("lotka-volterra", lotka_volterra(a, b, c, d), note=f"a={a} b={b} c={c} d={d}")


def _padded_entry() -> CorpusEntry:
    sys, q = padded_euler()
    return CorpusEntry("padded-euler", sys, q)


BUILDERS: dict[str, Callable[[], CorpusEntry]] = {
    "euler-top": lambda: CorpusEntry("euler-top", euler_top(), EULER_INTEGRAL, note="quadric X1^2 - X2^2"),
    "lotka-volterra": _lotka_entry,
    "halphen1": lambda: CorpusEntry("halphen1", halphen1(), note="derivative-solved"),
    "halphen2": _halphen2_entry,
    "halphen2-theta": _theta_entry,
    "chazy-k0": lambda: CorpusEntry("chazy-k0", chazy_k0_system()),
    "level3": _level3_entry,
    "riccati-identity": lambda: CorpusEntry("riccati-identity", riccati_identity()),
    "padded-euler": _padded_entry,
    "roundtrip-a": lambda: round_trip_entry("roundtrip-a"),
    "roundtrip-b": lambda: round_trip_entry("roundtrip-b"),
    "roundtrip-a-scrambled": lambda: round_trip_entry("roundtrip-a", scramble=True),
}


def names() -> list[str]:
    return list(BUILDERS)


def get(name: str, **params) -> CorpusEntry:
    """Entries ``halphen2`` (a, b, c) and ``lotka-volterra`` (a..d) take parameters."""
    if name not in BUILDERS:
        raise KeyError(f"unknown corpus entry {name!r}; known: {', '.join(BUILDERS)}")
    try:
        return BUILDERS[name](**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None
