"""Homogeneous quadratic systems and their commutative algebras.

A system ``dX_i/dt = sum_jk a[i][j][k] X_j X_k`` and the algebra with
``x_j . x_k = sum_i a[i][j][k] x_i`` share one tensor. Writing
``xi = sum_k X_k x_k`` the system is simply ``dxi/dt = xi . xi``; every
operation below is a consequence of that identity.

Matrices passed to :func:`change_basis` list the new basis vectors as rows in
old coordinates. :func:`change_vars` takes the matrix of a variable change
``Y = C X``; the two are related by ``M = C^{-T}``.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import linalg
from .scalars import COMPLEX, RATIONAL, convert, domain_of


class InvalidInputError(ValueError):
    pass


def zero_of(domain: str):
    return convert(0, domain)


def one_of(domain: str):
    return convert(1, domain)


def _tensor_domain(t) -> str:
    return domain_of(x for plane in t for row in plane for x in row)


def _freeze_tensor(t, domain=None):
    n = len(t)
    if domain is None:
        domain = _tensor_domain(t)
    frozen = tuple(tuple(tuple(convert(t[i][j][k], domain) for k in range(n)) for j in range(n)) for i in range(n))
    for plane in frozen:
        if len(plane) != n or any(len(row) != n for row in plane):
            raise InvalidInputError(f"tensor is not {n}x{n}x{n}")
    return frozen, domain


def _check_symmetric(t, what: str):
    n = len(t)
    for i, j, k in itertools.product(range(n), repeat=3):
        if k > j and t[i][j][k] != t[i][k][j]:
            raise InvalidInputError(f"{what} not symmetric at ({i},{j},{k})")


@dataclass(frozen=True)
class QuadraticSystem:
    """``dX_i/dt = sum_jk a[i][j][k] X_j X_k`` with ``a[i][j][k] == a[i][k][j]``."""

    a: tuple
    labels: tuple | None = field(default=None, compare=False)
    domain: str = field(default="", compare=False)

    def __post_init__(self):
        frozen, dom = _freeze_tensor(self.a, self.domain or None)
        object.__setattr__(self, "a", frozen)
        object.__setattr__(self, "domain", dom)
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
        _check_symmetric(frozen, "system tensor")

    @property
    def n(self) -> int:
        return len(self.a)

    def as_array(self) -> np.ndarray:
        return np.array([[[complex(x) for x in row] for row in plane] for plane in self.a], dtype=complex)


@dataclass(frozen=True)
class Algebra:
    """Commutative algebra with ``x_j . x_k = sum_i c[i][j][k] x_i``."""

    c: tuple
    domain: str = field(default="", compare=False)

    def __post_init__(self):
        frozen, dom = _freeze_tensor(self.c, self.domain or None)
        object.__setattr__(self, "c", frozen)
        object.__setattr__(self, "domain", dom)
        _check_symmetric(frozen, "structure tensor")

    @property
    def n(self) -> int:
        return len(self.c)

    def basis(self, j: int) -> tuple:
        z, o = zero_of(self.domain), one_of(self.domain)
        return tuple(o if i == j else z for i in range(self.n))


@dataclass(frozen=True)
class QuadricForm:
    """``Q(X) = sum_jk b[j][k] X_j X_k`` with symmetric ``b``."""

    b: tuple

    def __post_init__(self):
        n = len(self.b)
        dom = domain_of(x for row in self.b for x in row)
        b = tuple(tuple(convert(self.b[j][k], dom) for k in range(n)) for j in range(n))
        for j, k in itertools.combinations(range(n), 2):
            if b[j][k] != b[k][j]:
                raise InvalidInputError(f"quadric not symmetric at ({j},{k})")
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return len(self.b)

    @property
    def domain(self) -> str:
        return domain_of(x for row in self.b for x in row)

    def __call__(self, x: Sequence):
        return sum((self.b[j][k] * x[j] * x[k] for j in range(self.n) for k in range(self.n)), 0 * x[0])

    def bilinear(self, u: Sequence, v: Sequence):
        return sum((self.b[j][k] * u[j] * v[k] for j in range(self.n) for k in range(self.n)), 0 * u[0])

    @classmethod
    def from_monomials(cls, n: int, coeffs: dict, domain: str = RATIONAL) -> "QuadricForm":
        """Build from ``{(j, k): coefficient of X_j X_k}`` (j <= k)."""
        b = [[zero_of(domain)] * n for _ in range(n)]
        for (j, k), v in coeffs.items():
            v = convert(v, domain)
            if j == k:
                b[j][j] = b[j][j] + v
            else:
                half = v / 2
                b[j][k] = b[j][k] + half
                b[k][j] = b[k][j] + half
        return cls(tuple(map(tuple, b)))

    def monomials(self) -> dict:
        """``{(j, k): coefficient}`` for ``j <= k``, zeros omitted."""
        out = {}
        for j in range(self.n):
            for k in range(j, self.n):
                v = self.b[j][k] if j == k else 2 * self.b[j][k]
                if v != 0:
                    out[(j, k)] = v
        return out

    def normalized(self) -> "QuadricForm":
        """Scale so the first nonzero monomial coefficient (``j <= k`` order) is one."""
        mons = self.monomials()
        if not mons:
            return self
        x = mons[min(mons)]
        return QuadricForm(tuple(tuple(y / x for y in r) for r in self.b))


@dataclass(frozen=True)
class LinearForm:
    l: tuple

    def __call__(self, x: Sequence):
        return sum((li * xi for li, xi in zip(self.l, x)), 0 * x[0])

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.l)


class Rank3Type(enum.Enum):
    NO_UNIT = "NoUnit"
    HYPERGEOMETRIC = "HypergeometricType"
    ELEMENTARY = "ElementaryType"


# -- correspondence --------------------------------------------------------


def system_to_algebra(sys: QuadraticSystem) -> Algebra:
    return Algebra(sys.a, domain=sys.domain)


def algebra_to_system(alg: Algebra) -> QuadraticSystem:
    return QuadraticSystem(alg.c, domain=alg.domain)


def multiply(alg: Algebra, u: Sequence, v: Sequence) -> tuple:
    n = alg.n
    if len(u) != n or len(v) != n:
        raise InvalidInputError(f"element length {len(u)}/{len(v)} != dimension {n}")
    z = zero_of(alg.domain)
    out = []
    for i in range(n):
        ci = alg.c[i]
        acc = z
        for j in range(n):
            if u[j] == 0:
                continue
            s = sum((ci[j][k] * v[k] for k in range(n)), z)
            acc = acc + u[j] * s
        out.append(acc)
    return tuple(out)


def _transform_tensor(t, m, minv):
    """``t'^d_ab = sum m_aj m_bk t^i_jk minv_id``."""
    n = len(t)
    zero = 0 * m[0][0]
    rng = range(n)
    t1 = [[[sum((m[a][j] * t[i][j][k] for j in rng), zero) for k in rng] for a in rng] for i in rng]
    t2 = [[[sum((m[b][k] * t1[i][a][k] for k in rng), zero) for b in rng] for a in rng] for i in rng]
    return tuple(
        tuple(tuple(sum((minv[i][d] * t2[i][a][b] for i in rng), zero) for b in rng) for a in rng) for d in rng
    )


def _as_domain_matrix(m, domain):
    return tuple(tuple(convert(x, domain) for x in row) for row in m)


def _common_domain(*doms):
    order = {RATIONAL: 0, "eisenstein": 1, COMPLEX: 2}
    return max(doms, key=order.__getitem__)


def change_basis(alg: Algebra, m: Sequence[Sequence]) -> Algebra:
    """Structure constants in the basis ``y_a = sum_j m[a][j] x_j``."""
    dom = _common_domain(alg.domain, domain_of(x for row in m for x in row))
    mm = _as_domain_matrix(m, dom)
    if dom == COMPLEX:
        minv = tuple(map(tuple, np.linalg.inv(np.array(mm, dtype=complex))))
    else:
        minv = linalg.inverse(mm)
    c = _freeze_tensor(alg.c, dom)[0]
    return Algebra(_transform_tensor(c, mm, minv), domain=dom)


def contragredient(m: Sequence[Sequence]):
    return linalg.transpose(linalg.inverse(m))


def change_vars(sys: QuadraticSystem, cmat: Sequence[Sequence]) -> QuadraticSystem:
    """The system satisfied by ``Y = C X``."""
    dom = _common_domain(sys.domain, domain_of(x for row in cmat for x in row))
    cm = _as_domain_matrix(cmat, dom)
    return algebra_to_system(change_basis(system_to_algebra(sys), contragredient(cm)))


def homogenize(quadratic, linear, constant) -> QuadraticSystem:
    """Append a dummy variable ``D`` (last index, ``dD/dt = 0``).

    ``quadratic[i][j][k]``, ``linear[i][j]`` and ``constant[i]`` describe
    ``dX_i/dt = sum a X_j X_k + sum L X_j + c``; ``quadratic`` may be None.
    """
    n = len(constant)
    values = list(constant) + [x for row in linear for x in row]
    if quadratic is not None:
        values += [x for p in quadratic for r in p for x in r]
    dom = domain_of(values)
    z = zero_of(dom)
    a = [[[z] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
    for i in range(n):
        if quadratic is not None:
            for j, k in itertools.product(range(n), repeat=2):
                a[i][j][k] = convert(quadratic[i][j][k], dom)
        for j in range(n):
            half = convert(linear[i][j], dom) / 2
            a[i][j][n] = a[i][j][n] + half
            a[i][n][j] = a[i][n][j] + half
        a[i][n][n] = convert(constant[i], dom)
    return QuadraticSystem(a)


def system_from_field(n: int, f: Callable[[list], Sequence], domain: str = RATIONAL) -> QuadraticSystem:
    """Recover the tensor of a quadratic field ``f`` by polarization.

    ``f`` must be homogeneous quadratic and accept a list of exact scalars.
    """
    z, o = zero_of(domain), one_of(domain)

    def unit(*idx):
        v = [z] * n
        for i in idx:
            v[i] = v[i] + o
        return v

    diag = [tuple(f(unit(j))) for j in range(n)]
    a = [[[z] * n for _ in range(n)] for _ in range(n)]
    for j in range(n):
        for i in range(n):
            a[i][j][j] = convert(diag[j][i], domain)
    for j, k in itertools.combinations(range(n), 2):
        mixed = f(unit(j, k))
        for i in range(n):
            v = (convert(mixed[i], domain) - diag[j][i] - diag[k][i]) / 2
            a[i][j][k] = v
            a[i][k][j] = v
    return QuadraticSystem(a, domain=domain)


def evaluate_field(sys: QuadraticSystem, x: Sequence) -> tuple:
    if len(x) != sys.n:
        raise InvalidInputError(f"state length {len(x)} != dimension {sys.n}")
    n = sys.n
    out = []
    for i in range(n):
        ai = sys.a[i]
        acc = 0 * x[0]
        for j in range(n):
            if x[j] == 0:
                continue
            acc = acc + x[j] * sum((ai[j][k] * x[k] for k in range(n)), 0 * x[0])
        out.append(acc)
    return tuple(out)


# -- unit, derivations, rank-3 classification ------------------------------


def _require_exact(domain: str, op: str):
    if domain == COMPLEX:
        raise InvalidInputError(f"{op} needs an exact scalar domain")


def find_unit(alg: Algebra):
    """The unit element, or None. Solves ``u . x_j = x_j`` exactly."""
    _require_exact(alg.domain, "find_unit")
    n = alg.n
    z, o = zero_of(alg.domain), one_of(alg.domain)
    rows, rhs = [], []
    for j in range(n):
        for i in range(n):
            rows.append([alg.c[i][k][j] for k in range(n)])
            rhs.append(o if i == j else z)
    return linalg.solve(rows, rhs, zero=z)


def derivation_equations(alg: Algebra) -> list:
    """Rows of the linear system ``D(x_j x_k) = D(x_j) x_k + x_j D(x_k)``.

    The unknown ``D[l][j]`` (coefficient of ``x_l`` in ``D(x_j)``) sits in
    column ``l * n + j``.
    """
    n, c = alg.n, alg.c
    z = zero_of(alg.domain)
    rows = []
    for j in range(n):
        for k in range(j, n):
            for m in range(n):
                row = [z] * (n * n)
                for i in range(n):
                    row[m * n + i] = row[m * n + i] + c[i][j][k]
                for l in range(n):
                    row[l * n + j] = row[l * n + j] - c[m][l][k]
                    row[l * n + k] = row[l * n + k] - c[m][j][l]
                rows.append(row)
    return rows


def derivation_dimension(alg: Algebra) -> int:
    _require_exact(alg.domain, "derivation_dimension")
    n = alg.n
    return n * n - linalg.rank(derivation_equations(alg))


def classify_rank3(alg: Algebra) -> Rank3Type:
    if alg.n != 3:
        raise InvalidInputError(f"classify_rank3 needs dimension 3, got {alg.n}")
    if find_unit(alg) is None:
        return Rank3Type.NO_UNIT
    if derivation_dimension(alg) == 0:
        return Rank3Type.HYPERGEOMETRIC
    return Rank3Type.ELEMENTARY


def riccati_system(amat: Sequence[Sequence]) -> QuadraticSystem:
    """``dX/dt = X A X`` for symmetric 2x2 ``X``, coordinates (X11, X12, X22)."""
    if amat[0][1] != amat[1][0]:
        raise InvalidInputError("A must be symmetric")
    dom = domain_of([amat[0][0], amat[0][1], amat[1][1]])
    am = _as_domain_matrix(amat, dom)

    def f(v):
        x = ((v[0], v[1]), (v[1], v[2]))
        xax = linalg.matmul(linalg.matmul(x, am), x)
        return (xax[0][0], xax[0][1], xax[1][1])

    return system_from_field(3, f, dom)


# -- invariant quadrics ----------------------------------------------------


def _cubic_monomials(n):
    return list(itertools.combinations_with_replacement(range(n), 3))


def find_cofactor(sys: QuadraticSystem, q: QuadricForm):
    """Linear ``L`` with ``grad Q . F = L Q`` identically, or None.

    Exact domains only. ``L == 0`` means ``Q`` is a first integral.
    """
    if q.n != sys.n:
        raise InvalidInputError("quadric and system dimensions differ")
    dom = _common_domain(sys.domain, q.domain)
    _require_exact(dom, "find_cofactor")
    n = sys.n
    z = zero_of(dom)
    mons = _cubic_monomials(n)
    pos = {m: r for r, m in enumerate(mons)}
    lhs = [z] * len(mons)
    for i, j in itertools.product(range(n), repeat=2):
        bij = q.b[i][j]
        if bij == 0:
            continue
        for k, l in itertools.product(range(n), repeat=2):
            aikl = sys.a[i][k][l]
            if aikl != 0:
                key = pos[tuple(sorted((j, k, l)))]
                lhs[key] = lhs[key] + 2 * bij * aikl
    rows = [[z] * n for _ in mons]
    for m in range(n):
        for j, k in itertools.product(range(n), repeat=2):
            if q.b[j][k] != 0:
                r = pos[tuple(sorted((m, j, k)))]
                rows[r][m] = rows[r][m] + q.b[j][k]
    sol = linalg.solve(rows, lhs, zero=z)
    if sol is None:
        return None
    for row, target in zip(rows, lhs):
        if sum((x * y for x, y in zip(row, sol)), z) != target:
            return None
    return LinearForm(tuple(convert(v, dom) for v in sol))
