"""Dense exact linear algebra over any field whose zero test is ``x == 0``.

Matrices are tuples of row tuples. Nothing here assumes a particular scalar
type; Fractions and :class:`~dhbkit.scalars.Eis` both work.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple  # tuple[tuple[scalar, ...], ...]


def _inv(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


class SingularMatrixError(ValueError):
    pass


def identity(n: int, one=Fraction(1)) -> Matrix:
    zero = one - one
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0 * row[0]) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), 0 * v[0]) for row in a)


def rref(rows: Sequence[Sequence]):
    """Reduced row echelon form. Returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = _inv(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve(a: Sequence[Sequence], b: Sequence, zero=Fraction(0)):
    """One solution of ``a x = b`` with free variables set to zero, or None."""
    if not a:
        return ()
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if n in piv:
        return None
    x = [zero] * n
    for row, c in zip(red, piv):
        x[c] = row[n]
    return tuple(x)


def nullspace(a: Sequence[Sequence], n: int | None = None, one=Fraction(1)) -> list[tuple]:
    """Basis of ``{x : a x = 0}``."""
    if n is None:
        n = len(a[0])
    zero = one - one
    if not a:
        return [tuple(one if i == j else zero for i in range(n)) for j in range(n)]
    red, piv = rref(a)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


def det(a: Sequence[Sequence]):
    m = [list(r) for r in a]
    n = len(m)
    d = 1
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return 0 * m[0][0]
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d = d * m[c][c]
        inv = _inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    one = a[0][0] ** 0
    if isinstance(one, int):
        one = Fraction(1)
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)
